//! Yetter–Drinfeld data for the skew-primitive generators `x_i` of `B # kΓ`.
//!
//! Only what zesting needs is stored: the degrees `g_i` (the coaction
//! `x_i ↦ g_i ⊗ x_i`) and the action, either diagonal by characters or an
//! index permutation induced by conjugation of degrees.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Character, FiniteGroup, QuotientGroup, Subgroup};
use crate::scalar::TorsionScalar;

#[derive(Clone, Debug)]
pub enum Action {
    /// `h · x_j = χ_j(h) x_j`.
    Diagonal(Vec<Character>),
    /// `g · x_i ∝ x_{g·i}` where `g g_i g⁻¹ = g_{g·i}`. Only the listed
    /// central elements have a known scalar, namely 1.
    IndexPermutation { trivially_acting: Subgroup },
}

#[derive(Clone, Debug)]
pub struct YetterDrinfeldDatum {
    group: Arc<FiniteGroup>,
    degrees: Vec<usize>,
    action: Action,
    /// `index_map[g][i] = g·i`.
    index_map: Vec<Vec<usize>>,
}

impl YetterDrinfeldDatum {
    pub fn new(group: Arc<FiniteGroup>, degrees: Vec<usize>, action: Action) -> Result<Self> {
        if let Some(&bad) = degrees.iter().find(|&&g| g >= group.order()) {
            return Err(Error::ForeignElement {
                element: bad.to_string(),
                group: group.name(),
            });
        }
        let index_map = match &action {
            Action::Diagonal(chars) => {
                if chars.len() != degrees.len() {
                    return Err(Error::InvalidParameters(format!(
                        "{} characters for {} degrees",
                        chars.len(),
                        degrees.len()
                    )));
                }
                if chars.iter().any(|c| c.values().len() != group.order()) {
                    return Err(Error::InvalidParameters(
                        "character defined on a different group".into(),
                    ));
                }
                (0..group.order())
                    .map(|_| (0..degrees.len()).collect())
                    .collect()
            }
            Action::IndexPermutation { trivially_acting } => {
                if !Arc::ptr_eq(trivially_acting.group(), &group)
                    && **trivially_acting.group() != *group
                {
                    return Err(Error::ForeignSubgroup);
                }
                if !trivially_acting.is_central() {
                    return Err(Error::InvalidParameters(
                        "trivially acting elements must be central".into(),
                    ));
                }
                let mut sorted = degrees.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != degrees.len() {
                    return Err(Error::InvalidParameters(
                        "index-permutation action needs distinct degrees".into(),
                    ));
                }
                let mut maps = Vec::with_capacity(group.order());
                for g in 0..group.order() {
                    let mut map = Vec::with_capacity(degrees.len());
                    for &d in &degrees {
                        let c = group.conjugate(g, d);
                        let j = degrees.iter().position(|&e| e == c).ok_or_else(|| {
                            Error::InvalidParameters(format!(
                                "conjugating degree {} by {} leaves the degree set",
                                group.label(d),
                                group.label(g)
                            ))
                        })?;
                        map.push(j);
                    }
                    maps.push(map);
                }
                maps
            }
        };
        let datum = YetterDrinfeldDatum {
            group,
            degrees,
            action,
            index_map,
        };
        datum.support()?;
        Ok(datum)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Number of basis vectors θ.
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// `supp(V) = ⟨g_1, …, g_θ⟩`, which must be normal.
    pub fn support(&self) -> Result<Subgroup> {
        let s = self.group.subgroup_generated(&self.degrees);
        s.check_normal().map_err(|e| Error::NotNormalSupport(e.to_string()))?;
        Ok(s)
    }

    /// `U(H) ≅ Γ / supp(V)` with its projection.
    pub fn universal_grading(&self) -> Result<QuotientGroup> {
        self.group.quotient(&self.support()?)
    }

    /// `q_ij = χ_j(g_i)`.
    pub fn braiding_matrix(&self) -> Result<Vec<Vec<TorsionScalar>>> {
        match &self.action {
            Action::Diagonal(chars) => Ok(self
                .degrees
                .iter()
                .map(|&gi| chars.iter().map(|chi| chi.eval(gi)).collect())
                .collect()),
            Action::IndexPermutation { .. } => Err(Error::NotDiagonal),
        }
    }

    /// `g·i`, the index `j` with `g g_i g⁻¹ = g_j`.
    pub fn index_image(&self, g: usize, i: usize) -> usize {
        self.index_map[g][i]
    }

    /// The scalar by which `g` acts on `x_i`, when the datum determines it.
    pub fn action_scalar(&self, g: usize, i: usize) -> Result<TorsionScalar> {
        let undetermined = || Error::NonDiagonalAction {
            element: self.group.label(g),
            index: i,
        };
        if i >= self.rank() {
            return Err(Error::InvalidParameters(format!("no basis vector x_{i}")));
        }
        match &self.action {
            Action::Diagonal(chars) => Ok(chars[i].eval(g)),
            Action::IndexPermutation { trivially_acting } => {
                if g == self.group.identity()
                    || (trivially_acting.contains(g) && self.index_image(g, i) == i)
                {
                    Ok(TorsionScalar::ONE)
                } else {
                    Err(undetermined())
                }
            }
        }
    }
}

/// The pointed example of super type `A(1|2)`: `Γ = C₂ × C_{n²} = ⟨α₁, α₂⟩`,
/// `g₁ = α₁`, `g₂ = α₂ⁿ`, realizing the braiding matrix
/// `((−1, 1), (q⁻¹, q))` with `q = ζ_n`.
///
/// With the dual basis `ν₁(α₁) = −1`, `ν₂(α₂) = ζ_{n²}` the characters are
/// `χ₁ = ν₁ ν₂^{n−1}` and `χ₂ = ν₂`.
pub fn builtin_a12(n: u64) -> Result<YetterDrinfeldDatum> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("A(1|2) needs n ≥ 2, got {n}")));
    }
    let group = FiniteGroup::new(crate::group::GroupSpec::Product {
        orders: vec![2, n * n],
    })?;
    let alpha1 = group.generators()[0];
    let alpha2 = group.generators()[1];
    let g2 = group.pow(alpha2, n as i64);
    let chi1 = group.character_from_exponents(&[1, n as i64 - 1])?;
    let chi2 = group.character_from_exponents(&[0, 1])?;
    YetterDrinfeldDatum::new(group, vec![alpha1, g2], Action::Diagonal(vec![chi1, chi2]))
}

/// The Fomin–Kirillov module `V_k` over `𝔾_{3,ℓ}`: degrees `g_i = s^i t^{2k+1}`
/// and the conjugation index action, with `⟨t²⟩ ∩ supp(V)` acting trivially.
pub fn builtin_fk3(ell: u64, k: u64) -> Result<YetterDrinfeldDatum> {
    if ell == 0 || k >= ell {
        return Err(Error::InvalidParameters(format!(
            "FK₃ needs 0 ≤ k < ℓ, got ℓ = {ell}, k = {k}"
        )));
    }
    let group = FiniteGroup::new(crate::group::GroupSpec::Metacyclic33 { ell })?;
    let (s, t) = (group.generators()[0], group.generators()[1]);
    let tn = group.pow(t, 2 * k as i64 + 1);
    let degrees: Vec<usize> = (0..3)
        .map(|i| group.mul(group.pow(s, i), tn))
        .collect();
    let support = group.subgroup_generated(&degrees);
    let trivially_acting = group.center().intersection(&support);
    YetterDrinfeldDatum::new(group, degrees, Action::IndexPermutation { trivially_acting })
}

/// Degree data for the braided `ℤ/4` example: `Γ = ⟨σ⟩ ≅ C₄`, one basis
/// vector of degree `σ²` acted on by `χ = r₀(σ², −)` where `r₀(σ, σ) = i`.
pub fn builtin_z4() -> Result<YetterDrinfeldDatum> {
    let group = FiniteGroup::cyclic(4);
    let sigma = group.generators()[0];
    let g = group.mul(sigma, sigma);
    let chi = group.character_from_generators(&[TorsionScalar::MINUS_ONE])?;
    YetterDrinfeldDatum::new(group, vec![g], Action::Diagonal(vec![chi]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    fn idx(g: &FiniteGroup, v: &[u64]) -> usize {
        g.index_of(&GroupElement(v.to_vec())).unwrap()
    }

    #[test]
    fn a12_support_and_grading() {
        let v = builtin_a12(3).unwrap();
        let g = v.group();
        let supp = v.support().unwrap();
        assert_eq!(supp.order(), 6);
        assert_eq!(
            supp,
            g.subgroup_generated(&[idx(g, &[1, 0]), idx(g, &[0, 3])])
        );
        assert_eq!(v.universal_grading().unwrap().decomposition(), Some(vec![3]));
        let v4 = builtin_a12(4).unwrap();
        assert_eq!(v4.universal_grading().unwrap().decomposition(), Some(vec![4]));
        let v2 = builtin_a12(2).unwrap();
        assert_eq!(v2.group().order(), 8);
        assert_eq!(v2.support().unwrap().order(), 4);
        assert_eq!(v2.universal_grading().unwrap().order(), 2);
    }

    #[test]
    fn a12_braiding_matrix() {
        for n in 2..=6u64 {
            let v = builtin_a12(n).unwrap();
            let q = TorsionScalar::zeta(n);
            let expected = vec![
                vec![TorsionScalar::MINUS_ONE, TorsionScalar::ONE],
                vec![q.inv().unwrap(), q],
            ];
            assert_eq!(v.braiding_matrix().unwrap(), expected, "n = {n}");
        }
        let m = builtin_a12(2).unwrap().braiding_matrix().unwrap();
        assert_eq!(
            m,
            vec![
                vec![TorsionScalar::MINUS_ONE, TorsionScalar::ONE],
                vec![TorsionScalar::MINUS_ONE, TorsionScalar::MINUS_ONE]
            ]
        );
    }

    #[test]
    fn rank_one_and_empty() {
        let g = FiniteGroup::cyclic(2);
        let chi = g.character_from_generators(&[TorsionScalar::MINUS_ONE]).unwrap();
        let v = YetterDrinfeldDatum::new(g.clone(), vec![1], Action::Diagonal(vec![chi])).unwrap();
        assert_eq!(v.braiding_matrix().unwrap(), vec![vec![TorsionScalar::MINUS_ONE]]);
        let empty = YetterDrinfeldDatum::new(g.clone(), vec![], Action::Diagonal(vec![])).unwrap();
        assert!(empty.support().unwrap().is_trivial());
        assert_eq!(empty.universal_grading().unwrap().order(), 2);
        assert_eq!(v.universal_grading().unwrap().order(), 1);
    }

    #[test]
    fn fk3_support_and_grading() {
        let v = builtin_fk3(9, 1).unwrap();
        let g = v.group();
        let supp = v.support().unwrap();
        assert_eq!(supp.order(), 18);
        assert_eq!(supp, g.subgroup_generated(&[idx(g, &[1, 0]), idx(g, &[0, 3])]));
        let u = v.universal_grading().unwrap();
        assert_eq!(u.decomposition(), Some(vec![3]));
        if let Action::IndexPermutation { trivially_acting } = v.action() {
            assert_eq!(*trivially_acting, g.subgroup_generated(&[idx(g, &[0, 6])]));
        } else {
            panic!("FK₃ acts by index permutation");
        }
        assert!(matches!(v.braiding_matrix(), Err(Error::NotDiagonal)));
    }

    #[test]
    fn fk3_action_scalars() {
        let v = builtin_fk3(9, 1).unwrap();
        let g = v.group();
        let t6 = idx(g, &[0, 6]);
        for i in 0..3 {
            assert_eq!(v.action_scalar(t6, i).unwrap(), TorsionScalar::ONE);
            assert_eq!(v.action_scalar(0, i).unwrap(), TorsionScalar::ONE);
        }
        let s = idx(g, &[1, 0]);
        assert!(matches!(v.action_scalar(s, 0), Err(Error::NonDiagonalAction { .. })));
        // t² is central but not in the support, so its sign is undetermined.
        let t2 = idx(g, &[0, 2]);
        assert!(v.action_scalar(t2, 0).is_err());
    }

    #[test]
    fn fk3_degree_set_closed_under_conjugation() {
        for ell in 1..=9 {
            for k in 0..ell {
                let v = builtin_fk3(ell, k).unwrap();
                let g = v.group();
                for x in 0..g.order() {
                    let mut img: Vec<usize> = (0..3).map(|i| v.index_image(x, i)).collect();
                    img.sort_unstable();
                    assert_eq!(img, vec![0, 1, 2]);
                }
                assert!(v.support().unwrap().is_normal());
            }
        }
    }

    #[test]
    fn fk3_small_parameters() {
        let v = builtin_fk3(1, 0).unwrap();
        assert_eq!(v.universal_grading().unwrap().order(), 1);
        let v = builtin_fk3(3, 1).unwrap();
        assert_eq!(v.universal_grading().unwrap().order(), 3);
        assert!(matches!(builtin_fk3(3, 3), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn diagonal_action_scalar() {
        let v = builtin_a12(3).unwrap();
        if let Action::Diagonal(chars) = v.action() {
            for g in 0..v.group().order() {
                for i in 0..2 {
                    assert_eq!(v.action_scalar(g, i).unwrap(), chars[i].eval(g));
                }
            }
        }
        assert_eq!(v.action_scalar(0, 1).unwrap(), TorsionScalar::ONE);
    }

    #[test]
    fn non_normal_support_rejected() {
        let g = FiniteGroup::metacyclic33(1);
        let t = g.generators()[1];
        let chi = Character::trivial(g.order());
        assert!(matches!(
            YetterDrinfeldDatum::new(g, vec![t], Action::Diagonal(vec![chi])),
            Err(Error::NotNormalSupport(_))
        ));
    }
}
