//! Zested structure constants on the group-like basis of `H = B # kΓ` and
//! exhaustive checks of the coquasi-bialgebra and coquasitriangular axioms.
//!
//! On group-likes `Δ(g) = g ⊗ g`, so every axiom collapses to an identity
//! between group elements and nonzero scalars. The antipode triple is not
//! constructed and its axioms are not evaluated.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::report::{Check, CheckResult, VerificationReport};
use crate::scalar::TorsionScalar;
use crate::zesting::{verify_assoc_datum, verify_braided_datum, AssociativeZestingDatum, BraidedZestingDatum};

pub use crate::zesting::character_inducing;

/// Multiplication `mλ`, associator `Ω` and optional r-form `rλ` on `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZestedGroupAlgebra {
    group: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    grading: Vec<usize>,
    m: Vec<usize>,
    omega: Vec<TorsionScalar>,
    r: Option<Vec<TorsionScalar>>,
}

/// `mλ(g,h) = g h λ(ι g, ι h)` and `Ω(g,h,k) = ω(ι g, ι h, ι k) Φ(λ(ι g, ι h))(k)`.
/// Refuses data that fail verification unless `force` is set.
pub fn build_zested(d: &AssociativeZestingDatum, force: bool) -> Result<ZestedGroupAlgebra> {
    if !force {
        let report = verify_assoc_datum(d);
        if !report.all_pass() {
            return Err(Error::InvalidDatum(Box::new(report)));
        }
    }
    Ok(tables(d))
}

/// As [`build_zested`], adding `rλ(g,h) = t(ι g, ι h) r₀(g,h)`.
pub fn build_braided_zested(bd: &BraidedZestingDatum, force: bool) -> Result<ZestedGroupAlgebra> {
    if !force {
        let report = verify_braided_datum(bd);
        if !report.all_pass() {
            return Err(Error::InvalidDatum(Box::new(report)));
        }
    }
    let mut z = tables(bd.assoc());
    let n = z.group.order();
    let mut r = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            r.push(bd.t().eval(&[z.grading[g], z.grading[h]]) * bd.r0().eval(g, h));
        }
    }
    z.r = Some(r);
    Ok(z)
}

fn tables(d: &AssociativeZestingDatum) -> ZestedGroupAlgebra {
    let group = d.yd().group().clone();
    let grading = d.grading().projection().to_vec();
    let n = group.order();
    let lam = d.lambda();
    let mut m = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            m.push(group.mul(group.mul(g, h), lam.eval(&[grading[g], grading[h]])));
        }
    }
    let mut omega = Vec::with_capacity(n * n * n);
    for g in 0..n {
        for h in 0..n {
            let l = lam.eval(&[grading[g], grading[h]]);
            let phi = d.phi().image(l);
            for k in 0..n {
                // λ always lands in Γ₀; a defective Φ falls back to 0
                let pairing = phi.map(|c| c.eval(k)).unwrap_or(TorsionScalar::Zero);
                omega.push(d.omega().eval(&[grading[g], grading[h], grading[k]]) * pairing);
            }
        }
    }
    ZestedGroupAlgebra {
        group,
        target: d.grading().target().clone(),
        grading,
        m,
        omega,
        r: None,
    }
}

impl ZestedGroupAlgebra {
    /// Assembles tables read from an export file.
    pub fn from_tables(
        group: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        grading: Vec<usize>,
        m: Vec<usize>,
        omega: Vec<TorsionScalar>,
        r: Option<Vec<TorsionScalar>>,
    ) -> Result<Self> {
        let n = group.order();
        let size = |expected: usize, got: usize| {
            if expected == got {
                Ok(())
            } else {
                Err(Error::TableSize { expected, got })
            }
        };
        size(n, grading.len())?;
        size(n * n, m.len())?;
        size(n * n * n, omega.len())?;
        if let Some(r) = &r {
            size(n * n, r.len())?;
        }
        if let Some(&x) = m.iter().find(|&&x| x >= n) {
            return Err(Error::ForeignValue(format!("mλ entry {x} is not an element index")));
        }
        if let Some(&x) = grading.iter().find(|&&x| x >= target.order()) {
            return Err(Error::ForeignValue(format!("grade {x} is not an element of G")));
        }
        Ok(ZestedGroupAlgebra {
            group,
            target,
            grading,
            m,
            omega,
            r,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.m[g * self.group.order() + h]
    }

    #[inline]
    pub fn omega(&self, g: usize, h: usize, k: usize) -> TorsionScalar {
        let n = self.group.order();
        self.omega[(g * n + h) * n + k]
    }

    pub fn r(&self, g: usize, h: usize) -> Option<TorsionScalar> {
        self.r.as_ref().map(|r| r[g * self.group.order() + h])
    }

    pub fn m_table(&self) -> &[usize] {
        &self.m
    }

    pub fn omega_table(&self) -> &[TorsionScalar] {
        &self.omega
    }

    pub fn r_table(&self) -> Option<&[TorsionScalar]> {
        self.r.as_deref()
    }

    pub fn set_mul(&mut self, g: usize, h: usize, value: usize) {
        let n = self.group.order();
        self.m[g * n + h] = value;
    }

    pub fn set_omega(&mut self, g: usize, h: usize, k: usize, value: TorsionScalar) {
        let n = self.group.order();
        self.omega[(g * n + h) * n + k] = value;
    }

    pub fn set_r(&mut self, g: usize, h: usize, value: TorsionScalar) {
        let n = self.group.order();
        if let Some(r) = self.r.as_mut() {
            r[g * n + h] = value;
        }
    }
}

const ZERO_PHASE: u32 = u32::MAX;

/// Scalars as exponents `a` of `e^{2πi a / L}` over a common denominator,
/// so that products in the hot loops are integer additions.
struct Phases {
    modulus: u64,
    values: Vec<u32>,
}

impl Phases {
    fn new(scalars: &[TorsionScalar]) -> Self {
        let modulus = scalars
            .iter()
            .filter_map(|s| s.exponent())
            .fold(1u64, |acc, (_, den)| acc.lcm(&den));
        let values = scalars
            .iter()
            .map(|s| match s.exponent() {
                Some((num, den)) => (num * (modulus / den)) as u32,
                None => ZERO_PHASE,
            })
            .collect();
        Phases { modulus, values }
    }

    #[inline]
    fn get(&self, i: usize) -> u32 {
        self.values[i]
    }

    /// Product of phases; `None` when any factor is zero.
    #[inline]
    fn product(&self, factors: &[u32]) -> Option<u64> {
        let mut acc = 0u64;
        for &f in factors {
            if f == ZERO_PHASE {
                return None;
            }
            acc += f as u64;
        }
        Some(acc % self.modulus)
    }
}

/// Quasi-associativity, unit, pentagon, normalization and invertibility of
/// `Ω`, exhaustively over `Γ`.
pub fn verify_coquasi_bialgebra(z: &ZestedGroupAlgebra) -> VerificationReport {
    let group = &z.group;
    let n = group.order();
    let label = |g: usize| group.label(g);
    let mut report = VerificationReport::new(format!("zested coquasi-bialgebra on {}", group.name()));

    // (hk)l Ω(h,k,l) = Ω(h,k,l) h(kl)
    let mut check = Check::new("quasi-associativity", (n * n * n) as u64);
    for h in 0..n {
        for k in 0..n {
            let hk = z.mul(h, k);
            for l in 0..n {
                let lhs = z.mul(hk, l);
                let rhs = z.mul(h, z.mul(k, l));
                let w = z.omega(h, k, l);
                check.case(lhs == rhs || w.is_zero(), || {
                    (
                        vec![label(h), label(k), label(l)],
                        format!("{w}·{}", label(lhs)),
                        format!("{w}·{}", label(rhs)),
                    )
                });
            }
        }
    }
    report.push(check.finish());

    let one = group.identity();
    let mut check = Check::new("unit", n as u64);
    for h in 0..n {
        let (a, b) = (z.mul(one, h), z.mul(h, one));
        check.case(a == h && b == h, || {
            (
                vec![label(h)],
                format!("1·h = {}, h·1 = {}", label(a), label(b)),
                label(h),
            )
        });
    }
    report.push(check.finish());

    // Ω(hk,l,t) Ω(h,k,lt) = Ω(h,k,l) Ω(h,kl,t) Ω(k,l,t)
    let phases = Phases::new(&z.omega);
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut check = Check::new("pentagon", (n as u64).pow(4));
    for h in 0..n {
        for k in 0..n {
            let hk = z.mul(h, k);
            for l in 0..n {
                let kl = z.mul(k, l);
                let hkl = phases.get(idx(h, k, l));
                let kl_ = idx(k, l, 0);
                for t in 0..n {
                    let lt = z.mul(l, t);
                    let lhs = phases.product(&[phases.get(idx(hk, l, t)), phases.get(idx(h, k, lt))]);
                    let rhs = phases.product(&[hkl, phases.get(idx(h, kl, t)), phases.get(kl_ + t)]);
                    check.case(lhs == rhs, || {
                        (
                            vec![label(h), label(k), label(l), label(t)],
                            (z.omega(hk, l, t) * z.omega(h, k, lt)).to_string(),
                            (z.omega(h, k, l) * z.omega(h, kl, t) * z.omega(k, l, t)).to_string(),
                        )
                    });
                }
            }
        }
    }
    report.push(check.finish());

    let mut check = Check::new("normalization", (3 * n * n) as u64);
    for a in 0..n {
        for b in 0..n {
            for (at, v) in [
                ([one, a, b], z.omega(one, a, b)),
                ([a, one, b], z.omega(a, one, b)),
                ([a, b, one], z.omega(a, b, one)),
            ] {
                check.case(v.is_one(), || {
                    (at.iter().map(|&x| label(x)).collect(), v.to_string(), "1".into())
                });
            }
        }
    }
    report.push(check.finish());

    let mut check = Check::new("Ω invertible", (n * n * n) as u64);
    for h in 0..n {
        for k in 0..n {
            for l in 0..n {
                let w = z.omega(h, k, l);
                check.case(!w.is_zero(), || {
                    (vec![label(h), label(k), label(l)], w.to_string(), "≠ 0".into())
                });
            }
        }
    }
    report.push(
        check
            .finish()
            .with_note("antipode (S, α, β) axioms are not evaluated"),
    );
    report
}

/// The three coquasitriangular axioms on group-likes, with `mλ` and `Ω`.
/// Without an r-form the single row reports its absence.
pub fn verify_coquasitriangular(z: &ZestedGroupAlgebra) -> VerificationReport {
    let group = &z.group;
    let n = group.order();
    let label = |g: usize| group.label(g);
    let mut report = VerificationReport::new(format!("zested coquasitriangular structure on {}", group.name()));
    let Some(r) = z.r.as_ref() else {
        report.push(CheckResult::failed(
            "r-form present",
            0,
            crate::report::Evaluation {
                at: vec![],
                lhs: "none".into(),
                rhs: "rλ table".into(),
                holds: false,
            },
        ));
        return report;
    };

    let mut check = Check::new("r invertible", (n * n) as u64);
    for h in 0..n {
        for k in 0..n {
            let v = r[h * n + k];
            check.case(!v.is_zero(), || (vec![label(h), label(k)], v.to_string(), "≠ 0".into()));
        }
    }
    report.push(check.finish());

    // r(h,k) hk = kh r(h,k)
    let mut check = Check::new("r(h,k)·hk = kh·r(h,k)", (n * n) as u64);
    for h in 0..n {
        for k in 0..n {
            let (hk, kh) = (z.mul(h, k), z.mul(k, h));
            let v = r[h * n + k];
            check.case(hk == kh || v.is_zero(), || {
                (
                    vec![label(h), label(k)],
                    format!("{v}·{}", label(hk)),
                    format!("{}·{v}", label(kh)),
                )
            });
        }
    }
    report.push(check.finish());

    let w = Phases::new(&z.omega);
    let rp = Phases::new(r);
    // common modulus for mixed products
    let modulus = w.modulus.lcm(&rp.modulus);
    let (sw, sr) = (modulus / w.modulus, modulus / rp.modulus);
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let scaled = |p: u32, s: u64| if p == ZERO_PHASE { None } else { Some(p as u64 * s % modulus) };
    let neg = |p: Option<u64>| p.map(|x| (modulus - x) % modulus);
    let sum = |parts: &[Option<u64>]| -> Option<u64> {
        parts.iter().try_fold(0u64, |acc, p| p.map(|x| (acc + x) % modulus))
    };
    let omega = |a, b, c| scaled(w.get(idx(a, b, c)), sw);
    let rr = |a: usize, b: usize| scaled(rp.get(a * n + b), sr);

    // r(h, kl) Ω⁻¹(h,k,l) = Ω(k,l,h) r(h,l) Ω⁻¹(k,h,l) r(h,k)
    let cubes = (n * n * n) as u64;
    let mut check = Check::new("hexagon r(h, kl)", cubes);
    for h in 0..n {
        for k in 0..n {
            for l in 0..n {
                let lhs = sum(&[rr(h, z.mul(k, l)), neg(omega(h, k, l))]);
                let rhs = sum(&[omega(k, l, h), rr(h, l), neg(omega(k, h, l)), rr(h, k)]);
                check.case(lhs.is_some() && lhs == rhs, || {
                    let lhs = r[h * n + z.mul(k, l)] / z.omega(h, k, l);
                    let rhs = z.omega(k, l, h) * r[h * n + l] / z.omega(k, h, l) * r[h * n + k];
                    (vec![label(h), label(k), label(l)], lhs.to_string(), rhs.to_string())
                });
            }
        }
    }
    report.push(check.finish());

    // r(hk, l) Ω(h,k,l) = Ω⁻¹(l,k,h) r(h,l) Ω(h,l,k) r(k,l)
    let mut check = Check::new("hexagon r(hk, l)", cubes);
    for h in 0..n {
        for k in 0..n {
            for l in 0..n {
                let lhs = sum(&[rr(z.mul(h, k), l), omega(h, k, l)]);
                let rhs = sum(&[neg(omega(l, k, h)), rr(h, l), omega(h, l, k), rr(k, l)]);
                check.case(lhs.is_some() && lhs == rhs, || {
                    let lhs = r[z.mul(h, k) * n + l] * z.omega(h, k, l);
                    let rhs = r[h * n + l] / z.omega(l, k, h) * z.omega(h, l, k) * r[k * n + l];
                    (vec![label(h), label(k), label(l)], lhs.to_string(), rhs.to_string())
                });
            }
        }
    }
    report.push(check.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zesting::{a12_enumeration, cyclic_zesting, phi_candidates, z4_braided, Grading};
    use crate::ydmodule::builtin_a12;

    fn a12_n2_i() -> AssociativeZestingDatum {
        let yd = builtin_a12(2).unwrap();
        let grading = Grading::universal_cyclic(&yd).unwrap();
        let gamma0 = crate::zesting::a12_gamma0(&yd);
        let phi = phi_candidates(&yd, &gamma0).unwrap().remove(0);
        let a1 = yd.group().generators()[0];
        cyclic_zesting(&yd, &grading, &phi, a1, TorsionScalar::I).unwrap()
    }

    #[test]
    fn a12_structure_constants() {
        let d = a12_n2_i();
        let z = build_zested(&d, false).unwrap();
        let g = z.group().clone();
        let (a1, a2) = (g.generators()[0], g.generators()[1]);
        assert_eq!(z.mul(a2, a2), g.mul(g.mul(a2, a2), a1));
        assert_eq!(z.omega(a2, a2, a2), TorsionScalar::I);
        for x in 0..g.order() {
            assert_eq!(z.mul(x, 0), x);
        }
        assert!(verify_coquasi_bialgebra(&z).all_pass());
    }

    #[test]
    fn trivial_zesting_is_group_algebra() {
        let yd = builtin_a12(3).unwrap();
        let grading = Grading::universal_cyclic(&yd).unwrap();
        let d = AssociativeZestingDatum::trivial(yd, grading).unwrap();
        let z = build_zested(&d, false).unwrap();
        let g = z.group().clone();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(z.mul(a, b), g.mul(a, b));
            }
        }
        assert!(z.omega_table().iter().all(|w| w.is_one()));
        assert!(verify_coquasi_bialgebra(&z).all_pass());
    }

    #[test]
    fn corrupted_omega_caught_by_pentagon() {
        let d = a12_enumeration(3).unwrap().data.remove(1);
        let mut z = build_zested(&d, false).unwrap();
        let g = z.group().clone();
        let (a2, a1) = (g.generators()[1], g.generators()[0]);
        let w = z.omega(a2, a1, a2);
        z.set_omega(a2, a1, a2, w * TorsionScalar::MINUS_ONE);
        let r = verify_coquasi_bialgebra(&z);
        assert!(!r.passes("pentagon"));
        assert!(r.passes("quasi-associativity"));
    }

    #[test]
    fn invalid_datum_refused_unless_forced() {
        let d = a12_n2_i()
            .with_omega(crate::cochain::std_omega3(crate::UnityScalars::ALL, TorsionScalar::MINUS_ONE, 2))
            .unwrap();
        assert!(matches!(build_zested(&d, false), Err(Error::InvalidDatum(_))));
        let z = build_zested(&d, true).unwrap();
        assert!(!verify_coquasi_bialgebra(&z).passes("pentagon"));
    }

    #[test]
    fn z4_braided_tables() {
        let bd = z4_braided(TorsionScalar::MINUS_ONE, TorsionScalar::I).unwrap();
        let z = build_braided_zested(&bd, false).unwrap();
        let sigma = z.group().generators()[0];
        assert_eq!(z.r(sigma, sigma), Some(TorsionScalar::MINUS_ONE));
        for h in 0..4 {
            assert_eq!(z.r(0, h), Some(TorsionScalar::ONE));
        }
        assert!(z.omega_table().iter().all(|w| w.is_one()));
        assert!(verify_coquasi_bialgebra(&z).all_pass());
        let r = verify_coquasitriangular(&z);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn z4_hand_checked_hexagon() {
        // ζ = 1, η = 1: Ω(σ^a,σ^b,σ^c) = (−1)^c when a, b odd
        let bd = z4_braided(TorsionScalar::ONE, TorsionScalar::ONE).unwrap();
        let z = build_braided_zested(&bd, false).unwrap();
        let s = z.group().generators()[0];
        let s2 = z.group().mul(s, s);
        assert_eq!(z.omega(s, s, s), TorsionScalar::MINUS_ONE);
        assert_eq!(z.mul(s, s), 0);
        // r(σ, σσ) Ω⁻¹(σ,σ,σ) = −1 = r(σ,σ)²
        let lhs = z.r(s, z.mul(s, s)).unwrap() / z.omega(s, s, s);
        assert_eq!(lhs, TorsionScalar::MINUS_ONE);
        assert_eq!(z.r(s, s2), Some(TorsionScalar::MINUS_ONE));
        assert!(verify_coquasitriangular(&z).all_pass());
    }

    #[test]
    fn mutated_r_caught() {
        let bd = z4_braided(TorsionScalar::MINUS_ONE, TorsionScalar::I).unwrap();
        let mut z = build_braided_zested(&bd, false).unwrap();
        let s = z.group().generators()[0];
        z.set_r(s, s, TorsionScalar::ONE);
        let r = verify_coquasitriangular(&z);
        assert!(!r.all_pass());
        assert!(r.failures().all(|c| c.counterexample.is_some()));
    }

    #[test]
    fn non_commutative_product_caught_by_first_axiom() {
        let bd = z4_braided(TorsionScalar::MINUS_ONE, TorsionScalar::I).unwrap();
        let mut z = build_braided_zested(&bd, false).unwrap();
        let s = z.group().generators()[0];
        z.set_mul(s, 0, 0);
        let r = verify_coquasitriangular(&z);
        assert!(!r.passes("r(h,k)·hk = kh·r(h,k)"));
    }
}
