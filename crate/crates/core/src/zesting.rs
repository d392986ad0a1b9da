//! Associative and braided zesting data for pointed Hopf algebras `B # kΓ`.
//!
//! A datum lives entirely on the group-like skeleton: a grading `Γ → G`, a
//! central subgroup `Γ₀ ⊆ supp(V)` with a homomorphism `Φ: Γ₀ → Γ̂` (the
//! relative r-form `⟨γ(g), h⟩ = Φ(g)(h)`), a 2-cocycle `λ: G² → Γ₀` and a
//! 3-cochain `ω: G³ → k^×`. Verification never fails with an error; every
//! defining condition becomes a report row.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cochain::{std_lambda2, std_omega3, SubgroupCoefficients, UnityScalars};
use crate::error::{Error, Result};
use crate::group::{extend_multiplicatively, Character, FiniteGroup, GroupSpec, QuotientGroup, Subgroup};
use crate::report::{Check, CheckResult, Evaluation, VerificationReport};
use crate::scalar::TorsionScalar;
use crate::ydmodule::YetterDrinfeldDatum;
use crate::{GroupCochain, ScalarCochain};

/// Which grading of `Γ` to use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GradingSpec {
    /// `Γ → Γ/supp(V)`, the quotient group itself.
    Universal,
    /// `Γ → Γ/supp(V) ≅ C_N`, identified through the smallest generator.
    UniversalCyclic,
    /// `Γ → C_N → C_M`, reduction mod `M` after the cyclic identification.
    CyclicQuotient { order: u64 },
}

/// The group-like part of a cocentral epimorphism `H → kG`.
#[derive(Clone, Debug)]
pub struct Grading {
    spec: GradingSpec,
    universal: QuotientGroup,
    target: Arc<FiniteGroup>,
    projection: Vec<usize>,
}

impl Grading {
    pub fn new(yd: &YetterDrinfeldDatum, spec: GradingSpec) -> Result<Self> {
        let universal = yd.universal_grading()?;
        let (target, projection) = match &spec {
            GradingSpec::Universal => (universal.group().clone(), universal.projection().to_vec()),
            GradingSpec::UniversalCyclic | GradingSpec::CyclicQuotient { .. } => {
                let u = universal.group();
                let gen = u
                    .cyclic_generator()
                    .ok_or_else(|| Error::NotCyclic(u.name()))?;
                let n = u.order() as u64;
                let m = match spec {
                    GradingSpec::CyclicQuotient { order } => {
                        if order == 0 || n % order != 0 {
                            return Err(Error::InvalidParameters(format!(
                                "C{order} is not a quotient of C{n}"
                            )));
                        }
                        order
                    }
                    _ => n,
                };
                // exponent of each element of U with respect to `gen`
                let mut log = vec![0u64; u.order()];
                let mut x = u.identity();
                for k in 0..n {
                    log[x] = k;
                    x = u.mul(x, gen);
                }
                let target = FiniteGroup::cyclic(m);
                let projection = universal
                    .projection()
                    .iter()
                    .map(|&c| (log[c] % m) as usize)
                    .collect();
                (target, projection)
            }
        };
        Ok(Grading {
            spec,
            universal,
            target,
            projection,
        })
    }

    pub fn universal(yd: &YetterDrinfeldDatum) -> Result<Self> {
        Self::new(yd, GradingSpec::Universal)
    }

    pub fn universal_cyclic(yd: &YetterDrinfeldDatum) -> Result<Self> {
        Self::new(yd, GradingSpec::UniversalCyclic)
    }

    pub fn spec(&self) -> &GradingSpec {
        &self.spec
    }

    /// `U(H) = Γ/supp(V)`.
    pub fn universal_group(&self) -> &QuotientGroup {
        &self.universal
    }

    /// The grading group `G`.
    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        self.universal.parent()
    }

    #[inline]
    pub fn project(&self, g: usize) -> usize {
        self.projection[g]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Smallest element of `Γ` in the fiber over `s`.
    pub fn representative(&self, s: usize) -> usize {
        self.projection
            .iter()
            .position(|&p| p == s)
            .expect("grading is surjective")
    }

    pub fn fiber(&self, s: usize) -> Vec<usize> {
        (0..self.projection.len())
            .filter(|&g| self.projection[g] == s)
            .collect()
    }

    pub fn kernel(&self) -> Subgroup {
        let gens: Vec<usize> = self.fiber(0);
        self.source().subgroup_generated(&gens)
    }

    /// Cyclic order `N` when `G` is presented as `C_N`.
    pub fn cyclic_order(&self) -> Option<u64> {
        match self.target.spec() {
            GroupSpec::Cyclic { n } => Some(*n),
            _ => None,
        }
    }
}

/// `Φ: Γ₀ → Γ̂`, given on the generators of `Γ₀`.
#[derive(Clone, Debug)]
pub struct CentralityMap {
    gamma0: Subgroup,
    images: Vec<Character>,
    table: Vec<Option<Character>>,
    defect: Option<String>,
}

impl PartialEq for CentralityMap {
    fn eq(&self, other: &Self) -> bool {
        self.gamma0 == other.gamma0 && self.table == other.table
    }
}

impl CentralityMap {
    /// Extends the generator images along `Γ₀`. An inconsistent assignment is
    /// kept (first-reached values win) and reported by the verifier.
    pub fn new(gamma0: &Subgroup, images: Vec<Character>) -> Result<Self> {
        let group = gamma0.group();
        let gens = gamma0.generators();
        if images.len() != gens.len() {
            return Err(Error::InvalidParameters(format!(
                "Φ needs {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        if images.iter().any(|c| c.values().len() != group.order()) {
            return Err(Error::InvalidParameters("Φ image is not a character of Γ".into()));
        }
        let n = group.order();
        let mut table: Vec<Option<Character>> = vec![None; n];
        table[group.identity()] = Some(Character::trivial(n));
        let mut queue = std::collections::VecDeque::from([group.identity()]);
        let mut defect = None;
        while let Some(x) = queue.pop_front() {
            for (&g, img) in gens.iter().zip(&images) {
                let y = group.mul(x, g);
                let val = table[x].as_ref().expect("reached").mul(img);
                match &table[y] {
                    None => {
                        table[y] = Some(val);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != val && defect.is_none() => {
                        defect = Some(format!(
                            "Φ({}) is assigned two different characters",
                            group.label(y)
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(CentralityMap {
            gamma0: gamma0.clone(),
            images,
            table,
            defect,
        })
    }

    pub fn trivial(gamma0: &Subgroup) -> Self {
        let n = gamma0.group().order();
        let images = vec![Character::trivial(n); gamma0.generators().len()];
        Self::new(gamma0, images).expect("trivial Φ")
    }

    pub fn gamma0(&self) -> &Subgroup {
        &self.gamma0
    }

    pub fn generator_images(&self) -> &[Character] {
        &self.images
    }

    pub fn is_homomorphism(&self) -> bool {
        self.defect.is_none()
    }

    pub fn image(&self, g: usize) -> Option<&Character> {
        self.table.get(g).and_then(Option::as_ref)
    }

    /// `⟨γ(g), h⟩ = Φ(g)(h)` for `g ∈ Γ₀`, `h ∈ Γ`.
    pub fn eval(&self, g: usize, h: usize) -> Result<TorsionScalar> {
        self.image(g)
            .map(|c| c.eval(h))
            .ok_or_else(|| Error::NotInGamma0(self.gamma0.group().label(g)))
    }

    pub fn describe(&self) -> String {
        let group = self.gamma0.group();
        if self.images.is_empty() {
            return "Φ trivial".into();
        }
        self.gamma0
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(&g, chi)| {
                let exps = group
                    .character_exponents(chi)
                    .map(|e| format!("{e:?}"))
                    .unwrap_or_else(|| "?".into());
                format!("Φ({}) = χ^{}", group.label(g), exps)
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Parameters of a datum produced by the cyclic construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicParameters {
    pub phi_index: usize,
    pub nu: String,
    pub m: TorsionScalar,
    pub q: TorsionScalar,
}

#[derive(Clone, Debug)]
pub struct AssociativeZestingDatum {
    yd: YetterDrinfeldDatum,
    grading: Grading,
    phi: CentralityMap,
    lambda: GroupCochain,
    omega: ScalarCochain,
    parameters: Option<CyclicParameters>,
}

impl AssociativeZestingDatum {
    pub fn new(
        yd: YetterDrinfeldDatum,
        grading: Grading,
        phi: CentralityMap,
        lambda: GroupCochain,
        omega: ScalarCochain,
    ) -> Result<Self> {
        let gamma = yd.group();
        if grading.source() != gamma {
            return Err(Error::InvalidParameters("grading is defined on another group".into()));
        }
        if phi.gamma0().group() != gamma {
            return Err(Error::InvalidParameters("Γ₀ is not a subgroup of Γ".into()));
        }
        let g = grading.target();
        if lambda.arity() != 2 || lambda.domain() != g {
            return Err(Error::InvalidParameters("λ must be a 2-cochain on G".into()));
        }
        if omega.arity() != 3 || omega.domain() != g {
            return Err(Error::InvalidParameters("ω must be a 3-cochain on G".into()));
        }
        if lambda.coefficients().subgroup() != phi.gamma0() {
            return Err(Error::InvalidParameters("λ must take values in Γ₀".into()));
        }
        Ok(AssociativeZestingDatum {
            yd,
            grading,
            phi,
            lambda,
            omega,
            parameters: None,
        })
    }

    /// `Γ₀` trivial, `λ ≡ 1`, `ω ≡ 1`.
    pub fn trivial(yd: YetterDrinfeldDatum, grading: Grading) -> Result<Self> {
        let gamma0 = yd.group().trivial_subgroup();
        let g = grading.target().clone();
        let lambda = GroupCochain::identity(2, g.clone(), SubgroupCoefficients::new(gamma0.clone())?)?;
        let omega = ScalarCochain::identity(3, g, UnityScalars::ALL)?;
        Self::new(yd, grading, CentralityMap::trivial(&gamma0), lambda, omega)
    }

    pub fn yd(&self) -> &YetterDrinfeldDatum {
        &self.yd
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn gamma0(&self) -> &Subgroup {
        self.phi.gamma0()
    }

    pub fn phi(&self) -> &CentralityMap {
        &self.phi
    }

    pub fn lambda(&self) -> &GroupCochain {
        &self.lambda
    }

    pub fn omega(&self) -> &ScalarCochain {
        &self.omega
    }

    pub fn parameters(&self) -> Option<&CyclicParameters> {
        self.parameters.as_ref()
    }

    pub fn with_parameters(mut self, parameters: Option<CyclicParameters>) -> Self {
        self.parameters = parameters;
        self
    }

    pub fn with_omega(&self, omega: ScalarCochain) -> Result<Self> {
        let mut d = Self::new(
            self.yd.clone(),
            self.grading.clone(),
            self.phi.clone(),
            self.lambda.clone(),
            omega,
        )?;
        d.parameters = None;
        Ok(d)
    }

    /// `⟨γ(g), h⟩` for `g ∈ Γ₀`, `h ∈ Γ`.
    pub fn gamma_eval(&self, g: usize, h: usize) -> Result<TorsionScalar> {
        self.phi.eval(g, h)
    }

    pub fn summary(&self) -> String {
        let gamma = self.yd.group();
        match &self.parameters {
            Some(p) => format!(
                "{}; ν = {}; m = {}; q = {}",
                self.phi.describe(),
                p.nu,
                p.m,
                p.q
            ),
            None => format!(
                "{}; Γ₀ = {{{}}}; Γ = {}; G = {}",
                self.phi.describe(),
                self.gamma0().labels().join(", "),
                gamma.name(),
                self.grading.target().name()
            ),
        }
    }
}

/// Runs every defining condition of an associative zesting datum.
pub fn verify_assoc_datum(d: &AssociativeZestingDatum) -> VerificationReport {
    let gamma = d.yd.group();
    let gamma0 = d.gamma0();
    let g = d.grading.target();
    let mut report = VerificationReport::new(format!("associative zesting datum: {}", d.summary()));

    // Γ₀ ⊆ supp(V)
    let mut check = Check::new("Γ₀ ⊆ supp(V)", gamma0.order() as u64);
    match d.yd.support() {
        Ok(supp) => {
            for &x in gamma0.elements() {
                let inside = supp.contains(x);
                check.case(inside, || {
                    let rhs = if inside { "in supp(V)" } else { "not in supp(V)" };
                    (vec![gamma.label(x)], "in Γ₀".into(), rhs.into())
                });
            }
            report.push(check.finish());
        }
        Err(e) => report.push(CheckResult::failed(
            "Γ₀ ⊆ supp(V)",
            0,
            Evaluation {
                at: vec![],
                lhs: "supp(V)".into(),
                rhs: e.to_string(),
                holds: false,
            },
        )),
    }

    // (central condition) on group-likes: g h g⁻¹ = h
    let mut check = Check::new(
        "(central condition) Γ₀ central",
        (gamma0.order() * gamma.order()) as u64,
    );
    for &x in gamma0.elements() {
        for h in 0..gamma.order() {
            let c = gamma.conjugate(x, h);
            check.case(c == h, || {
                (
                    vec![gamma.label(x), gamma.label(h)],
                    gamma.label(c),
                    gamma.label(h),
                )
            });
        }
    }
    report.push(check.finish());

    let kernel = d.grading.kernel();
    let mut check = Check::new("Γ₀ ⊆ ker(Γ → G)", gamma0.order() as u64);
    for &x in gamma0.elements() {
        check.case(kernel.contains(x), || {
            (
                vec![gamma.label(x)],
                g.label(d.grading.project(x)),
                g.label(0),
            )
        });
    }
    report.push(check.finish());

    let hom = match &d.phi.defect {
        None => CheckResult::passed("Φ: Γ₀ → Γ̂ homomorphism", gamma0.order() as u64),
        Some(msg) => CheckResult::failed(
            "Φ: Γ₀ → Γ̂ homomorphism",
            gamma0.order() as u64,
            Evaluation {
                at: vec![],
                lhs: msg.clone(),
                rhs: "single character".into(),
                holds: false,
            },
        ),
    };
    report.push(hom);

    // g · x_i = ⟨g_i, Φ(g)⟩ x_i
    let mut check = Check::new(
        "(central-subgr-condition)",
        (gamma0.order() * d.yd.rank()) as u64,
    );
    for &x in gamma0.elements() {
        for (i, &gi) in d.yd.degrees().iter().enumerate() {
            let lhs = d.yd.action_scalar(x, i);
            let rhs = d.phi.eval(x, gi);
            let holds = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
            check.case(holds, || {
                (
                    vec![gamma.label(x), format!("x_{i}")],
                    lhs.as_ref().map(|s| s.to_string()).unwrap_or_else(|e| e.to_string()),
                    rhs.as_ref().map(|s| s.to_string()).unwrap_or_else(|e| e.to_string()),
                )
            });
        }
    }
    report.push(check.finish());

    // λ(a,b) λ(ab,c) = λ(b,c) λ(a,bc)
    let lam = &d.lambda;
    let n = g.order();
    let mut check = Check::new("λ normalized 2-cocycle", (n * n * n) as u64);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = gamma.mul(lam.eval(&[a, b]), lam.eval(&[g.mul(a, b), c]));
                let rhs = gamma.mul(lam.eval(&[b, c]), lam.eval(&[a, g.mul(b, c)]));
                check.case(lhs == rhs, || {
                    (
                        vec![g.label(a), g.label(b), g.label(c)],
                        gamma.label(lhs),
                        gamma.label(rhs),
                    )
                });
            }
        }
    }
    report.push(check.finish());

    report.push(CheckResult::passed("ω normalized", d.omega.values().len() as u64));

    report.push(check_assoczesting(d));
    report
}

/// `⟨γ(λ(g₁,g₂)), λ(g₃,g₄)⟩ = δω(g₁,g₂,g₃,g₄)` over `G⁴`.
fn check_assoczesting(d: &AssociativeZestingDatum) -> CheckResult {
    let g = d.grading.target();
    let n = g.order();
    let lam = &d.lambda;
    let om = &d.omega;
    let mut check = Check::new("(assoczesting)", (n as u64).pow(4));
    for g1 in 0..n {
        for g2 in 0..n {
            let l12 = lam.eval(&[g1, g2]);
            let g12 = g.mul(g1, g2);
            for g3 in 0..n {
                let g23 = g.mul(g2, g3);
                for g4 in 0..n {
                    let lhs = d.phi.eval(l12, lam.eval(&[g3, g4]));
                    let num = om.eval(&[g1, g2, g3]) * om.eval(&[g1, g23, g4]) * om.eval(&[g2, g3, g4]);
                    let den = om.eval(&[g12, g3, g4]) * om.eval(&[g1, g2, g.mul(g3, g4)]);
                    let rhs = num / den;
                    let holds = matches!(&lhs, Ok(v) if *v == rhs);
                    check.case(holds, || {
                        (
                            vec![g.label(g1), g.label(g2), g.label(g3), g.label(g4)],
                            lhs.as_ref().map(|s| s.to_string()).unwrap_or_else(|e| e.to_string()),
                            rhs.to_string(),
                        )
                    });
                }
            }
        }
    }
    check.finish()
}

/// The datum `(γ, λ^{(ν)}, ω^{(q)})` over a cyclic grading `G = C_N`.
pub fn cyclic_zesting(
    yd: &YetterDrinfeldDatum,
    grading: &Grading,
    phi: &CentralityMap,
    nu: usize,
    q: TorsionScalar,
) -> Result<AssociativeZestingDatum> {
    let n = grading
        .cyclic_order()
        .ok_or_else(|| Error::NotCyclic(grading.target().name()))?;
    let gamma0 = phi.gamma0();
    let coeffs = SubgroupCoefficients::new(gamma0.clone())?;
    if !gamma0.contains(nu) {
        return Err(Error::NotInGamma0(yd.group().label(nu)));
    }
    let m = phi.eval(nu, nu)?;
    let qn = q.pow(n as i64)?;
    if qn != m {
        return Err(Error::RootMismatch {
            n: n as usize,
            got: qn.to_string(),
            expected: m.to_string(),
        });
    }
    let lambda = std_lambda2(coeffs, nu, n);
    let omega = std_omega3(UnityScalars::ALL, q, n);
    let mut d = AssociativeZestingDatum::new(yd.clone(), grading.clone(), phi.clone(), lambda, omega)?;
    d.parameters = Some(CyclicParameters {
        phi_index: 0,
        nu: yd.group().label(nu),
        m,
        q,
    });
    Ok(d)
}

/// Every `Φ: Γ₀ → Γ̂` that is a homomorphism and satisfies
/// `g · x_i = Φ(g)(g_i) x_i` on `Γ₀`, in the order of [`FiniteGroup::all_characters`].
pub fn phi_candidates(yd: &YetterDrinfeldDatum, gamma0: &Subgroup) -> Result<Vec<CentralityMap>> {
    if !gamma0.is_central() {
        return Err(Error::InvalidParameters("Γ₀ must be central".into()));
    }
    if !gamma0.is_subset_of(&yd.support()?) {
        return Err(Error::InvalidParameters("Γ₀ must lie in supp(V)".into()));
    }
    let group = yd.group();
    let all = group.all_characters();
    let k = gamma0.generators().len();
    let radices = vec![all.len() as u64; k];
    let mut out = Vec::new();
    for choice in crate::group::mixed_radix(&radices) {
        let images: Vec<Character> = choice.iter().map(|&c| all[c as usize].clone()).collect();
        let phi = CentralityMap::new(gamma0, images)?;
        if !phi.is_homomorphism() {
            continue;
        }
        let mut ok = true;
        'outer: for &g in gamma0.elements() {
            for (i, &gi) in yd.degrees().iter().enumerate() {
                if yd.action_scalar(g, i)? != phi.eval(g, gi)? {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok && !out.contains(&phi) {
            out.push(phi);
        }
    }
    Ok(out)
}

/// Representatives of `Γ₀ / Γ₀^N`, taken as powers of the first generator
/// of `Γ₀` where possible, then in canonical order.
pub fn lambda_class_representatives(gamma0: &Subgroup, n: u64) -> Vec<usize> {
    let group = gamma0.group();
    let powers = gamma0.power_subgroup(n as i64);
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    let mut reps = Vec::new();
    let mut consider = |x: usize, reps: &mut Vec<usize>| {
        if !covered.contains(&x) {
            reps.push(x);
            for &p in powers.elements() {
                covered.insert(group.mul(x, p));
            }
        }
    };
    if let Some(&first) = gamma0.generators().first() {
        let ord = group.element_order(first);
        for s in 0..ord {
            consider(group.pow(first, s as i64), &mut reps);
        }
    } else {
        consider(group.identity(), &mut reps);
    }
    for &x in gamma0.elements() {
        consider(x, &mut reps);
    }
    reps
}

/// How `ν` is chosen in a cyclic enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleChoice {
    /// One `ν` per class of `Γ₀/Γ₀^N`.
    AllClasses,
    /// A single fixed `ν ∈ Γ₀`.
    Fixed(usize),
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub phis: Vec<CentralityMap>,
    pub nus: Vec<usize>,
    pub roots: u64,
    pub data: Vec<AssociativeZestingDatum>,
}

impl Enumeration {
    pub fn headline(&self) -> String {
        let fam = self.phis.len();
        let mut parts = vec![format!("{fam} {}", if fam == 1 { "family" } else { "families" })];
        if self.nus.len() != 1 {
            parts.push(format!("{} classes", self.nus.len()));
        }
        parts.push(format!(
            "{} {}",
            self.roots,
            if self.roots == 1 { "root" } else { "roots" }
        ));
        format!(
            "{} {} ({})",
            self.data.len(),
            if self.data.len() == 1 { "zesting" } else { "zestings" },
            parts.join(" × ")
        )
    }
}

/// All data `(γ_Φ, λ^{(ν)}, ω^{(q)})` with `Φ` from [`phi_candidates`], `ν`
/// per `choice`, and `q` ranging over the `N` roots of `⟨γ(ν), ν⟩`.
pub fn enumerate_cyclic_zestings(
    yd: &YetterDrinfeldDatum,
    grading: &Grading,
    gamma0: &Subgroup,
    choice: CocycleChoice,
) -> Result<Enumeration> {
    let n = grading
        .cyclic_order()
        .ok_or_else(|| Error::NotCyclic(grading.target().name()))?;
    let phis = phi_candidates(yd, gamma0)?;
    let nus = match choice {
        CocycleChoice::AllClasses => lambda_class_representatives(gamma0, n),
        CocycleChoice::Fixed(nu) => {
            if !gamma0.contains(nu) {
                return Err(Error::NotInGamma0(yd.group().label(nu)));
            }
            vec![nu]
        }
    };
    let mut data = Vec::new();
    for (a, phi) in phis.iter().enumerate() {
        for &nu in &nus {
            let m = phi.eval(nu, nu)?;
            for q in m.nth_roots(n)? {
                let mut d = cyclic_zesting(yd, grading, phi, nu, q)?;
                if let Some(p) = d.parameters.as_mut() {
                    p.phi_index = a;
                }
                data.push(d);
            }
        }
    }
    Ok(Enumeration {
        phis,
        nus,
        roots: n,
        data,
    })
}

// ---- braided zesting ----

/// A bicharacter `Γ × Γ → k^×`, given on pairs of canonical generators.
#[derive(Clone, Debug)]
pub struct Bicharacter {
    group: Arc<FiniteGroup>,
    generator_values: Vec<Vec<TorsionScalar>>,
    table: Vec<TorsionScalar>,
    defect: Option<String>,
}

impl Bicharacter {
    pub fn new(group: &Arc<FiniteGroup>, generator_values: Vec<Vec<TorsionScalar>>) -> Result<Self> {
        let gens = group.generators();
        let k = gens.len();
        if generator_values.len() != k || generator_values.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidParameters(format!(
                "r₀ needs a {k}×{k} table on generators"
            )));
        }
        let n = group.order();
        let mut defect = None;
        // first slot: h ↦ r₀(h, g_b) for each generator g_b
        let mut columns = Vec::with_capacity(k);
        for b in 0..k {
            let vals: Vec<TorsionScalar> = (0..k).map(|a| generator_values[a][b]).collect();
            match extend_multiplicatively(group, gens, &vals) {
                Ok(t) => columns.push(t),
                Err(e) => {
                    defect.get_or_insert(format!("r₀(−, {}) : {e}", group.label(gens[b])));
                    columns.push(vec![TorsionScalar::ONE; n]);
                }
            }
        }
        let mut table = vec![TorsionScalar::ONE; n * n];
        for h in 0..n {
            let vals: Vec<TorsionScalar> = columns.iter().map(|c| c[h]).collect();
            match extend_multiplicatively(group, gens, &vals) {
                Ok(row) => table[h * n..(h + 1) * n].copy_from_slice(&row),
                Err(e) => {
                    defect.get_or_insert(format!("r₀({}, −) : {e}", group.label(h)));
                }
            }
        }
        if n == 1 {
            table[0] = TorsionScalar::ONE;
        }
        Ok(Bicharacter {
            group: group.clone(),
            generator_values,
            table,
            defect,
        })
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        let k = group.generators().len();
        Self::new(group, vec![vec![TorsionScalar::ONE; k]; k]).expect("trivial bicharacter")
    }

    #[inline]
    pub fn eval(&self, g: usize, h: usize) -> TorsionScalar {
        self.table[g * self.group.order() + h]
    }

    pub fn generator_values(&self) -> &[Vec<TorsionScalar>] {
        &self.generator_values
    }

    pub fn is_well_defined(&self) -> bool {
        self.defect.is_none()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
}

#[derive(Clone, Debug)]
pub struct BraidedZestingDatum {
    assoc: AssociativeZestingDatum,
    r0: Bicharacter,
    t: ScalarCochain,
}

impl BraidedZestingDatum {
    pub fn new(assoc: AssociativeZestingDatum, r0: Bicharacter, t: ScalarCochain) -> Result<Self> {
        if r0.group() != assoc.yd().group() {
            return Err(Error::InvalidParameters("r₀ is defined on another group".into()));
        }
        if t.arity() != 2 || t.domain() != assoc.grading().target() {
            return Err(Error::InvalidParameters("t must be a 2-cochain on G".into()));
        }
        Ok(BraidedZestingDatum { assoc, r0, t })
    }

    pub fn assoc(&self) -> &AssociativeZestingDatum {
        &self.assoc
    }

    pub fn r0(&self) -> &Bicharacter {
        &self.r0
    }

    pub fn t(&self) -> &ScalarCochain {
        &self.t
    }
}

/// `λ_g(s) = r₀(γ_s, g) r₀(g, γ_s)` over every representative `γ_s` of `s`.
/// Succeeds when the value is representative-independent and multiplicative.
pub fn character_inducing(
    r0: &Bicharacter,
    grading: &Grading,
    g: usize,
) -> std::result::Result<Vec<TorsionScalar>, Evaluation> {
    let gamma = grading.source();
    let target = grading.target();
    let double = |x: usize| r0.eval(x, g) * r0.eval(g, x);
    let mut values = Vec::with_capacity(target.order());
    for s in 0..target.order() {
        let fiber = grading.fiber(s);
        let first = fiber[0];
        let v = double(first);
        if let Some(&other) = fiber.iter().find(|&&x| double(x) != v) {
            return Err(Evaluation {
                at: vec![gamma.label(g), target.label(s), gamma.label(first), gamma.label(other)],
                lhs: v.to_string(),
                rhs: double(other).to_string(),
                holds: false,
            });
        }
        values.push(v);
    }
    for a in 0..target.order() {
        for b in 0..target.order() {
            let ab = target.mul(a, b);
            if values[ab] != values[a] * values[b] {
                return Err(Evaluation {
                    at: vec![gamma.label(g), target.label(a), target.label(b)],
                    lhs: values[ab].to_string(),
                    rhs: (values[a] * values[b]).to_string(),
                    holds: false,
                });
            }
        }
    }
    Ok(values)
}

/// Runs the associative checks followed by the braided conditions.
pub fn verify_braided_datum(bd: &BraidedZestingDatum) -> VerificationReport {
    let d = &bd.assoc;
    let mut report = verify_assoc_datum(d);
    report.subject = format!("braided zesting datum: {}", d.summary());
    let gamma = d.yd().group();
    let g = d.grading().target();
    let n = g.order();
    let lam = d.lambda();
    let om = d.omega();
    let t = &bd.t;
    let r0 = &bd.r0;

    let mut check = Check::new("G abelian", (n * n) as u64);
    for a in 0..n {
        for b in 0..n {
            let (ab, ba) = (g.mul(a, b), g.mul(b, a));
            check.case(ab == ba, || {
                (vec![g.label(a), g.label(b)], g.label(ab), g.label(ba))
            });
        }
    }
    report.push(check.finish());

    report.push(match &r0.defect {
        None => CheckResult::passed("r₀ bicharacter", (gamma.order() * gamma.order()) as u64),
        Some(msg) => CheckResult::failed(
            "r₀ bicharacter",
            0,
            Evaluation {
                at: vec![],
                lhs: msg.clone(),
                rhs: "bimultiplicative".into(),
                holds: false,
            },
        ),
    });

    let mut check = Check::new("λ symmetric", (n * n) as u64);
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (lam.eval(&[a, b]), lam.eval(&[b, a]));
            check.case(x == y, || {
                (vec![g.label(a), g.label(b)], gamma.label(x), gamma.label(y))
            });
        }
    }
    report.push(check.finish());

    // r₀(g, g_i)⁻¹ = ⟨g_i, Φ(g)⟩
    let gamma0 = d.gamma0();
    let mut check = Check::new("r₀–Φ compatibility", (gamma0.order() * d.yd().rank()) as u64);
    for &x in gamma0.elements() {
        for &gi in d.yd().degrees() {
            let lhs = r0.eval(x, gi).inv().expect("nonzero");
            let rhs = d.gamma_eval(x, gi);
            let holds = matches!(&rhs, Ok(v) if *v == lhs);
            check.case(holds, || {
                (
                    vec![gamma.label(x), gamma.label(gi)],
                    lhs.to_string(),
                    rhs.as_ref().map(|s| s.to_string()).unwrap_or_else(|e| e.to_string()),
                )
            });
        }
    }
    report.push(check.finish());

    let lambda_values: BTreeSet<usize> = lam.values().iter().copied().collect();
    let mut row = CheckResult::passed("λ values π-character-inducing", lambda_values.len() as u64);
    for &v in &lambda_values {
        if let Err(ev) = character_inducing(r0, d.grading(), v) {
            row = CheckResult::failed("λ values π-character-inducing", lambda_values.len() as u64, ev);
            break;
        }
    }
    report.push(row);

    let cubes = (n * n * n) as u64;
    let mut check = Check::new("(BZ2)", cubes);
    for g1 in 0..n {
        for g2 in 0..n {
            for g3 in 0..n {
                let lhs = om.eval(&[g1, g2, g3]) * om.eval(&[g2, g3, g1]) / om.eval(&[g2, g1, g3]);
                let rhs = t.eval(&[g1, g2]) * t.eval(&[g1, g3]) / t.eval(&[g1, g.mul(g2, g3)]);
                check.case(lhs == rhs, || {
                    (
                        vec![g.label(g1), g.label(g2), g.label(g3)],
                        lhs.to_string(),
                        rhs.to_string(),
                    )
                });
            }
        }
    }
    report.push(check.finish());

    let double = |x: usize, y: usize| r0.eval(x, y) * r0.eval(y, x);
    let mut check = Check::new("(BZ3)", cubes);
    let mut indep = Check::new("(BZ3) representative independence", cubes);
    for g1 in 0..n {
        for g2 in 0..n {
            let l = lam.eval(&[g1, g2]);
            for g3 in 0..n {
                let rep = d.grading().representative(g3);
                let lhs = double(l, rep);
                let rhs = om.eval(&[g1, g2, g3]) * om.eval(&[g3, g1, g2]) / om.eval(&[g1, g3, g2])
                    * t.eval(&[g1, g3])
                    * t.eval(&[g2, g3])
                    / t.eval(&[g.mul(g1, g2), g3]);
                check.case(lhs == rhs, || {
                    (
                        vec![g.label(g1), g.label(g2), g.label(g3)],
                        format!("r₀({0}, {1}) r₀({1}, {0}) = {2}", gamma.label(l), gamma.label(rep), lhs),
                        rhs.to_string(),
                    )
                });
                let fiber = d.grading().fiber(g3);
                let other = fiber.iter().copied().find(|&x| double(l, x) != lhs);
                indep.case(other.is_none(), || {
                    let x = other.unwrap_or(rep);
                    (
                        vec![g.label(g1), g.label(g2), g.label(g3), gamma.label(x)],
                        lhs.to_string(),
                        double(l, x).to_string(),
                    )
                });
            }
        }
    }
    report.push(check.finish());
    report.push(indep.finish());
    report
}

// ---- built-in example data ----

/// `Γ₀ = ⟨α₁⟩` for `A(1|2)`.
pub fn a12_gamma0(yd: &YetterDrinfeldDatum) -> Subgroup {
    let group = yd.group();
    group.subgroup_generated(&[group.generators()[0]])
}

/// The `A(1|2)` family: `Φ` from [`phi_candidates`], `ν = α₁`, `q^n = −1`.
pub fn a12_enumeration(n: u64) -> Result<Enumeration> {
    let yd = crate::ydmodule::builtin_a12(n)?;
    let grading = Grading::universal_cyclic(&yd)?;
    let gamma0 = a12_gamma0(&yd);
    let alpha1 = yd.group().generators()[0];
    enumerate_cyclic_zestings(&yd, &grading, &gamma0, CocycleChoice::Fixed(alpha1))
}

/// `Γ₀ = Z(Γ) ∩ supp(V)` for `FK₃`, which is `⟨t^{2N}⟩`.
pub fn fk3_gamma0(yd: &YetterDrinfeldDatum) -> Result<Subgroup> {
    Ok(yd.group().center().intersection(&yd.support()?))
}

pub fn fk3_enumeration(ell: u64, k: u64) -> Result<Enumeration> {
    let yd = crate::ydmodule::builtin_fk3(ell, k)?;
    let grading = Grading::universal_cyclic(&yd)?;
    let gamma0 = fk3_gamma0(&yd)?;
    enumerate_cyclic_zestings(&yd, &grading, &gamma0, CocycleChoice::AllClasses)
}

/// The braided `ℤ/4` datum: `r₀(σ,σ) = i`, `Φ(σ²)(σ) = −1`, `λ(1,1) = σ²`,
/// `ω(1,1,1) = ζ`, `t(1,1) = η`, over the universal grading `C₂`.
pub fn z4_braided(zeta: TorsionScalar, eta: TorsionScalar) -> Result<BraidedZestingDatum> {
    let yd = crate::ydmodule::builtin_z4()?;
    let group = yd.group().clone();
    let sigma = group.generators()[0];
    let g = group.mul(sigma, sigma);
    let grading = Grading::universal_cyclic(&yd)?;
    let gamma0 = group.subgroup_generated(&[g]);
    let phi = CentralityMap::new(
        &gamma0,
        vec![group.character_from_generators(&[TorsionScalar::MINUS_ONE])?],
    )?;
    let lambda = std_lambda2(SubgroupCoefficients::new(gamma0)?, g, 2);
    let omega = std_omega3(UnityScalars::ALL, zeta, 2);
    let assoc = AssociativeZestingDatum::new(yd, grading.clone(), phi, lambda, omega)?;
    let t = ScalarCochain::from_fn(2, grading.target().clone(), UnityScalars::ALL, |a| {
        if a == [1, 1] {
            eta
        } else {
            TorsionScalar::ONE
        }
    })?;
    let r0 = Bicharacter::new(&group, vec![vec![TorsionScalar::I]])?;
    BraidedZestingDatum::new(assoc, r0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ydmodule::{builtin_a12, builtin_fk3};

    #[test]
    fn a12_phi_candidates() {
        for (n, expected) in [(3u64, vec![0i64]), (4, vec![0, 2])] {
            let yd = builtin_a12(n).unwrap();
            let gamma0 = a12_gamma0(&yd);
            let phis = phi_candidates(&yd, &gamma0).unwrap();
            let group = yd.group();
            // Φ_k(α₁) = ν₁ ν₂^{k n}: value −1 on α₁ and ζ_n^k on α₂... read off α₂
            let ks: Vec<i64> = phis
                .iter()
                .map(|p| {
                    let chi = &p.generator_images()[0];
                    assert_eq!(chi.eval(group.generators()[0]), TorsionScalar::MINUS_ONE);
                    let v = chi.eval(group.generators()[1]);
                    (0..n as i64)
                        .find(|&k| TorsionScalar::zeta_pow(n, k) == v)
                        .expect("value in μ_n")
                })
                .collect();
            assert_eq!(ks, expected, "n = {n}");
        }
    }

    #[test]
    fn a12_gamma_eval() {
        let yd = builtin_a12(3).unwrap();
        let gamma0 = a12_gamma0(&yd);
        let phi = &phi_candidates(&yd, &gamma0).unwrap()[0];
        let a1 = yd.group().generators()[0];
        let a2 = yd.group().generators()[1];
        assert_eq!(phi.eval(a1, a1).unwrap(), TorsionScalar::MINUS_ONE);
        assert_eq!(phi.eval(0, a2).unwrap(), TorsionScalar::ONE);
        assert!(matches!(phi.eval(a2, a1), Err(Error::NotInGamma0(_))));
    }

    #[test]
    fn a12_counts_and_validity() {
        for n in 2..=6u64 {
            let e = a12_enumeration(n).unwrap();
            let expected = if n % 2 == 1 { n } else { 2 * n };
            assert_eq!(e.data.len() as u64, expected, "n = {n}");
            for d in &e.data {
                let r = verify_assoc_datum(d);
                assert!(r.all_pass(), "{r}");
            }
        }
        assert_eq!(a12_enumeration(3).unwrap().headline(), "3 zestings (1 family × 3 roots)");
        assert_eq!(a12_enumeration(2).unwrap().headline(), "4 zestings (2 families × 2 roots)");
    }

    #[test]
    fn fk3_counts() {
        let e = fk3_enumeration(9, 1).unwrap();
        assert_eq!(e.phis.len(), 3);
        assert_eq!(e.nus.len(), 3);
        assert_eq!(e.data.len(), 27);
        assert_eq!(e.headline(), "27 zestings (3 families × 3 classes × 3 roots)");
        let yd = builtin_fk3(9, 1).unwrap();
        let group = yd.group();
        let t = group.generators()[1];
        let t6 = group.pow(t, 6);
        // Φ_a(t⁶) = χ^{6a} with χ(t) = ζ₁₈
        let mut exps: Vec<i64> = e
            .phis
            .iter()
            .map(|p| {
                let v = p.eval(t6, t).unwrap();
                (0..18).find(|&j| TorsionScalar::zeta_pow(18, j) == v).unwrap()
            })
            .collect();
        exps.sort();
        assert_eq!(exps, vec![0, 6, 12]);
        for p in &e.phis {
            assert_eq!(p.eval(t6, t6).unwrap(), TorsionScalar::ONE);
        }
        for d in e.data.iter().step_by(4) {
            assert!(verify_assoc_datum(d).all_pass());
        }
    }

    #[test]
    fn fk3_trivial_case() {
        let e = fk3_enumeration(3, 1).unwrap();
        assert_eq!(e.phis.len(), 1);
        assert!(e.phis[0].gamma0().is_trivial());
        for d in &e.data {
            assert!(d.lambda().is_identity());
            assert!(verify_assoc_datum(d).all_pass());
        }
    }

    #[test]
    fn root_mismatch_and_wrong_root() {
        let yd = builtin_a12(2).unwrap();
        let grading = Grading::universal_cyclic(&yd).unwrap();
        let gamma0 = a12_gamma0(&yd);
        let phi = phi_candidates(&yd, &gamma0).unwrap().remove(0);
        let a1 = yd.group().generators()[0];
        let err = cyclic_zesting(&yd, &grading, &phi, a1, TorsionScalar::MINUS_ONE).unwrap_err();
        assert!(matches!(err, Error::RootMismatch { .. }));
        // force ω^{(−1)}: (−1)² = 1 ≠ m = −1
        let good = cyclic_zesting(&yd, &grading, &phi, a1, TorsionScalar::I).unwrap();
        let bad = good
            .with_omega(std_omega3(UnityScalars::ALL, TorsionScalar::MINUS_ONE, 2))
            .unwrap();
        let r = verify_assoc_datum(&bad);
        let row = r.get("(assoczesting)").unwrap();
        assert!(!row.pass);
        assert_eq!(row.counterexample.as_ref().unwrap().at, vec!["1", "1", "1", "1"]);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn identity_nu_is_trivial() {
        let yd = builtin_a12(3).unwrap();
        let grading = Grading::universal_cyclic(&yd).unwrap();
        let phi = phi_candidates(&yd, &a12_gamma0(&yd)).unwrap().remove(0);
        let d = cyclic_zesting(&yd, &grading, &phi, 0, TorsionScalar::ONE).unwrap();
        assert!(d.lambda().is_identity() && d.omega().is_identity());
        assert!(verify_assoc_datum(&d).all_pass());
        let triv = AssociativeZestingDatum::trivial(yd, grading).unwrap();
        assert!(verify_assoc_datum(&triv).all_pass());
    }

    #[test]
    fn z4_braided_rows() {
        for zeta in TorsionScalar::roots_of_unity(4) {
            for eta in zeta.nth_roots(2).unwrap() {
                let bd = z4_braided(zeta, eta).unwrap();
                let r = verify_braided_datum(&bd);
                let sq = zeta.pow(2).unwrap() == TorsionScalar::ONE;
                assert!(r.passes("(BZ2)"), "{r}");
                assert_eq!(r.passes("(assoczesting)"), sq, "{r}");
                assert_eq!(r.passes("(BZ3)"), sq, "{r}");
                assert!(r.passes("(BZ3) representative independence"));
                assert!(r.passes("r₀–Φ compatibility"));
                assert!(r.passes("λ values π-character-inducing"));
                assert_eq!(r.all_pass(), sq);
            }
        }
    }

    #[test]
    fn z4_character_inducing() {
        let bd = z4_braided(TorsionScalar::MINUS_ONE, TorsionScalar::I).unwrap();
        let g = bd.assoc().yd().degrees()[0];
        let chi = character_inducing(bd.r0(), bd.assoc().grading(), g).unwrap();
        assert!(chi.iter().all(|v| v.is_one()));
        // σ: r₀(x, σ)² = (−1)^x is constant on the cosets of ⟨σ²⟩
        let sigma = bd.r0().group().generators()[0];
        let chi = character_inducing(bd.r0(), bd.assoc().grading(), sigma).unwrap();
        assert_eq!(chi, vec![TorsionScalar::ONE, TorsionScalar::MINUS_ONE]);
    }

    #[test]
    fn bicharacter_extension() {
        let g = FiniteGroup::product(&[2, 4]);
        let vals = vec![
            vec![TorsionScalar::MINUS_ONE, TorsionScalar::ONE],
            vec![TorsionScalar::MINUS_ONE, TorsionScalar::I],
        ];
        let r = Bicharacter::new(&g, vals).unwrap();
        assert!(r.is_well_defined());
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    assert_eq!(r.eval(g.mul(a, b), c), r.eval(a, c) * r.eval(b, c));
                    assert_eq!(r.eval(a, g.mul(b, c)), r.eval(a, b) * r.eval(a, c));
                }
            }
        }
        // i on an order-2 generator is inconsistent
        let bad = Bicharacter::new(&g, vec![vec![TorsionScalar::I, TorsionScalar::ONE], vec![TorsionScalar::ONE; 2]])
            .unwrap();
        assert!(!bad.is_well_defined());
    }
}
