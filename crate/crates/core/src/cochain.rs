//! Normalized group cochains with trivial action.
//!
//! Cochains are dense tables over `Gⁿ` indexed in canonical element order.
//! Coefficients are any abelian group written multiplicatively, abstracted by
//! [`Coefficients`]; the crate root exposes the two concrete instances used
//! throughout as [`crate::ScalarCochain`] and [`crate::GroupCochain`].

use std::collections::HashSet;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{mixed_radix, FiniteGroup, Subgroup};
use crate::scalar::TorsionScalar;

pub const MAX_ARITY: usize = 4;
pub const DEFAULT_BUDGET: u128 = 20_000_000;

/// An abelian coefficient group `M`, written multiplicatively.
pub trait Coefficients: Clone + Debug {
    type Value: Copy + Eq + Hash + Debug;

    fn identity(&self) -> Self::Value;
    fn op(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn inverse(&self, a: Self::Value) -> Self::Value;
    fn contains(&self, a: &Self::Value) -> bool;
    /// All elements, or `None` when `M` is infinite.
    fn elements(&self) -> Option<Vec<Self::Value>>;
    fn describe(&self) -> String;
    fn format(&self, a: &Self::Value) -> String;

    fn pow(&self, a: Self::Value, k: i64) -> Self::Value {
        let base = if k < 0 { self.inverse(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.op(acc, base))
    }

    fn div(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        self.op(a, self.inverse(b))
    }
}

/// Nonzero scalars, optionally restricted to `μ_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnityScalars {
    pub bound: Option<u64>,
}

impl UnityScalars {
    pub const ALL: UnityScalars = UnityScalars { bound: None };

    pub fn roots(k: u64) -> Self {
        UnityScalars { bound: Some(k) }
    }
}

impl Coefficients for UnityScalars {
    type Value = TorsionScalar;

    fn identity(&self) -> TorsionScalar {
        TorsionScalar::ONE
    }

    #[inline]
    fn op(&self, a: TorsionScalar, b: TorsionScalar) -> TorsionScalar {
        a * b
    }

    fn inverse(&self, a: TorsionScalar) -> TorsionScalar {
        a.inv().expect("unity scalars are invertible")
    }

    fn contains(&self, a: &TorsionScalar) -> bool {
        match (a.order(), self.bound) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(o), Some(k)) => k % o == 0,
        }
    }

    fn elements(&self) -> Option<Vec<TorsionScalar>> {
        self.bound.map(TorsionScalar::roots_of_unity)
    }

    fn describe(&self) -> String {
        match self.bound {
            None => "k^×".into(),
            Some(k) => format!("μ_{k}"),
        }
    }

    fn format(&self, a: &TorsionScalar) -> String {
        a.to_string()
    }

    fn pow(&self, a: TorsionScalar, k: i64) -> TorsionScalar {
        a.pow(k).expect("unity scalars are invertible")
    }
}

/// An abelian subgroup of some finite group; values are parent indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCoefficients(Subgroup);

impl SubgroupCoefficients {
    pub fn new(subgroup: Subgroup) -> Result<Self> {
        if !subgroup.is_abelian() {
            return Err(Error::NotAbelian(format!(
                "subgroup {{{}}}",
                subgroup.labels().join(", ")
            )));
        }
        Ok(SubgroupCoefficients(subgroup))
    }

    /// The whole of an abelian group.
    pub fn whole(group: &Arc<FiniteGroup>) -> Result<Self> {
        Self::new(group.whole())
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.0
    }
}

impl Coefficients for SubgroupCoefficients {
    type Value = usize;

    fn identity(&self) -> usize {
        0
    }

    #[inline]
    fn op(&self, a: usize, b: usize) -> usize {
        self.0.group().mul(a, b)
    }

    fn inverse(&self, a: usize) -> usize {
        self.0.group().inv(a)
    }

    fn contains(&self, a: &usize) -> bool {
        self.0.contains(*a)
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some(self.0.elements().to_vec())
    }

    fn describe(&self) -> String {
        format!("⟨{}⟩ ≤ {}", self.0.generators().iter().map(|&g| self.0.group().label(g)).collect::<Vec<_>>().join(", "), self.0.group())
    }

    fn format(&self, a: &usize) -> String {
        self.0.group().label(*a)
    }
}

#[derive(Clone)]
pub struct NormalizedCochain<C: Coefficients> {
    arity: usize,
    domain: Arc<FiniteGroup>,
    coefficients: C,
    values: Vec<C::Value>,
}

impl<C: Coefficients> Debug for NormalizedCochain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormalizedCochain")
            .field("arity", &self.arity)
            .field("domain", &self.domain.name())
            .field("coefficients", &self.coefficients.describe())
            .field("values", &self.values)
            .finish()
    }
}

impl<C: Coefficients> PartialEq for NormalizedCochain<C> {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.domain == other.domain && self.values == other.values
    }
}

fn table_len(order: usize, arity: usize) -> usize {
    order.pow(arity as u32)
}

fn unflatten(mut idx: usize, order: usize, arity: usize, out: &mut [usize]) {
    for slot in out[..arity].iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
}

impl<C: Coefficients> NormalizedCochain<C> {
    pub fn from_fn(
        arity: usize,
        domain: Arc<FiniteGroup>,
        coefficients: C,
        mut f: impl FnMut(&[usize]) -> C::Value,
    ) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::ArityTooHigh(arity));
        }
        let n = domain.order();
        let mut args = [0usize; MAX_ARITY];
        let values = (0..table_len(n, arity))
            .map(|idx| {
                unflatten(idx, n, arity, &mut args);
                f(&args[..arity])
            })
            .collect();
        Self::from_table(arity, domain, coefficients, values)
    }

    /// Builds from a flat table in canonical domain order, checking
    /// normalization and membership of every value.
    pub fn from_table(
        arity: usize,
        domain: Arc<FiniteGroup>,
        coefficients: C,
        values: Vec<C::Value>,
    ) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::ArityTooHigh(arity));
        }
        let expected = table_len(domain.order(), arity);
        if values.len() != expected {
            return Err(Error::TableSize {
                expected,
                got: values.len(),
            });
        }
        let c = NormalizedCochain {
            arity,
            domain,
            coefficients,
            values,
        };
        let n = c.domain.order();
        let mut args = [0usize; MAX_ARITY];
        for (idx, v) in c.values.iter().enumerate() {
            unflatten(idx, n, arity, &mut args);
            if !c.coefficients.contains(v) {
                return Err(Error::ForeignValue(format!(
                    "{:?} at {}",
                    v,
                    c.format_args(&args[..arity])
                )));
            }
            if args[..arity].contains(&0) && *v != c.coefficients.identity() {
                return Err(Error::NotNormalized(c.format_args(&args[..arity])));
            }
        }
        Ok(c)
    }

    pub fn identity(arity: usize, domain: Arc<FiniteGroup>, coefficients: C) -> Result<Self> {
        let one = coefficients.identity();
        Self::from_fn(arity, domain, coefficients, |_| one)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn coefficients(&self) -> &C {
        &self.coefficients
    }

    pub fn values(&self) -> &[C::Value] {
        &self.values
    }

    fn flat(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let n = self.domain.order();
        args.iter().fold(0, |acc, &a| acc * n + a)
    }

    #[inline]
    pub fn eval(&self, args: &[usize]) -> C::Value {
        self.values[self.flat(args)]
    }

    pub fn format_args(&self, args: &[usize]) -> String {
        format!(
            "({})",
            args.iter()
                .map(|&a| self.domain.label(a))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }

    pub fn format_value(&self, v: &C::Value) -> String {
        self.coefficients.format(v)
    }

    pub fn is_identity(&self) -> bool {
        let one = self.coefficients.identity();
        self.values.iter().all(|v| *v == one)
    }

    /// First argument tuple with a non-identity value.
    pub fn first_non_identity(&self) -> Option<Vec<usize>> {
        let one = self.coefficients.identity();
        let n = self.domain.order();
        self.values.iter().position(|v| *v != one).map(|idx| {
            let mut args = vec![0; self.arity];
            unflatten(idx, n, self.arity, &mut args);
            args
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        assert!(self.domain == other.domain, "domain mismatch");
        NormalizedCochain {
            arity: self.arity,
            domain: self.domain.clone(),
            coefficients: self.coefficients.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| self.coefficients.op(a, b))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        NormalizedCochain {
            arity: self.arity,
            domain: self.domain.clone(),
            coefficients: self.coefficients.clone(),
            values: self
                .values
                .iter()
                .map(|&a| self.coefficients.inverse(a))
                .collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    /// The coboundary with trivial action:
    /// `δc(g₁…g_{n+1}) = c(g₂…) · Π_{i=1}^{n} c(…, g_i g_{i+1}, …)^{(−1)^i} · c(g₁…g_n)^{(−1)^{n+1}}`.
    pub fn delta(&self) -> Result<Self> {
        let n = self.arity;
        if n >= MAX_ARITY {
            return Err(Error::ArityTooHigh(n));
        }
        let g = &self.domain;
        let m = &self.coefficients;
        let mut face = [0usize; MAX_ARITY];
        let mut args = [0usize; MAX_ARITY];
        let order = g.order();
        // δ of a normalized cochain is normalized, so the table is built unchecked
        let mut f = |args: &[usize]| {
            let mut acc = self.eval(&args[1..]);
            for i in 0..n {
                face[..i].copy_from_slice(&args[..i]);
                face[i] = g.mul(args[i], args[i + 1]);
                face[i + 1..n].copy_from_slice(&args[i + 2..]);
                let v = self.eval(&face[..n]);
                acc = if i % 2 == 0 { m.div(acc, v) } else { m.op(acc, v) };
            }
            let last = self.eval(&args[..n]);
            if n % 2 == 0 {
                m.div(acc, last)
            } else {
                m.op(acc, last)
            }
        };
        let values = (0..table_len(order, n + 1))
            .map(|idx| {
                unflatten(idx, order, n + 1, &mut args);
                f(&args[..n + 1])
            })
            .collect();
        Ok(NormalizedCochain {
            arity: n + 1,
            domain: g.clone(),
            coefficients: m.clone(),
            values,
        })
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        Ok(self.delta()?.is_identity())
    }
}

// ---- standard cyclic cochains on C_N, elements identified with 0..N−1 ----

fn cyclic_domain(n: u64) -> Arc<FiniteGroup> {
    FiniteGroup::cyclic(n)
}

/// `β_ν(i) = ν^i`.
pub fn std_beta<C: Coefficients>(coefficients: C, nu: C::Value, n: u64) -> NormalizedCochain<C> {
    let m = coefficients.clone();
    NormalizedCochain::from_fn(1, cyclic_domain(n), coefficients, |a| m.pow(nu, a[0] as i64))
        .expect("β_ν is normalized")
}

/// `λ^{(ν)}(i, j) = ν` if `i + j ≥ N`, else 1.
pub fn std_lambda2<C: Coefficients>(coefficients: C, nu: C::Value, n: u64) -> NormalizedCochain<C> {
    let one = coefficients.identity();
    let n_us = n as usize;
    NormalizedCochain::from_fn(2, cyclic_domain(n), coefficients, |a| {
        if a[0] + a[1] >= n_us {
            nu
        } else {
            one
        }
    })
    .expect("λ^(ν) is normalized")
}

/// `ω^{(q)}(i, j, k) = q^k` if `i + j ≥ N`, else 1.
pub fn std_omega3<C: Coefficients>(coefficients: C, q: C::Value, n: u64) -> NormalizedCochain<C> {
    let m = coefficients.clone();
    let n_us = n as usize;
    NormalizedCochain::from_fn(3, cyclic_domain(n), coefficients, |a| {
        if a[0] + a[1] >= n_us {
            m.pow(q, a[2] as i64)
        } else {
            m.identity()
        }
    })
    .expect("ω^(q) is normalized")
}

/// `θ^{(ν)}(i, j, k, l) = ν` if `i + j ≥ N` and `k + l ≥ N`, else 1.
pub fn std_theta4<C: Coefficients>(coefficients: C, nu: C::Value, n: u64) -> NormalizedCochain<C> {
    let one = coefficients.identity();
    let n_us = n as usize;
    NormalizedCochain::from_fn(4, cyclic_domain(n), coefficients, |a| {
        if a[0] + a[1] >= n_us && a[2] + a[3] >= n_us {
            nu
        } else {
            one
        }
    })
    .expect("θ^(ν) is normalized")
}

// ---- brute-force cohomology ----

#[derive(Clone, Debug)]
pub struct CohomologyClasses<C: Coefficients> {
    pub degree: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub representatives: Vec<NormalizedCochain<C>>,
}

impl<C: Coefficients> CohomologyClasses<C> {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Every normalized cochain of the given arity, in a fixed order.
fn all_normalized<C: Coefficients>(
    arity: usize,
    domain: &Arc<FiniteGroup>,
    coefficients: &C,
    budget: u128,
) -> Result<impl Iterator<Item = NormalizedCochain<C>>> {
    let elems = coefficients
        .elements()
        .ok_or_else(|| Error::NotEnumerable(coefficients.describe()))?;
    let n = domain.order();
    let mut free = Vec::new();
    let mut args = [0usize; MAX_ARITY];
    for idx in 0..table_len(n, arity) {
        unflatten(idx, n, arity, &mut args);
        if !args[..arity].contains(&0) {
            free.push(idx);
        }
    }
    let needed = (elems.len() as u128)
        .checked_pow(free.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let radices = vec![elems.len() as u64; free.len()];
    let one = coefficients.identity();
    let len = table_len(n, arity);
    let domain = domain.clone();
    let coefficients = coefficients.clone();
    let digits: Vec<Vec<u64>> = mixed_radix(&radices).collect();
    Ok(digits.into_iter().map(move |d| {
        let mut values = vec![one; len];
        for (&pos, &k) in free.iter().zip(&d) {
            values[pos] = elems[k as usize];
        }
        NormalizedCochain {
            arity,
            domain: domain.clone(),
            coefficients: coefficients.clone(),
            values,
        }
    }))
}

/// Brute-force `Hⁿ(G, M)`: enumerates normalized cocycles and partitions them
/// by coboundary equivalence. Representatives appear in enumeration order, so
/// the identity class comes first.
pub fn enumerate_cohomology<C: Coefficients>(
    degree: usize,
    domain: &Arc<FiniteGroup>,
    coefficients: &C,
    budget: u128,
) -> Result<CohomologyClasses<C>> {
    if !(1..MAX_ARITY).contains(&degree) {
        return Err(Error::ArityTooHigh(degree));
    }
    let coboundaries: HashSet<Vec<C::Value>> = if degree == 1 {
        HashSet::from([vec![coefficients.identity(); domain.order()]])
    } else {
        all_normalized(degree - 1, domain, coefficients, budget)?
            .map(|b| b.delta().map(|d| d.values))
            .collect::<Result<_>>()?
    };
    let mut cocycles = 0;
    let mut reps: Vec<NormalizedCochain<C>> = Vec::new();
    for c in all_normalized(degree, domain, coefficients, budget)? {
        if !c.is_cocycle()? {
            continue;
        }
        cocycles += 1;
        let known = reps
            .iter()
            .any(|r| coboundaries.contains(&c.div(r).values));
        if !known {
            reps.push(c);
        }
    }
    Ok(CohomologyClasses {
        degree,
        cocycles,
        coboundaries: coboundaries.len(),
        representatives: reps,
    })
}

/// Searches for a normalized cochain `b` with `δb = c`.
pub fn find_primitive<C: Coefficients>(
    c: &NormalizedCochain<C>,
    budget: u128,
) -> Result<Option<NormalizedCochain<C>>> {
    if c.arity() < 2 {
        return Err(Error::InvalidParameters(
            "primitives are searched for cochains of arity ≥ 2".into(),
        ));
    }
    for b in all_normalized(c.arity() - 1, c.domain(), c.coefficients(), budget)? {
        if b.delta()?.values == c.values {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

pub fn cohomologous<C: Coefficients>(
    a: &NormalizedCochain<C>,
    b: &NormalizedCochain<C>,
    budget: u128,
) -> Result<bool> {
    if a.arity() == 1 {
        return Ok(a == b);
    }
    Ok(find_primitive(&a.div(b), budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn cn(n: u64) -> SubgroupCoefficients {
        SubgroupCoefficients::whole(&FiniteGroup::cyclic(n)).unwrap()
    }

    #[test]
    fn std_values() {
        let nu = TorsionScalar::zeta(5);
        let lam = std_lambda2(UnityScalars::ALL, nu, 3);
        assert_eq!(lam.eval(&[2, 2]), nu);
        assert_eq!(lam.eval(&[1, 1]), TorsionScalar::ONE);
        for i in 0..3 {
            assert_eq!(lam.eval(&[i, 0]), TorsionScalar::ONE);
        }
        let q = TorsionScalar::zeta(7);
        let om = std_omega3(UnityScalars::ALL, q, 3);
        assert_eq!(om.eval(&[1, 2, 2]), q * q);
        assert_eq!(om.eval(&[1, 1, 2]), TorsionScalar::ONE);
    }

    #[test]
    fn delta_examples() {
        for n in 1..=6u64 {
            let nu = TorsionScalar::zeta(4);
            let beta = std_beta(UnityScalars::ALL, nu, n);
            assert_eq!(
                beta.delta().unwrap(),
                std_lambda2(UnityScalars::ALL, nu.pow(n as i64).unwrap(), n)
            );
            assert!(std_lambda2(UnityScalars::ALL, nu, n).delta().unwrap().is_identity());
        }
        let g = FiniteGroup::cyclic(4);
        let one = NormalizedCochain::identity(2, g, UnityScalars::ALL).unwrap();
        assert!(one.delta().unwrap().is_identity());
    }

    #[test]
    fn omega_cocycle_condition() {
        // q = i on C₂: δω^(i) = θ^(−1), so not a cocycle.
        let om = std_omega3(UnityScalars::ALL, TorsionScalar::I, 2);
        assert!(!om.is_cocycle().unwrap());
        assert_eq!(
            om.delta().unwrap(),
            std_theta4(UnityScalars::ALL, TorsionScalar::MINUS_ONE, 2)
        );
        let om = std_omega3(UnityScalars::ALL, TorsionScalar::MINUS_ONE, 2);
        assert!(om.is_cocycle().unwrap());
    }

    #[test]
    fn arity_limits() {
        let th = std_theta4(UnityScalars::ALL, TorsionScalar::ONE, 2);
        assert!(matches!(th.delta(), Err(Error::ArityTooHigh(4))));
        let g = FiniteGroup::cyclic(2);
        assert!(NormalizedCochain::identity(5, g.clone(), UnityScalars::ALL).is_err());
        assert!(matches!(
            NormalizedCochain::from_table(1, g, UnityScalars::ALL, vec![TorsionScalar::I, TorsionScalar::ONE]),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn h2_c2_c2() {
        let g = FiniteGroup::cyclic(2);
        let h = enumerate_cohomology(2, &g, &cn(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(h.count(), 2);
        assert_eq!(h.coboundaries, 1);
        assert!(h.representatives[0].is_identity());
    }

    #[test]
    fn h2_trivial_coefficients() {
        for n in 1..=4 {
            let g = FiniteGroup::cyclic(n);
            let h = enumerate_cohomology(2, &g, &cn(1), DEFAULT_BUDGET).unwrap();
            assert_eq!(h.count(), 1);
        }
        let g = FiniteGroup::product(&[2, 2]);
        assert_eq!(enumerate_cohomology(2, &g, &cn(1), DEFAULT_BUDGET).unwrap().count(), 1);
    }

    #[test]
    fn h2_cyclic_matches_gcd() {
        for n in 1..=4u64 {
            for m in 1..=4u64 {
                let g = FiniteGroup::cyclic(n);
                let h = enumerate_cohomology(2, &g, &cn(m), DEFAULT_BUDGET).unwrap();
                assert_eq!(h.count() as u64, n.gcd(&m), "H²(C{n}, C{m})");
            }
        }
    }

    #[test]
    fn budget() {
        let g = FiniteGroup::cyclic(4);
        assert!(matches!(
            enumerate_cohomology(3, &g, &UnityScalars::roots(4), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            enumerate_cohomology(2, &g, &UnityScalars::ALL, 1000),
            Err(Error::NotEnumerable(_))
        ));
    }

    #[test]
    fn unity_and_group_coefficients_agree_on_h2() {
        let g = FiniteGroup::cyclic(3);
        let a = enumerate_cohomology(2, &g, &UnityScalars::roots(3), DEFAULT_BUDGET).unwrap();
        let b = enumerate_cohomology(2, &g, &cn(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(a.count(), b.count());
        assert_eq!(a.cocycles, b.cocycles);
    }
}
