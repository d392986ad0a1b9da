//! Small finite groups with canonical normal forms.
//!
//! Every group is materialized as a Cayley table over its elements listed in
//! lexicographic order of their normal forms; index 0 is always the identity.
//! Algorithms are exhaustive, which is fine below the order cap.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::TorsionScalar;

pub const DEFAULT_MAX_ORDER: usize = 256;

/// How a group is presented in files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic { n: u64 },
    Product { orders: Vec<u64> },
    /// `𝔾_{3,ℓ} = ⟨s, t | s³ = t^{2ℓ} = 1, ts = s²t⟩`, order `6ℓ`.
    Metacyclic33 { ell: u64 },
    /// Quotient of `parent` by the normal subgroup generated by `by`.
    Quotient {
        parent: Box<GroupSpec>,
        by: Vec<ElementRepr>,
    },
}

/// File representation of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Int(i64),
    Vector(Vec<i64>),
    Metacyclic { s: i64, t: i64 },
}

/// An element in normal form: residues for cyclic and product groups,
/// `[a, b]` for `s^a t^b` in `𝔾_{3,ℓ}`, the parent normal form of the
/// smallest coset member for quotients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub Vec<u64>);

#[derive(Debug)]
struct QuotientInfo {
    parent: Arc<FiniteGroup>,
    projection: Vec<usize>,
}

#[derive(Debug)]
pub struct FiniteGroup {
    spec: GroupSpec,
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, usize>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    quotient: Option<QuotientInfo>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for FiniteGroup {}

fn metacyclic_mul(ell: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
    // s^a t^b · s^c t^d = s^{a + c·2^b} t^{b+d}; 2^b ≡ 1 or 2 (mod 3) by parity.
    let twist = if x[1] % 2 == 0 { 1 } else { 2 };
    vec![(x[0] + y[0] * twist) % 3, (x[1] + y[1]) % (2 * ell)]
}

impl FiniteGroup {
    pub fn new(spec: GroupSpec) -> Result<Arc<Self>> {
        Self::with_max_order(spec, DEFAULT_MAX_ORDER)
    }

    pub fn cyclic(n: u64) -> Arc<Self> {
        Self::new(GroupSpec::Cyclic { n }).expect("cyclic group within cap")
    }

    pub fn product(orders: &[u64]) -> Arc<Self> {
        Self::new(GroupSpec::Product {
            orders: orders.to_vec(),
        })
        .expect("product group within cap")
    }

    pub fn metacyclic33(ell: u64) -> Arc<Self> {
        Self::new(GroupSpec::Metacyclic33 { ell }).expect("metacyclic group within cap")
    }

    pub fn with_max_order(spec: GroupSpec, cap: usize) -> Result<Arc<Self>> {
        let check = |order: u128| -> Result<()> {
            if order > cap as u128 {
                Err(Error::OrderTooLarge {
                    order: order.min(usize::MAX as u128) as usize,
                    cap,
                })
            } else {
                Ok(())
            }
        };
        match &spec {
            GroupSpec::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::InvalidParameters("cyclic order must be ≥ 1".into()));
                }
                check(*n as u128)?;
                let elements = (0..*n).map(|a| GroupElement(vec![a])).collect();
                let n = *n;
                Ok(Arc::new(Self::build(spec.clone(), elements, |x, y| {
                    vec![(x[0] + y[0]) % n]
                })))
            }
            GroupSpec::Product { orders } => {
                if orders.iter().any(|&o| o == 0) {
                    return Err(Error::InvalidParameters("factor orders must be ≥ 1".into()));
                }
                check(orders.iter().map(|&o| o as u128).product())?;
                let mut elements = vec![GroupElement(vec![])];
                for &o in orders {
                    elements = elements
                        .into_iter()
                        .flat_map(|e| {
                            (0..o).map(move |a| {
                                let mut v = e.0.clone();
                                v.push(a);
                                GroupElement(v)
                            })
                        })
                        .collect();
                }
                let orders = orders.clone();
                Ok(Arc::new(Self::build(spec.clone(), elements, |x, y| {
                    x.iter()
                        .zip(y)
                        .zip(&orders)
                        .map(|((a, b), o)| (a + b) % o)
                        .collect()
                })))
            }
            GroupSpec::Metacyclic33 { ell } => {
                if *ell == 0 {
                    return Err(Error::InvalidParameters("ℓ must be ≥ 1".into()));
                }
                check(6 * *ell as u128)?;
                let ell = *ell;
                let elements = (0..3)
                    .flat_map(|a| (0..2 * ell).map(move |b| GroupElement(vec![a, b])))
                    .collect();
                Ok(Arc::new(Self::build(spec.clone(), elements, |x, y| {
                    metacyclic_mul(ell, x, y)
                })))
            }
            GroupSpec::Quotient { parent, by } => {
                let parent = Self::with_max_order((**parent).clone(), cap)?;
                let gens = by
                    .iter()
                    .map(|r| parent.parse_element(r))
                    .collect::<Result<Vec<_>>>()?;
                let normal = parent.subgroup_generated(&gens);
                Ok(Arc::new(Self::build_quotient(&parent, &normal)?))
            }
        }
    }

    fn build(
        spec: GroupSpec,
        elements: Vec<GroupElement>,
        mul: impl Fn(&[u64], &[u64]) -> Vec<u64>,
    ) -> Self {
        let n = elements.len();
        let lookup: HashMap<_, _> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut table = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                table[i * n + j] = lookup[&GroupElement(mul(&x.0, &y.0))] as u32;
            }
        }
        let inverses = (0..n)
            .map(|i| (0..n).find(|&j| table[i * n + j] == 0).expect("group inverse") as u32)
            .collect();
        let unit = |k: usize, len: usize| {
            let mut v = vec![0u64; len];
            v[k] = 1;
            lookup[&GroupElement(v)]
        };
        let generators = match &spec {
            GroupSpec::Cyclic { n } if *n > 1 => vec![1],
            GroupSpec::Product { orders } => orders
                .iter()
                .enumerate()
                .filter(|(_, &o)| o > 1)
                .map(|(k, _)| unit(k, orders.len()))
                .collect(),
            GroupSpec::Metacyclic33 { .. } => vec![
                lookup[&GroupElement(vec![1, 0])],
                lookup[&GroupElement(vec![0, 1])],
            ],
            _ => vec![],
        };
        FiniteGroup {
            spec,
            elements,
            lookup,
            table,
            inverses,
            generators,
            quotient: None,
        }
    }

    fn build_quotient(parent: &Arc<FiniteGroup>, normal: &Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(parent, &normal.group) {
            return Err(Error::ForeignSubgroup);
        }
        normal.check_normal()?;
        let n = parent.order();
        let mut rep_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if rep_of[g] != usize::MAX {
                continue;
            }
            reps.push(g);
            for &k in normal.elements() {
                rep_of[parent.mul(g, k)] = g;
            }
        }
        let coset_index: HashMap<usize, usize> =
            reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let projection: Vec<usize> = rep_of.iter().map(|r| coset_index[r]).collect();
        let elements: Vec<GroupElement> = reps.iter().map(|&r| parent.element(r).clone()).collect();
        let spec = GroupSpec::Quotient {
            parent: Box::new(parent.spec.clone()),
            by: normal
                .generators()
                .iter()
                .map(|&g| parent.element_repr(g))
                .collect(),
        };
        let table_parent = parent.clone();
        let lookup_parent: HashMap<GroupElement, usize> = elements
            .iter()
            .map(|e| (e.clone(), parent.lookup[e]))
            .collect();
        let rep_of_c = rep_of.clone();
        let mut group = Self::build(spec, elements, |x, y| {
            let a = lookup_parent[&GroupElement(x.to_vec())];
            let b = lookup_parent[&GroupElement(y.to_vec())];
            table_parent.element(rep_of_c[table_parent.mul(a, b)]).0.clone()
        });
        let mut gens = Vec::new();
        for &g in parent.generators() {
            let q = projection[g];
            if q != 0 && !gens.contains(&q) {
                gens.push(q);
            }
        }
        group.generators = gens;
        group.quotient = Some(QuotientInfo {
            parent: parent.clone(),
            projection,
        });
        Ok(group)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &GroupElement {
        &self.elements[index]
    }

    /// Canonical generators: `1` for cyclic groups, unit vectors for products,
    /// `s, t` for `𝔾_{3,ℓ}`, images of the parent generators for quotients.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn index_of(&self, element: &GroupElement) -> Result<usize> {
        self.lookup
            .get(element)
            .copied()
            .ok_or_else(|| Error::ForeignElement {
                element: format!("{:?}", element.0),
                group: self.name(),
            })
    }

    /// Normal-form product of two elements given by value.
    pub fn mul_elements(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.element(self.mul(i, j)).clone())
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// For a quotient group: its parent and the projection parent → self.
    pub fn quotient_of(&self) -> Option<(&Arc<FiniteGroup>, &[usize])> {
        self.quotient
            .as_ref()
            .map(|q| (&q.parent, q.projection.as_slice()))
    }

    pub fn parse_element(&self, repr: &ElementRepr) -> Result<usize> {
        let bad = || Error::ForeignElement {
            element: format!("{repr:?}"),
            group: self.name(),
        };
        let coords: Vec<u64> = match (&self.spec, repr) {
            (GroupSpec::Cyclic { n }, ElementRepr::Int(a)) => vec![a.rem_euclid(*n as i64) as u64],
            (GroupSpec::Cyclic { n }, ElementRepr::Vector(v)) if v.len() == 1 => {
                vec![v[0].rem_euclid(*n as i64) as u64]
            }
            (GroupSpec::Product { orders }, ElementRepr::Vector(v)) if v.len() == orders.len() => v
                .iter()
                .zip(orders)
                .map(|(a, o)| a.rem_euclid(*o as i64) as u64)
                .collect(),
            (GroupSpec::Product { orders }, ElementRepr::Int(a)) if orders.len() == 1 => {
                vec![a.rem_euclid(orders[0] as i64) as u64]
            }
            (GroupSpec::Metacyclic33 { ell }, ElementRepr::Metacyclic { s, t }) => {
                vec![s.rem_euclid(3) as u64, t.rem_euclid(2 * *ell as i64) as u64]
            }
            (GroupSpec::Metacyclic33 { ell }, ElementRepr::Vector(v)) if v.len() == 2 => {
                vec![v[0].rem_euclid(3) as u64, v[1].rem_euclid(2 * *ell as i64) as u64]
            }
            (GroupSpec::Quotient { .. }, _) => {
                let (parent, projection) = self.quotient_of().expect("quotient info");
                return Ok(projection[parent.parse_element(repr)?]);
            }
            _ => return Err(bad()),
        };
        self.index_of(&GroupElement(coords)).map_err(|_| bad())
    }

    pub fn element_repr(&self, index: usize) -> ElementRepr {
        let e = &self.elements[index].0;
        match &self.spec {
            GroupSpec::Metacyclic33 { .. } => ElementRepr::Metacyclic {
                s: e[0] as i64,
                t: e[1] as i64,
            },
            GroupSpec::Quotient { .. } => {
                let (parent, _) = self.quotient_of().expect("quotient info");
                parent.element_repr(parent.lookup[&self.elements[index]])
            }
            _ => ElementRepr::Vector(e.iter().map(|&a| a as i64).collect()),
        }
    }

    /// Short human-readable label.
    pub fn label(&self, index: usize) -> String {
        let e = &self.elements[index].0;
        match &self.spec {
            GroupSpec::Cyclic { .. } => e[0].to_string(),
            GroupSpec::Product { .. } => format!(
                "({})",
                e.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
            GroupSpec::Metacyclic33 { .. } => {
                let mut s = String::new();
                match e[0] {
                    0 => {}
                    1 => s.push('s'),
                    a => s.push_str(&format!("s^{a}")),
                }
                match e[1] {
                    0 => {}
                    1 => s.push('t'),
                    b => s.push_str(&format!("t^{b}")),
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            }
            GroupSpec::Quotient { .. } => {
                let (parent, _) = self.quotient_of().expect("quotient info");
                format!("[{}]", parent.label(parent.lookup[&self.elements[index]]))
            }
        }
    }

    pub fn name(&self) -> String {
        spec_name(&self.spec)
    }

    pub fn subgroup_generated(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let mut generators: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        generators.dedup();
        Subgroup::from_membership(self.clone(), member, generators)
    }

    /// Subgroup generated by elements given by value.
    pub fn subgroup_generated_by(self: &Arc<Self>, gens: &[GroupElement]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_generated(&idx))
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        let gens = self.generators.clone();
        self.subgroup_generated(&gens)
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        self.subgroup_generated(&[])
    }

    pub fn center(self: &Arc<Self>) -> Subgroup {
        let n = self.order();
        let member: Vec<bool> = (0..n)
            .map(|z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_closed_set(self.clone(), member)
    }

    pub fn quotient(self: &Arc<Self>, normal: &Subgroup) -> Result<QuotientGroup> {
        let group = Arc::new(Self::build_quotient(self, normal)?);
        let projection = group.quotient.as_ref().expect("quotient info").projection.clone();
        Ok(QuotientGroup {
            parent: self.clone(),
            normal: normal.clone(),
            group,
            projection,
        })
    }

    /// Invariant factors `d₁ | d₂ | …` (all > 1) of an abelian group.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order() as u64;
        let mut prime_parts: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for p in prime_factors(n) {
            // #{x : x^{p^k} = 1} = p^{r_k}; r_k − r_{k−1} factors have order ≥ p^k.
            let mut ranks = vec![0u32];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let count = (0..self.order())
                    .filter(|&x| self.pow(x, pk as i64) == 0)
                    .count() as u64;
                let r = count.ilog(p);
                if r == *ranks.last().unwrap() {
                    break;
                }
                ranks.push(r);
            }
            let at_least: Vec<u32> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
            let mut powers = Vec::new();
            for (k, &cnt) in at_least.iter().enumerate() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(cnt - next) {
                    powers.push(p.pow(k as u32 + 1));
                }
            }
            powers.sort_unstable_by(|a, b| b.cmp(a));
            prime_parts.insert(p, powers);
        }
        let len = prime_parts.values().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..len)
            .map(|i| {
                prime_parts
                    .values()
                    .map(|v| v.get(i).copied().unwrap_or(1))
                    .product()
            })
            .collect();
        factors.reverse();
        Some(factors)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    /// Smallest element (canonical order) generating the whole group.
    pub fn cyclic_generator(&self) -> Option<usize> {
        if self.order() == 1 {
            return Some(0);
        }
        (1..self.order()).find(|&g| self.element_order(g) == self.order())
    }

    // ---- characters ----

    /// Canonical generators of the character group `Ĝ`.
    ///
    /// Characters factor through the abelianization; for `𝔾_{3,ℓ}` the single
    /// generator sends `s ↦ 1, t ↦ ζ_{2ℓ}`.
    pub fn character_group(&self) -> Vec<Character> {
        match &self.spec {
            GroupSpec::Cyclic { n } if *n > 1 => {
                vec![self
                    .character_from_generators(&[TorsionScalar::zeta(*n)])
                    .expect("dual generator")]
            }
            GroupSpec::Cyclic { .. } => vec![],
            GroupSpec::Product { orders } => {
                let active: Vec<u64> = orders.iter().copied().filter(|&o| o > 1).collect();
                (0..active.len())
                    .map(|k| {
                        let values: Vec<TorsionScalar> = active
                            .iter()
                            .enumerate()
                            .map(|(j, &o)| {
                                if j == k {
                                    TorsionScalar::zeta(o)
                                } else {
                                    TorsionScalar::ONE
                                }
                            })
                            .collect();
                        self.character_from_generators(&values).expect("dual generator")
                    })
                    .collect()
            }
            GroupSpec::Metacyclic33 { ell } => vec![self
                .character_from_generators(&[TorsionScalar::ONE, TorsionScalar::zeta(2 * ell)])
                .expect("dual generator")],
            GroupSpec::Quotient { .. } => {
                let all = self.all_characters();
                let mut gens: Vec<Character> = Vec::new();
                let mut span = vec![Character::trivial(self.order())];
                for chi in all {
                    if span.contains(&chi) {
                        continue;
                    }
                    gens.push(chi);
                    span = span_of(&gens, self.order());
                }
                gens
            }
        }
    }

    /// Every linear character, in a deterministic order.
    pub fn all_characters(&self) -> Vec<Character> {
        match &self.spec {
            GroupSpec::Quotient { .. } => {
                let gens = self.generators();
                let orders: Vec<u64> = gens.iter().map(|&g| self.element_order(g) as u64).collect();
                let mut out = Vec::new();
                for exps in mixed_radix(&orders) {
                    let values: Vec<TorsionScalar> = exps
                        .iter()
                        .zip(&orders)
                        .map(|(&e, &o)| TorsionScalar::zeta_pow(o, e as i64))
                        .collect();
                    if let Ok(chi) = self.character_from_generators(&values) {
                        if !out.contains(&chi) {
                            out.push(chi);
                        }
                    }
                }
                out
            }
            _ => {
                let dual = self.character_group();
                let orders: Vec<u64> = dual.iter().map(|c| c.order()).collect();
                mixed_radix(&orders)
                    .map(|exps| {
                        dual.iter()
                            .zip(&exps)
                            .fold(Character::trivial(self.order()), |acc, (c, &e)| {
                                acc.mul(&c.pow(e as i64))
                            })
                    })
                    .collect()
            }
        }
    }

    /// `Π_k χ_k^{e_k}` over [`FiniteGroup::character_group`].
    pub fn character_from_exponents(&self, exps: &[i64]) -> Result<Character> {
        let dual = self.character_group();
        if exps.len() != dual.len() {
            return Err(Error::InvalidParameters(format!(
                "character of {} needs {} exponents, got {}",
                self.name(),
                dual.len(),
                exps.len()
            )));
        }
        Ok(dual
            .iter()
            .zip(exps)
            .fold(Character::trivial(self.order()), |acc, (c, &e)| {
                acc.mul(&c.pow(e))
            }))
    }

    /// Exponent vector of a character over [`FiniteGroup::character_group`].
    pub fn character_exponents(&self, chi: &Character) -> Option<Vec<i64>> {
        let dual = self.character_group();
        let orders: Vec<u64> = dual.iter().map(|c| c.order()).collect();
        mixed_radix(&orders)
            .find(|exps| {
                let cand = dual
                    .iter()
                    .zip(exps)
                    .fold(Character::trivial(self.order()), |acc, (c, &e)| {
                        acc.mul(&c.pow(e as i64))
                    });
                &cand == chi
            })
            .map(|v| v.into_iter().map(|e| e as i64).collect())
    }

    /// Extends values on the canonical generators to a character, checking
    /// that the assignment is a homomorphism.
    pub fn character_from_generators(&self, values: &[TorsionScalar]) -> Result<Character> {
        let gens = self.generators();
        if values.len() != gens.len() {
            return Err(Error::NotHomomorphism(format!(
                "{} generator values for {} generators",
                values.len(),
                gens.len()
            )));
        }
        let table = extend_multiplicatively(self, gens, values)?;
        Ok(Character { values: table })
    }
}

/// Extends `gens[j] ↦ values[j]` along right multiplication and checks every
/// edge `x → x·g_j` for consistency, which makes the result a homomorphism on
/// the subgroup generated by `gens`. Unreached elements stay `Zero`.
pub(crate) fn extend_multiplicatively(
    group: &FiniteGroup,
    gens: &[usize],
    values: &[TorsionScalar],
) -> Result<Vec<TorsionScalar>> {
    if values.iter().any(TorsionScalar::is_zero) {
        return Err(Error::NotHomomorphism("zero value".into()));
    }
    let n = group.order();
    let mut table = vec![TorsionScalar::Zero; n];
    table[0] = TorsionScalar::ONE;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &v) in gens.iter().zip(values) {
            let y = group.mul(x, g);
            let val = table[x] * v;
            if table[y].is_zero() {
                table[y] = val;
                queue.push_back(y);
            } else if table[y] != val {
                return Err(Error::NotHomomorphism(format!(
                    "value at {} is both {} and {}",
                    group.label(y),
                    table[y],
                    val
                )));
            }
        }
    }
    Ok(table)
}

fn span_of(gens: &[Character], n: usize) -> Vec<Character> {
    let mut span = vec![Character::trivial(n)];
    let mut i = 0;
    while i < span.len() {
        for g in gens {
            let c = span[i].mul(g);
            if !span.contains(&c) {
                span.push(c);
            }
        }
        i += 1;
    }
    span
}

pub(crate) fn mixed_radix(radices: &[u64]) -> impl Iterator<Item = Vec<u64>> {
    let radices = radices.to_vec();
    let total: u64 = radices.iter().product();
    (0..total).map(move |mut k| {
        let mut digits = vec![0; radices.len()];
        for (d, &r) in digits.iter_mut().zip(&radices).rev() {
            *d = k % r;
            k /= r;
        }
        digits
    })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn spec_name(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::Cyclic { n } => format!("C{n}"),
        GroupSpec::Product { orders } if orders.is_empty() => "C1".into(),
        GroupSpec::Product { orders } => orders
            .iter()
            .map(|o| format!("C{o}"))
            .collect::<Vec<_>>()
            .join("×"),
        GroupSpec::Metacyclic33 { ell } => format!("G(3,{ell})"),
        GroupSpec::Quotient { parent, .. } => format!("{}/N", spec_name(parent)),
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A subgroup, stored as a sorted element list of its parent.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<usize>,
    member: Vec<bool>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_membership(group: Arc<FiniteGroup>, member: Vec<bool>, generators: Vec<usize>) -> Self {
        let elements = (0..member.len()).filter(|&i| member[i]).collect();
        Subgroup {
            group,
            elements,
            member,
            generators,
        }
    }

    /// Builds a subgroup from a set already known to be closed; generators are
    /// chosen greedily in canonical order.
    fn from_closed_set(group: Arc<FiniteGroup>, member: Vec<bool>) -> Self {
        let mut gens = Vec::new();
        let mut span = group.subgroup_generated(&[]);
        for x in 0..member.len() {
            if member[x] && !span.contains(x) {
                gens.push(x);
                span = group.subgroup_generated(&gens);
            }
        }
        Self::from_membership(group, member, gens)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, g: usize) -> bool {
        self.member.get(g).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let member = (0..self.member.len())
            .map(|g| self.contains(g) && other.contains(g))
            .collect();
        Self::from_closed_set(self.group.clone(), member)
    }

    /// `{g^k : g ∈ self}`, a subgroup whenever `self` is abelian.
    pub fn power_subgroup(&self, k: i64) -> Subgroup {
        let powers: Vec<usize> = self.elements.iter().map(|&g| self.group.pow(g, k)).collect();
        self.group.subgroup_generated(&powers)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.group;
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_central(&self) -> bool {
        let g = &self.group;
        self.elements
            .iter()
            .all(|&z| (0..g.order()).all(|x| g.mul(z, x) == g.mul(x, z)))
    }

    pub fn check_normal(&self) -> Result<()> {
        let g = &self.group;
        for x in 0..g.order() {
            for &k in &self.elements {
                if !self.contains(g.conjugate(x, k)) {
                    return Err(Error::NotNormal {
                        element: g.label(k),
                        by: g.label(x),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self) -> bool {
        self.check_normal().is_ok()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|&g| self.group.label(g)).collect()
    }
}

/// `G/N` together with the projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    parent: Arc<FiniteGroup>,
    normal: Subgroup,
    group: Arc<FiniteGroup>,
    projection: Vec<usize>,
}

impl QuotientGroup {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn normal_subgroup(&self) -> &Subgroup {
        &self.normal
    }

    /// The quotient as a group in its own right (elements are cosets).
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn project(&self, g: usize) -> usize {
        self.projection[g]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Smallest parent element of a coset; the identity coset maps to the identity.
    pub fn representative(&self, coset: usize) -> usize {
        self.parent
            .index_of(self.group.element(coset))
            .expect("coset representative")
    }

    /// All parent elements of a coset.
    pub fn coset(&self, coset: usize) -> Vec<usize> {
        (0..self.parent.order())
            .filter(|&g| self.projection[g] == coset)
            .collect()
    }

    /// Invariant factors when the quotient is abelian.
    pub fn decomposition(&self) -> Option<Vec<u64>> {
        self.group.abelian_invariants()
    }
}

/// A linear character, tabulated on every element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<TorsionScalar>,
}

impl Character {
    pub fn trivial(order: usize) -> Self {
        Character {
            values: vec![TorsionScalar::ONE; order],
        }
    }

    #[inline]
    pub fn eval(&self, g: usize) -> TorsionScalar {
        self.values[g]
    }

    pub fn values(&self) -> &[TorsionScalar] {
        &self.values
    }

    pub fn on_generators(&self, group: &FiniteGroup) -> Vec<TorsionScalar> {
        group.generators().iter().map(|&g| self.values[g]).collect()
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| *a * *b)
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Character {
        Character {
            values: self
                .values
                .iter()
                .map(|v| v.pow(k).expect("character values are nonzero"))
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(TorsionScalar::is_one)
    }

    pub fn order(&self) -> u64 {
        self.values
            .iter()
            .map(|v| v.order().unwrap_or(1))
            .fold(1, |a, b| a.lcm(&b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(g: &FiniteGroup, v: &[u64]) -> usize {
        g.index_of(&GroupElement(v.to_vec())).unwrap()
    }

    #[test]
    fn metacyclic_rule() {
        let g = FiniteGroup::metacyclic33(4);
        let s = e(&g, &[1, 0]);
        let t = e(&g, &[0, 1]);
        assert_eq!(g.element(g.mul(t, s)), &GroupElement(vec![2, 1]));
        let g3 = FiniteGroup::metacyclic33(3);
        let (s, t) = (e(&g3, &[1, 0]), e(&g3, &[0, 1]));
        let t2 = g3.mul(t, t);
        assert_eq!(g3.mul(t2, s), g3.mul(s, t2));
        assert_eq!(g3.element(g3.mul(t2, s)), &GroupElement(vec![1, 2]));
    }

    #[test]
    fn product_mul() {
        let g = FiniteGroup::product(&[2, 4]);
        let p = g
            .mul_elements(&GroupElement(vec![1, 0]), &GroupElement(vec![1, 3]))
            .unwrap();
        assert_eq!(p, GroupElement(vec![0, 3]));
        assert!(matches!(
            g.mul_elements(&GroupElement(vec![2, 0]), &GroupElement(vec![0, 0])),
            Err(Error::ForeignElement { .. })
        ));
    }

    #[test]
    fn subgroups() {
        let g = FiniteGroup::product(&[2, 4]);
        let h = g.subgroup_generated(&[e(&g, &[1, 0]), e(&g, &[0, 2])]);
        assert_eq!(h.order(), 4);
        assert_eq!(h.power_subgroup(2).order(), 1);
        assert!(g.subgroup_generated(&[]).is_trivial());
        let m = FiniteGroup::metacyclic33(9);
        let h = m.subgroup_generated(&[e(&m, &[1, 0]), e(&m, &[0, 3])]);
        assert_eq!(h.order(), 18);
    }

    #[test]
    fn quotients() {
        let g = FiniteGroup::product(&[2, 9]);
        let n = g.subgroup_generated(&[e(&g, &[1, 0]), e(&g, &[0, 3])]);
        let q = g.quotient(&n).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.decomposition(), Some(vec![3]));
        assert_eq!(q.representative(0), 0);
        let all = g.whole();
        assert_eq!(g.quotient(&all).unwrap().order(), 1);
        assert_eq!(g.quotient(&all).unwrap().decomposition(), Some(vec![]));

        let m = FiniteGroup::metacyclic33(9);
        let n = m.subgroup_generated(&[e(&m, &[1, 0]), e(&m, &[0, 3])]);
        let q = m.quotient(&n).unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.group().is_cyclic());

        let s3 = FiniteGroup::metacyclic33(1);
        let t = e(&s3, &[0, 1]);
        let not_normal = s3.subgroup_generated(&[t]);
        assert!(matches!(s3.quotient(&not_normal), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn centers() {
        for ell in 1..=9 {
            let m = FiniteGroup::metacyclic33(ell);
            let z = m.center();
            let t2 = e(&m, &[0, 2 % (2 * ell)]);
            assert_eq!(z, m.subgroup_generated(&[t2]), "ℓ = {ell}");
            assert_eq!(z.order() as u64, ell);
        }
        assert!(FiniteGroup::metacyclic33(1).center().is_trivial());
        let g = FiniteGroup::product(&[2, 4]);
        assert_eq!(g.center().order(), 8);
    }

    #[test]
    fn characters_of_metacyclic() {
        let ell = 5;
        let m = FiniteGroup::metacyclic33(ell);
        let dual = m.character_group();
        assert_eq!(dual.len(), 1);
        let chi = &dual[0];
        assert_eq!(chi.eval(e(&m, &[1, 0])), TorsionScalar::ONE);
        assert_eq!(chi.eval(e(&m, &[0, 1])), TorsionScalar::zeta(2 * ell));
        assert_eq!(chi.order(), 2 * ell);
        assert_eq!(m.all_characters().len() as u64, 2 * ell);
    }

    #[test]
    fn characters_of_product() {
        let g = FiniteGroup::product(&[2, 4]);
        let dual = g.character_group();
        let (a1, a2) = (e(&g, &[1, 0]), e(&g, &[0, 1]));
        assert_eq!(dual[0].eval(a1), TorsionScalar::MINUS_ONE);
        assert_eq!(dual[0].eval(a2), TorsionScalar::ONE);
        assert_eq!(dual[1].eval(a1), TorsionScalar::ONE);
        assert_eq!(dual[1].eval(a2), TorsionScalar::I);
        let triv = Character::trivial(g.order());
        assert!((0..g.order()).all(|x| triv.eval(x) == TorsionScalar::ONE));
        assert_eq!(g.all_characters().len(), 8);
    }

    #[test]
    fn quotient_characters() {
        let m = FiniteGroup::metacyclic33(3);
        let z = m.center();
        let q = m.quotient(&z).unwrap();
        // 𝔾_{3,3}/⟨t²⟩ ≅ S₃, whose abelianization is C₂.
        assert_eq!(q.order(), 6);
        assert!(!q.group().is_abelian());
        assert_eq!(q.group().all_characters().len(), 2);
        assert_eq!(q.decomposition(), None);
    }

    #[test]
    fn invariants() {
        assert_eq!(FiniteGroup::product(&[2, 4]).abelian_invariants(), Some(vec![2, 4]));
        assert_eq!(FiniteGroup::product(&[2, 3]).abelian_invariants(), Some(vec![6]));
        assert_eq!(FiniteGroup::product(&[4, 6]).abelian_invariants(), Some(vec![2, 12]));
        assert_eq!(FiniteGroup::metacyclic33(2).abelian_invariants(), None);
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            FiniteGroup::new(GroupSpec::Cyclic { n: 257 }),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(FiniteGroup::with_max_order(GroupSpec::Cyclic { n: 300 }, 512).is_ok());
    }

    #[test]
    fn element_repr_round_trip() {
        let m = FiniteGroup::metacyclic33(3);
        for x in 0..m.order() {
            assert_eq!(m.parse_element(&m.element_repr(x)).unwrap(), x);
        }
        let json = serde_json::to_string(&m.element_repr(e(&m, &[2, 5]))).unwrap();
        assert_eq!(json, r#"{"s":2,"t":5}"#);
    }
}
