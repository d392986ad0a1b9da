//! JSON file formats: Yetter–Drinfeld data, zesting data (with an optional
//! braided section) and exported structure constants.
//!
//! Elements are written in the owning group's normal form (`3`, `[1, 0]`,
//! `{"s": 1, "t": 2}`); scalars as `{"kind": "unity", "num": a, "den": b}`.
//! Cochains list only entries that differ from the identity.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cochain::{Coefficients, NormalizedCochain, SubgroupCoefficients, UnityScalars};
use crate::coquasi::ZestedGroupAlgebra;
use crate::error::{Error, Result};
use crate::group::{ElementRepr, FiniteGroup, GroupSpec};
use crate::scalar::TorsionScalar;
use crate::ydmodule::{Action, YetterDrinfeldDatum};
use crate::zesting::{
    AssociativeZestingDatum, Bicharacter, BraidedZestingDatum, CentralityMap, CyclicParameters, Grading, GradingSpec,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YdFile {
    pub group: GroupSpec,
    pub degrees: Vec<ElementRepr>,
    pub action: ActionFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ActionFile {
    /// One character per basis vector, given by its values on the group generators.
    Diagonal { characters: Vec<Vec<TorsionScalar>> },
    IndexPermutation { trivially_acting: Vec<ElementRepr> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry<V> {
    pub at: Vec<ElementRepr>,
    pub value: V,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub generator: ElementRepr,
    pub character: Vec<TorsionScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidedFile {
    /// `r₀` on pairs of group generators.
    pub r0: Vec<Vec<TorsionScalar>>,
    pub t: Vec<Entry<TorsionScalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumFile {
    pub yd: YdFile,
    pub grading: GradingSpec,
    /// `Φ` on the generators of `Γ₀`, which these entries also define.
    pub phi: Vec<PhiEntry>,
    pub lambda: Vec<Entry<ElementRepr>>,
    pub omega: Vec<Entry<TorsionScalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<CyclicParameters>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braided: Option<BraidedFile>,
}

#[derive(Clone, Debug)]
pub enum LoadedDatum {
    Associative(AssociativeZestingDatum),
    Braided(BraidedZestingDatum),
}

impl LoadedDatum {
    pub fn assoc(&self) -> &AssociativeZestingDatum {
        match self {
            LoadedDatum::Associative(d) => d,
            LoadedDatum::Braided(bd) => bd.assoc(),
        }
    }

    pub fn braided(&self) -> Option<&BraidedZestingDatum> {
        match self {
            LoadedDatum::Braided(bd) => Some(bd),
            LoadedDatum::Associative(_) => None,
        }
    }
}

/// Structure-constant export: tables in canonical element order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportFile {
    pub group: GroupSpec,
    pub grading_group: GroupSpec,
    pub elements: Vec<ElementRepr>,
    pub grading: Vec<usize>,
    /// `m[g][h]` is the index of `mλ(g, h)`.
    pub m: Vec<Vec<usize>>,
    pub omega: Vec<Vec<Vec<TorsionScalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Vec<TorsionScalar>>>,
    pub datum: DatumFile,
}

/// Element representation with bare integers for cyclic groups.
pub fn repr(group: &FiniteGroup, g: usize) -> ElementRepr {
    match group.spec() {
        GroupSpec::Cyclic { .. } => ElementRepr::Int(group.element(g).0[0] as i64),
        _ => group.element_repr(g),
    }
}

fn located(location: &str, e: Error) -> Error {
    match e {
        e @ Error::Parse { .. } => e,
        other => Error::parse(location, other),
    }
}

pub fn yd_to_file(yd: &YetterDrinfeldDatum) -> YdFile {
    let group = yd.group();
    let action = match yd.action() {
        Action::Diagonal(chars) => ActionFile::Diagonal {
            characters: chars.iter().map(|c| c.on_generators(group)).collect(),
        },
        Action::IndexPermutation { trivially_acting } => ActionFile::IndexPermutation {
            trivially_acting: trivially_acting.generators().iter().map(|&g| repr(group, g)).collect(),
        },
    };
    YdFile {
        group: group.spec().clone(),
        degrees: yd.degrees().iter().map(|&g| repr(group, g)).collect(),
        action,
    }
}

pub fn yd_from_file(file: &YdFile) -> Result<YetterDrinfeldDatum> {
    let group = FiniteGroup::new(file.group.clone()).map_err(|e| located("yd.group", e))?;
    let degrees = file
        .degrees
        .iter()
        .enumerate()
        .map(|(i, r)| group.parse_element(r).map_err(|e| located(&format!("yd.degrees[{i}]"), e)))
        .collect::<Result<Vec<_>>>()?;
    let action = match &file.action {
        ActionFile::Diagonal { characters } => Action::Diagonal(
            characters
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    group
                        .character_from_generators(v)
                        .map_err(|e| located(&format!("yd.action.characters[{i}]"), e))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        ActionFile::IndexPermutation { trivially_acting } => {
            let gens = trivially_acting
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    group
                        .parse_element(r)
                        .map_err(|e| located(&format!("yd.action.trivially_acting[{i}]"), e))
                })
                .collect::<Result<Vec<_>>>()?;
            Action::IndexPermutation {
                trivially_acting: group.subgroup_generated(&gens),
            }
        }
    };
    YetterDrinfeldDatum::new(group, degrees, action).map_err(|e| located("yd", e))
}

fn cochain_entries<C: Coefficients, V>(
    c: &NormalizedCochain<C>,
    mut value: impl FnMut(&C::Value) -> V,
) -> Vec<Entry<V>> {
    let domain = c.domain();
    let n = domain.order();
    let one = c.coefficients().identity();
    let mut out = Vec::new();
    for (idx, v) in c.values().iter().enumerate() {
        if *v == one {
            continue;
        }
        let mut args = vec![0usize; c.arity()];
        let mut rest = idx;
        for slot in args.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        out.push(Entry {
            at: args.iter().map(|&g| repr(domain, g)).collect(),
            value: value(v),
        });
    }
    out
}

fn cochain_from_entries<C: Coefficients, V>(
    location: &str,
    arity: usize,
    domain: &Arc<FiniteGroup>,
    coefficients: C,
    entries: &[Entry<V>],
    mut value: impl FnMut(&V) -> Result<C::Value>,
) -> Result<NormalizedCochain<C>> {
    let n = domain.order();
    let mut table = vec![coefficients.identity(); n.pow(arity as u32)];
    for (i, e) in entries.iter().enumerate() {
        let here = format!("{location}[{i}]");
        if e.at.len() != arity {
            return Err(Error::parse(&here, format!("expected {arity} arguments, got {}", e.at.len())));
        }
        let mut idx = 0;
        for r in &e.at {
            idx = idx * n + domain.parse_element(r).map_err(|err| located(&here, err))?;
        }
        table[idx] = value(&e.value).map_err(|err| located(&here, err))?;
    }
    NormalizedCochain::from_table(arity, domain.clone(), coefficients, table).map_err(|e| located(location, e))
}

pub fn datum_to_file(d: &AssociativeZestingDatum, braided: Option<&BraidedZestingDatum>) -> DatumFile {
    let gamma = d.yd().group();
    let gamma0 = d.gamma0();
    let phi = gamma0
        .generators()
        .iter()
        .zip(d.phi().generator_images())
        .map(|(&g, chi)| PhiEntry {
            generator: repr(gamma, g),
            character: chi.on_generators(gamma),
        })
        .collect();
    let braided = braided.map(|bd| BraidedFile {
        r0: bd.r0().generator_values().to_vec(),
        t: cochain_entries(bd.t(), |v| *v),
    });
    DatumFile {
        yd: yd_to_file(d.yd()),
        grading: d.grading().spec().clone(),
        phi,
        lambda: cochain_entries(d.lambda(), |&v| repr(gamma, v)),
        omega: cochain_entries(d.omega(), |v| *v),
        parameters: d.parameters().cloned(),
        braided,
    }
}

pub fn datum_from_file(file: &DatumFile) -> Result<LoadedDatum> {
    let yd = yd_from_file(&file.yd)?;
    let gamma = yd.group().clone();
    let grading = Grading::new(&yd, file.grading.clone()).map_err(|e| located("grading", e))?;
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for (i, p) in file.phi.iter().enumerate() {
        let here = format!("phi[{i}]");
        let g = gamma.parse_element(&p.generator).map_err(|e| located(&here, e))?;
        let chi = gamma.character_from_generators(&p.character).map_err(|e| located(&here, e))?;
        if g == gamma.identity() {
            if !chi.is_trivial() {
                return Err(Error::parse(here, "Φ(1) must be the trivial character"));
            }
            continue;
        }
        if gens.contains(&g) {
            return Err(Error::parse(here, "repeated generator"));
        }
        gens.push(g);
        images.push(chi);
    }
    let gamma0 = gamma.subgroup_generated(&gens);
    let phi = CentralityMap::new(&gamma0, images).map_err(|e| located("phi", e))?;
    let target = grading.target().clone();
    let coeffs = SubgroupCoefficients::new(gamma0).map_err(|e| located("phi", e))?;
    let lambda = cochain_from_entries("lambda", 2, &target, coeffs, &file.lambda, |r| gamma.parse_element(r))?;
    let omega = cochain_from_entries("omega", 3, &target, UnityScalars::ALL, &file.omega, |v| Ok(*v))?;
    let assoc = AssociativeZestingDatum::new(yd, grading, phi, lambda, omega)
        .map_err(|e| located("datum", e))?
        .with_parameters(file.parameters.clone());
    match &file.braided {
        None => Ok(LoadedDatum::Associative(assoc)),
        Some(b) => {
            let r0 = Bicharacter::new(&gamma, b.r0.clone()).map_err(|e| located("braided.r0", e))?;
            let t = cochain_from_entries("braided.t", 2, &target, UnityScalars::ALL, &b.t, |v| Ok(*v))?;
            let bd = BraidedZestingDatum::new(assoc, r0, t).map_err(|e| located("braided", e))?;
            Ok(LoadedDatum::Braided(bd))
        }
    }
}

pub fn loaded_to_file(d: &LoadedDatum) -> DatumFile {
    datum_to_file(d.assoc(), d.braided())
}

pub fn export_tables(z: &ZestedGroupAlgebra, datum: DatumFile) -> ExportFile {
    let group = z.group();
    let n = group.order();
    let m = z.m_table().chunks(n).map(<[usize]>::to_vec).collect();
    let omega = z
        .omega_table()
        .chunks(n * n)
        .map(|plane| plane.chunks(n).map(<[TorsionScalar]>::to_vec).collect())
        .collect();
    let r = z.r_table().map(|r| r.chunks(n).map(<[TorsionScalar]>::to_vec).collect());
    ExportFile {
        group: group.spec().clone(),
        grading_group: z.target().spec().clone(),
        elements: (0..n).map(|g| repr(group, g)).collect(),
        grading: z.grading().to_vec(),
        m,
        omega,
        r,
        datum,
    }
}

pub fn import_tables(file: &ExportFile) -> Result<ZestedGroupAlgebra> {
    let group = FiniteGroup::new(file.group.clone()).map_err(|e| located("group", e))?;
    let target = FiniteGroup::new(file.grading_group.clone()).map_err(|e| located("grading_group", e))?;
    let n = group.order();
    for (i, r) in file.elements.iter().enumerate() {
        if group.parse_element(r).ok() != Some(i) {
            return Err(Error::parse(format!("elements[{i}]"), "not in canonical order"));
        }
    }
    let m: Vec<usize> = file.m.iter().flatten().copied().collect();
    let omega: Vec<TorsionScalar> = file.omega.iter().flatten().flatten().copied().collect();
    let r = file.r.as_ref().map(|r| r.iter().flatten().copied().collect());
    if file.m.len() != n || file.omega.len() != n {
        return Err(Error::parse("m", format!("tables must have {n} rows")));
    }
    ZestedGroupAlgebra::from_tables(group, target, file.grading.clone(), m, omega, r).map_err(|e| located("tables", e))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Parses JSON, reporting `path:line:column` on syntax or shape errors.
pub fn from_json<T: DeserializeOwned>(text: &str, path: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("{path}:{}:{}", e.line(), e.column()), e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    from_json(&text, &path.display().to_string())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = to_json(value);
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_datum(path: &Path) -> Result<LoadedDatum> {
    let file: DatumFile = read_json(path)?;
    datum_from_file(&file).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zesting::{a12_enumeration, fk3_enumeration, verify_assoc_datum, verify_braided_datum, z4_braided};

    #[test]
    fn datum_round_trip() {
        let mut data = a12_enumeration(4).unwrap().data;
        data.extend(fk3_enumeration(9, 1).unwrap().data.into_iter().step_by(5));
        for d in &data {
            let file = datum_to_file(d, None);
            let text = to_json(&file);
            let back: DatumFile = from_json(&text, "mem").unwrap();
            assert_eq!(back, file);
            let loaded = datum_from_file(&back).unwrap();
            assert_eq!(loaded_to_file(&loaded), file);
            assert_eq!(verify_assoc_datum(loaded.assoc()), verify_assoc_datum(d));
        }
    }

    #[test]
    fn braided_round_trip() {
        let bd = z4_braided(TorsionScalar::I, TorsionScalar::zeta(8)).unwrap();
        let file = datum_to_file(bd.assoc(), Some(&bd));
        let loaded = datum_from_file(&from_json(&to_json(&file), "mem").unwrap()).unwrap();
        let again = loaded.braided().unwrap();
        assert_eq!(verify_braided_datum(again), verify_braided_datum(&bd));
    }

    #[test]
    fn parse_errors_have_locations() {
        let err = from_json::<DatumFile>("{\n  \"yd\": 3\n}", "x.json").unwrap_err();
        match err {
            Error::Parse { location, .. } => assert!(location.starts_with("x.json:2:")),
            e => panic!("{e}"),
        }
        let d = &a12_enumeration(3).unwrap().data[0];
        let mut file = datum_to_file(d, None);
        file.lambda[0].at.pop();
        match datum_from_file(&file).unwrap_err() {
            Error::Parse { location, .. } => assert_eq!(location, "lambda[0]"),
            e => panic!("{e}"),
        }
    }
}
