//! Command-line front end. `run` returns the process exit status:
//! 0 when every requested check passes, 1 when some check fails, 2 on errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cochain::{enumerate_cohomology, SubgroupCoefficients, UnityScalars, DEFAULT_BUDGET};
use crate::coquasi::{build_braided_zested, build_zested, verify_coquasi_bialgebra, verify_coquasitriangular};
use crate::error::{Error, Result};
use crate::group::{ElementRepr, FiniteGroup};
use crate::io::{self, DatumFile, ExportFile, LoadedDatum};
use crate::report::VerificationReport;
use crate::scalar::TorsionScalar;
use crate::zesting::{
    self, enumerate_cyclic_zestings, verify_assoc_datum, verify_braided_datum, CocycleChoice, Enumeration, Grading,
    GradingSpec,
};

#[derive(Parser, Debug)]
#[command(name = "zesting", version, about = "Zestings of pointed Hopf algebras, checked exactly")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the built-in examples, optionally writing their datum files.
    Examples {
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Enumerate cyclic zesting data for a built-in or custom example.
    Enumerate {
        #[command(subcommand)]
        example: ExampleArg,
        /// Write one datum file per zesting into this directory.
        #[arg(long, global = true)]
        out_dir: Option<PathBuf>,
    },
    /// Verify a datum file or an exported structure-constant file.
    Verify {
        file: PathBuf,
        /// Also check the braided conditions (needs a `braided` section).
        #[arg(long)]
        braided: bool,
        /// Also build the zested tables and check the coquasi axioms.
        #[arg(long)]
        coquasi: bool,
        /// Write the machine-readable report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Export mλ, Ω and rλ tables of a datum.
    Export {
        file: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
        /// Export even if the datum fails verification.
        #[arg(long)]
        force: bool,
    },
    /// Brute-force cohomology of C_N with coefficients C_M (or μ_M).
    Cohomology {
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// Coefficients μ_M ⊂ k^× instead of the group C_M.
        #[arg(long)]
        unity: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExampleArg {
    /// A(1|2) over Γ = C₂ × C_{n²}.
    A12 {
        #[arg(long)]
        n: u64,
    },
    /// FK₃ over 𝔾_{3,ℓ}.
    Fk3 {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        k: u64,
    },
    /// Any Yetter–Drinfeld file whose universal grading is cyclic.
    Custom {
        #[arg(long)]
        yd: PathBuf,
        /// Generators of Γ₀ as JSON element representations; default Z(Γ) ∩ supp(V).
        #[arg(long = "gamma0", num_args = 1..)]
        gamma0: Vec<String>,
        /// Fix ν instead of ranging over Γ₀/Γ₀^N.
        #[arg(long)]
        nu: Option<String>,
        /// Compose with C_N → C_M.
        #[arg(long)]
        grading_order: Option<u64>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(all_pass) => i32::from(!all_pass),
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::InvalidDatum(report) = &e {
                let _ = writeln!(err, "{report}");
            }
            2
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Examples { out_dir } => cmd_examples(cli.format, out_dir.as_deref(), out),
        Command::Enumerate { example, out_dir } => cmd_enumerate(cli.format, example, out_dir.as_deref(), out),
        Command::Verify {
            file,
            braided,
            coquasi,
            report,
        } => cmd_verify(cli.format, file, *braided, *coquasi, report.as_deref(), out),
        Command::Export { file, out: path, force } => cmd_export(cli.format, file, path, *force, out),
        Command::Cohomology {
            degree,
            n,
            m,
            unity,
            budget,
        } => cmd_cohomology(cli.format, *degree, *n, *m, *unity, *budget, out),
    }
}

fn emit(out: &mut dyn Write, format: Format, text: &str, value: &impl Serialize) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", io::to_json(value))?,
    }
    Ok(())
}

/// The named example data shipped with the tool.
pub fn builtin_examples() -> Result<Vec<(String, String, DatumFile)>> {
    let mut out = Vec::new();
    let a12 = zesting::a12_enumeration(2)?;
    let d = a12
        .data
        .iter()
        .find(|d| d.parameters().map(|p| p.phi_index == 0 && p.q == TorsionScalar::I).unwrap_or(false))
        .expect("Φ₀, q = i is enumerated");
    out.push((
        "a12-n2".into(),
        "A(1|2), n = 2: Φ₀, ν = α₁, q = i".into(),
        io::datum_to_file(d, None),
    ));
    let yd = crate::ydmodule::builtin_a12(3)?;
    let grading = Grading::universal_cyclic(&yd)?;
    let trivial = zesting::AssociativeZestingDatum::trivial(yd, grading)?;
    out.push(("a12-n3-trivial".into(), "A(1|2), n = 3: trivial datum".into(), io::datum_to_file(&trivial, None)));
    let fk3 = zesting::fk3_enumeration(9, 1)?;
    out.push((
        "fk3-9-1".into(),
        format!("FK₃, ℓ = 9, k = 1: {}", fk3.data[13].summary()),
        io::datum_to_file(&fk3.data[13], None),
    ));
    for (name, zeta, eta) in [
        ("z4-zeta-minus1", TorsionScalar::MINUS_ONE, TorsionScalar::I),
        ("z4-zeta-i", TorsionScalar::I, TorsionScalar::zeta(8)),
    ] {
        let bd = zesting::z4_braided(zeta, eta)?;
        out.push((
            name.into(),
            format!("ℤ/4 braided datum, ζ = {zeta}, η = {eta}"),
            io::datum_to_file(bd.assoc(), Some(&bd)),
        ));
    }
    Ok(out)
}

fn cmd_examples(format: Format, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<bool> {
    let examples = builtin_examples()?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        for (name, _, file) in &examples {
            io::write_json(&dir.join(format!("{name}.json")), file)?;
        }
    }
    let text = examples
        .iter()
        .map(|(name, about, _)| format!("{name:<16} {about}"))
        .collect::<Vec<_>>()
        .join("\n");
    let value: Vec<Value> = examples
        .iter()
        .map(|(name, about, _)| json!({ "name": name, "description": about }))
        .collect();
    emit(out, format, &text, &value)?;
    Ok(true)
}

fn parse_repr(group: &FiniteGroup, text: &str) -> Result<usize> {
    let repr: ElementRepr = io::from_json(text, "argument")?;
    group.parse_element(&repr)
}

fn enumerate(example: &ExampleArg) -> Result<Enumeration> {
    match example {
        ExampleArg::A12 { n } => zesting::a12_enumeration(*n),
        ExampleArg::Fk3 { ell, k } => zesting::fk3_enumeration(*ell, *k),
        ExampleArg::Custom {
            yd,
            gamma0,
            nu,
            grading_order,
        } => {
            let yd = io::yd_from_file(&io::read_json(yd)?)?;
            let group = yd.group().clone();
            let spec = match grading_order {
                Some(order) => GradingSpec::CyclicQuotient { order: *order },
                None => GradingSpec::UniversalCyclic,
            };
            let grading = Grading::new(&yd, spec)?;
            let gamma0 = if gamma0.is_empty() {
                group.center().intersection(&yd.support()?)
            } else {
                let gens = gamma0.iter().map(|t| parse_repr(&group, t)).collect::<Result<Vec<_>>>()?;
                group.subgroup_generated(&gens)
            };
            let choice = match nu {
                Some(t) => CocycleChoice::Fixed(parse_repr(&group, t)?),
                None => CocycleChoice::AllClasses,
            };
            enumerate_cyclic_zestings(&yd, &grading, &gamma0, choice)
        }
    }
}

fn cmd_enumerate(format: Format, example: &ExampleArg, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<bool> {
    let e = enumerate(example)?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        for (i, d) in e.data.iter().enumerate() {
            io::write_json(&dir.join(format!("zesting-{i:03}.json")), &io::datum_to_file(d, None))?;
        }
    }
    let mut all_pass = true;
    let mut lines = vec![e.headline()];
    let mut rows = Vec::new();
    for (i, d) in e.data.iter().enumerate() {
        let pass = verify_assoc_datum(d).all_pass();
        all_pass &= pass;
        lines.push(format!("  #{i:<3} {}  [{}]", d.summary(), if pass { "PASS" } else { "FAIL" }));
        rows.push(json!({
            "index": i,
            "summary": d.summary(),
            "parameters": d.parameters(),
            "verified": pass,
        }));
    }
    let value = json!({
        "headline": e.headline(),
        "count": e.data.len(),
        "families": e.phis.len(),
        "classes": e.nus.len(),
        "roots": e.roots,
        "data": rows,
    });
    emit(out, format, &lines.join("\n"), &value)?;
    Ok(all_pass)
}

/// Reports for a datum file or an export file.
pub fn verify_path(path: &Path, braided: bool, coquasi: bool) -> Result<VerificationReport> {
    let text = fs::read_to_string(path)?;
    let raw: Value = io::from_json(&text, &path.display().to_string())?;
    if raw.get("m").is_some() {
        let file: ExportFile = io::from_json(&text, &path.display().to_string())?;
        let z = io::import_tables(&file)?;
        let datum = io::datum_from_file(&file.datum)?;
        let mut report = datum_report(&datum, braided)?;
        report.extend(verify_coquasi_bialgebra(&z));
        if z.r_table().is_some() {
            report.extend(verify_coquasitriangular(&z));
        }
        return Ok(report);
    }
    let datum = io::read_datum(path)?;
    let mut report = datum_report(&datum, braided)?;
    if coquasi {
        match datum.braided().filter(|_| braided) {
            Some(bd) => {
                let z = build_braided_zested(bd, true)?;
                report.extend(verify_coquasi_bialgebra(&z));
                report.extend(verify_coquasitriangular(&z));
            }
            None => report.extend(verify_coquasi_bialgebra(&build_zested(datum.assoc(), true)?)),
        }
    }
    Ok(report)
}

fn datum_report(datum: &LoadedDatum, braided: bool) -> Result<VerificationReport> {
    if braided {
        let bd = datum
            .braided()
            .ok_or_else(|| Error::InvalidParameters("--braided needs a `braided` section".into()))?;
        Ok(verify_braided_datum(bd))
    } else {
        Ok(verify_assoc_datum(datum.assoc()))
    }
}

fn cmd_verify(
    format: Format,
    file: &Path,
    braided: bool,
    coquasi: bool,
    report_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<bool> {
    let report = verify_path(file, braided, coquasi)?;
    if let Some(path) = report_path {
        io::write_json(path, &report)?;
    }
    emit(out, format, &report.to_string(), &report)?;
    Ok(report.all_pass())
}

fn cmd_export(format: Format, file: &Path, path: &Path, force: bool, out: &mut dyn Write) -> Result<bool> {
    let datum = io::read_datum(file)?;
    let z = match datum.braided() {
        Some(bd) => build_braided_zested(bd, force)?,
        None => build_zested(datum.assoc(), force)?,
    };
    let export = io::export_tables(&z, io::loaded_to_file(&datum));
    io::write_json(path, &export)?;
    let n = z.group().order();
    let text = format!(
        "wrote {}: mλ {n}×{n}, Ω {n}×{n}×{n}{}",
        path.display(),
        if z.r_table().is_some() { format!(", rλ {n}×{n}") } else { String::new() }
    );
    emit(out, format, &text, &json!({ "path": path.display().to_string(), "order": n }))?;
    Ok(true)
}

fn cmd_cohomology(
    format: Format,
    degree: usize,
    n: u64,
    m: u64,
    unity: bool,
    budget: u128,
    out: &mut dyn Write,
) -> Result<bool> {
    let domain = FiniteGroup::cyclic(n);
    let (count, cocycles, coboundaries, reps, coeffs) = if unity {
        let c = enumerate_cohomology(degree, &domain, &UnityScalars::roots(m), budget)?;
        let reps: Vec<String> = c.representatives.iter().map(describe_cochain).collect();
        (c.count(), c.cocycles, c.coboundaries, reps, format!("μ_{m}"))
    } else {
        let coeffs = SubgroupCoefficients::whole(&FiniteGroup::cyclic(m))?;
        let c = enumerate_cohomology(degree, &domain, &coeffs, budget)?;
        let reps: Vec<String> = c.representatives.iter().map(describe_cochain).collect();
        (c.count(), c.cocycles, c.coboundaries, reps, format!("C{m}"))
    };
    let mut text = format!(
        "|H^{degree}(C{n}, {coeffs})| = {count}  ({cocycles} normalized cocycles, {coboundaries} coboundaries)"
    );
    for (i, r) in reps.iter().enumerate() {
        text.push_str(&format!("\n  class {i}: {r}"));
    }
    let value = json!({
        "degree": degree, "n": n, "coefficients": coeffs, "classes": count,
        "cocycles": cocycles, "coboundaries": coboundaries, "representatives": reps,
    });
    emit(out, format, &text, &value)?;
    Ok(true)
}

fn describe_cochain<C: crate::cochain::Coefficients>(c: &crate::cochain::NormalizedCochain<C>) -> String {
    match c.first_non_identity() {
        None => "identity".into(),
        Some(_) => {
            let n = c.domain().order();
            let one = c.coefficients().identity();
            let mut args = vec![0usize; c.arity()];
            let mut parts = Vec::new();
            for (idx, v) in c.values().iter().enumerate() {
                if *v == one {
                    continue;
                }
                let mut rest = idx;
                for slot in args.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                parts.push(format!("{} ↦ {}", c.format_args(&args), c.format_value(v)));
            }
            parts.join(", ")
        }
    }
}
