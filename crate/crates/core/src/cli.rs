//! Command-line front end. Everything here is reachable through [`run`], so
//! tests can drive the binary in-process.
//!
//! Exit codes: 0 success, 1 malformed input or usage error, 2 the fan fails
//! validation, 3 a crosscheck found a mismatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::fan::{parse_fan, parse_fan_normalized, serialize_fan, validate, Fan};
use crate::generators::{FamilyRegistry, FamilySpec};
use crate::methods::MethodRegistry;
use crate::model::ToricModel;
use crate::oracle::{crosscheck, CrosscheckReport};
use crate::pvf::{decomposition, DimEntry, WeightSpaceBasis};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVALID_FAN: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

const CONVENTION: &str =
    "each weight I labels fields chi^I * rho(x); the torus acts by the character -I";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSelector {
    All,
    One(usize),
}

impl FromStr for KSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(KSelector::All);
        }
        s.parse()
            .map(KSelector::One)
            .map_err(|_| format!("expected an integer or `all`, got `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(
    name = "toric-pvf",
    version,
    about = "Holomorphic polyvector fields on smooth complete toric varieties"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Degree k of the polyvector fields, or `all` for k = 0..=n.
    #[arg(long = "k", global = true, value_name = "INT|all")]
    pub k: Option<KSelector>,

    /// How far beyond the polytope's bounding box the crosscheck sweeps.
    #[arg(long, global = true, default_value_t = 2)]
    pub margin: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Replace non-primitive rays by their primitive generators.
    #[arg(long, global = true)]
    pub normalize: bool,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct InputArgs {
    /// Fan file (JSON), `-` for stdin.
    pub input: Option<PathBuf>,

    /// Use a built-in family instead of a file, e.g. `projective:2`.
    #[arg(long, conflicts_with = "input")]
    pub family: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check smoothness and completeness.
    Validate(InputArgs),
    /// Dimension table of holomorphic k-vector fields.
    Dims {
        #[command(flatten)]
        input: InputArgs,
        /// Which registered method computes the dimensions.
        #[arg(long, default_value = "formula")]
        method: String,
    },
    /// Weight-space bases for each weight.
    Decompose(InputArgs),
    /// Compare the face formula with both oracles over a shell of weights.
    Crosscheck(InputArgs),
    /// Write a built-in fan, e.g. `gen hirzebruch:1`.
    Gen {
        /// `projective:<n>`, `product:<n1>,<n2>,..` or `hirzebruch:<a>`.
        spec: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invalid(_) => EXIT_INVALID_FAN,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    execute(&config, stdout, stderr)
}

pub fn execute(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (code, body) = match dispatch(config) {
        Ok(r) => r,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let written = match &config.out {
        Some(path) => std::fs::write(path, &body).map_err(|e| e.to_string()),
        None => stdout.write_all(&body).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_INPUT;
    }
    code
}

fn dispatch(config: &RunConfig) -> Result<(i32, Vec<u8>), Failure> {
    if config.margin < 1 {
        return Err(Error::Margin(config.margin).into());
    }
    match &config.command {
        Command::Gen { spec } => {
            let spec: FamilySpec = spec.parse()?;
            let fan = FamilyRegistry::builtin().build(&spec)?;
            Ok((EXIT_OK, serialize_fan(&fan)))
        }
        Command::Validate(input) => {
            let (fan, id) = load(input, config.normalize)?;
            let report = validate(&fan);
            let body = match config.format {
                Format::Json => to_json(&json!({
                    "fan_id": id,
                    "smooth": report.smooth,
                    "complete": report.complete,
                    "diagnostics": report.diagnostics,
                })),
                Format::Tsv => {
                    let mut s =
                        format!("smooth\t{}\ncomplete\t{}\n", report.smooth, report.complete);
                    for d in &report.diagnostics {
                        let cone = d.cone.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
                        let _ = writeln!(s, "diagnostic\t{cone}\t{}", d.reason);
                    }
                    s
                }
                Format::Pretty => {
                    let mut s = format!(
                        "fan {id}\n  smooth:   {}\n  complete: {}\n",
                        yes_no(report.smooth),
                        yes_no(report.complete)
                    );
                    for d in &report.diagnostics {
                        match d.cone {
                            Some(c) => {
                                let _ = writeln!(s, "  cone {c}: {}", d.reason);
                            }
                            None => {
                                let _ = writeln!(s, "  {}", d.reason);
                            }
                        }
                    }
                    s
                }
            };
            let code = if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_INVALID_FAN
            };
            Ok((code, body.into_bytes()))
        }
        Command::Dims { input, method } => {
            let model = load_model(input, config.normalize)?;
            let ks = selected_ks(config.k, &model)?;
            let body = dims_output(&model, &ks, method, config)?;
            Ok((EXIT_OK, body.into_bytes()))
        }
        Command::Decompose(input) => {
            let model = load_model(input, config.normalize)?;
            let ks = selected_ks(config.k, &model)?;
            let mut weights = Vec::new();
            for &k in &ks {
                weights.extend(decomposition(model.fan(), model.stratification(), k)?);
            }
            Ok((
                EXIT_OK,
                decompose_output(&model, &weights, config.format).into_bytes(),
            ))
        }
        Command::Crosscheck(input) => {
            let model = load_model(input, config.normalize)?;
            let ks = selected_ks(config.k, &model)?;
            let reports = ks
                .iter()
                .map(|&k| crosscheck(&model, k, config.margin))
                .collect::<Result<Vec<_>, _>>()?;
            let code = if reports.iter().all(CrosscheckReport::passed) {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            Ok((code, crosscheck_output(&reports, config).into_bytes()))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn load(input: &InputArgs, normalize: bool) -> Result<(Fan, String), Failure> {
    if let Some(spec) = &input.family {
        let spec: FamilySpec = spec.parse()?;
        let fan = FamilyRegistry::builtin().build(&spec)?;
        return Ok((fan, spec.to_string()));
    }
    let Some(path) = &input.input else {
        return Err(input_failure("no input: give a fan file or --family"));
    };
    let (bytes, id) = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| input_failure(e.to_string()))?;
        (buf, "stdin".to_string())
    } else {
        let bytes = std::fs::read(path)
            .map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        (bytes, id)
    };
    let fan = if normalize {
        parse_fan_normalized(&bytes)?
    } else {
        parse_fan(&bytes)?
    };
    Ok((fan, id))
}

fn load_model(input: &InputArgs, normalize: bool) -> Result<ToricModel, Failure> {
    let (fan, id) = load(input, normalize)?;
    Ok(ToricModel::new(fan)?.with_label(id))
}

fn selected_ks(k: Option<KSelector>, model: &ToricModel) -> Result<Vec<usize>, Failure> {
    match k.unwrap_or(KSelector::All) {
        KSelector::All => Ok((0..=model.dim()).collect()),
        KSelector::One(k) => {
            model.check_k(k)?;
            Ok(vec![k])
        }
    }
}

fn formula_line(e: &DimEntry) -> String {
    let terms: Vec<String> = e
        .terms
        .iter()
        .map(|t| format!("{}*{}", t.binomial, t.count))
        .collect();
    format!("k={}: {} = {}", e.k, e.total, terms.join(" + "))
}

fn dims_output(
    model: &ToricModel,
    ks: &[usize],
    method: &str,
    config: &RunConfig,
) -> Result<String, Failure> {
    let registry = MethodRegistry::builtin();
    let m = registry.get(method)?;
    let mut table = BTreeMap::new();
    for &k in ks {
        table.insert(k, m.total(model, k, config.margin)?);
    }
    let breakdown: Vec<DimEntry> = ks
        .iter()
        .map(|&k| crate::pvf::dims_by_face_formula(model.stratification(), k))
        .collect::<Result<_, _>>()?;
    let strata = model.stratification().stratum_sizes();
    Ok(match config.format {
        Format::Json => {
            let mut doc = json!({
                "fan_id": model.label(),
                "n": model.dim(),
                "method": m.name(),
                "lattice_points": model.points().len(),
                "strata": strata,
                "dim_table": table.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
            });
            if m.name() == "formula" {
                doc["breakdown"] = serde_json::to_value(&breakdown).expect("serializable");
            }
            to_json(&doc)
        }
        Format::Tsv => {
            let mut s = String::from("k\tdim\n");
            for (k, v) in &table {
                let _ = writeln!(s, "{k}\t{v}");
            }
            s
        }
        Format::Pretty => {
            let mut s = format!(
                "fan {}  (n = {}, {} lattice points, method {})\n",
                model.label(),
                model.dim(),
                model.points().len(),
                m.name()
            );
            let _ = writeln!(s, "strata |S(i)|: {strata:?}");
            for e in &breakdown {
                let _ = writeln!(s, "{}", formula_line(e));
                for t in &e.terms {
                    let n = model.dim();
                    let _ = writeln!(
                        s,
                        "    i={}  faces={}  points={}  C({},{})={}  -> {}",
                        t.rank,
                        t.faces,
                        t.count,
                        n - t.rank,
                        e.k - t.rank,
                        t.binomial,
                        t.product
                    );
                }
                if table[&e.k] != e.total {
                    let _ = writeln!(s, "    {} gives {}", m.name(), table[&e.k]);
                }
            }
            s
        }
    })
}

fn decompose_output(model: &ToricModel, weights: &[WeightSpaceBasis], format: Format) -> String {
    match format {
        Format::Json => {
            let table = model.dimension_table();
            let mut dims: BTreeMap<String, usize> = BTreeMap::new();
            for w in weights {
                *dims.entry(w.grade.to_string()).or_default() += w.dim;
            }
            debug_assert!(dims
                .iter()
                .all(|(k, v)| table.get(k.parse().unwrap()) == Some(*v)));
            to_json(&json!({
                "fan_id": model.label(),
                "convention": CONVENTION,
                "dim_table": dims,
                "weights": weights,
            }))
        }
        Format::Tsv => {
            let mut s = format!("# {CONVENTION}\nk\tI\trank\tdim\tgenerators\n");
            for w in weights {
                let gens: Vec<String> = w.generators.iter().map(|g| g.to_string()).collect();
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}",
                    w.grade,
                    w.weight,
                    w.rank,
                    w.dim,
                    gens.join("; ")
                );
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("fan {}\n{CONVENTION}\n", model.label());
            let mut current = None;
            for w in weights {
                if current != Some(w.grade) {
                    current = Some(w.grade);
                    let total: usize = weights
                        .iter()
                        .filter(|v| v.grade == w.grade)
                        .map(|v| v.dim)
                        .sum();
                    let _ = writeln!(s, "\nk = {} (total {total})", w.grade);
                }
                let _ = writeln!(
                    s,
                    "  I = {:<12} rank {}  dim {}",
                    w.weight.to_string(),
                    w.rank,
                    w.dim
                );
                for g in &w.generators {
                    let _ = writeln!(s, "      {g}");
                }
            }
            s
        }
    }
}

fn crosscheck_output(reports: &[CrosscheckReport], config: &RunConfig) -> String {
    match config.format {
        Format::Json => match (config.k, reports) {
            (Some(KSelector::One(_)), [one]) => to_json(one),
            _ => to_json(&reports),
        },
        Format::Tsv => {
            let mut s = String::from("k\tformula\tkernel\tcharts\tfailures\n");
            for r in reports {
                let t = r.totals;
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}",
                    r.k,
                    t.formula,
                    t.kernel,
                    t.charts,
                    r.failures.len()
                );
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in reports {
                let t = r.totals;
                let _ = writeln!(
                    s,
                    "{} k={} margin={}: formula {} / kernel {} / charts {}  [{}]",
                    r.fan_id,
                    r.k,
                    r.margin,
                    t.formula,
                    t.kernel,
                    t.charts,
                    if r.passed() { "pass" } else { "FAIL" }
                );
                for f in &r.failures {
                    let w = f
                        .weight
                        .as_ref()
                        .map(|w| w.to_string())
                        .unwrap_or_else(|| "-".into());
                    let _ = writeln!(s, "    {w} {:?}: {}", f.kind, f.detail);
                }
            }
            s
        }
    }
}
