//! Command-line surface: each subcommand parses a problem file, runs
//! the requested computation or check, and emits reports in text or
//! JSON. Exit code 0 means every claim held, 1 means a claim failed,
//! 2 means the input never reached a claim.

use crate::ideal::{ideal_equal, ideal_sum, IdealHandle};
use crate::input::{parse_problem, Payload, ProblemFile};
use crate::matrix::{hb_delta, hb_psi, hb_psi_minors, verify_lower_minor_containment, PolyMatrix};
use crate::poly::Polynomial;
use crate::report::{render_json, render_text, Report, Status};
use crate::resolution::minimal_free_resolution;
use crate::socle::{
    ci_socle, socle_generators_formula, socle_oracle, socle_via_decomposition,
    verify_dimension_drop, verify_reduction_one,
};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;

#[derive(Parser)]
#[command(name = "socles", version, about = "Iterated socles of origin-primary ideals, three ways")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Echoed into every report payload; useful for reproducing runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Decompose,
    Formula,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimal free resolution of the quotient by an ideal.
    Resolve { file: String },
    /// Compute the iterated socle I : m^s by one or all methods.
    Socle {
        file: String,
        /// Socle order; may also come from an `s=` line in the file.
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Check a structural identity.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Hilbert-Burch determinant formulas for an n x (n-1) matrix over Q[x,y].
    Hb {
        file: String,
        #[arg(long)]
        s: Option<u32>,
        #[command(flatten)]
        mode: HbMode,
    },
    /// The socle of a complete intersection from a single determinant.
    CiSocle { file: String },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct HbMode {
    /// Column-split determinant socle generators.
    #[arg(long)]
    delta: bool,
    /// The enlarged presentation matrix.
    #[arg(long)]
    psi: bool,
    /// Signed maximal minors of the enlarged matrix, checked against
    /// the generators, the determinants, and the socle.
    #[arg(long)]
    minors: bool,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// K^2 = I K for K = I : m^s.
    Reduction {
        file: String,
        #[arg(long)]
        s: Option<u32>,
    },
    /// dim R/I - dim R/(I : m^s) equals the rank formula.
    Dimension {
        file: String,
        #[arg(long)]
        s: Option<u32>,
    },
    /// I : m^s lies inside the next lower minor ideal.
    LowerMinors {
        file: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        s: Option<u32>,
    },
}

/// Runs the CLI against `argv` (including the program name), writing
/// rendered reports to `out`; returns the process exit code.
pub fn run<W: Write>(argv: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return 2;
        }
    };
    let mut reports = execute(&cli.command);
    if let Some(seed) = cli.seed {
        for r in &mut reports {
            if let serde_json::Value::Object(map) = &mut r.payload {
                map.insert("seed".into(), json!(seed));
            }
        }
    }
    let rendered = match cli.output {
        OutputFormat::Json => render_json(&reports),
        OutputFormat::Text => render_text(&reports),
    };
    let _ = out.write_all(rendered.as_bytes());
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

fn execute(command: &Command) -> Vec<Report> {
    let name = command_name(command);
    match dispatch(command) {
        Ok(reports) => reports,
        Err(e) => vec![Report::new(
            name,
            &e.to_string(),
            Status::Error,
            json!({ "error": e.to_string() }),
        )],
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Resolve { .. } => "resolve",
        Command::Socle { .. } => "socle",
        Command::Verify(VerifyCommand::Reduction { .. }) => "verify reduction",
        Command::Verify(VerifyCommand::Dimension { .. }) => "verify dimension",
        Command::Verify(VerifyCommand::LowerMinors { .. }) => "verify lower-minors",
        Command::Hb { .. } => "hb",
        Command::CiSocle { .. } => "ci-socle",
    }
}

fn load(path: &str) -> Result<ProblemFile> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {path}: {e}")))?;
    parse_problem(&src).map_err(|e| Error::BadInput(format!("{path}: {e}")))
}

fn ideal_input(pf: &ProblemFile) -> Result<IdealHandle> {
    match &pf.payload {
        Payload::Ideal(gens) => Ok(IdealHandle::new(pf.names.len(), gens.clone())),
        Payload::Matrix(_) => Err(Error::BadInput("this command needs an ideal file".into())),
    }
}

fn matrix_input(pf: &ProblemFile) -> Result<PolyMatrix> {
    match &pf.payload {
        Payload::Ideal(_) => Err(Error::BadInput("this command needs a matrix file".into())),
        Payload::Matrix(mx) => Ok(mx.clone()),
    }
}

fn need_s(flag: Option<u32>, pf: &ProblemFile) -> Result<u32> {
    let s = flag
        .or(pf.s)
        .ok_or_else(|| Error::BadInput("s is required: pass --s or an `s=` line in the file".into()))?;
    if s == 0 {
        return Err(Error::BadInput("s must be at least 1".into()));
    }
    Ok(s)
}

fn need_n(flag: Option<usize>, pf: &ProblemFile) -> Result<usize> {
    flag.or(pf.n)
        .ok_or_else(|| Error::BadInput("n is required: pass --n or an `n=` line in the file".into()))
}

fn polys_json(ps: &[Polynomial], names: &[String]) -> serde_json::Value {
    json!(ps.iter().map(|p| format!("{}", p.display(names))).collect::<Vec<_>>())
}

fn matrix_json(mx: &PolyMatrix, names: &[String]) -> serde_json::Value {
    json!((0..mx.rows())
        .map(|r| (0..mx.cols())
            .map(|c| format!("{}", mx.entry(r, c).display(names)))
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn dispatch(command: &Command) -> Result<Vec<Report>> {
    match command {
        Command::Resolve { file } => {
            let pf = load(file)?;
            let i = ideal_input(&pf)?;
            let complex = minimal_free_resolution(&i)?;
            Ok(vec![Report::new(
                "resolve",
                "minimal free resolution of the quotient",
                Status::Computed,
                json!({
                    "betti": complex.betti,
                    "length": complex.length(),
                    "order_of_last_map": complex.order_of_last_map(),
                    "maps": complex.maps.iter().map(|m| matrix_json(m, &pf.names)).collect::<Vec<_>>(),
                }),
            )])
        }
        Command::Socle { file, s, method } => {
            let pf = load(file)?;
            let i = ideal_input(&pf)?;
            let s = need_s(*s, &pf)?;
            socle_command(&i, s, *method, &pf.names)
        }
        Command::Verify(VerifyCommand::Reduction { file, s }) => {
            let pf = load(file)?;
            let i = ideal_input(&pf)?;
            let s = need_s(*s, &pf)?;
            let complex = minimal_free_resolution(&i)?;
            let outcome = verify_reduction_one(&i, s, &complex)?;
            let status = if outcome.equal {
                if outcome.in_range {
                    Status::Pass
                } else {
                    Status::Computed
                }
            } else {
                Status::Fail
            };
            let witnesses = outcome
                .witness
                .as_ref()
                .map(|w| vec![format!("{} outside I*K", w.display(&pf.names))])
                .unwrap_or_default();
            Ok(vec![Report::new(
                "verify reduction",
                "the iterated socle has reduction number one",
                status,
                json!({
                    "s": outcome.s,
                    "bound": outcome.bound,
                    "in_range": outcome.in_range,
                    "equal": outcome.equal,
                }),
            )
            .with_witnesses(witnesses)])
        }
        Command::Verify(VerifyCommand::Dimension { file, s }) => {
            let pf = load(file)?;
            let i = ideal_input(&pf)?;
            let s = need_s(*s, &pf)?;
            let complex = minimal_free_resolution(&i)?;
            let outcome = verify_dimension_drop(&i, s, &complex)?;
            let status = if !outcome.in_range {
                Status::Computed
            } else if outcome.agrees {
                Status::Pass
            } else {
                Status::Fail
            };
            let witnesses = if status == Status::Fail {
                vec![format!(
                    "observed drop {} differs from predicted {}",
                    outcome.observed_drop, outcome.predicted_drop
                )]
            } else {
                Vec::new()
            };
            Ok(vec![Report::new(
                "verify dimension",
                "dimension drop matches rank times binomial",
                status,
                json!({
                    "s": outcome.s,
                    "bound": outcome.bound,
                    "in_range": outcome.in_range,
                    "colength_ideal": outcome.colength_ideal,
                    "colength_socle": outcome.colength_socle,
                    "observed_drop": outcome.observed_drop,
                    "predicted_drop": outcome.predicted_drop,
                }),
            )
            .with_witnesses(witnesses)])
        }
        Command::Verify(VerifyCommand::LowerMinors { file, n, s }) => {
            let pf = load(file)?;
            let mx = matrix_input(&pf)?;
            let s = need_s(*s, &pf)?;
            let n = need_n(*n, &pf)?;
            let outcome = verify_lower_minor_containment(&mx, n, s)?;
            let status = if outcome.contained { Status::Pass } else { Status::Fail };
            let witnesses = outcome
                .offender
                .as_ref()
                .map(|w| vec![format!("{} outside the lower minor ideal", w.display(&pf.names))])
                .unwrap_or_default();
            Ok(vec![Report::new(
                "verify lower-minors",
                "iterated socle lies in the lower minor ideal",
                status,
                json!({
                    "s": outcome.s,
                    "n": outcome.n,
                    "contained": outcome.contained,
                    "socle_basis": polys_json(outcome.socle.basis(), &pf.names),
                }),
            )
            .with_witnesses(witnesses)])
        }
        Command::Hb { file, s, mode } => {
            let pf = load(file)?;
            let mx = matrix_input(&pf)?;
            let s = need_s(*s, &pf)?;
            hb_command(&mx, s, mode, &pf.names)
        }
        Command::CiSocle { file } => {
            let pf = load(file)?;
            let i = ideal_input(&pf)?;
            let outcome = ci_socle(i.gens())?;
            let oracle = socle_oracle(&i, 1)?;
            let agrees = ideal_equal(&outcome.socle, &oracle);
            let status = if agrees { Status::Pass } else { Status::Fail };
            let witnesses = if agrees {
                Vec::new()
            } else {
                vec!["determinant socle differs from the colon oracle".to_string()]
            };
            Ok(vec![Report::new(
                "ci-socle",
                "socle of a complete intersection is one extra determinant",
                status,
                json!({
                    "matrix": matrix_json(&outcome.matrix, &pf.names),
                    "determinant": format!("{}", outcome.determinant.display(&pf.names)),
                    "socle_basis": polys_json(outcome.socle.basis(), &pf.names),
                }),
            )
            .with_witnesses(witnesses)])
        }
    }
}

fn socle_command(
    i: &IdealHandle,
    s: u32,
    method: Method,
    names: &[String],
) -> Result<Vec<Report>> {
    match method {
        Method::Oracle => {
            let k = socle_oracle(i, s)?;
            Ok(vec![Report::new(
                "socle",
                "iterated socle by colon oracle",
                Status::Computed,
                json!({ "s": s, "basis": polys_json(k.basis(), names) }),
            )])
        }
        Method::Decompose => {
            let complex = minimal_free_resolution(i)?;
            let k = socle_via_decomposition(i, s, &complex)?;
            Ok(vec![Report::new(
                "socle",
                "iterated socle by pure-power decomposition",
                Status::Computed,
                json!({
                    "s": s,
                    "bound": complex.order_of_last_map(),
                    "basis": polys_json(k.basis(), names),
                }),
            )])
        }
        Method::Formula => {
            let complex = minimal_free_resolution(i)?;
            let gens = socle_generators_formula(i, s, &complex)?;
            let k = ideal_sum(i, &IdealHandle::new(i.nvars(), gens.clone()));
            Ok(vec![Report::new(
                "socle",
                "iterated socle by staircase formula",
                Status::Computed,
                json!({
                    "s": s,
                    "bound": complex.order_of_last_map(),
                    "generators": polys_json(&gens, names),
                    "basis": polys_json(k.basis(), names),
                }),
            )])
        }
        Method::All => {
            let complex = minimal_free_resolution(i)?;
            let oracle = socle_oracle(i, s)?;
            let decomposed = socle_via_decomposition(i, s, &complex)?;
            let gens = socle_generators_formula(i, s, &complex)?;
            let formula = ideal_sum(i, &IdealHandle::new(i.nvars(), gens.clone()));
            let agree = ideal_equal(&oracle, &decomposed) && ideal_equal(&oracle, &formula);
            let status = if agree { Status::Pass } else { Status::Fail };
            let witnesses = if agree { Vec::new() } else { disagreement_witness(&oracle, &decomposed, &formula, names) };
            Ok(vec![Report::new(
                "socle",
                "three socle routes agree",
                status,
                json!({
                    "s": s,
                    "bound": complex.order_of_last_map(),
                    "basis": polys_json(oracle.basis(), names),
                    "formula_generators": polys_json(&gens, names),
                }),
            )
            .with_witnesses(witnesses)])
        }
    }
}

fn disagreement_witness(
    oracle: &IdealHandle,
    decomposed: &IdealHandle,
    formula: &IdealHandle,
    names: &[String],
) -> Vec<String> {
    for (label, other) in [("decomposition", decomposed), ("formula", formula)] {
        for g in other.basis() {
            if !oracle.contains(g) {
                return vec![format!("{} from the {label} lies outside the oracle socle", g.display(names))];
            }
        }
        for g in oracle.basis() {
            if !other.contains(g) {
                return vec![format!("{} from the oracle is missed by the {label}", g.display(names))];
            }
        }
    }
    vec!["routes disagree".to_string()]
}

fn hb_command(mx: &PolyMatrix, s: u32, mode: &HbMode, names: &[String]) -> Result<Vec<Report>> {
    if mode.delta {
        let outcome = hb_delta(mx, s)?;
        let oracle = socle_oracle(&outcome.ideal, s)?;
        let agrees = ideal_equal(&outcome.socle, &oracle);
        let status = if agrees { Status::Pass } else { Status::Fail };
        let witnesses = if agrees {
            Vec::new()
        } else {
            vec!["determinants with the ideal do not span the socle".to_string()]
        };
        let deltas: Vec<String> = outcome
            .deltas
            .iter()
            .map(|d| format!("({},{}): {}", d.column, d.shift, d.value.display(names)))
            .collect();
        Ok(vec![Report::new(
            "hb",
            "column-split determinants generate the iterated socle",
            status,
            json!({
                "s": outcome.s,
                "deltas": deltas,
                "socle_basis": polys_json(outcome.socle.basis(), names),
            }),
        )
        .with_witnesses(witnesses)])
    } else if mode.psi {
        let psi = hb_psi(mx, s)?;
        Ok(vec![Report::new(
            "hb",
            "enlarged presentation matrix",
            Status::Computed,
            json!({
                "s": s,
                "rows": psi.rows(),
                "cols": psi.cols(),
                "matrix": matrix_json(&psi, names),
            }),
        )])
    } else {
        let outcome = hb_psi_minors(mx, s)?;
        let checks = outcome.generator_minors_match
            && outcome.delta_minors_match
            && outcome.socle_match;
        let status = if !checks {
            Status::Fail
        } else if outcome.minimal {
            Status::Pass
        } else {
            Status::Computed
        };
        let witnesses = if checks {
            Vec::new()
        } else {
            vec![format!(
                "generator_minors_match={} delta_minors_match={} socle_match={}",
                outcome.generator_minors_match, outcome.delta_minors_match, outcome.socle_match
            )]
        };
        Ok(vec![Report::new(
            "hb",
            "signed minors of the enlarged matrix present the iterated socle",
            status,
            json!({
                "s": outcome.s,
                "sigma": outcome.sigma,
                "minors": polys_json(&outcome.minors, names),
                "generator_minors_match": outcome.generator_minors_match,
                "delta_minors_match": outcome.delta_minors_match,
                "socle_match": outcome.socle_match,
                "socle_generator_count": outcome.socle_generator_count,
                "expected_generator_count": outcome.expected_generator_count,
                "minimal": outcome.minimal,
            }),
        )
        .with_witnesses(witnesses)])
    }
}
