//! Command-line front end: construct the library's forms and complexes,
//! verify their certificates, transfer to finite covers, and move
//! between controlled geometric forms and ring forms.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 missing fixture or unreadable input.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use surgery_forms::checks;
use surgery_forms::complex::{build_t2, build_torus_complex};
use surgery_forms::controlled::{
    control_realize, forget_control, GeometricForm, TorusPoint,
};
use surgery_forms::error::Error;
use surgery_forms::fixtures;
use surgery_forms::forms::{make_alpha, make_e8, make_psi0, make_psi_n_limited, signature};
use surgery_forms::matrix::RingMatrix;
use surgery_forms::transfer::{transfer_matrix, Cover};

#[derive(Parser)]
#[command(
    name = "surgery-forms",
    about = "Exact quadratic-form calculator over Laurent polynomial group rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a form or chain complex as JSON.
    Construct {
        kind: ConstructKind,
        /// Number of torus factors.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Torus factor index (1-based) for `alpha`.
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Lift the resource guard on large products.
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one named certificate check.
    Verify {
        check: VerifyCheck,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Transfer a matrix to a finite diagonal cover.
    Transfer {
        /// Cover multipliers, comma separated (e.g. 2,1).
        #[arg(long)]
        k: String,
        /// Matrix JSON file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realize a matrix as a controlled geometric form on a cover.
    Control {
        /// Cover multiplier (same in every direction).
        #[arg(long)]
        k: u64,
        /// Base point, comma-separated rationals (e.g. 0,0 or 1/3,1/7).
        #[arg(long, default_value = "")]
        x0: String,
        #[arg(long, default_value_t = 0)]
        parity: u8,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Forget control: reconstruct a ring matrix from a geometric form.
    Forget {
        /// Squared control bound as a rational (e.g. 1/16).
        #[arg(long)]
        delta_sq: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the squared control radius of a geometric form.
    Radius {
        #[arg(long)]
        input: PathBuf,
    },
    /// Signature of a symmetric integer matrix.
    Signature {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the whole certificate suite.
    Selftest {
        #[arg(long)]
        json: bool,
        /// Also certify the n = 2 product form (slow).
        #[arg(long)]
        expensive: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Psi0,
    E8,
    Alpha,
    PsiN,
    T2Complex,
    T2nComplex,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyCheck {
    SymmetrizeE8,
    NilpotentAlpha,
    UnimodularLambda,
    InstantT2,
    TransferExample,
    RoundtripControl,
    Rank,
    SignatureE8,
}

/// Prints to stdout, ignoring a closed pipe (e.g. `| head`).
fn print_out(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{}", text);
}

fn emit(value: &serde_json::Value, out: &Option<PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::Fixture(format!("{}: {}", path.display(), e))),
        None => {
            print_out(&text);
            Ok(())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Fixture(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("{}: {}", path.display(), e)))
}

fn parse_cover(s: &str) -> Result<Cover, Error> {
    let ks = s
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::InvalidInput(format!("cover multipliers: {}", e)))?;
    Cover::new(ks)
}

fn parse_point(s: &str, dim: usize) -> Result<TorusPoint, Error> {
    if s.is_empty() {
        return Ok(TorusPoint::origin(dim));
    }
    let coords = s
        .split(',')
        .map(|p| BigRational::from_str(p.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::InvalidInput(format!("base point: {}", e)))?;
    Ok(TorusPoint::new(coords))
}

fn complex_json(
    ranks: &[usize],
    diffs: Vec<&RingMatrix>,
    phi0: Vec<&RingMatrix>,
    phi1: Vec<&RingMatrix>,
) -> serde_json::Value {
    json!({
        "ranks": ranks,
        "diffs": diffs,
        "phi0": phi0,
        "phi1": phi1,
    })
}

fn report_line(r: &checks::CheckReport) -> String {
    format!(
        "{} {:<24} {} ({} ms)",
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        r.description,
        r.millis
    )
}

fn report_json(r: &checks::CheckReport) -> serde_json::Value {
    json!({
        "check": r.name,
        "description": r.description,
        "passed": r.passed,
        "millis": r.millis,
    })
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Construct {
            kind,
            n,
            i,
            allow_large,
            out,
        } => {
            let limit = if allow_large { 16 } else { 4 };
            let value = match kind {
                ConstructKind::Psi0 => serde_json::to_value(make_psi0().psi).unwrap(),
                ConstructKind::E8 => serde_json::to_value(make_e8()).unwrap(),
                ConstructKind::Alpha => serde_json::to_value(make_alpha(i, n)?.alpha).unwrap(),
                ConstructKind::PsiN => {
                    serde_json::to_value(make_psi_n_limited(n, limit)?.psi).unwrap()
                }
                ConstructKind::T2Complex => {
                    let (c, s) = build_t2();
                    complex_json(
                        c.ranks(),
                        (1..=c.top_degree()).map(|r| c.diff(r)).collect(),
                        s.phi0.iter().collect(),
                        s.phi1.iter().collect(),
                    )
                }
                ConstructKind::T2nComplex => {
                    if n > limit {
                        return Err(Error::ResourceGuard(n, limit));
                    }
                    let c = build_torus_complex(2 * n)?;
                    complex_json(
                        c.ranks(),
                        (1..=c.top_degree()).map(|r| c.diff(r)).collect(),
                        vec![],
                        vec![],
                    )
                }
            };
            emit(&value, &out)?;
            Ok(true)
        }
        Command::Verify { check, n } => {
            let report = match check {
                VerifyCheck::SymmetrizeE8 => checks::check_symmetrize_e8(&fixtures::load()?),
                VerifyCheck::NilpotentAlpha => checks::check_nilpotent_alpha(&fixtures::load()?),
                VerifyCheck::UnimodularLambda => checks::check_unimodular_lambda(n),
                VerifyCheck::InstantT2 => checks::check_instant_t2(),
                VerifyCheck::TransferExample => checks::check_transfer_example(&fixtures::load()?),
                VerifyCheck::RoundtripControl => checks::check_roundtrip_control(),
                VerifyCheck::Rank => checks::check_rank_law(),
                VerifyCheck::SignatureE8 => checks::check_signature_e8(),
            };
            print_out(&report_line(&report));
            print_out(&report_json(&report).to_string());
            Ok(report.passed)
        }
        Command::Transfer { k, input, out } => {
            let cover = parse_cover(&k)?;
            let matrix: RingMatrix = read_json(&input)?;
            let transferred = transfer_matrix(&matrix, &cover)?;
            let basis: Vec<Vec<u64>> = cover.cosets();
            emit(
                &json!({
                    "matrix": transferred,
                    "basis": basis,
                }),
                &out,
            )?;
            Ok(true)
        }
        Command::Control {
            k,
            x0,
            parity,
            input,
            out,
        } => {
            let matrix: RingMatrix = read_json(&input)?;
            let point = parse_point(&x0, matrix.vars())?;
            let form = control_realize(&matrix, parity, k, &point)?;
            emit(&serde_json::to_value(&form).unwrap(), &out)?;
            Ok(true)
        }
        Command::Forget {
            delta_sq,
            input,
            out,
        } => {
            let bound = BigRational::from_str(&delta_sq)
                .map_err(|e| Error::InvalidInput(format!("delta-sq: {}", e)))?;
            let form: GeometricForm = read_json(&input)?;
            let matrix = forget_control(&form, &bound)?;
            emit(&serde_json::to_value(&matrix).unwrap(), &out)?;
            Ok(true)
        }
        Command::Radius { input } => {
            let form: GeometricForm = read_json(&input)?;
            print_out(&form.radius_sq()?.to_string());
            Ok(true)
        }
        Command::Signature { input } => {
            let matrix: RingMatrix = read_json(&input)?;
            print_out(&signature(&matrix)?.to_string());
            Ok(true)
        }
        Command::Selftest { json, expensive } => {
            let fix = fixtures::load()?;
            let reports = checks::selftest(&fix, expensive);
            if json {
                let arr: Vec<_> = reports.iter().map(report_json).collect();
                print_out(
                    &serde_json::to_string_pretty(&serde_json::Value::Array(arr)).unwrap(),
                );
            } else {
                for r in &reports {
                    print_out(&report_line(r));
                }
            }
            Ok(reports.iter().all(|r| r.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            let code = match e {
                Error::Fixture(_) => 3,
                Error::InvalidInput(_)
                | Error::ResourceGuard(_, _)
                | Error::IndexOutOfRange { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
