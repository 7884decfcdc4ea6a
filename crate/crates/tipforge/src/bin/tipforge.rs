//! Thin command-line front end over the library. Every command emits a
//! machine-readable report; errors leave as JSON on stderr with a stable
//! exit code per failure class.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use tipforge::census::{
    coefficient_terms, sensitivity_table, sigma_sensitivity_table, weight_matrices, Grouping,
    SensitivityCell, SignPattern,
};
use tipforge::error::Error;
use tipforge::io::{
    self, parse_matrix, parse_pattern, spectrum_to_csv, spectrum_to_svg, MatrixFormat,
};
use tipforge::matrix::DenseMatrix;
use tipforge::report::{
    to_json, AnalysisReport, CycleReport, InputEcho, Payload, SigmaPowerGroup,
};
use tipforge::sigma::{omega, sigma_charpoly, stabilize};
use tipforge::signature::{self, matrix_polynomial, spectral_signature, SignatureMode};
use tipforge::tol::Tolerances;

#[derive(Parser)]
#[command(
    name = "tipforge",
    version,
    about = "Diagonal-forcing tipping points, cycle decompositions, and sign-pattern spectral signatures"
)]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    command: Command,
}

/// Tolerance overrides; defaults come from TIPFORGE_TOL_* variables and then
/// the built-in values.
#[derive(Args)]
struct TolArgs {
    #[arg(long, global = true, value_name = "REL")]
    tol_real_eig: Option<f64>,
    #[arg(long, global = true, value_name = "ABS")]
    tol_sigma_stable: Option<f64>,
    #[arg(long, global = true, value_name = "ABS")]
    tol_route_agreement: Option<f64>,
    #[arg(long, global = true, value_name = "REL")]
    tol_r0_residual: Option<f64>,
    #[arg(long, global = true, value_name = "REL")]
    tol_sign_zero: Option<f64>,
    #[arg(long, global = true, value_name = "REL")]
    tol_root_cluster: Option<f64>,
    #[arg(long, global = true, value_name = "GRID")]
    tol_canonical_key: Option<f64>,
    #[arg(long, global = true, value_name = "STEP")]
    tol_probe_step: Option<f64>,
}

impl TolArgs {
    fn resolve(&self) -> Tolerances {
        let mut t = Tolerances::from_env();
        if let Some(v) = self.tol_real_eig {
            t.real_eig_rel = v;
        }
        if let Some(v) = self.tol_sigma_stable {
            t.sigma_stable = v;
        }
        if let Some(v) = self.tol_route_agreement {
            t.route_agreement = v;
        }
        if let Some(v) = self.tol_r0_residual {
            t.r0_residual = v;
        }
        if let Some(v) = self.tol_sign_zero {
            t.sign_zero_rel = v;
        }
        if let Some(v) = self.tol_root_cluster {
            t.root_cluster_rel = v;
        }
        if let Some(v) = self.tol_canonical_key {
            t.canonical_key = v;
        }
        if let Some(v) = self.tol_probe_step {
            t.probe_step = v;
        }
        t
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full two-route tipping analysis of a matrix (negative diagonal).
    Analyze {
        /// Matrix file or inline text (JSON object or CSV rows).
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        /// Force the input format instead of sniffing it.
        #[arg(long, value_parser = ["json", "csv"])]
        format: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Both tipping-point estimates plus the verdict, one line + JSON.
    SigmaPoint {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, value_parser = ["json", "csv"])]
        format: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficient-sensitivity tables for the canonical patterns.
    Table1 {
        #[arg(long, default_value_t = 8, value_name = "N")]
        n_max: usize,
        /// text: aligned tables; csv: n,coefficient,tipping,total rows.
        #[arg(long, default_value = "text", value_parser = ["text", "csv"])]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Signed permutation terms, sensitivities, and weight matrices of a
    /// sign pattern.
    Cycles {
        /// Pattern file or inline rows of +, -, 0 separated by ';'.
        #[arg(allow_hyphen_values = true)]
        pattern: String,
        /// Restrict to one coefficient index.
        #[arg(long)]
        coeff: Option<usize>,
        /// Also decompose the constant coefficient by forcing power.
        #[arg(long)]
        by_sigma: bool,
        /// Emit the JSON report instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intrinsic spectral signature of a sign pattern.
    Signature {
        #[arg(allow_hyphen_values = true)]
        pattern: String,
        #[arg(long, default_value = "plain", value_parser = ["plain", "hollow-scaled"])]
        mode: String,
        /// Write a complex-plane scatter of the spectrum.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the spectrum as re,im rows.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive signature census over every sign pattern of one order.
    Census {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Directory receiving census.json and census.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                std::process::exit(0);
            }
            eprint!("{}", e);
            std::process::exit(1);
        }
    };
    let tol = cli.tol.resolve();
    match run(cli.command, &tol) {
        Ok(()) => {}
        Err(e) => {
            let json = serde_json::json!({
                "error": { "kind": e.kind(), "message": e.to_string() }
            });
            eprintln!("{}", json);
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ParseError { .. } | Error::DimensionMismatch { .. } | Error::NonFiniteEntry { .. } => 2,
        Error::ConvergenceFailure { .. } => 3,
        Error::NonNegativeDiagonal { .. } | Error::BudgetExceeded { .. } | Error::ZeroPolynomial => 4,
    }
}

/// Reads the argument as a file when it names one, otherwise treats it as
/// inline text.
fn read_input(arg: &str) -> (String, bool) {
    let path = Path::new(arg);
    if path.is_file() {
        if let Ok(text) = fs::read_to_string(path) {
            return (text, true);
        }
    }
    (arg.to_string(), false)
}

fn load_matrix(arg: &str, format: Option<&str>) -> Result<DenseMatrix, Error> {
    let (text, from_file) = read_input(arg);
    let fmt = match format {
        Some("json") => MatrixFormat::Json,
        Some("csv") => MatrixFormat::Csv,
        _ => {
            let looks_json = text.trim_start().starts_with('{')
                || (from_file && arg.ends_with(".json"));
            if looks_json {
                MatrixFormat::Json
            } else {
                MatrixFormat::Csv
            }
        }
    };
    parse_matrix(&text, fmt)
}

fn load_pattern(arg: &str) -> Result<SignPattern, Error> {
    let (text, _) = read_input(arg);
    parse_pattern(&text)
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| Error::ParseError {
            row: 0,
            column: 0,
            message: format!("cannot write {}: {}", path.display(), e),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| {
                    if content.ends_with('\n') {
                        Ok(())
                    } else {
                        stdout.write_all(b"\n")
                    }
                })
                .map_err(|e| Error::ParseError {
                    row: 0,
                    column: 0,
                    message: format!("cannot write stdout: {}", e),
                })
        }
    }
}

fn run(command: Command, tol: &Tolerances) -> Result<(), Error> {
    match command {
        Command::Analyze { matrix, format, out } => {
            let m = load_matrix(&matrix, format.as_deref())?;
            let start = Instant::now();
            let report = stabilize(&m, tol)?;
            let om = omega(&sigma_charpoly(&m), tol)?;
            let elapsed = start.elapsed().as_millis() as u64;
            let full = AnalysisReport::new(
                *tol,
                InputEcho::Matrix { matrix: m },
                Payload::Analyze { report, omega: om },
                elapsed,
            );
            emit(out.as_ref(), &to_json(&full))
        }
        Command::SigmaPoint { matrix, format, out } => {
            let m = load_matrix(&matrix, format.as_deref())?;
            let start = Instant::now();
            let report = stabilize(&m, tol)?;
            let elapsed = start.elapsed().as_millis() as u64;
            let sigma = match report.sigma_star_omega {
                Some(v) => format!("{}", v),
                None => "none".to_string(),
            };
            let summary = format!("sigma* = {}, verdict = {}", sigma, report.verdict);
            let full = AnalysisReport::new(
                *tol,
                InputEcho::Matrix { matrix: m },
                Payload::SigmaPoint { report },
                elapsed,
            );
            let body = format!("{}\n{}", summary, to_json(&full));
            emit(out.as_ref(), &body)
        }
        Command::Table1 { n_max, format, out } => {
            let plain = sensitivity_table(n_max)?;
            let forced = sigma_sensitivity_table(n_max)?;
            let content = if format == "csv" {
                io::tables_to_csv(&plain, &forced)
            } else {
                let mut text = io::table_to_text(&plain, "coefficient sensitivity (tipping/total)", "a");
                text.push('\n');
                text.push_str(&io::table_to_text(
                    &forced,
                    "constant-coefficient sensitivity by forcing power (tipping/total)",
                    "s",
                ));
                text
            };
            emit(out.as_ref(), &content)
        }
        Command::Cycles {
            pattern,
            coeff,
            by_sigma,
            json,
            out,
        } => {
            let p = load_pattern(&pattern)?;
            let n = p.order();
            if let Some(i) = coeff {
                if i > n {
                    return Err(Error::DimensionMismatch {
                        message: format!("coefficient index {} out of range 0..={}", i, n),
                    });
                }
            }
            let start = Instant::now();
            let indices: Vec<usize> = match coeff {
                Some(i) => vec![i],
                None => (0..=n).collect(),
            };
            let mut coefficients = Vec::new();
            for i in indices {
                let terms = coefficient_terms(&p, i);
                let sensitivity = SensitivityCell {
                    tipping: terms.iter().filter(|t| t.sign < 0).count() as u64,
                    total: terms.len() as u64,
                };
                let weights = weight_matrices(&p, i, Grouping::WholeCoefficient);
                let by_sigma_power = by_sigma.then(|| {
                    (0..=n - i)
                        .map(|j| {
                            let group: Vec<_> =
                                terms.iter().filter(|t| t.sigma_power == j).collect();
                            SigmaPowerGroup {
                                power: j,
                                sensitivity: SensitivityCell {
                                    tipping: group.iter().filter(|t| t.sign < 0).count() as u64,
                                    total: group.len() as u64,
                                },
                                weights: weight_matrices(&p, i, Grouping::BySigmaPower(j)),
                            }
                        })
                        .collect()
                });
                coefficients.push(CycleReport {
                    coefficient: i,
                    sensitivity,
                    weights,
                    by_sigma_power,
                    terms,
                });
            }
            let elapsed = start.elapsed().as_millis() as u64;
            if json {
                let full = AnalysisReport::new(
                    *tol,
                    InputEcho::Pattern { pattern: p },
                    Payload::Cycles { coefficients },
                    elapsed,
                );
                emit(out.as_ref(), &to_json(&full))
            } else {
                emit(out.as_ref(), &render_cycles_text(&p, &coefficients))
            }
        }
        Command::Signature {
            pattern,
            mode,
            svg,
            csv,
            out,
        } => {
            let p = load_pattern(&pattern)?;
            let mode = if mode == "hollow-scaled" {
                SignatureMode::HollowScaled
            } else {
                SignatureMode::Plain
            };
            let start = Instant::now();
            let polynomial = matrix_polynomial(&p, mode)?;
            let sig = spectral_signature(&p, mode, tol)?;
            let elapsed = start.elapsed().as_millis() as u64;
            if let Some(path) = svg {
                fs::write(&path, spectrum_to_svg(&sig.spectrum)).map_err(|e| Error::ParseError {
                    row: 0,
                    column: 0,
                    message: format!("cannot write {}: {}", path.display(), e),
                })?;
            }
            if let Some(path) = csv {
                fs::write(&path, spectrum_to_csv(&sig.spectrum)).map_err(|e| Error::ParseError {
                    row: 0,
                    column: 0,
                    message: format!("cannot write {}: {}", path.display(), e),
                })?;
            }
            let full = AnalysisReport::new(
                *tol,
                InputEcho::Pattern { pattern: p },
                Payload::Signature {
                    mode,
                    polynomial,
                    signature: sig,
                },
                elapsed,
            );
            emit(out.as_ref(), &to_json(&full))
        }
        Command::Census { n, out, threads } => {
            let start = Instant::now();
            let result = signature::census(n, tol, threads)?;
            let elapsed = start.elapsed().as_millis() as u64;
            let full = AnalysisReport::new(
                *tol,
                InputEcho::Args {
                    args: format!("n={}", n),
                },
                Payload::Census {
                    result: result.clone(),
                },
                elapsed,
            );
            let json_text = to_json(&full);
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| Error::ParseError {
                    row: 0,
                    column: 0,
                    message: format!("cannot create {}: {}", dir.display(), e),
                })?;
                let mut csv = String::from("lambda_max,member_count\r\n");
                for class in &result.comaximal_classes {
                    csv.push_str(&format!("{:e},{}\r\n", class.lambda_max, class.member_count));
                }
                fs::write(dir.join("census.json"), &json_text).map_err(|e| Error::ParseError {
                    row: 0,
                    column: 0,
                    message: format!("cannot write census.json: {}", e),
                })?;
                fs::write(dir.join("census.csv"), &csv).map_err(|e| Error::ParseError {
                    row: 0,
                    column: 0,
                    message: format!("cannot write census.csv: {}", e),
                })?;
            }
            emit(None, &json_text)
        }
    }
}

fn render_cycles_text(p: &SignPattern, coefficients: &[CycleReport]) -> String {
    const TERM_PRINT_CAP: usize = 200;
    let mut out = format!("pattern: {}\n", p);
    for c in coefficients {
        out.push_str(&format!(
            "\ncoefficient x^{}: tipping {} / total {}\n",
            c.coefficient, c.sensitivity.tipping, c.sensitivity.total
        ));
        if c.terms.len() <= TERM_PRINT_CAP {
            for t in &c.terms {
                let positions: Vec<String> = t
                    .elements
                    .iter()
                    .map(|(r, col)| format!("({},{})", r, col))
                    .collect();
                out.push_str(&format!(
                    "  {} {} sigma^{}\n",
                    if t.sign > 0 { "+" } else { "-" },
                    positions.join(""),
                    t.sigma_power
                ));
            }
        } else {
            out.push_str(&format!("  ({} terms not listed)\n", c.terms.len()));
        }
        out.push_str(&io::weights_to_text(
            &c.weights,
            &format!("weights for x^{}:", c.coefficient),
        ));
        if let Some(groups) = &c.by_sigma_power {
            for g in groups {
                if g.sensitivity.total == 0 {
                    continue;
                }
                out.push_str(&format!(
                    "sigma^{}: tipping {} / total {}\n",
                    g.power, g.sensitivity.tipping, g.sensitivity.total
                ));
                out.push_str(&io::weights_to_text(
                    &g.weights,
                    &format!("weights for sigma^{}:", g.power),
                ));
            }
        }
    }
    out
}
