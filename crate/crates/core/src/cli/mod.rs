//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or validation error (including a failed
//! `verify`), 2 violated precondition, 3 internal-consistency failure.

pub mod io;
pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::{frame_bounds, frame_operator, is_tight, scaled_bounds, TIGHT_TOL};
use crate::closed_form::{min_condition_scaling, ScalingResult};
use crate::error::FrameError;
use crate::linalg::{apply_scaling, Frame};
use crate::oracle::{grid_search_scaling, verify_scaling, SearchSpec};
use crate::restricted::{restricted_scaling, Budget};
use crate::scalability::classify_scalability;

use io::{CliError, FrameFormat};
use report::{
    CommandEcho, FrameSummary, OracleEntry, Report, ScalingEntry, VerificationEntry, TOOL_VERSION,
};

#[derive(Debug, Parser)]
#[command(name = "framescale", version, about = "Condition-number-minimizing scalings of frames in the plane")]
struct Cli {
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Frame file format; inferred from the extension when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<FrameFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frame operator, bounds and tightness.
    Analyze {
        /// Frame file (CSV or JSON).
        file: PathBuf,
    },
    /// Scalability verdict with a witness scaling when one exists.
    Scalable {
        /// Frame file (CSV or JSON).
        file: PathBuf,
    },
    /// Minimum-condition scaling, or the budgeted rule with --epsilon.
    Scale {
        file: PathBuf,
        /// Keep every weight within [1 - E, 1 + E].
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Exhaustive grid search over weights.
    Oracle {
        file: PathBuf,
        /// Search the box [1 - E, 1 + E] instead of [lo, hi].
        #[arg(long, conflicts_with_all = ["lo", "hi"])]
        epsilon: Option<f64>,
        /// Grid points per weight.
        #[arg(long, default_value_t = 21)]
        levels: usize,
        #[arg(long, default_value_t = 0.0)]
        lo: f64,
        #[arg(long, default_value_t = 2.0)]
        hi: f64,
        /// Polish the grid optimum by coordinate descent.
        #[arg(long)]
        refine: bool,
    },
    /// Recompute the condition number of a weighted frame.
    Verify {
        file: PathBuf,
        /// JSON weight array, or a JSON report from `scale`.
        #[arg(long)]
        weights: PathBuf,
        /// Condition number to check against; defaults to the one in a scale report.
        #[arg(long)]
        claim: Option<f64>,
        /// Relative tolerance on the claim.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Write an SVG diagram of the frame and, optionally, its scaled version.
    Plot {
        file: PathBuf,
        /// Weights to draw the scaled frame with.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// SVG file to write.
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let text = if cli.json { outcome.report.to_json() } else { outcome.report.to_table() };
            let _ = out.write_all(text.as_bytes());
            if let Some(message) = outcome.failure {
                let _ = writeln!(err, "error: {message}");
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Outcome {
    report: Report,
    /// Set when the report was produced but the command still fails.
    failure: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, failure: None }
    }
}

fn base_report(name: &str, path: &Path, options: Vec<(&str, String)>, frame: &Frame) -> Result<Report, CliError> {
    let s = frame_operator(frame.vectors())?;
    Ok(Report {
        command: CommandEcho {
            name: name.to_string(),
            input: path.display().to_string(),
            options: options.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        },
        tool_version: TOOL_VERSION,
        frame: FrameSummary::new(frame),
        frame_operator: (&s).into(),
        bounds: (&frame_bounds(frame.vectors())?).into(),
        tightness: (&is_tight(frame.vectors(), TIGHT_TOL)).into(),
        verdict: None,
        scaling: None,
        oracle: None,
        verification: None,
        plot: None,
    })
}

fn scaling_entry(frame: &Frame, result: &ScalingResult, epsilon: Option<f64>) -> Result<ScalingEntry, CliError> {
    let tightness = is_tight(&apply_scaling(frame, &result.scaling)?, TIGHT_TOL);
    Ok(ScalingEntry::new(result, epsilon, &tightness))
}

fn opt<T: ToString>(key: &str, value: Option<T>) -> Option<(&str, String)> {
    value.map(|v| (key, v.to_string()))
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let load = |path: &Path| io::read_frame(path, cli.format);
    match &cli.command {
        Command::Analyze { file } => {
            let frame = load(file)?;
            Ok(base_report("analyze", file, vec![], &frame)?.into())
        }
        Command::Scalable { file } => {
            let frame = load(file)?;
            let mut report = base_report("scalable", file, vec![], &frame)?;
            report.verdict = Some((&classify_scalability(&frame)?).into());
            Ok(report.into())
        }
        Command::Scale { file, epsilon } => {
            let frame = load(file)?;
            let result = match epsilon {
                Some(e) => restricted_scaling(&frame, Budget::new(*e)?)?,
                None => min_condition_scaling(&frame)?,
            };
            let options = opt("epsilon", *epsilon).into_iter().collect();
            let mut report = base_report("scale", file, options, &frame)?;
            report.scaling = Some(scaling_entry(&frame, &result, *epsilon)?);
            Ok(report.into())
        }
        Command::Oracle { file, epsilon, levels, lo, hi, refine } => {
            let frame = load(file)?;
            let m = frame.len();
            let (spec, range) = match epsilon {
                Some(e) => {
                    let budget = Budget::new(*e)?;
                    (SearchSpec::budgeted(m, budget, *levels)?, (budget.lo(), budget.hi()))
                }
                None => (SearchSpec::uniform(m, *lo, *hi, *levels)?, (*lo, *hi)),
            };
            let outcome = grid_search_scaling(&frame, &spec.with_refine(*refine))?;
            let closed_form = match epsilon {
                Some(e) => restricted_scaling(&frame, Budget::new(*e)?).ok(),
                None => min_condition_scaling(&frame).ok(),
            };

            let mut options = vec![("levels", levels.to_string())];
            match epsilon {
                Some(e) => options.push(("epsilon", e.to_string())),
                None => {
                    options.push(("lo", lo.to_string()));
                    options.push(("hi", hi.to_string()));
                }
            }
            options.push(("refine", refine.to_string()));
            let mut report = base_report("oracle", file, options, &frame)?;
            report.scaling = Some(scaling_entry(&frame, &outcome.result, *epsilon)?);
            report.oracle = Some(OracleEntry::new(&outcome, *levels, range, *refine, closed_form.as_ref()));
            Ok(report.into())
        }
        Command::Verify { file, weights, claim, tol } => {
            let frame = load(file)?;
            let wf = io::read_weights_file(weights)?;
            if wf.scaling.len() != frame.len() {
                return Err(FrameError::Dimension { expected: frame.len(), got: wf.scaling.len() }.into());
            }
            if !(tol.is_finite() && *tol >= 0.0) {
                return Err(CliError::Usage(format!("--tol must be finite and nonnegative, got {tol}")));
            }
            let claimed = claim.or(wf.claimed_cond);
            let target = match claimed {
                Some(c) => c,
                None => scaled_bounds(&frame, &wf.scaling)?.cond,
            };
            let verification = verify_scaling(&frame, &wf.scaling, target, *tol)?;

            let mut options = vec![("weights", weights.display().to_string())];
            options.extend(opt("claim", *claim));
            options.push(("tol", tol.to_string()));
            let mut report = base_report("verify", file, options, &frame)?;
            report.verification = Some(VerificationEntry::new(&verification, claimed, *tol));
            let failure = (!verification.passed).then(|| {
                format!(
                    "verification failed: claimed cond {} but recomputed {}",
                    report::Num(target),
                    report::Num(verification.cond)
                )
            });
            Ok(Outcome { report, failure })
        }
        Command::Plot { file, weights, output } => {
            let frame = load(file)?;
            let scaling = match weights {
                Some(w) => {
                    let wf = io::read_weights_file(w)?;
                    if wf.scaling.len() != frame.len() {
                        return Err(FrameError::Dimension { expected: frame.len(), got: wf.scaling.len() }.into());
                    }
                    Some(wf.scaling)
                }
                None => None,
            };
            std::fs::write(output, svg::render(&frame, scaling.as_ref()))
                .map_err(|source| CliError::Io { path: output.display().to_string(), source })?;

            let mut options = vec![];
            options.extend(opt("weights", weights.as_ref().map(|w| w.display())));
            options.push(("output", output.display().to_string()));
            let mut report = base_report("plot", file, options, &frame)?;
            report.plot = Some(output.display().to_string());
            Ok(report.into())
        }
    }
}
