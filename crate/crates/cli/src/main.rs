//! `qpol`: polarization degree, orthogonalizing transformations, orbit
//! classification, and complete polarization bases for two-mode N-photon
//! states. States travel as JSON files; results print as JSON on stdout.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 no orthogonalizing transformation found.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qpol::bases::{three_photon_basis, two_photon_phase_basis, two_photon_rotation_basis, Axis};
use qpol::io::{basis_to_json, state_from_json, state_to_json};
use qpol::manifold::{apply_unitary, PureState};
use qpol::orbits::classify_orbit;
use qpol::polarization::{
    degree_of_polarization, orthogonalize, OptimizerOptions, PolarizationResult,
};
use qpol::su2::{euler_unitary, legendre_zeros, EulerAngles};

#[derive(Parser)]
#[command(
    name = "qpol",
    version,
    about = "Polarization of two-mode N-photon states under SU(2) transformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree of polarization of a pure state
    Degree {
        /// JSON state file: {"n_photons": N, "amplitudes": [[re, im], ...]}
        state: PathBuf,
        #[command(flatten)]
        opt: OptFlags,
    },
    /// Transformation angles mapping the state onto an orthogonal one
    Orthogonalize {
        state: PathBuf,
        #[command(flatten)]
        opt: OptFlags,
    },
    /// SU(2) orbit class of the state
    Classify {
        state: PathBuf,
        #[command(flatten)]
        opt: OptFlags,
    },
    /// Apply the Euler transformation (beta, theta, alpha) and print the state
    Transform {
        state: PathBuf,
        #[arg(allow_negative_numbers = true)]
        beta: f64,
        #[arg(allow_negative_numbers = true)]
        theta: f64,
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Complete polarization basis (2 or 3 photons)
    Bases {
        n_photons: usize,
        /// Generator axis: z (phase shifts) or y (rotations)
        #[arg(default_value = "z")]
        axis: String,
        /// Seed state for 3 photons: zeta1 or zeta2 (ignored for 2 photons)
        #[arg(default_value = "zeta1")]
        seed: String,
    },
    /// Zeros of the Legendre polynomial of the given order
    LegendreZeros { order: usize },
    /// Run the built-in identity checks and print a pass/fail table
    Verify,
}

#[derive(Args)]
struct OptFlags {
    /// Coarse grid sizes for the (beta, theta, alpha) scan [default: 48,24,48]
    #[arg(long, value_name = "B,T,A", value_parser = parse_grid)]
    grid: Option<(usize, usize, usize)>,
    /// Grid minima refined by the simplex stage [default: 8]
    #[arg(long)]
    starts: Option<usize>,
    /// Convergence tolerance of the refinement stage [default: 1e-10]
    #[arg(long)]
    tol: Option<f64>,
    /// Function-evaluation budget per refinement start [default: 500]
    #[arg(long = "max-iters")]
    max_iters: Option<usize>,
}

impl OptFlags {
    fn options(&self) -> OptimizerOptions {
        let mut opts = OptimizerOptions::default();
        if let Some(grid) = self.grid {
            opts.grid_counts = grid;
        }
        if let Some(starts) = self.starts {
            opts.refine_starts = starts;
        }
        if let Some(tol) = self.tol {
            opts.refine_tolerance = tol;
        }
        if let Some(max_iters) = self.max_iters {
            opts.max_iterations = max_iters;
        }
        opts
    }
}

fn parse_grid(text: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected B,T,A (three counts), got {text:?}"));
    }
    let mut counts = [0usize; 3];
    for (slot, part) in counts.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|e| format!("{part:?}: {e}"))?;
    }
    Ok((counts[0], counts[1], counts[2]))
}

struct Failure {
    code: u8,
    message: String,
}

impl From<qpol::Error> for Failure {
    fn from(err: qpol::Error) -> Self {
        let code = match err {
            qpol::Error::NotFound { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn read_state(path: &Path) -> Result<PureState, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(state_from_json(&text, true)?)
}

#[derive(Serialize)]
struct TransformationReport {
    eta_q: f64,
    beta: f64,
    theta: f64,
    alpha: f64,
    min_overlap_mag: f64,
}

impl TransformationReport {
    fn new(r: &PolarizationResult) -> Self {
        TransformationReport {
            eta_q: r.eta_q,
            beta: r.argmin.beta,
            theta: r.argmin.theta,
            alpha: r.argmin.alpha,
            min_overlap_mag: r.min_overlap_mag,
        }
    }
}

#[derive(Serialize)]
struct OrbitReport {
    kind: &'static str,
    label: Option<usize>,
    witness_fidelity: f64,
    beta: f64,
    theta: f64,
    alpha: f64,
}

/// Print one line to stdout; a broken pipe (e.g. piped into `head`) ends the
/// process quietly with the conventional SIGPIPE status instead of panicking.
fn emit(text: impl AsRef<str>) -> Result<(), Failure> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{}", text.as_ref()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(141),
        Err(e) => Err(Failure {
            code: 2,
            message: format!("stdout: {e}"),
        }),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    emit(serde_json::to_string_pretty(value).expect("report serializes"))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Cmd::Degree { state, opt } => {
            let s = read_state(&state)?;
            let r = degree_of_polarization(&s, &opt.options())?;
            print_json(&TransformationReport::new(&r))?;
        }
        Cmd::Orthogonalize { state, opt } => {
            let s = read_state(&state)?;
            let r = orthogonalize(&s, &opt.options())?;
            print_json(&TransformationReport::new(&r))?;
        }
        Cmd::Classify { state, opt } => {
            let s = read_state(&state)?;
            let class = classify_orbit(&s, &opt.options())?;
            let angles = class.witness_angles();
            print_json(&OrbitReport {
                kind: class.kind(),
                label: class.label_n(),
                witness_fidelity: class.witness_fidelity(),
                beta: angles.beta,
                theta: angles.theta,
                alpha: angles.alpha,
            })?;
        }
        Cmd::Transform {
            state,
            beta,
            theta,
            alpha,
        } => {
            let s = read_state(&state)?;
            let u = euler_unitary(s.n_photons(), EulerAngles::new(beta, theta, alpha));
            emit(state_to_json(&apply_unitary(&u, &s)?))?;
        }
        Cmd::Bases {
            n_photons,
            axis,
            seed,
        } => {
            let axis: Axis = axis.parse()?;
            let basis = match n_photons {
                2 => match axis {
                    Axis::Z => two_photon_phase_basis(),
                    Axis::Y => two_photon_rotation_basis(),
                },
                3 => three_photon_basis(seed.parse()?, axis),
                _ => {
                    return Err(Failure {
                        code: 2,
                        message: format!(
                            "InvalidOptions: complete bases are constructed for 2 or 3 photons, \
                             not {n_photons}"
                        ),
                    })
                }
            };
            emit(basis_to_json(&basis))?;
        }
        Cmd::LegendreZeros { order } => {
            emit(serde_json::to_string(&legendre_zeros(order)).expect("float list serializes"))?;
        }
        Cmd::Verify => {
            let checks = qpol::verify::run_all();
            let passed = checks.iter().filter(|c| c.passed).count();
            for check in &checks {
                let tag = if check.passed { "PASS" } else { "FAIL" };
                emit(format!("[{tag}] {}: {}", check.name, check.detail))?;
            }
            emit(format!("{passed}/{} checks passed", checks.len()))?;
            if passed < checks.len() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
