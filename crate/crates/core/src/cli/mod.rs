//! Command-line front end.
//!
//! Every subcommand is first resolved into an [`Invocation`] and only then
//! executed, so the exact inputs can be echoed into the output and replayed
//! with `--from-json`.

mod invocation;
mod output;

use std::cmp::Ordering;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

pub use invocation::{basis_label, GridSpec, Invocation, SystemSpec};
pub use output::{format_float, Format, Report, Value};

use crate::entangle::SolverMode;
use crate::error::Error;
use crate::herald::{resonance_frequency, RadiationParams};
use crate::presets::{self, Preset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "spinstar",
    version,
    about = "Heralded two-spin entanglement on a three-spin star"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Output encoding.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Replay the `inputs` of a previous JSON report.
    #[arg(long = "from-json", value_name = "PATH")]
    pub from_json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form state at time t.
    Evolve {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Measure the auxiliary spin at time t.
    Herald {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Moment of maximal entanglement.
    SolveTent {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Entanglement time across a range of fields.
    SweepField {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long = "Bmin", allow_negative_numbers = true)]
        b_min: f64,
        #[arg(long = "Bmax", allow_negative_numbers = true)]
        b_max: f64,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Fidelity against the maximally entangled target over a time window.
    FidelityTrace {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Concurrence of the heralded state over a time window.
    ConcurrenceTrace {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Readout frequencies, line probabilities and radiated power.
    Measurement {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        time: TimeArgs,
        /// Photon angular frequency in rad/s; defaults to the resonance |B gamma_c|.
        #[arg(long)]
        omega: Option<f64>,
        /// Irradiation time in s.
        #[arg(long, default_value_t = 1e-3)]
        tau: f64,
        /// Photons in the mode.
        #[arg(long = "N", default_value_t = 0)]
        n_photons: u64,
        /// Quantization volume in m^3.
        #[arg(long = "V", default_value_t = 1e-6)]
        volume: f64,
        /// z component of the polarization; the rest goes to y.
        #[arg(
            long = "e-z",
            alias = "ez",
            default_value_t = 1.0,
            allow_negative_numbers = true
        )]
        e_z: f64,
    },
    /// Analytic eigensystem with residuals against the matrix.
    Spectrum {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Built-in physical systems.
    Presets,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Built-in system (default xef2).
    #[arg(long)]
    pub preset: Option<String>,
    /// JSON file with gamma_c, gamma (rad/s/T) and j_hz (Hz).
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    pub params: Option<PathBuf>,
    /// Work in units with J = hbar; the field is given by --beta.
    #[arg(long)]
    pub dimensionless: bool,
    /// Magnetic field in tesla.
    #[arg(long = "B", allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Dimensionless field B(gamma_c - gamma)/J.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "b")]
    pub beta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TimeArgs {
    /// Time in seconds (Jt/hbar in dimensionless mode).
    #[arg(long)]
    pub t: Option<f64>,
    /// Time as Jt/hbar.
    #[arg(long, conflicts_with = "t")]
    pub jt: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Branch index.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, default_value = "exact")]
    pub mode: SolverMode,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    #[arg(long)]
    pub tmin: f64,
    #[arg(long)]
    pub tmax: f64,
    #[arg(long, default_value_t = 1001)]
    pub steps: usize,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Solver(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Solver(m) => write!(f, "solver failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_)
            | Error::DimensionMismatch { .. }
            | Error::NotNormalized { .. } => CliError::Usage(e.to_string()),
            Error::Degeneracy | Error::Regime { .. } | Error::DegenerateBasis { .. } => {
                CliError::Domain(e.to_string())
            }
            Error::NoRoot { .. } => CliError::Solver(e.to_string()),
        }
    }
}

#[derive(Deserialize)]
struct ParamFile {
    gamma_c: f64,
    gamma: f64,
    j_hz: f64,
    #[serde(default)]
    name: Option<String>,
}

fn read_param_file(path: &Path) -> Result<Preset, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let file: ParamFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if file.j_hz.is_nan() || file.j_hz <= 0.0 {
        return Err(CliError::Usage(format!(
            "j_hz must be positive, got {}",
            file.j_hz
        )));
    }
    Ok(Preset {
        name: file.name.unwrap_or_default(),
        gamma_c: file.gamma_c,
        gamma: file.gamma,
        j_hz: file.j_hz,
        notes: String::new(),
    })
}

impl SystemArgs {
    fn spec(&self) -> Result<SystemSpec, CliError> {
        if self.dimensionless {
            if self.preset.is_some() || self.params.is_some() {
                return Err(CliError::Usage(
                    "--dimensionless cannot be combined with --preset or --params".into(),
                ));
            }
            return Ok(SystemSpec::Dimensionless);
        }
        if let Some(path) = &self.params {
            let p = read_param_file(path)?;
            return Ok(SystemSpec::Si {
                preset: None,
                gamma_c: p.gamma_c,
                gamma: p.gamma,
                j_hz: p.j_hz,
            });
        }
        let name = self.preset.as_deref().unwrap_or(presets::XEF2.name);
        let preset = presets::find(name).ok_or_else(|| {
            let known: Vec<&str> = presets::ALL.iter().map(|p| p.name).collect();
            CliError::Usage(format!(
                "unknown preset `{name}` (known: {})",
                known.join(", ")
            ))
        })?;
        Ok(SystemSpec::from_preset(&preset.to_owned()))
    }

    /// Couplings plus the field in the units of the couplings.
    fn resolve(&self) -> Result<(SystemSpec, f64), CliError> {
        let spec = self.spec()?;
        let field = match (&spec, self.b, self.beta) {
            (SystemSpec::Dimensionless, None, Some(beta)) => beta,
            (SystemSpec::Dimensionless, _, None) => {
                return Err(CliError::Usage("--dimensionless needs --beta".into()))
            }
            (SystemSpec::Si { .. }, Some(b), None) => b,
            (SystemSpec::Si { .. }, None, Some(beta)) => {
                // Field that yields the requested β for these couplings.
                let unit = spec.params(1.0)?;
                let per_tesla = unit.beta();
                if per_tesla == 0.0 {
                    return Err(CliError::Usage(
                        "gamma_c = gamma: beta does not depend on B".into(),
                    ));
                }
                beta / per_tesla
            }
            (SystemSpec::Si { .. }, None, None) => {
                return Err(CliError::Usage("missing --B (or --beta)".into()))
            }
            _ => return Err(CliError::Usage("give either --B or --beta".into())),
        };
        if !field.is_finite() {
            return Err(CliError::Usage("field must be finite".into()));
        }
        Ok((spec, field))
    }

    fn spec_only(&self) -> Result<SystemSpec, CliError> {
        if self.b.is_some() || self.beta.is_some() {
            return Err(CliError::Usage(
                "this command takes --Bmin/--Bmax instead of --B/--beta".into(),
            ));
        }
        self.spec()
    }
}

impl TimeArgs {
    fn resolve(
        &self,
        spec: &SystemSpec,
        field: f64,
        default: Option<f64>,
    ) -> Result<f64, CliError> {
        let t = match (self.t, self.jt) {
            (Some(t), _) => t,
            (None, Some(jt)) => jt / spec.params(field)?.j_omega,
            (None, None) => {
                default.ok_or_else(|| CliError::Usage("missing --t (or --jt)".into()))?
            }
        };
        if !t.is_finite() || t < 0.0 {
            return Err(CliError::Usage(format!(
                "time must be finite and non-negative, got {t}"
            )));
        }
        Ok(t)
    }
}

impl WindowArgs {
    fn grid(&self) -> Result<GridSpec, CliError> {
        if self.tmin.is_nan() || self.tmin < 0.0 {
            return Err(CliError::Usage("--tmin must be non-negative".into()));
        }
        if self.tmin.partial_cmp(&self.tmax) != Some(Ordering::Less) || self.steps < 2 {
            return Err(CliError::Usage("need tmin < tmax and steps >= 2".into()));
        }
        Ok(GridSpec {
            min: self.tmin,
            max: self.tmax,
            steps: self.steps,
        })
    }
}

impl Command {
    /// Resolve flags into an invocation without running anything.
    pub fn invocation(&self) -> Result<Invocation, CliError> {
        Ok(match self {
            Command::Evolve { system, time } => {
                let (system, field) = system.resolve()?;
                let t = time.resolve(&system, field, None)?;
                Invocation::Evolve { system, field, t }
            }
            Command::Herald { system, time } => {
                let (system, field) = system.resolve()?;
                let t = time.resolve(&system, field, None)?;
                Invocation::Herald { system, field, t }
            }
            Command::SolveTent { system, solver } => {
                let (system, field) = system.resolve()?;
                Invocation::SolveTent {
                    system,
                    field,
                    n: solver.n,
                    mode: solver.mode,
                }
            }
            Command::SweepField {
                system,
                b_min,
                b_max,
                steps,
                solver,
            } => {
                if b_min.partial_cmp(b_max) != Some(Ordering::Less) || *steps < 2 {
                    return Err(CliError::Usage("need Bmin < Bmax and steps >= 2".into()));
                }
                Invocation::SweepField {
                    system: system.spec_only()?,
                    fields: GridSpec {
                        min: *b_min,
                        max: *b_max,
                        steps: *steps,
                    },
                    n: solver.n,
                    mode: solver.mode,
                }
            }
            Command::FidelityTrace { system, window } => {
                let (system, field) = system.resolve()?;
                Invocation::FidelityTrace {
                    system,
                    field,
                    times: window.grid()?,
                }
            }
            Command::ConcurrenceTrace { system, window } => {
                let (system, field) = system.resolve()?;
                Invocation::ConcurrenceTrace {
                    system,
                    field,
                    times: window.grid()?,
                }
            }
            Command::Measurement {
                system,
                time,
                omega,
                tau,
                n_photons,
                volume,
                e_z,
            } => {
                let (system, field) = system.resolve()?;
                let t = time.resolve(&system, field, Some(0.0))?;
                let params = system.params(field)?;
                let omega = match omega {
                    Some(w) => *w,
                    None => resonance_frequency(&params)?,
                };
                if e_z.abs() > 1.0 {
                    return Err(CliError::Usage(format!(
                        "|e_z| must not exceed 1, got {e_z}"
                    )));
                }
                let e_y = (1.0 - e_z * e_z).sqrt();
                let radiation = RadiationParams::new(omega, *tau, *n_photons, *volume)
                    .with_polarization(e_y, *e_z);
                radiation.validate()?;
                Invocation::Measurement {
                    system,
                    field,
                    t,
                    radiation,
                }
            }
            Command::Spectrum { system } => {
                let (system, field) = system.resolve()?;
                Invocation::Spectrum { system, field }
            }
            Command::Presets => Invocation::Presets,
        })
    }
}

fn replay(path: &Path) -> Result<Invocation, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let doc: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    // Accept a full report or a bare invocation.
    let inputs = doc.get("inputs").cloned().unwrap_or(doc);
    serde_json::from_value(inputs)
        .map_err(|e| CliError::Usage(format!("{}: bad inputs: {e}", path.display())))
}

/// Rendered output of a successful run.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub text: String,
    pub warning: Option<String>,
}

/// Resolve, execute and render without touching stdout.
pub fn render(cli: &Cli) -> Result<Rendered, CliError> {
    let invocation = match (&cli.command, &cli.from_json) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--from-json replaces the subcommand".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("no subcommand given (see --help)".into())),
        (Some(cmd), None) => cmd.invocation()?,
        (None, Some(path)) => replay(path)?,
    };
    let report = invocation.execute()?;
    Ok(Rendered {
        text: report.render(cli.format),
        warning: report.warning,
    })
}

/// Full program: parse `args`, write the result, return the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let rendered = match render(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("spinstar: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, rendered.text.as_bytes()),
        None => std::io::stdout().lock().write_all(rendered.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("spinstar: {}", CliError::Io(e.to_string()));
        return EXIT_IO;
    }
    match rendered.warning {
        Some(w) => {
            eprintln!("spinstar: warning: {w}");
            EXIT_DOMAIN
        }
        None => EXIT_OK,
    }
}
