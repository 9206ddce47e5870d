//! Fully resolved command inputs and their execution.
//!
//! An [`Invocation`] holds every number a command needs, already converted
//! to the units of [`SystemParams`]. It is what the `inputs` field of JSON
//! output contains, so replaying it reproduces the run.

use serde::{Deserialize, Serialize};

use super::output::{Report, Value};
use crate::dynamics::{evolve_analytic, phase_descriptor};
use crate::entangle::{concurrence, concurrence_closed_form, phase_total, solve_t_ent, SolverMode};
use crate::error::Result;
use crate::herald::{herald, heralded_branches, measure, RadiationParams};
use crate::hilbert::{build_hamiltonian, twice_magnetization, SystemParams};
use crate::presets::{self, Preset};
use crate::spectral::analytic_eigensystem;
use crate::sweep::{fidelity_trace, sweep_field, LinearGrid};

/// Where the couplings come from. The field is carried by the command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "units", rename_all = "lowercase")]
pub enum SystemSpec {
    /// Rates in rad s⁻¹ T⁻¹, `j_hz = J/(2πħ)`; field in tesla, time in seconds.
    Si {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        preset: Option<String>,
        gamma_c: f64,
        gamma: f64,
        j_hz: f64,
    },
    /// `J = ħ`, field is `β`, time is `Jt/ħ`.
    Dimensionless,
}

impl SystemSpec {
    pub fn from_preset(p: &Preset) -> Self {
        SystemSpec::Si {
            preset: Some(p.name.clone()),
            gamma_c: p.gamma_c,
            gamma: p.gamma,
            j_hz: p.j_hz,
        }
    }

    pub fn params(&self, field: f64) -> Result<SystemParams> {
        match self {
            SystemSpec::Si {
                preset,
                gamma_c,
                gamma,
                j_hz,
            } => Preset {
                name: preset.clone().unwrap_or_default(),
                gamma_c: *gamma_c,
                gamma: *gamma,
                j_hz: *j_hz,
                notes: String::new(),
            }
            .params(field),
            SystemSpec::Dimensionless => SystemParams::dimensionless(field),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl GridSpec {
    fn grid(&self) -> Result<LinearGrid> {
        LinearGrid::new(self.min, self.max, self.steps)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Invocation {
    Evolve {
        system: SystemSpec,
        field: f64,
        t: f64,
    },
    Herald {
        system: SystemSpec,
        field: f64,
        t: f64,
    },
    SolveTent {
        system: SystemSpec,
        field: f64,
        n: u32,
        mode: SolverMode,
    },
    SweepField {
        system: SystemSpec,
        fields: GridSpec,
        n: u32,
        mode: SolverMode,
    },
    FidelityTrace {
        system: SystemSpec,
        field: f64,
        times: GridSpec,
    },
    ConcurrenceTrace {
        system: SystemSpec,
        field: f64,
        times: GridSpec,
    },
    Measurement {
        system: SystemSpec,
        field: f64,
        t: f64,
        radiation: RadiationParams,
    },
    Spectrum {
        system: SystemSpec,
        field: f64,
    },
    Presets,
}

const BASIS_LABELS: [&str; 8] = ["uuu", "uud", "udu", "udd", "duu", "dud", "ddu", "ddd"];

const EVOLVE_COLUMNS: [&str; 21] = [
    "t", "uuu_re", "uuu_im", "uud_re", "uud_im", "udu_re", "udu_im", "udd_re", "udd_im", "duu_re",
    "duu_im", "dud_re", "dud_im", "ddu_re", "ddu_im", "ddd_re", "ddd_im", "z_mod", "phi", "p_up",
    "p_down",
];

impl Invocation {
    pub fn name(&self) -> &'static str {
        match self {
            Invocation::Evolve { .. } => "evolve",
            Invocation::Herald { .. } => "herald",
            Invocation::SolveTent { .. } => "solve-tent",
            Invocation::SweepField { .. } => "sweep-field",
            Invocation::FidelityTrace { .. } => "fidelity-trace",
            Invocation::ConcurrenceTrace { .. } => "concurrence-trace",
            Invocation::Measurement { .. } => "measurement",
            Invocation::Spectrum { .. } => "spectrum",
            Invocation::Presets => "presets",
        }
    }

    pub fn execute(&self) -> Result<Report> {
        match self {
            Invocation::Evolve { system, field, t } => {
                let params = system.params(*field)?;
                let psi = evolve_analytic(&params, *t);
                let d = phase_descriptor(&params, *t);
                let branches = heralded_branches(&params, *t);
                let mut row: Vec<Value> = vec![(*t).into()];
                for a in psi.amps {
                    row.push(a.re.into());
                    row.push(a.im.into());
                }
                row.extend([
                    d.z_mod.into(),
                    d.phi.into(),
                    branches.p_up.into(),
                    branches.p_down.into(),
                ]);
                let mut report = Report::new(self.clone(), EVOLVE_COLUMNS.to_vec());
                report.push(row);
                Ok(report)
            }
            Invocation::Herald { system, field, t } => {
                let params = system.params(*field)?;
                let out = herald(&params, *t)?;
                let [_, ud, du, _] = out.state_up.amps;
                let mut report = Report::new(
                    self.clone(),
                    vec![
                        "t",
                        "p_up",
                        "p_down",
                        "up_ud_re",
                        "up_ud_im",
                        "up_du_re",
                        "up_du_im",
                        "concurrence",
                        "z_mod",
                        "phase_total",
                    ],
                );
                report.push(vec![
                    (*t).into(),
                    out.p_up.into(),
                    out.p_down.into(),
                    ud.re.into(),
                    ud.im.into(),
                    du.re.into(),
                    du.im.into(),
                    concurrence(&out.state_up)?.into(),
                    phase_descriptor(&params, *t).z_mod.into(),
                    phase_total(&params, *t).value.into(),
                ]);
                Ok(report)
            }
            Invocation::SolveTent {
                system,
                field,
                n,
                mode,
            } => {
                let params = system.params(*field)?;
                let sol = solve_t_ent(&params, *n, *mode)?;
                let mut report = Report::new(
                    self.clone(),
                    vec![
                        "field",
                        "beta",
                        "n",
                        "mode",
                        "t_ent",
                        "jt",
                        "concurrence",
                        "z_mod",
                        "measurable",
                    ],
                );
                report.push(vec![
                    (*field).into(),
                    params.beta().into(),
                    sol.n.into(),
                    sol.mode.to_string().into(),
                    sol.t_ent.into(),
                    sol.jt(&params).into(),
                    sol.concurrence_at_t.into(),
                    sol.z_mod_at_t.into(),
                    sol.measurable.into(),
                ]);
                if !sol.measurable {
                    report.warning = Some(
                        "B*gamma_c = 0: E2 and E5 are degenerate, the auxiliary spin cannot be read out".into(),
                    );
                }
                Ok(report)
            }
            Invocation::SweepField {
                system,
                fields,
                n,
                mode,
            } => {
                let base = system.params(fields.min)?;
                let rows = sweep_field(&base, &fields.grid()?, *n, *mode)?;
                let mut report = Report::new(
                    self.clone(),
                    vec!["B_tesla", "beta", "t_ent_s", "jt_dimensionless", "mode"],
                );
                for r in rows {
                    report.push(vec![
                        r.b_tesla.into(),
                        r.beta.into(),
                        r.t_ent_s.into(),
                        r.jt_dimensionless.into(),
                        r.mode.to_string().into(),
                    ]);
                }
                Ok(report)
            }
            Invocation::FidelityTrace {
                system,
                field,
                times,
            } => {
                let params = system.params(*field)?;
                let rows = fidelity_trace(&params, &times.grid()?);
                let mut report = Report::new(
                    self.clone(),
                    vec![
                        "t_s",
                        "fidelity_closed_form",
                        "fidelity_direct",
                        "concurrence",
                        "p_up",
                    ],
                );
                for r in rows {
                    report.push(vec![
                        r.t_s.into(),
                        r.fidelity_closed_form.into(),
                        r.fidelity_direct.into(),
                        r.concurrence.into(),
                        r.p_up.into(),
                    ]);
                }
                Ok(report)
            }
            Invocation::ConcurrenceTrace {
                system,
                field,
                times,
            } => {
                let params = system.params(*field)?;
                let mut report = Report::new(
                    self.clone(),
                    vec![
                        "t_s",
                        "concurrence_closed_form",
                        "concurrence_direct",
                        "z_mod",
                        "phase_total",
                        "p_up",
                    ],
                );
                for t in times.grid()?.points() {
                    let branches = heralded_branches(&params, t);
                    report.push(vec![
                        t.into(),
                        concurrence_closed_form(&params, t).into(),
                        concurrence(&branches.state_up)?.into(),
                        phase_descriptor(&params, t).z_mod.into(),
                        phase_total(&params, t).value.into(),
                        branches.p_up.into(),
                    ]);
                }
                Ok(report)
            }
            Invocation::Measurement {
                system,
                field,
                t,
                radiation,
            } => {
                let params = system.params(*field)?;
                let rec = measure(&params, *t, radiation)?;
                let mut report = Report::new(
                    self.clone(),
                    vec![
                        "omega",
                        "omega_52",
                        "omega_25",
                        "w_plus",
                        "w_minus",
                        "resonance",
                        "intensity_w",
                        "p_up",
                        "p_down",
                    ],
                );
                report.push(vec![
                    radiation.omega.into(),
                    rec.frequencies.omega_52.into(),
                    rec.frequencies.omega_25.into(),
                    rec.probabilities.w_plus.into(),
                    rec.probabilities.w_minus.into(),
                    rec.resonance.into(),
                    rec.intensity.into(),
                    rec.outcome.p_up.into(),
                    rec.outcome.p_down.into(),
                ]);
                Ok(report)
            }
            Invocation::Spectrum { system, field } => {
                let params = system.params(*field)?;
                let sys = analytic_eigensystem(&params)?;
                let h = build_hamiltonian(&params);
                let k = sys.coeffs;
                let mut report = Report::new(
                    self.clone(),
                    vec![
                        "label", "energy", "twice_sz", "residual", "beta", "a_plus", "a_minus",
                        "b_plus", "b_minus",
                    ],
                );
                for (i, pair) in sys.pairs().iter().enumerate() {
                    let hv = h.apply(&pair.state);
                    let ev = pair.state.scale(pair.energy.into());
                    let support = pair
                        .state
                        .amps
                        .iter()
                        .position(|a| a.norm() > 1e-12)
                        .unwrap_or(0);
                    report.push(vec![
                        (i + 1).into(),
                        pair.energy.into(),
                        twice_magnetization(support).into(),
                        hv.sup_distance(&ev).into(),
                        k.beta.into(),
                        k.a_plus.into(),
                        k.a_minus.into(),
                        k.b_plus.into(),
                        k.b_minus.into(),
                    ]);
                }
                Ok(report)
            }
            Invocation::Presets => {
                let mut report = Report::new(
                    self.clone(),
                    vec!["name", "gamma_c", "gamma", "j_hz", "notes"],
                );
                for p in presets::ALL {
                    report.push(vec![
                        p.name.into(),
                        p.gamma_c.into(),
                        p.gamma.into(),
                        p.j_hz.into(),
                        p.notes.into(),
                    ]);
                }
                Ok(report)
            }
        }
    }
}

/// Label of basis index `i` as `c s1 s2` with `u`/`d`.
pub fn basis_label(i: usize) -> &'static str {
    BASIS_LABELS[i]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xef2() -> SystemSpec {
        SystemSpec::from_preset(&presets::XEF2.to_owned())
    }

    #[test]
    fn invocation_json_round_trip() {
        let inv = Invocation::SolveTent {
            system: xef2(),
            field: 1.0,
            n: 0,
            mode: SolverMode::Exact,
        };
        let text = serde_json::to_string(&inv).unwrap();
        assert!(text.contains("\"command\":\"solve-tent\""));
        let back: Invocation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, inv);
    }

    #[test]
    fn evolve_columns_follow_basis_order() {
        for (i, label) in BASIS_LABELS.iter().enumerate() {
            assert_eq!(EVOLVE_COLUMNS[1 + 2 * i], format!("{label}_re"));
            assert_eq!(basis_label(i), *label);
        }
    }

    #[test]
    fn spectrum_residuals_are_small() {
        let report = Invocation::Spectrum {
            system: xef2(),
            field: 1.0,
        }
        .execute()
        .unwrap();
        let energies = report.numbers("energy");
        let scale = energies.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        for r in report.numbers("residual") {
            assert!(r < 1e-11 * scale);
        }
    }
}
