//! Built-in physical systems.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::SystemParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub name: String,
    /// rad s⁻¹ T⁻¹
    pub gamma_c: f64,
    /// rad s⁻¹ T⁻¹
    pub gamma: f64,
    /// Exchange constant as `J/(2πħ)` in Hz.
    pub j_hz: f64,
    #[serde(default)]
    pub notes: String,
}

/// Static form of [`Preset`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetDef {
    pub name: &'static str,
    pub gamma_c: f64,
    pub gamma: f64,
    pub j_hz: f64,
    pub notes: &'static str,
}

impl PresetDef {
    pub fn params(&self, b_field: f64) -> Result<SystemParams> {
        SystemParams::from_hz(self.j_hz, b_field, self.gamma_c, self.gamma)
    }

    pub fn to_owned(&self) -> Preset {
        Preset {
            name: self.name.into(),
            gamma_c: self.gamma_c,
            gamma: self.gamma,
            j_hz: self.j_hz,
            notes: self.notes.into(),
        }
    }
}

impl Preset {
    pub fn params(&self, b_field: f64) -> Result<SystemParams> {
        if self.j_hz.is_nan() || self.j_hz <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "j_hz must be positive, got {}",
                self.j_hz
            )));
        }
        SystemParams::from_hz(self.j_hz, b_field, self.gamma_c, self.gamma)
    }
}

/// Xenon difluoride: ¹²⁹Xe as the auxiliary spin, two ¹⁹F as the basic spins,
/// Xe–F coupling in BrF₅ solution at −40 °C.
pub const XEF2: PresetDef = PresetDef {
    name: "xef2",
    gamma_c: -73.997e6,
    gamma: 251.662e6,
    j_hz: 5583.0,
    notes: "129Xe auxiliary spin, 19F basic spins; J/(2 pi hbar) = 5583 Hz in BrF5 at -40 C; nuclear coherence time > 1 s",
};

pub const ALL: &[PresetDef] = &[XEF2];

pub fn find(name: &str) -> Option<&'static PresetDef> {
    ALL.iter().find(|p| p.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xef2_constants() {
        let p = find("xef2").unwrap();
        assert_eq!(p.gamma_c, -73.997e6);
        assert_eq!(p.gamma, 251.662e6);
        assert_eq!(p.j_hz, 5583.0);
        assert!(find("unknown").is_none());
        let owned = p.to_owned();
        assert_eq!(owned.params(1.0).unwrap(), p.params(1.0).unwrap());
    }
}
