use serde::{Deserialize, Serialize};

use super::closed_form::ImaginaryFrequency;
use crate::constants::CM3_TO_M3;
use crate::error::ModelError;

/// Ground-state atom in a harmonic trap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomParams {
    /// Static polarizability volume `alpha_0 / (4 pi eps_0)`, m^3.
    pub static_polarizability: f64,
    /// Dominant transition frequency, rad/s.
    pub transition_freq: f64,
    /// Mass, kg.
    pub mass: f64,
    /// Trap frequency along the surface normal, rad/s.
    pub trap_freq: f64,
}

impl AtomParams {
    /// Build from a polarizability volume given in cm^3 (Gaussian convention).
    pub fn from_cm3(static_polarizability_cm3: f64, transition_freq: f64, mass: f64, trap_freq: f64) -> Result<Self, ModelError> {
        let p = Self { static_polarizability: static_polarizability_cm3 * CM3_TO_M3, transition_freq, mass, trap_freq };
        p.validate()?;
        Ok(p)
    }

    /// Rubidium with a 229 Hz trap.
    pub fn rubidium() -> Self {
        Self {
            static_polarizability: 4.74e-23 * CM3_TO_M3,
            transition_freq: 2.54e15,
            mass: 1.45e-25,
            trap_freq: 2.0 * std::f64::consts::PI * 229.0,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.static_polarizability >= 0.0 && self.static_polarizability.is_finite()) {
            return Err(ModelError::InvalidParameter { name: "static_polarizability", value: self.static_polarizability });
        }
        for (name, value) in [
            ("transition_freq", self.transition_freq),
            ("mass", self.mass),
            ("trap_freq", self.trap_freq),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        Ok(())
    }
}

/// Single-oscillator polarizability `alpha_0 / (1 + xi^2 / omega_0^2)`, m^3.
pub fn atomic_polarizability(p: &AtomParams, xi: ImaginaryFrequency) -> f64 {
    let r = xi.get() / p.transition_freq;
    p.static_polarizability / (1.0 + r * r)
}
