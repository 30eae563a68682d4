//! Casimir energies and pressures between two planar bodies across a vacuum
//! gap, and the Casimir-Polder interaction of an atom with one body.
//!
//! Pressure is positive for attraction.

pub mod contrast;
pub mod finite_temperature;
mod integrand;
pub mod kernel;
pub mod polder;
pub mod zero_temperature;

pub use contrast::{magnetic_contrast, trap_shift_contrast, ContrastResult, ContrastToggle};
pub use finite_temperature::{casimir_force_finite_t, zero_mode_pressure};
pub use polder::{casimir_polder, casimir_polder_potential, trap_frequency_shift, CasimirPolderResult, DerivativeScheme};
pub use zero_temperature::{casimir_energy_zero_t, casimir_force_perturbative, casimir_force_zero_t};

use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::LifshitzError;
use crate::material_models::AtomParams;
use crate::reflection::LayerSpec;

/// Numerical settings shared by all operations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Relative tolerance of the outer frequency integral.
    pub rel_tol: f64,
    /// Frequencies are integrated up to this multiple of `c / d`.
    pub cutoff_multiplier: f64,
    /// Evaluation budget of each in-plane wavenumber integral.
    pub k_budget: usize,
    /// Evaluation budget of the outer frequency integral.
    pub xi_budget: usize,
    /// Largest number of azimuthal nodes per `(xi, k)` point.
    pub phi_nodes: usize,
    /// Relative size of the Matsubara term at which the sum is truncated.
    pub matsubara_tol: f64,
    pub max_matsubara_terms: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            cutoff_multiplier: 30.0,
            k_budget: 4000,
            xi_budget: 20_000,
            phi_nodes: 256,
            matsubara_tol: 1e-8,
            max_matsubara_terms: 200_000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), LifshitzError> {
        let bad = |m: String| Err(LifshitzError::InvalidScenario(m));
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return bad(format!("rel_tol = {} must lie in (0, 1)", self.rel_tol));
        }
        if !(self.cutoff_multiplier >= 20.0 && self.cutoff_multiplier.is_finite()) {
            return bad(format!("cutoff_multiplier = {} must be at least 20", self.cutoff_multiplier));
        }
        if !(self.matsubara_tol > 0.0) {
            return bad(format!("matsubara_tol = {} must be positive", self.matsubara_tol));
        }
        if self.k_budget < 42 || self.xi_budget < 42 * 8 || self.phi_nodes < 4 || self.max_matsubara_terms < 3 {
            return bad("node budgets are too small".into());
        }
        Ok(())
    }
}

/// Two bodies facing each other across a vacuum gap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub layer1: LayerSpec,
    pub layer2: LayerSpec,
    /// Gap width, m.
    pub gap: f64,
    /// Temperature, K.
    #[serde(default)]
    pub temperature: f64,
    #[serde(default)]
    pub atom: Option<AtomParams>,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
}

impl Scenario {
    pub fn new(layer1: LayerSpec, layer2: LayerSpec, gap: f64) -> Self {
        Self { layer1, layer2, gap, temperature: 0.0, atom: None, quadrature: QuadratureSpec::default() }
    }

    pub fn at_temperature(mut self, temperature: f64) -> Self {
        self.temperature = temperature;
        self
    }

    pub fn with_quadrature(mut self, q: QuadratureSpec) -> Self {
        self.quadrature = q;
        self
    }

    pub fn with_gap(&self, gap: f64) -> Self {
        Self { gap, ..self.clone() }
    }

    pub fn swapped(&self) -> Self {
        Self { layer1: self.layer2.clone(), layer2: self.layer1.clone(), ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), LifshitzError> {
        if !(self.gap > 0.0 && self.gap.is_finite()) {
            return Err(LifshitzError::InvalidScenario(format!("gap = {} must be positive", self.gap)));
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(LifshitzError::InvalidScenario(format!("temperature = {} must be non-negative", self.temperature)));
        }
        self.layer1.validate()?;
        self.layer2.validate()?;
        if let Some(a) = &self.atom {
            a.validate()?;
        }
        self.quadrature.validate()
    }
}

/// Pressure between the bodies with its error estimate and node counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForceResult {
    /// Pa, positive for attraction.
    pub pressure: f64,
    /// Pressure over that of two perfect conductors at the same gap.
    pub normalized: f64,
    pub abs_error: f64,
    pub xi_nodes: usize,
    pub k_nodes: usize,
    /// Largest azimuthal node count used at any `(xi, k)` point.
    pub phi_nodes: usize,
    pub matsubara_terms: usize,
}

/// An integrated quantity with its error estimate and node counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub abs_error: f64,
    pub xi_nodes: usize,
    pub k_nodes: usize,
}

/// Pressure between two perfect conductors, `hbar c pi^2 / (240 d^4)`.
pub fn ideal_normalization(d: f64) -> f64 {
    HBAR * SPEED_OF_LIGHT * std::f64::consts::PI.powi(2) / (240.0 * d.powi(4))
}

/// Pressure of the scenario at its temperature.
pub fn casimir_force(s: &Scenario) -> Result<ForceResult, LifshitzError> {
    if s.temperature > 0.0 {
        casimir_force_finite_t(s)
    } else {
        casimir_force_zero_t(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material_models::MaterialModel;
    use approx::assert_relative_eq;

    #[test]
    fn ideal_normalization_values() {
        let p = ideal_normalization(1e-6);
        assert!((p - 1.3e-3).abs() < 0.05e-3, "{p}");
        assert_relative_eq!(ideal_normalization(0.5e-6), 16.0 * p, max_relative = 1e-14);
    }

    #[test]
    fn scenario_validation() {
        let pc = LayerSpec::half_space(MaterialModel::PerfectConductor);
        let s = Scenario::new(pc.clone(), pc.clone(), 1e-6);
        assert!(s.validate().is_ok());
        assert!(s.with_gap(-1.0).validate().is_err());
        assert!(s.clone().at_temperature(-3.0).validate().is_err());
        let q = QuadratureSpec { cutoff_multiplier: 10.0, ..QuadratureSpec::default() };
        assert!(s.with_quadrature(q).validate().is_err());
    }
}
