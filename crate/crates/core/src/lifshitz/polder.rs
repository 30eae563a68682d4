use serde::{Deserialize, Serialize};

use super::integrand::{frequency, frequency_integral, radial, wave, Counters, Plate};
use super::{QuadratureSpec, Quantity};
use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::LifshitzError;
use crate::material_models::{atomic_polarizability, AtomParams};
use crate::reflection::LayerSpec;

/// How the curvature of the potential is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeScheme {
    /// Each `z` derivative brings down `-2 K3` inside the integral.
    AnalyticUnderIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CasimirPolderResult {
    /// J.
    pub potential: f64,
    pub potential_error: f64,
    /// Relative shift of the trap frequency.
    pub trap_shift: f64,
    pub trap_shift_error: f64,
    pub scheme: DerivativeScheme,
}

fn check(atom: &AtomParams, surface: &LayerSpec, z: f64, q: &QuadratureSpec) -> Result<(), LifshitzError> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(LifshitzError::InvalidScenario(format!("atom-surface distance z = {z} must be positive")));
    }
    atom.validate()?;
    surface.validate()?;
    q.validate()
}

/// `d^order U / dz^order` at distance `z`.
pub(crate) fn potential_derivative(
    atom: &AtomParams,
    surface: &LayerSpec,
    z: f64,
    order: i32,
    q: &QuadratureSpec,
) -> Result<Quantity, LifshitzError> {
    check(atom, surface, z, q)?;
    let counters = Counters::default();
    let est = frequency_integral(q, |s| {
        let xi = frequency(s, z)?;
        let alpha = atomic_polarizability(atom, xi);
        if alpha == 0.0 {
            return Ok(crate::quadrature::Sample::exact(0.0));
        }
        let plate = Plate::new(surface, xi)?;
        let est = radial(s, z, q, plate.depends_on_phi(), &counters, |y, k, phi| {
            let r = plate.reflect(&wave(k, phi, xi)?)?;
            let bracket = s * s * r.te_te - (2.0 * y * y - s * s) * r.tm_tm;
            Ok((-y).powi(order) * (-y).exp() * bracket)
        })?;
        Ok(crate::quadrature::Sample { value: alpha * est.value, error: alpha * est.error })
    })?;
    let pre = HBAR * SPEED_OF_LIGHT / (32.0 * std::f64::consts::PI * z.powi(4 + order));
    Ok(Quantity { value: pre * est.value, abs_error: pre * est.error, xi_nodes: est.evaluations, k_nodes: counters.k() })
}

/// Zero-temperature potential of a ground-state atom at distance `z` from
/// the surface, J. Negative for attraction.
pub fn casimir_polder_potential(
    atom: &AtomParams,
    surface: &LayerSpec,
    z: f64,
    q: &QuadratureSpec,
) -> Result<Quantity, LifshitzError> {
    potential_derivative(atom, surface, z, 0, q)
}

/// Relative trap-frequency shift `(d^2 U / dz^2) / (2 m omega_z^2)`.
pub fn trap_frequency_shift(
    atom: &AtomParams,
    surface: &LayerSpec,
    z: f64,
    q: &QuadratureSpec,
) -> Result<Quantity, LifshitzError> {
    let c = potential_derivative(atom, surface, z, 2, q)?;
    let scale = 1.0 / (2.0 * atom.mass * atom.trap_freq * atom.trap_freq);
    Ok(Quantity { value: scale * c.value, abs_error: scale * c.abs_error, ..c })
}

pub fn casimir_polder(
    atom: &AtomParams,
    surface: &LayerSpec,
    z: f64,
    q: &QuadratureSpec,
) -> Result<CasimirPolderResult, LifshitzError> {
    let u = casimir_polder_potential(atom, surface, z, q)?;
    let g = trap_frequency_shift(atom, surface, z, q)?;
    Ok(CasimirPolderResult {
        potential: u.value,
        potential_error: u.abs_error,
        trap_shift: g.value,
        trap_shift_error: g.abs_error,
        scheme: DerivativeScheme::AnalyticUnderIntegral,
    })
}
