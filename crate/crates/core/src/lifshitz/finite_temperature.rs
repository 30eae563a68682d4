use rayon::prelude::*;

use super::integrand::Counters;
use super::zero_temperature::{gap_radial, Kernel};
use super::{ideal_normalization, ForceResult, Scenario};
use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{LifshitzError, QuadratureError};
use crate::quadrature::Estimate;

/// Consecutive negligible terms needed before the sum is truncated.
const QUIET_TERMS: usize = 3;
/// Terms below this fraction of the summed magnitudes also count as
/// negligible, which keeps the test meaningful when the sum crosses zero.
const MAGNITUDE_FLOOR: f64 = 1e-3;

fn check(s: &Scenario) -> Result<(), LifshitzError> {
    s.validate()?;
    if s.temperature <= 0.0 {
        return Err(LifshitzError::InvalidScenario("finite-temperature operation needs T > 0".into()));
    }
    Ok(())
}

/// Spacing of the Matsubara frequencies in units of `2 d / c`.
fn matsubara_step(s: &Scenario) -> f64 {
    4.0 * std::f64::consts::PI * BOLTZMANN * s.temperature * s.gap / (HBAR * SPEED_OF_LIGHT)
}

fn prefactor(s: &Scenario) -> f64 {
    BOLTZMANN * s.temperature / (8.0 * std::f64::consts::PI * s.gap.powi(3))
}

/// Pressure as a Matsubara sum, with the static term at half weight.
pub fn casimir_force_finite_t(s: &Scenario) -> Result<ForceResult, LifshitzError> {
    check(s)?;
    let q = &s.quadrature;
    let step = matsubara_step(s);
    let counters = Counters::default();
    let term = |n: usize| -> Result<Estimate, LifshitzError> {
        let est = gap_radial(&s.layer1, &s.layer2, s.gap, n as f64 * step, q, &counters, Kernel::Trace)?;
        let w = if n == 0 { 0.5 } else { 1.0 };
        Ok(Estimate { value: w * est.value, error: w * est.error, ..est })
    };

    let (mut sum, mut magnitude, mut error) = (0.0, 0.0, 0.0);
    let mut quiet = 0;
    let mut used = 0;
    let mut chunk = 16;
    'outer: while used < q.max_matsubara_terms {
        let hi = (used + chunk).min(q.max_matsubara_terms);
        let terms: Vec<Estimate> = (used..hi).into_par_iter().map(term).collect::<Result<_, _>>()?;
        for t in terms {
            used += 1;
            sum += t.value;
            magnitude += t.value.abs();
            error += t.error;
            if t.value.abs() <= q.matsubara_tol * sum.abs().max(MAGNITUDE_FLOOR * magnitude) {
                quiet += 1;
                if quiet >= QUIET_TERMS {
                    error += t.value.abs();
                    break 'outer;
                }
            } else {
                quiet = 0;
            }
        }
        chunk = (2 * chunk).min(1024);
    }
    if quiet < QUIET_TERMS {
        return Err(QuadratureError::TruncationFailed { terms: used }.into());
    }
    let pre = prefactor(s);
    let pressure = pre * sum;
    Ok(ForceResult {
        pressure,
        normalized: pressure / ideal_normalization(s.gap),
        abs_error: pre * error,
        xi_nodes: used,
        k_nodes: counters.k(),
        phi_nodes: counters.phi(),
        matsubara_terms: used,
    })
}

/// Contribution of the static Matsubara term alone, which dominates once
/// `k_B T d / (hbar c) >> 1`.
pub fn zero_mode_pressure(s: &Scenario) -> Result<ForceResult, LifshitzError> {
    check(s)?;
    let counters = Counters::default();
    let est = gap_radial(&s.layer1, &s.layer2, s.gap, 0.0, &s.quadrature, &counters, Kernel::Trace)?;
    let pre = 0.5 * prefactor(s);
    let pressure = pre * est.value;
    Ok(ForceResult {
        pressure,
        normalized: pressure / ideal_normalization(s.gap),
        abs_error: pre * est.error,
        xi_nodes: 1,
        k_nodes: counters.k(),
        phi_nodes: counters.phi(),
        matsubara_terms: 1,
    })
}
