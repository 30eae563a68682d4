use super::integrand::{frequency, frequency_integral, radial, wave, Counters, Plate};
use super::kernel::{log_det_kernel, trace_kernel, trace_kernel_variation};
use super::{ideal_normalization, ForceResult, QuadratureSpec, Quantity, Scenario};
use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::LifshitzError;
use crate::quadrature::Estimate;
use crate::reflection::LayerSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kernel {
    /// `y^2 Tr[M (1 - M)^{-1}]`, the pressure.
    Trace,
    /// `y ln det(1 - M)`, the energy.
    LogDet,
    /// Trace kernel of the uniaxial baseline plus its first-order change.
    FirstOrder,
}

/// `int_s^inf dy` of the chosen kernel at `s = 2 xi d / c`.
pub(crate) fn gap_radial(
    l1: &LayerSpec,
    l2: &LayerSpec,
    d: f64,
    s: f64,
    q: &QuadratureSpec,
    counters: &Counters,
    kind: Kernel,
) -> Result<Estimate, LifshitzError> {
    let xi = frequency(s, d)?;
    let p1 = Plate::new(l1, xi)?;
    let p2 = Plate::new(l2, xi)?;
    let needs_phi = p1.depends_on_phi() || p2.depends_on_phi();
    radial(s, d, q, needs_phi, counters, |y, k, phi| {
        let w = wave(k, phi, xi)?;
        let e = (-y).exp();
        match kind {
            Kernel::Trace => Ok(y * y * trace_kernel(&p1.reflect(&w)?, &p2.reflect(&w)?, e)?),
            Kernel::LogDet => Ok(y * log_det_kernel(&p1.reflect(&w)?, &p2.reflect(&w)?, e)?),
            Kernel::FirstOrder => {
                let (r1, dr1) = p1.reflect_split(&w)?;
                let (r2, dr2) = p2.reflect_split(&w)?;
                Ok(y * y * (trace_kernel(&r1, &r2, e)? + trace_kernel_variation(&r1, &r2, &dr1, &dr2, e)?))
            }
        }
    })
}

fn zero_t_integral(s: &Scenario, kind: Kernel) -> Result<(Estimate, Counters), LifshitzError> {
    s.validate()?;
    if s.temperature != 0.0 {
        return Err(LifshitzError::InvalidScenario(format!(
            "zero-temperature operation called with T = {} K",
            s.temperature
        )));
    }
    let counters = Counters::default();
    let est = frequency_integral(&s.quadrature, |x| {
        Ok(gap_radial(&s.layer1, &s.layer2, s.gap, x, &s.quadrature, &counters, kind)?.sample())
    })?;
    Ok((est, counters))
}

fn force_result(s: &Scenario, kind: Kernel) -> Result<ForceResult, LifshitzError> {
    let (est, counters) = zero_t_integral(s, kind)?;
    let pre = HBAR * SPEED_OF_LIGHT / (32.0 * std::f64::consts::PI.powi(2) * s.gap.powi(4));
    let pressure = pre * est.value;
    Ok(ForceResult {
        pressure,
        normalized: pressure / ideal_normalization(s.gap),
        abs_error: pre * est.error,
        xi_nodes: est.evaluations,
        k_nodes: counters.k(),
        phi_nodes: counters.phi(),
        matsubara_terms: 0,
    })
}

/// Energy per unit area at `T = 0`, J/m^2; negative when the bodies attract.
pub fn casimir_energy_zero_t(s: &Scenario) -> Result<Quantity, LifshitzError> {
    let (est, counters) = zero_t_integral(s, Kernel::LogDet)?;
    let pre = HBAR * SPEED_OF_LIGHT / (32.0 * std::f64::consts::PI.powi(2) * s.gap.powi(3));
    Ok(Quantity { value: pre * est.value, abs_error: pre * est.error, xi_nodes: est.evaluations, k_nodes: counters.k() })
}

/// Pressure at `T = 0` with the full 2x2 reflection matrices.
pub fn casimir_force_zero_t(s: &Scenario) -> Result<ForceResult, LifshitzError> {
    force_result(s, Kernel::Trace)
}

/// Pressure at `T = 0` to first order in the in-plane anisotropy
/// `(eps_yy - eps_xx) / eps_xx` of either body.
pub fn casimir_force_perturbative(s: &Scenario) -> Result<ForceResult, LifshitzError> {
    force_result(s, Kernel::FirstOrder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material_models::{DrudeParams, MaterialModel, Response};
    use approx::assert_relative_eq;

    fn half(m: MaterialModel) -> LayerSpec {
        LayerSpec::half_space(m)
    }

    #[test]
    fn vacuum_plates() {
        let s = Scenario::new(half(MaterialModel::Vacuum), half(MaterialModel::PerfectConductor), 1e-6);
        assert_eq!(casimir_force_zero_t(&s).unwrap().pressure, 0.0);
        assert_eq!(casimir_energy_zero_t(&s).unwrap().value, 0.0);
    }

    #[test]
    fn ideal_conductors() {
        let s = Scenario::new(half(MaterialModel::PerfectConductor), half(MaterialModel::PerfectConductor), 1e-6);
        let f = casimir_force_zero_t(&s).unwrap();
        assert_relative_eq!(f.normalized, 1.0, max_relative = 1e-6);
        assert!(f.abs_error <= 1e-5 * f.pressure);
        let e = casimir_energy_zero_t(&s).unwrap();
        let exact = -HBAR * SPEED_OF_LIGHT * std::f64::consts::PI.powi(2) / (720.0 * 1e-18);
        assert_relative_eq!(e.value, exact, max_relative = 1e-6);
        let pp = Scenario::new(half(MaterialModel::PerfectConductor), half(MaterialModel::PerfectPermeable), 1e-6);
        assert_relative_eq!(casimir_force_zero_t(&pp).unwrap().normalized, -7.0 / 8.0, max_relative = 1e-6);
    }

    #[test]
    fn rejects_positive_temperature() {
        let s = Scenario::new(half(MaterialModel::PerfectConductor), half(MaterialModel::PerfectConductor), 1e-6).at_temperature(300.0);
        assert!(matches!(casimir_force_zero_t(&s), Err(LifshitzError::InvalidScenario(_))));
    }

    #[test]
    fn gold_plates_are_weaker_than_ideal() {
        let gold = MaterialModel::isotropic(Response::Drude(DrudeParams::gold()), Response::unity());
        let s = Scenario::new(half(gold.clone()), half(gold), 1e-6);
        let f = casimir_force_zero_t(&s).unwrap();
        assert!(f.normalized > 0.5 && f.normalized < 1.0, "{}", f.normalized);
    }

    #[test]
    fn isotropic_does_not_integrate_phi() {
        let gold = MaterialModel::isotropic(Response::Drude(DrudeParams::gold()), Response::unity());
        let s = Scenario::new(half(gold.clone()), half(gold), 1e-6);
        assert_eq!(casimir_force_zero_t(&s).unwrap().phi_nodes, 0);
    }
}
