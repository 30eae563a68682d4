//! Radial integrals at one imaginary frequency, shared by the pressure,
//! energy and atom-surface operations.
//!
//! Lengths are scaled by the gap: `s = 2 xi d / c` and `y = 2 K3 d`, with
//! `y = s + t^2` so that the square-root edge at `y = s` becomes smooth.

use std::sync::atomic::{AtomicUsize, Ordering};

use super::QuadratureSpec;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::LifshitzError;
use crate::material_models::{DiagonalTensorResponse, ImaginaryFrequency, MaterialModel};
use crate::quadrature::{integrate, periodic_mean, Estimate, GkOptions, Sample};
use crate::reflection::perturbative::{first_order_coefficients, split_anisotropy};
use crate::reflection::{uniaxial_reflection, LayerSpec, ReflectionMatrix, TransverseWave};

/// Lower end of the logarithmic frequency grid, in units of `s`.
const S_LOG_START: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
enum Prepared {
    Fixed(ReflectionMatrix),
    Tensor(DiagonalTensorResponse),
    Static,
}

/// A layer with its response tensor evaluated once per frequency.
pub(crate) struct Plate<'a> {
    layer: &'a LayerSpec,
    prep: Prepared,
}

impl<'a> Plate<'a> {
    pub fn new(layer: &'a LayerSpec, xi: ImaginaryFrequency) -> Result<Self, LifshitzError> {
        let prep = if xi.is_zero() {
            Prepared::Static
        } else {
            match &layer.material {
                MaterialModel::Vacuum => Prepared::Fixed(ReflectionMatrix::zero()),
                MaterialModel::PerfectConductor => Prepared::Fixed(ReflectionMatrix::perfect_conductor()),
                MaterialModel::PerfectPermeable => Prepared::Fixed(ReflectionMatrix::perfect_permeable()),
                m => Prepared::Tensor(m.tensor(xi)?),
            }
        };
        Ok(Self { layer, prep })
    }

    /// Whether the reflection matrix depends on the azimuth at this frequency.
    pub fn depends_on_phi(&self) -> bool {
        match self.prep {
            Prepared::Fixed(_) => false,
            Prepared::Tensor(t) => !t.is_in_plane_isotropic(),
            Prepared::Static => !self.layer.is_azimuthally_symmetric(),
        }
    }

    pub fn reflect(&self, w: &TransverseWave) -> Result<ReflectionMatrix, LifshitzError> {
        Ok(match &self.prep {
            Prepared::Fixed(r) => *r,
            Prepared::Tensor(t) => self.layer.tensor_reflection(t, w)?,
            Prepared::Static => self.layer.reflection(w)?,
        })
    }

    /// Uniaxial baseline and first-order change for weak in-plane anisotropy.
    pub fn reflect_split(&self, w: &TransverseWave) -> Result<(ReflectionMatrix, ReflectionMatrix), LifshitzError> {
        match &self.prep {
            Prepared::Tensor(t) if !t.is_in_plane_isotropic() => {
                let (base, delta) = split_anisotropy(t)?;
                let r0 = uniaxial_reflection(&base, w)?;
                let d = first_order_coefficients(&base, w)?;
                let dr = ReflectionMatrix {
                    te_te: delta * d.te_te,
                    te_tm: delta * d.te_tm,
                    tm_te: delta * d.tm_te,
                    tm_tm: delta * d.tm_tm,
                };
                Ok((r0, dr))
            }
            _ => Ok((self.reflect(w)?, ReflectionMatrix::zero())),
        }
    }
}

/// Node counters shared by concurrent integrand evaluations.
#[derive(Debug, Default)]
pub(crate) struct Counters {
    pub k_nodes: AtomicUsize,
    pub phi_nodes: AtomicUsize,
}

impl Counters {
    pub fn k(&self) -> usize {
        self.k_nodes.load(Ordering::Relaxed)
    }

    pub fn phi(&self) -> usize {
        self.phi_nodes.load(Ordering::Relaxed)
    }
}

/// `int_s^{s + Y} dy f(y)` in `t = sqrt(y - s)`, where `f(y, phi)` is averaged
/// over `phi` when `needs_phi`. `length` converts `y` and `s` to
/// wavenumbers through `K3 = y / (2 length)`.
pub(crate) fn radial<F>(
    s: f64,
    length: f64,
    q: &QuadratureSpec,
    needs_phi: bool,
    counters: &Counters,
    f: F,
) -> Result<Estimate, LifshitzError>
where
    F: Fn(f64, f64, f64) -> Result<f64, LifshitzError> + Sync,
{
    let t_max = (2.0 * q.cutoff_multiplier).sqrt();
    let opts = GkOptions {
        rel_tol: 1e-2 * q.rel_tol,
        abs_tol: 0.0,
        max_evals: q.k_budget,
        initial_panels: 2,
        breakpoints: Vec::new(),
        parallel: false,
        strict: false,
    };
    let g = |t: f64| -> Result<Sample, LifshitzError> {
        let y = s + t * t;
        let k = t * (2.0 * s + t * t).sqrt() / (2.0 * length);
        let jac = 2.0 * t;
        if !needs_phi {
            return Ok(Sample::exact(jac * f(y, k, 0.0)?));
        }
        let (mean, err, n) = periodic_mean(|phi| f(y, k, phi), 4, q.phi_nodes, 1e-2 * q.rel_tol)?;
        counters.phi_nodes.fetch_max(n, Ordering::Relaxed);
        Ok(Sample { value: jac * mean, error: jac * err })
    };
    let est = integrate(g, 0.0, t_max, &opts)?;
    counters.k_nodes.fetch_add(est.evaluations, Ordering::Relaxed);
    Ok(est)
}

/// Wave with in-plane wavenumber `k` at frequency `s c / (2 length)`.
pub(crate) fn wave(k: f64, phi: f64, xi: ImaginaryFrequency) -> Result<TransverseWave, LifshitzError> {
    Ok(TransverseWave::new(k, phi, xi)?)
}

pub(crate) fn frequency(s: f64, length: f64) -> Result<ImaginaryFrequency, LifshitzError> {
    Ok(ImaginaryFrequency::new(s * SPEED_OF_LIGHT / (2.0 * length))?)
}

/// `int_0^{s_max} g(s) ds` split into a short linear panel near zero and a
/// logarithmic grid above it. Node evaluation runs on the rayon pool.
pub(crate) fn frequency_integral<G>(q: &QuadratureSpec, g: G) -> Result<Estimate, LifshitzError>
where
    G: Fn(f64) -> Result<Sample, LifshitzError> + Sync,
{
    let s_max = 2.0 * q.cutoff_multiplier;
    let opts = GkOptions {
        rel_tol: q.rel_tol,
        abs_tol: 0.0,
        max_evals: q.xi_budget,
        initial_panels: 8,
        breakpoints: Vec::new(),
        parallel: true,
        strict: true,
    };
    let head = integrate(&g, 0.0, S_LOG_START, &GkOptions { initial_panels: 1, ..opts.clone() })?;
    let body = integrate(
        |u: f64| -> Result<Sample, LifshitzError> {
            let s = u.exp();
            let v = g(s)?;
            Ok(Sample { value: s * v.value, error: s * v.error })
        },
        S_LOG_START.ln(),
        s_max.ln(),
        &opts,
    )?;
    Ok(Estimate {
        value: head.value + body.value,
        error: head.error + body.error,
        l1: head.l1 + body.l1,
        evaluations: head.evaluations + body.evaluations,
        converged: head.converged && body.converged,
    })
}
