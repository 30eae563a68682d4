//! Continuation of real-axis absorption data to the imaginary axis:
//! `g(i xi) = 1 + (2/pi) int_0^inf y Im g(y) / (xi^2 + y^2) dy`.

use crate::error::ModelError;
use crate::quadrature::{integrate, GkOptions, Sample};

#[derive(Debug, Clone, PartialEq)]
pub struct KkOptions {
    pub rel_tol: f64,
    /// Below this frequency the integrand is resolved panel by panel; above
    /// it the tail is integrated in `ln y`.
    pub split_freq: f64,
    /// Points of the peak scan on `(0, split_freq]`.
    pub scan_points: usize,
    /// The tail is cut where the integrand drops below this fraction of its peak.
    pub tail_floor: f64,
    pub max_evals: usize,
}

impl KkOptions {
    pub fn new(split_freq: f64) -> Self {
        Self { rel_tol: 1e-8, split_freq, scan_points: 4000, tail_floor: 1e-12, max_evals: 400_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KkResult {
    pub value: f64,
    pub abs_error: f64,
    /// Upper frequency at which the tail was truncated.
    pub truncation_freq: f64,
    pub evaluations: usize,
}

/// Breakpoints at local maxima of `|y Im g(y)|` on a uniform scan grid, and
/// the peak value of the integrand weight `|y Im g(y)| / y^2` there.
fn scan<F>(im: &F, opts: &KkOptions) -> Result<(Vec<f64>, f64), ModelError>
where
    F: Fn(f64) -> Result<f64, ModelError>,
{
    let n = opts.scan_points.max(8);
    let h = opts.split_freq / n as f64;
    let vals: Vec<f64> = (1..=n).map(|j| im(h * j as f64).map(|v| (v * h * j as f64).abs())).collect::<Result<_, _>>()?;
    let mut peaks = Vec::new();
    for j in 1..vals.len() - 1 {
        if vals[j] > vals[j - 1] && vals[j] >= vals[j + 1] {
            let y = h * (j + 1) as f64;
            peaks.extend([y - h, y, y + h]);
        }
    }
    let peak = vals.iter().enumerate().map(|(j, v)| v / (h * (j + 1) as f64).powi(2)).fold(0.0, f64::max);
    Ok((peaks, peak))
}

/// Evaluate `g(i xi)` from a sampler of `Im g` on the real axis.
pub fn kk_to_imaginary_axis<F>(im: F, xi: f64, opts: &KkOptions) -> Result<KkResult, ModelError>
where
    F: Fn(f64) -> Result<f64, ModelError> + Sync,
{
    if !(xi.is_finite() && xi >= 0.0) {
        return Err(ModelError::InvalidParameter { name: "xi", value: xi });
    }
    let (breakpoints, peak) = scan(&im, opts)?;
    let weight = |y: f64| -> Result<f64, ModelError> { Ok(y * im(y)? / (xi * xi + y * y)) };

    // Find where the tail integrand, measured per unit ln y, falls below the floor.
    let floor = opts.tail_floor * peak.max(f64::MIN_POSITIVE) * opts.split_freq;
    let mut y_max = opts.split_freq;
    for _ in 0..200 {
        y_max *= 2.0;
        let v = (y_max * weight(y_max)?).abs();
        let v2 = (2.0 * y_max * weight(2.0 * y_max)?).abs();
        if v.max(v2) < floor {
            break;
        }
    }

    let gk = GkOptions {
        rel_tol: opts.rel_tol,
        abs_tol: 0.0,
        max_evals: opts.max_evals,
        initial_panels: 64,
        breakpoints,
        parallel: false,
        strict: true,
    };
    let head = integrate(|y| weight(y).map(Sample::exact), 0.0, opts.split_freq, &gk)?;
    let tail_opts = GkOptions { initial_panels: 8, breakpoints: Vec::new(), ..gk };
    let tail = integrate(
        |u: f64| {
            let y = u.exp();
            weight(y).map(|w| Sample::exact(w * y))
        },
        opts.split_freq.ln(),
        y_max.ln(),
        &tail_opts,
    )?;
    let scale = 2.0 / std::f64::consts::PI;
    Ok(KkResult {
        value: 1.0 + scale * (head.value + tail.value),
        abs_error: scale * (head.error + tail.error),
        truncation_freq: y_max,
        evaluations: head.evaluations + tail.evaluations + opts.scan_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material_models::closed_form::{polaritonic_eps, Frequency, ImaginaryFrequency, PolaritonicParams};
    use approx::assert_relative_eq;

    #[test]
    fn reproduces_analytic_oscillator() {
        let p = PolaritonicParams { eps_inf: 1.0, omega_longitudinal: 0.4, omega_transverse: 0.15, dissipation: 0.001 };
        let opts = KkOptions::new(2.0);
        for xi in [0.0, 0.01, 0.1, 0.3, 1.0, 5.0] {
            let r = kk_to_imaginary_axis(|y| Ok(polaritonic_eps(&p, Frequency::Real(y)).im), xi, &opts).unwrap();
            let exact = polaritonic_eps(&p, Frequency::Imaginary(ImaginaryFrequency::new(xi).unwrap())).re;
            assert_relative_eq!(r.value, exact, max_relative = 1e-6);
            assert!(r.truncation_freq > 2.0);
        }
    }

    #[test]
    fn drude_like_absorption() {
        // Im of 1 + 1/(1 - w^2 - 0.5 i w) continued to i xi gives 1 + 1/(1 + xi^2 + 0.5 xi).
        let im = |w: f64| Ok(0.5 * w / ((1.0 - w * w).powi(2) + 0.25 * w * w));
        let r = kk_to_imaginary_axis(im, 0.7, &KkOptions::new(10.0)).unwrap();
        assert_relative_eq!(r.value, 1.0 + 1.0 / (1.0 + 0.49 + 0.35), max_relative = 1e-7);
    }
}
