//! Adaptive Gauss-Kronrod (10/21) quadrature with nested-error propagation,
//! and a refining trapezoid rule for smooth periodic integrands.
//!
//! Integrands return a [`Sample`]: the value plus the absolute error of any
//! inner integral used to compute it. Inner errors are folded into the panel
//! error with the Kronrod weights, so nested integrals report an honest
//! total error.
//!
//! Convergence is tested against the L1 norm of the integrand,
//! `err <= max(abs_tol, rel_tol * int |f|)`. For sign-definite integrands
//! this is the usual relative criterion; for cancelling ones it avoids
//! chasing digits that are lost to cancellation anyway.

use rayon::prelude::*;

use crate::error::QuadratureError;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_932_649_467,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One integrand evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub value: f64,
    /// Absolute error of any inner computation behind `value`.
    pub error: f64,
}

impl Sample {
    pub fn exact(value: f64) -> Self {
        Self { value, error: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GkOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Budget on integrand evaluations.
    pub max_evals: usize,
    /// Uniform panels per breakpoint-delimited segment at the start.
    pub initial_panels: usize,
    /// Interior points where the integrand may be non-smooth or peaked.
    pub breakpoints: Vec<f64>,
    /// Evaluate the nodes of a panel on the rayon pool.
    pub parallel: bool,
    /// Fail with [`QuadratureError::ToleranceNotMet`] when the budget runs out.
    pub strict: bool,
}

impl Default for GkOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_evals: 20_000,
            initial_panels: 1,
            breakpoints: Vec::new(),
            parallel: false,
            strict: true,
        }
    }
}

impl GkOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// Integral of |f| over the interval.
    pub l1: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl Estimate {
    pub fn sample(&self) -> Sample {
        Sample { value: self.value, error: self.error }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    l1: f64,
    splittable: bool,
}

fn nodes(a: f64, b: f64) -> [f64; 21] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [c; 21];
    for i in 0..10 {
        x[2 * i] = c - h * XGK[i];
        x[2 * i + 1] = c + h * XGK[i];
    }
    x
}

// `f` holds the 21 samples in the order produced by `nodes`.
fn combine(a: f64, b: f64, f: &[Sample]) -> Panel {
    let h = 0.5 * (b - a);
    let fc = f[20].value;
    let mut resk = WGK[10] * fc;
    let mut resabs = WGK[10] * fc.abs();
    let mut inner = WGK[10] * f[20].error;
    let mut resg = 0.0;
    for i in 0..10 {
        let (lo, hi) = (f[2 * i].value, f[2 * i + 1].value);
        resk += WGK[i] * (lo + hi);
        resabs += WGK[i] * (lo.abs() + hi.abs());
        inner += WGK[i] * (f[2 * i].error + f[2 * i + 1].error);
        if i % 2 == 1 {
            resg += WG[i / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for i in 0..10 {
        resasc += WGK[i] * ((f[2 * i].value - mean).abs() + (f[2 * i + 1].value - mean).abs());
    }
    let habs = h.abs();
    let (resabs, resasc) = (resabs * habs, resasc * habs);
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    let mid = 0.5 * (a + b);
    let splittable = mid > a.min(b) && mid < a.max(b) && (b - a).abs() > 1e-13 * (a.abs() + b.abs());
    Panel { a, b, value: resk * h, error: err + inner * habs, l1: resabs, splittable }
}

fn eval_panels<F, E>(f: &F, intervals: &[(f64, f64)], parallel: bool) -> Result<Vec<Panel>, E>
where
    F: Fn(f64) -> Result<Sample, E> + Sync,
    E: From<QuadratureError> + Send,
{
    let xs: Vec<f64> = intervals.iter().flat_map(|&(a, b)| nodes(a, b)).collect();
    let eval = |&x: &f64| -> Result<Sample, E> {
        let s = f(x)?;
        if !s.value.is_finite() || !s.error.is_finite() {
            return Err(QuadratureError::NonFinite { at: x }.into());
        }
        Ok(s)
    };
    let samples: Vec<Sample> = if parallel {
        xs.par_iter().map(eval).collect::<Result<_, E>>()?
    } else {
        xs.iter().map(eval).collect::<Result<_, E>>()?
    };
    Ok(intervals
        .iter()
        .zip(samples.chunks(21))
        .map(|(&(a, b), s)| combine(a, b, s))
        .collect())
}

/// Adaptive integral of `f` over the finite interval `[a, b]`.
pub fn integrate<F, E>(f: F, a: f64, b: f64, opts: &GkOptions) -> Result<Estimate, E>
where
    F: Fn(f64) -> Result<Sample, E> + Sync,
    E: From<QuadratureError> + Send,
{
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(QuadratureError::InvalidInterval { a, b }.into());
    }
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0, l1: 0.0, evaluations: 0, converged: true });
    }
    let mut cuts = vec![a];
    let mut bps: Vec<f64> = opts.breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    cuts.extend(bps);
    cuts.push(b);
    let n0 = opts.initial_panels.max(1);
    let mut intervals = Vec::with_capacity(n0 * (cuts.len() - 1));
    for w in cuts.windows(2) {
        let h = (w[1] - w[0]) / n0 as f64;
        for j in 0..n0 {
            let lo = w[0] + h * j as f64;
            let hi = if j + 1 == n0 { w[1] } else { lo + h };
            intervals.push((lo, hi));
        }
    }
    let mut panels = eval_panels(&f, &intervals, opts.parallel)?;
    let mut evaluations = 21 * panels.len();

    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let l1: f64 = panels.iter().map(|p| p.l1).sum();
        let target = opts.abs_tol.max(opts.rel_tol * l1);
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .fold(None::<(usize, f64)>, |acc, (i, p)| match acc {
                Some((_, e)) if e >= p.error => acc,
                _ => Some((i, p.error)),
            });
        let converged = error <= target;
        let exhausted = evaluations + 42 > opts.max_evals || worst.is_none();
        if converged || exhausted {
            if !converged && opts.strict {
                return Err(QuadratureError::ToleranceNotMet { value, error, evaluations }.into());
            }
            return Ok(Estimate { value, error, l1, evaluations, converged });
        }
        let (i, _) = worst.expect("checked above");
        let p = panels[i];
        let mid = 0.5 * (p.a + p.b);
        let halves = eval_panels(&f, &[(p.a, mid), (mid, p.b)], opts.parallel)?;
        evaluations += 42;
        panels[i] = halves[0];
        panels.insert(i + 1, halves[1]);
    }
}

/// Convenience wrapper for plain scalar integrands.
pub fn integrate_plain<F>(f: F, a: f64, b: f64, opts: &GkOptions) -> Result<Estimate, QuadratureError>
where
    F: Fn(f64) -> f64 + Sync,
{
    integrate(|x| Ok::<_, QuadratureError>(Sample::exact(f(x))), a, b, opts)
}

/// Mean of `f` over `[0, pi/2]` for an integrand that extends to a smooth,
/// even, pi-periodic function (anything depending on `phi` through `cos^2`
/// and `sin^2 2phi`). The trapezoid rule converges exponentially there;
/// the grid is doubled from `start` nodes until successive means agree to
/// `rel_tol` or `max_nodes` is reached. Returns `(mean, error)`.
pub fn periodic_mean<F, E>(f: F, start: usize, max_nodes: usize, rel_tol: f64) -> Result<(f64, f64, usize), E>
where
    F: Fn(f64) -> Result<f64, E>,
{
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut n = start.max(2);
    let mut sum = 0.5 * (f(0.0)? + f(half_pi)?);
    for j in 1..n {
        sum += f(half_pi * j as f64 / n as f64)?;
    }
    let mut evals = n + 1;
    let mut mean = sum / n as f64;
    let mut err = mean.abs();
    while n < max_nodes {
        let n2 = 2 * n;
        for j in (1..n2).step_by(2) {
            sum += f(half_pi * j as f64 / n2 as f64)?;
        }
        evals += n;
        let next = sum / n2 as f64;
        err = (next - mean).abs();
        mean = next;
        n = n2;
        if err <= rel_tol * mean.abs() {
            break;
        }
    }
    Ok((mean, err, evals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_is_exact_for_high_degree_polynomials() {
        // K21 integrates degree 31 exactly, G10 degree 19; one panel suffices.
        let opts = GkOptions { rel_tol: 1e-12, ..Default::default() };
        for deg in [0, 1, 5, 19, 30] {
            let est = integrate_plain(|x: f64| x.powi(deg), 0.0, 1.0, &opts).unwrap();
            assert_relative_eq!(est.value, 1.0 / (deg as f64 + 1.0), max_relative = 1e-14);
            if deg <= 19 {
                assert_eq!(est.evaluations, 21);
            }
        }
    }

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert_relative_eq!(k, 2.0, epsilon = 1e-15);
        assert_relative_eq!(g, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn adapts_to_peaks() {
        // Lorentzian of width 1e-4 centred off the grid.
        let w = 1e-4;
        let f = |x: f64| w / ((x - 0.3137).powi(2) + w * w);
        let exact = ((1.0 - 0.3137) / w).atan() + (0.3137 / w).atan();
        let opts = GkOptions { rel_tol: 1e-10, ..Default::default() };
        let est = integrate_plain(f, 0.0, 1.0, &opts).unwrap();
        assert_relative_eq!(est.value, exact, max_relative = 1e-9);
        assert!(est.converged);
    }

    #[test]
    fn endpoint_singularity() {
        let opts = GkOptions { rel_tol: 1e-9, ..Default::default() };
        let est = integrate_plain(|x: f64| x.sqrt().recip(), 0.0, 1.0, &opts).unwrap();
        assert_relative_eq!(est.value, 2.0, max_relative = 1e-8);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let opts = GkOptions { rel_tol: 1e-15, max_evals: 63, ..Default::default() };
        let err = integrate_plain(|x: f64| (1.0 / (x + 1e-9)).sin(), 0.0, 1.0, &opts).unwrap_err();
        assert!(matches!(err, QuadratureError::ToleranceNotMet { .. }));
        let lax = GkOptions { strict: false, ..opts };
        assert!(!integrate_plain(|x: f64| (1.0 / (x + 1e-9)).sin(), 0.0, 1.0, &lax).unwrap().converged);
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let err = integrate_plain(|x: f64| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &GkOptions::default())
            .unwrap_err();
        assert!(matches!(err, QuadratureError::NonFinite { .. }));
    }

    #[test]
    fn inner_errors_propagate() {
        let est = integrate(
            |_x| Ok::<_, QuadratureError>(Sample { value: 1.0, error: 1e-3 }),
            0.0,
            2.0,
            &GkOptions { strict: false, ..Default::default() },
        )
        .unwrap();
        assert!(est.error >= 2e-3 * 0.999);
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let f = |x: f64| (x * 7.0).sin() * (-x).exp();
        let serial = integrate_plain(f, 0.0, 10.0, &GkOptions::default()).unwrap();
        let par = integrate_plain(f, 0.0, 10.0, &GkOptions { parallel: true, ..Default::default() }).unwrap();
        assert_eq!(serial.value.to_bits(), par.value.to_bits());
    }

    #[test]
    fn periodic_mean_converges_fast() {
        // mean of 1/(2 - cos 2phi) over a period is 1/sqrt(3)
        let (m, e, evals) =
            periodic_mean(|p: f64| Ok::<_, ()>(1.0 / (2.0 - (2.0 * p).cos())), 4, 256, 1e-14).unwrap();
        assert_relative_eq!(m, 1.0 / 3f64.sqrt(), max_relative = 1e-14);
        assert!(e < 1e-13);
        assert!(evals < 80);
    }
}
