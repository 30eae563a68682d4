//! Small numerical tools for checking computed curves: limit extrapolation,
//! power-law fits, root bracketing and level crossings.

/// Richardson extrapolation to `h -> 0` of values taken at `h, h/2, h/4, ...`
/// with an error expansion `a1 h + a2 h^2 + ...`.
pub fn richardson(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut row = values.to_vec();
    let mut factor = 2.0;
    while row.len() > 1 {
        row = row.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        factor *= 2.0;
    }
    row[0]
}

/// Least-squares slope of `ln|y|` against `ln x`.
pub fn log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2);
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Root of `f` in `[a, b]` by bisection, to a relative width `rel_tol`.
pub fn bisect<E>(mut f: impl FnMut(f64) -> Result<f64, E>, mut a: f64, mut b: f64, rel_tol: f64) -> Result<f64, E> {
    let mut fa = f(a)?;
    let fb = f(b)?;
    assert!(fa * fb <= 0.0, "no sign change on [{a}, {b}]");
    while (b - a).abs() > rel_tol * a.abs().max(b.abs()) {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

/// First `x` at which `|y|` passes through `level`, interpolating linearly in
/// `ln x` and `ln|y|` between samples.
pub fn first_crossing(xs: &[f64], ys: &[f64], level: f64) -> Option<f64> {
    let above: Vec<bool> = ys.iter().map(|y| y.abs() >= level).collect();
    (1..xs.len()).find(|&i| above[i] != above[i - 1]).map(|i| {
        let (x0, x1) = (xs[i - 1].ln(), xs[i].ln());
        let (y0, y1) = (ys[i - 1].abs().ln(), ys[i].abs().ln());
        (x0 + (level.ln() - y0) * (x1 - x0) / (y1 - y0)).exp()
    })
}

/// Indices of the samples where `y < 0`.
pub fn negative_window(ys: &[f64]) -> Vec<usize> {
    ys.iter().enumerate().filter(|(_, y)| **y < 0.0).map(|(i, _)| i).collect()
}
