//! Scalar functions of the round-trip matrix `M = R1 R2 e^{-2 K3 d}`.

use crate::error::LifshitzError;
use crate::reflection::ReflectionMatrix;

/// Trace and determinant of `M = R1 R2 e`.
pub fn round_trip(r1: &ReflectionMatrix, r2: &ReflectionMatrix, e: f64) -> (f64, f64) {
    let a = r1.as_array();
    let b = r2.as_array();
    let tr = (a[0][0] * b[0][0] + a[0][1] * b[1][0] + a[1][0] * b[0][1] + a[1][1] * b[1][1]) * e;
    let det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) * (b[0][0] * b[1][1] - b[0][1] * b[1][0]) * e * e;
    (tr, det)
}

fn stable(tr: f64, det: f64) -> Result<f64, LifshitzError> {
    let den = 1.0 - tr + det;
    if den > 0.0 {
        Ok(den)
    } else {
        Err(LifshitzError::Unstable(den))
    }
}

/// `Tr[M (1 - M)^{-1}]`.
pub fn trace_kernel(r1: &ReflectionMatrix, r2: &ReflectionMatrix, e: f64) -> Result<f64, LifshitzError> {
    let (tr, det) = round_trip(r1, r2, e);
    Ok((tr - 2.0 * det) / stable(tr, det)?)
}

/// `ln det(1 - M)`.
pub fn log_det_kernel(r1: &ReflectionMatrix, r2: &ReflectionMatrix, e: f64) -> Result<f64, LifshitzError> {
    let (tr, det) = round_trip(r1, r2, e);
    stable(tr, det)?;
    Ok((det - tr).ln_1p())
}

/// First-order change of `Tr[M (1 - M)^{-1}]` when diagonal `R1`, `R2`
/// move by `dr1`, `dr2`. Only the diagonals of the changes contribute.
pub fn trace_kernel_variation(
    r1: &ReflectionMatrix,
    r2: &ReflectionMatrix,
    dr1: &ReflectionMatrix,
    dr2: &ReflectionMatrix,
    e: f64,
) -> Result<f64, LifshitzError> {
    let mut out = 0.0;
    for (a, b, da, db) in [
        (r1.te_te, r2.te_te, dr1.te_te, dr2.te_te),
        (r1.tm_tm, r2.tm_tm, dr1.tm_tm, dr2.tm_tm),
    ] {
        let den = 1.0 - a * b * e;
        if den <= 0.0 {
            return Err(LifshitzError::Unstable(den));
        }
        out += e * (da * b + a * db) / (den * den);
    }
    Ok(out)
}
