//! First-order reflection matrix for weak in-plane anisotropy,
//! `eps_yy = eps_xx (1 + delta)`, around the uniaxial medium with `eps_xx`.

use super::fresnel::uniaxial_modes;
use super::{ReflectionMatrix, TransverseWave};
use crate::error::ReflectionError;
use crate::material_models::DiagonalTensorResponse;

/// Derivatives of the reflection matrix with respect to `delta` at `delta = 0`.
pub fn first_order_coefficients(base: &DiagonalTensorResponse, w: &TransverseWave) -> Result<ReflectionMatrix, ReflectionError> {
    if !base.is_in_plane_isotropic() {
        return Err(ReflectionError::NotUniaxial { xx: base.eps_xx, yy: base.eps_yy });
    }
    let m = uniaxial_modes(base, w);
    let (e, mu) = (base.eps_xx, base.mu_xx);
    let k3 = w.k3();
    let kap = w.kappa0();
    let (sin, cos) = w.phi.sin_cos();
    let den_te = m.q_te + mu * k3;
    let den_tm = m.q_tm + e * k3;

    let d_te = -0.5 * kap * kap * e * mu * cos * cos * (1.0 + m.r_te) / (m.q_te * den_te);
    let d_tm = k3 * e * sin * sin * (1.0 - m.r_tm) / (2.0 * den_tm);
    let d_tm_te = -e * mu * kap * m.q_tm * k3 * (2.0 * w.phi).sin() / ((m.q_tm + m.q_te) * den_tm * den_te);
    let out = ReflectionMatrix { te_te: d_te, te_tm: -d_tm_te, tm_te: d_tm_te, tm_tm: d_tm };
    if !out.is_finite() {
        return Err(ReflectionError::NonFinite);
    }
    Ok(out)
}

/// Uniaxial reflection of `base` plus `delta` times the first-order correction.
pub fn biaxial_perturbative_reflection(
    base: &DiagonalTensorResponse,
    delta: f64,
    w: &TransverseWave,
) -> Result<ReflectionMatrix, ReflectionError> {
    let m = uniaxial_modes(base, w);
    if delta == 0.0 {
        if !base.is_in_plane_isotropic() {
            return Err(ReflectionError::NotUniaxial { xx: base.eps_xx, yy: base.eps_yy });
        }
        return Ok(ReflectionMatrix::diagonal(m.r_te, m.r_tm));
    }
    let d = first_order_coefficients(base, w)?;
    Ok(ReflectionMatrix {
        te_te: m.r_te + delta * d.te_te,
        te_tm: delta * d.te_tm,
        tm_te: delta * d.tm_te,
        tm_tm: m.r_tm + delta * d.tm_tm,
    })
}

/// Split a tensor with weak in-plane anisotropy into its uniaxial baseline
/// (`eps_yy -> eps_xx`) and `delta = (eps_yy - eps_xx) / eps_xx`.
pub fn split_anisotropy(t: &DiagonalTensorResponse) -> Result<(DiagonalTensorResponse, f64), ReflectionError> {
    if t.mu_xx != t.mu_yy {
        return Err(ReflectionError::InvalidWave("perturbative path needs mu_xx = mu_yy".into()));
    }
    let delta = (t.eps_yy - t.eps_xx) / t.eps_xx;
    Ok((DiagonalTensorResponse { eps_yy: t.eps_xx, ..*t }, delta))
}
