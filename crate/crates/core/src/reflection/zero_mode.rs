//! Reflection in the static limit `xi -> 0`, where conductors need the
//! asymptotic form of their response rather than a value.

use super::ReflectionMatrix;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::ReflectionError;
use crate::material_models::{MaterialModel, StaticLimit};

/// Static reflection amplitudes together with the normal wavenumbers used
/// by the slab formula; an infinite `q_tm` marks a screening medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ZeroModes {
    pub r_te: f64,
    pub r_tm: f64,
    pub q_te: f64,
    pub q_tm: f64,
}

fn finite_mu(l: StaticLimit) -> Result<f64, ReflectionError> {
    match l {
        StaticLimit::Finite(v) => Ok(v),
        _ => Err(ReflectionError::UnsupportedZeroMode("divergent static permeability".into())),
    }
}

pub(crate) fn zero_mode_modes(material: &MaterialModel, k: f64) -> Result<ZeroModes, ReflectionError> {
    let lim = match material.static_limits()? {
        Some(l) => l,
        None => {
            let r = zero_mode_reflection(material, k)?;
            return Ok(ZeroModes { r_te: r.te_te, r_tm: r.tm_tm, q_te: f64::INFINITY, q_tm: f64::INFINITY });
        }
    };
    if matches!(material, MaterialModel::Biaxial { .. }) {
        return Err(ReflectionError::UnsupportedZeroMode("biaxial medium".into()));
    }
    let [exx, _, ezz, mxx, _, mzz] = lim;
    let (mxx, mzz) = (finite_mu(mxx)?, finite_mu(mzz)?);

    // eps (xi/c)^2 tends to Omega^2/c^2 for a plasma and to zero otherwise.
    let p = match exx {
        StaticLimit::Plasma { plasma_freq_sq } => plasma_freq_sq / (SPEED_OF_LIGHT * SPEED_OF_LIGHT),
        _ => 0.0,
    };
    let (r_te, q_te) = if p == 0.0 {
        let a = (mxx / mzz).sqrt();
        ((mxx - a) / (mxx + a), a * k)
    } else {
        let q = (mxx / mzz * k * k + mxx * p).sqrt();
        ((mxx * k - q) / (mxx * k + q), q)
    };

    let (r_tm, q_tm) = match (exx, ezz) {
        (StaticLimit::Finite(ex), StaticLimit::Finite(ez)) => {
            let a = (ex / ez).sqrt();
            ((ex - a) / (ex + a), a * k)
        }
        _ => (1.0, f64::INFINITY),
    };
    Ok(ZeroModes { r_te, r_tm, q_te, q_tm })
}

/// Reflection matrix of a half-space at `xi = 0` for in-plane wavenumber
/// `k` (1/m).
pub fn zero_mode_reflection(material: &MaterialModel, k: f64) -> Result<ReflectionMatrix, ReflectionError> {
    match material {
        MaterialModel::Vacuum => Ok(ReflectionMatrix::zero()),
        MaterialModel::PerfectConductor => Ok(ReflectionMatrix::perfect_conductor()),
        MaterialModel::PerfectPermeable => Ok(ReflectionMatrix::perfect_permeable()),
        _ => {
            let m = zero_mode_modes(material, k)?;
            Ok(ReflectionMatrix::diagonal(m.r_te, m.r_tm))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material_models::{DrudeParams, ImaginaryFrequency, Response};
    use crate::reflection::{fresnel_isotropic_mm, TransverseWave};
    use approx::assert_relative_eq;

    fn iso(eps: Response, mu: Response) -> MaterialModel {
        MaterialModel::isotropic(eps, mu)
    }

    #[test]
    fn dielectric_matches_small_xi_limit() {
        let m = iso(Response::Constant { value: 4.0 }, Response::Constant { value: 2.0 });
        let r0 = zero_mode_reflection(&m, 1e7).unwrap();
        let w = TransverseWave::new(1e7, 0.0, ImaginaryFrequency::new(1e3).unwrap()).unwrap();
        let r = fresnel_isotropic_mm(4.0, 2.0, &w);
        assert!(r0.max_abs_diff(&r) < 1e-9);
        assert_relative_eq!(r0.tm_tm, 3.0 / 5.0, max_relative = 1e-15);
        assert_relative_eq!(r0.te_te, 1.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn drude_and_plasma_metals() {
        let gold = DrudeParams::gold();
        let drude = iso(Response::Drude(gold), Response::unity());
        let r = zero_mode_reflection(&drude, 1e7).unwrap();
        assert_eq!(r, ReflectionMatrix::diagonal(0.0, 1.0));

        let plasma = iso(Response::Drude(DrudeParams { dissipation: 0.0, ..gold }), Response::unity());
        let k = 1e7;
        let r = zero_mode_reflection(&plasma, k).unwrap();
        let q = (k * k + (gold.plasma_freq / SPEED_OF_LIGHT).powi(2)).sqrt();
        assert_relative_eq!(r.te_te, (k - q) / (k + q), max_relative = 1e-14);
        assert_eq!(r.tm_tm, 1.0);
        // approached from small but finite xi
        let w = TransverseWave::new(k, 0.0, ImaginaryFrequency::new(1e6).unwrap()).unwrap();
        let eps = Response::Drude(DrudeParams { dissipation: 0.0, ..gold }).eval(w.xi).unwrap();
        let near = fresnel_isotropic_mm(eps, 1.0, &w);
        assert!((near.te_te - r.te_te).abs() < 1e-9);
    }

    #[test]
    fn ideal_and_unsupported() {
        assert_eq!(zero_mode_reflection(&MaterialModel::PerfectConductor, 1.0).unwrap(), ReflectionMatrix::perfect_conductor());
        assert_eq!(zero_mode_reflection(&MaterialModel::Vacuum, 1.0).unwrap(), ReflectionMatrix::zero());
        let bad = iso(Response::Constant { value: 2.0 }, Response::Drude(DrudeParams::gold()));
        assert!(matches!(zero_mode_reflection(&bad, 1.0), Err(ReflectionError::UnsupportedZeroMode(_))));
        let c = Response::Constant { value: 2.0 };
        let bi = MaterialModel::Biaxial {
            eps_xx: c.clone(),
            eps_yy: Response::Constant { value: 3.0 },
            eps_zz: c.clone(),
            mu_xx: Response::unity(),
            mu_yy: Response::unity(),
            mu_zz: Response::unity(),
        };
        assert!(zero_mode_reflection(&bi, 1.0).is_err());
    }

    #[test]
    fn uniaxial_static_tm() {
        let m = MaterialModel::Uniaxial {
            eps_xx: Response::Constant { value: 2.0 },
            eps_zz: Response::Constant { value: 8.0 },
            mu_xx: Response::unity(),
            mu_zz: Response::unity(),
        };
        let r = zero_mode_reflection(&m, 1.0).unwrap();
        assert_relative_eq!(r.tm_tm, (2.0 - 0.5) / (2.0 + 0.5), max_relative = 1e-15);
        assert_eq!(r.te_te, 0.0);
    }
}
