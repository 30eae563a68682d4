use super::{ReflectionMatrix, TransverseWave};
use crate::error::ReflectionError;
use crate::material_models::DiagonalTensorResponse;

/// Normal wavenumbers inside a uniaxial medium for the two polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct UniaxialModes {
    pub r_te: f64,
    pub r_tm: f64,
    pub q_te: f64,
    pub q_tm: f64,
}

/// In-plane responses seen by TE (`eps_22`, `mu_11`) and TM (`eps_11`,
/// `mu_22`) waves when the plane of incidence is a symmetry plane.
pub(crate) fn decoupled(
    eps_11: f64,
    eps_22: f64,
    eps_zz: f64,
    mu_11: f64,
    mu_22: f64,
    mu_zz: f64,
    w: &TransverseWave,
) -> UniaxialModes {
    let k2 = w.k_par * w.k_par;
    let kap2 = w.kappa0() * w.kappa0();
    let k3 = w.k3();
    let q_te = (mu_11 / mu_zz * k2 + mu_11 * eps_22 * kap2).sqrt();
    let q_tm = (eps_11 / eps_zz * k2 + eps_11 * mu_22 * kap2).sqrt();
    let r_te = (mu_11 * k3 - q_te) / (mu_11 * k3 + q_te);
    let r_tm = (eps_11 * k3 - q_tm) / (eps_11 * k3 + q_tm);
    UniaxialModes { r_te, r_tm, q_te, q_tm }
}

pub(crate) fn uniaxial_modes(t: &DiagonalTensorResponse, w: &TransverseWave) -> UniaxialModes {
    decoupled(t.eps_xx, t.eps_yy, t.eps_zz, t.mu_xx, t.mu_yy, t.mu_zz, w)
}

/// Fresnel coefficients of a non-magnetic isotropic medium.
pub fn fresnel_metal(eps1: f64, w: &TransverseWave) -> ReflectionMatrix {
    fresnel_isotropic_mm(eps1, 1.0, w)
}

/// Fresnel coefficients of an isotropic magnetodielectric medium.
pub fn fresnel_isotropic_mm(eps2: f64, mu2: f64, w: &TransverseWave) -> ReflectionMatrix {
    let m = uniaxial_modes(&DiagonalTensorResponse::isotropic(eps2, mu2), w);
    ReflectionMatrix::diagonal(m.r_te, m.r_tm)
}

/// Medium with optic axis along the surface normal.
pub fn uniaxial_reflection(t: &DiagonalTensorResponse, w: &TransverseWave) -> Result<ReflectionMatrix, ReflectionError> {
    if !t.is_in_plane_isotropic() {
        return Err(ReflectionError::NotUniaxial { xx: t.eps_xx, yy: t.eps_yy });
    }
    let m = uniaxial_modes(t, w);
    Ok(ReflectionMatrix::diagonal(m.r_te, m.r_tm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::SPEED_OF_LIGHT;
    use crate::material_models::ImaginaryFrequency;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn wave(k: f64, kappa0: f64) -> TransverseWave {
        TransverseWave::new(k, 0.3, ImaginaryFrequency::new(kappa0 * SPEED_OF_LIGHT).unwrap()).unwrap()
    }

    #[test]
    fn vacuum_reflects_nothing() {
        let r = fresnel_metal(1.0, &wave(3.0, 2.0));
        assert_eq!(r, ReflectionMatrix::zero());
    }

    #[test]
    fn normal_incidence() {
        let r = fresnel_metal(4.0, &wave(0.0, 1.0));
        assert_relative_eq!(r.te_te, -1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(r.tm_tm, 1.0 / 3.0, epsilon = 1e-15);
        let r = fresnel_isotropic_mm(1.0, 4.0, &wave(0.0, 1.0));
        assert_relative_eq!(r.te_te, 1.0 / 3.0, epsilon = 1e-15);
        let matched = fresnel_isotropic_mm(3.0, 3.0, &wave(0.0, 1.0));
        assert!(matched.te_te.abs() < 1e-15 && matched.tm_tm.abs() < 1e-15);
    }

    #[test]
    fn perfect_conductor_limit() {
        let r = fresnel_metal(1e14, &wave(1.0, 1.0));
        assert_relative_eq!(r.te_te, -1.0, epsilon = 1e-6);
        assert_relative_eq!(r.tm_tm, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn normal_incidence_ignores_z_components() {
        let a = uniaxial_reflection(&DiagonalTensorResponse::uniaxial(3.0, 7.0, 2.0, 5.0), &wave(0.0, 1.0)).unwrap();
        let b = uniaxial_reflection(&DiagonalTensorResponse::uniaxial(3.0, 1.5, 2.0, 1.1), &wave(0.0, 1.0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn uniaxial_tm_against_layer_oracle() {
        // Field matching by hand for eps_xx = 2, eps_zz = 8, mu = 1, k = kappa0 = 1:
        // q_tm = sqrt(2/8 + 2) = 1.5, K3 = sqrt(2), r_TM = (2 sqrt 2 - 1.5)/(2 sqrt 2 + 1.5).
        let r = uniaxial_reflection(&DiagonalTensorResponse::uniaxial(2.0, 8.0, 1.0, 1.0), &wave(1.0, 1.0)).unwrap();
        let s2 = 2f64.sqrt();
        assert_relative_eq!(r.tm_tm, (2.0 * s2 - 1.5) / (2.0 * s2 + 1.5), max_relative = 1e-14);
    }

    #[test]
    fn uniaxial_rejects_in_plane_anisotropy() {
        let t = DiagonalTensorResponse { eps_yy: 2.5, ..DiagonalTensorResponse::uniaxial(2.0, 8.0, 1.0, 1.0) };
        assert!(uniaxial_reflection(&t, &wave(1.0, 1.0)).is_err());
    }

    proptest! {
        #[test]
        fn reduction_chain(e in 1f64..50.0, m in 1f64..10.0, k in 0f64..5.0, kap in 1e-3f64..5.0) {
            let w = wave(k, kap);
            let iso = fresnel_isotropic_mm(e, m, &w);
            let uni = uniaxial_reflection(&DiagonalTensorResponse::isotropic(e, m), &w).unwrap();
            prop_assert!(iso.max_abs_diff(&uni) < 1e-14);
            let metal = fresnel_metal(e, &w);
            prop_assert!(metal.max_abs_diff(&fresnel_isotropic_mm(e, 1.0, &w)) == 0.0);
        }

        #[test]
        fn passive_diagonals_bounded(
            exx in 1f64..100.0, ezz in 1f64..100.0, mxx in 1f64..10.0, mzz in 1f64..10.0,
            k in 0f64..5.0, kap in 1e-3f64..5.0,
        ) {
            let r = uniaxial_reflection(&DiagonalTensorResponse::uniaxial(exx, ezz, mxx, mzz), &wave(k, kap)).unwrap();
            prop_assert!(r.te_te.abs() <= 1.0 && r.tm_tm.abs() <= 1.0);
        }
    }
}
