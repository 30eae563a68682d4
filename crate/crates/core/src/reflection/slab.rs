use serde::{Deserialize, Serialize};

use crate::constants::SPEED_OF_LIGHT;
use crate::material_models::DrudeParams;

/// Reflection of a free-standing slab of thickness `thickness` from the
/// half-space amplitude `r` and the normal decay constant `k_j` inside it.
pub fn slab_reflection(r: f64, k_j: f64, thickness: f64) -> f64 {
    let e = (-2.0 * k_j * thickness).exp();
    if e == 0.0 {
        return r;
    }
    r * (1.0 - e) / (1.0 - r * r * e)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum ThicknessRegime {
    /// `xi >> gamma`: the plasma-wavelength scale `c / Omega`.
    HighFrequency,
    /// `xi << gamma`: the skin-depth scale `(c / Omega) sqrt(gamma / xi)`.
    LowFrequency { xi: f64 },
    /// Normal-incidence decay length `1 / K` at `xi`, valid in both regimes.
    General { xi: f64 },
}

/// Thickness above which a Drude slab reflects like a half-space at the
/// given frequency.
pub fn min_halfspace_thickness(metal: &DrudeParams, regime: ThicknessRegime) -> f64 {
    let om = metal.plasma_freq;
    let g = metal.dissipation;
    let c = SPEED_OF_LIGHT;
    match regime {
        ThicknessRegime::HighFrequency => c / om,
        ThicknessRegime::LowFrequency { xi } => c / om * (g / xi).sqrt(),
        ThicknessRegime::General { xi } => c / (xi * xi + om * om * xi / (xi + g)).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::OMEGA_REF;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn hand_value() {
        let e2 = (-2.0f64).exp();
        assert_relative_eq!(slab_reflection(0.5, 1.0, 1.0), 0.5 * (1.0 - e2) / (1.0 - 0.25 * e2), max_relative = 1e-15);
        assert!((slab_reflection(0.5, 1.0, 1.0) - 0.44747).abs() < 1e-5);
        assert_eq!(slab_reflection(0.5, 1.0, 0.0), 0.0);
        assert_eq!(slab_reflection(0.5, 1.0, 1e6), 0.5);
    }

    #[test]
    fn thickness_bounds() {
        let gold = DrudeParams::gold();
        let hf = min_halfspace_thickness(&gold, ThicknessRegime::HighFrequency);
        assert!(hf > 10e-9 && hf < 30e-9, "{hf}");
        // Gaussian form c / sqrt(4 pi sigma0 xi) with 4 pi sigma0 = Omega^2 / gamma.
        let xi = 1e13;
        let sigma4pi = gold.plasma_freq.powi(2) / gold.dissipation;
        let skin = SPEED_OF_LIGHT / (sigma4pi * xi).sqrt();
        assert_relative_eq!(min_halfspace_thickness(&gold, ThicknessRegime::LowFrequency { xi }), skin, max_relative = 1e-14);
        // the general form sits between the two asymptotes and approaches each
        let gen = min_halfspace_thickness(&gold, ThicknessRegime::General { xi: 1e-3 * gold.dissipation });
        let low = min_halfspace_thickness(&gold, ThicknessRegime::LowFrequency { xi: 1e-3 * gold.dissipation });
        assert_relative_eq!(gen, low, max_relative = 2e-3);
        let gen = min_halfspace_thickness(&gold, ThicknessRegime::General { xi: 0.1 * OMEGA_REF });
        assert_relative_eq!(gen, hf, max_relative = 2e-2);
    }

    #[test]
    fn dissipationless_limit_collapses_to_high_frequency_bound() {
        let xi = 1e13;
        let mut m = DrudeParams::gold();
        m.dissipation = 1e-9;
        let hf = min_halfspace_thickness(&m, ThicknessRegime::HighFrequency);
        let gen = min_halfspace_thickness(&m, ThicknessRegime::General { xi });
        assert_relative_eq!(gen, hf, max_relative = 1e-5);
    }

    proptest! {
        #[test]
        fn monotone_in_thickness(r in 0.001f64..0.999, k in 0.01f64..10.0, d in 0.0f64..5.0) {
            prop_assert!(slab_reflection(r, k, d) <= slab_reflection(r, k, d * 1.1 + 1e-6) + 1e-15);
        }
    }
}
