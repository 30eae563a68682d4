//! Reflection matrices of planar vacuum/medium interfaces on the imaginary
//! frequency axis.

pub mod biaxial;
pub mod fresnel;
pub mod layer;
pub mod perturbative;
pub mod slab;
pub mod zero_mode;

pub use biaxial::{biaxial_exact_reflection, BiaxialSolveTrace};
pub use fresnel::{fresnel_isotropic_mm, fresnel_metal, uniaxial_reflection};
pub use layer::{AnisotropyMethod, LayerSpec};
pub use perturbative::biaxial_perturbative_reflection;
pub use slab::{min_halfspace_thickness, slab_reflection, ThicknessRegime};
pub use zero_mode::zero_mode_reflection;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::ReflectionError;
use crate::material_models::ImaginaryFrequency;

/// A plane wave with in-plane wavevector of magnitude `k_par` (1/m) at
/// azimuth `phi` from the medium's `x` axis, at frequency `i xi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseWave {
    pub k_par: f64,
    pub phi: f64,
    pub xi: ImaginaryFrequency,
}

impl TransverseWave {
    pub fn new(k_par: f64, phi: f64, xi: ImaginaryFrequency) -> Result<Self, ReflectionError> {
        if !(k_par.is_finite() && k_par >= 0.0) || !phi.is_finite() {
            return Err(ReflectionError::InvalidWave(format!("k_par = {k_par}, phi = {phi}")));
        }
        Ok(Self { k_par, phi, xi })
    }

    /// Vacuum wavenumber `xi / c`, 1/m.
    pub fn kappa0(&self) -> f64 {
        self.xi.get() / SPEED_OF_LIGHT
    }

    /// `K3 = sqrt(k_par^2 + xi^2/c^2)`.
    pub fn k3(&self) -> f64 {
        self.k_par.hypot(self.kappa0())
    }
}

/// Reflection amplitudes; the first polarization label is the reflected
/// wave and the second the incident one, so `tm_te` is the TM amplitude
/// reflected from unit incident TE.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReflectionMatrix {
    pub te_te: f64,
    pub te_tm: f64,
    pub tm_te: f64,
    pub tm_tm: f64,
}

impl ReflectionMatrix {
    pub fn diagonal(te: f64, tm: f64) -> Self {
        Self { te_te: te, te_tm: 0.0, tm_te: 0.0, tm_tm: tm }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn perfect_conductor() -> Self {
        Self::diagonal(-1.0, 1.0)
    }

    pub fn perfect_permeable() -> Self {
        Self::diagonal(1.0, -1.0)
    }

    /// Rows are reflected polarizations (TE, TM), columns incident ones.
    pub fn as_array(&self) -> [[f64; 2]; 2] {
        [[self.te_te, self.te_tm], [self.tm_te, self.tm_tm]]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.te_te - other.te_te,
            self.te_tm - other.te_tm,
            self.tm_te - other.tm_te,
            self.tm_tm - other.tm_tm,
        ]
        .iter()
        .fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.te_te.is_finite() && self.te_tm.is_finite() && self.tm_te.is_finite() && self.tm_tm.is_finite()
    }
}
