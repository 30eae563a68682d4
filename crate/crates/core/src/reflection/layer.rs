use serde::{Deserialize, Serialize};

use super::fresnel::uniaxial_modes;
use super::perturbative::split_anisotropy;
use super::slab::slab_reflection;
use super::zero_mode::zero_mode_modes;
use super::{biaxial_exact_reflection, biaxial_perturbative_reflection, ReflectionMatrix, TransverseWave};
use crate::error::{ModelError, ReflectionError};
use crate::material_models::{DiagonalTensorResponse, MaterialModel};

/// How reflection from a medium with in-plane anisotropy is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnisotropyMethod {
    #[default]
    Exact,
    /// First order in `(eps_yy - eps_xx) / eps_xx`.
    Perturbative,
}

/// One body bounding the gap: a half-space, or a free-standing slab when
/// `thickness` (m) is given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub material: MaterialModel,
    #[serde(default)]
    pub thickness: Option<f64>,
    #[serde(default)]
    pub anisotropy: AnisotropyMethod,
}

impl LayerSpec {
    pub fn half_space(material: MaterialModel) -> Self {
        Self { material, thickness: None, anisotropy: AnisotropyMethod::Exact }
    }

    pub fn slab(material: MaterialModel, thickness: f64) -> Self {
        Self { material, thickness: Some(thickness), anisotropy: AnisotropyMethod::Exact }
    }

    pub fn with_anisotropy(mut self, method: AnisotropyMethod) -> Self {
        self.anisotropy = method;
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        self.material.validate()?;
        if let Some(d) = self.thickness {
            if !(d.is_finite() && d > 0.0) {
                return Err(ModelError::InvalidParameter { name: "thickness", value: d });
            }
            if matches!(self.material, MaterialModel::Biaxial { .. }) {
                return Err(ModelError::Unsupported("slabs of biaxial media".into()));
            }
        }
        Ok(())
    }

    /// Whether the reflection matrix is independent of `phi`.
    pub fn is_azimuthally_symmetric(&self) -> bool {
        self.material.is_azimuthally_symmetric()
    }

    /// Reflection matrix for the wave `w`; `xi = 0` selects the static limit.
    pub fn reflection(&self, w: &TransverseWave) -> Result<ReflectionMatrix, ReflectionError> {
        if w.xi.is_zero() {
            return self.zero_mode(w.k_par);
        }
        match &self.material {
            MaterialModel::Vacuum => return Ok(ReflectionMatrix::zero()),
            MaterialModel::PerfectConductor => return Ok(ReflectionMatrix::perfect_conductor()),
            MaterialModel::PerfectPermeable => return Ok(ReflectionMatrix::perfect_permeable()),
            _ => {}
        }
        let t = self.material.tensor(w.xi)?;
        self.tensor_reflection(&t, w)
    }

    /// Reflection for a tensor already evaluated at `w.xi`.
    pub fn tensor_reflection(
        &self,
        t: &DiagonalTensorResponse,
        w: &TransverseWave,
    ) -> Result<ReflectionMatrix, ReflectionError> {
        if t.is_in_plane_isotropic() {
            let m = uniaxial_modes(t, w);
            return Ok(match self.thickness {
                None => ReflectionMatrix::diagonal(m.r_te, m.r_tm),
                Some(d) => ReflectionMatrix::diagonal(slab_reflection(m.r_te, m.q_te, d), slab_reflection(m.r_tm, m.q_tm, d)),
            });
        }
        if self.thickness.is_some() {
            return Err(ModelError::Unsupported("slabs of biaxial media".into()).into());
        }
        match self.anisotropy {
            AnisotropyMethod::Exact => Ok(biaxial_exact_reflection(t, w)?.0),
            AnisotropyMethod::Perturbative => {
                let (base, delta) = split_anisotropy(t)?;
                biaxial_perturbative_reflection(&base, delta, w)
            }
        }
    }

    /// Static reflection at in-plane wavenumber `k`.
    pub fn zero_mode(&self, k: f64) -> Result<ReflectionMatrix, ReflectionError> {
        let m = zero_mode_modes(&self.material, k)?;
        Ok(match self.thickness {
            None => ReflectionMatrix::diagonal(m.r_te, m.r_tm),
            Some(d) => ReflectionMatrix::diagonal(slab_reflection(m.r_te, m.q_te, d), slab_reflection(m.r_tm, m.q_tm, d)),
        })
    }
}
