use serde::{Deserialize, Serialize};

use super::closed_form::ImaginaryFrequency;
use super::response::{Response, StaticLimit};
use crate::error::ModelError;

/// Diagonal permittivity and permeability tensors at one imaginary frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalTensorResponse {
    pub eps_xx: f64,
    pub eps_yy: f64,
    pub eps_zz: f64,
    pub mu_xx: f64,
    pub mu_yy: f64,
    pub mu_zz: f64,
}

impl DiagonalTensorResponse {
    pub fn vacuum() -> Self {
        Self::isotropic(1.0, 1.0)
    }

    pub fn isotropic(eps: f64, mu: f64) -> Self {
        Self { eps_xx: eps, eps_yy: eps, eps_zz: eps, mu_xx: mu, mu_yy: mu, mu_zz: mu }
    }

    pub fn uniaxial(eps_xx: f64, eps_zz: f64, mu_xx: f64, mu_zz: f64) -> Self {
        Self { eps_xx, eps_yy: eps_xx, eps_zz, mu_xx, mu_yy: mu_xx, mu_zz }
    }

    pub fn is_in_plane_isotropic(&self) -> bool {
        self.eps_xx == self.eps_yy && self.mu_xx == self.mu_yy
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.eps_xx, self.eps_yy, self.eps_zz, self.mu_xx, self.mu_yy, self.mu_zz]
    }
}

/// A planar medium described by diagonal `eps` and `mu` tensors whose
/// principal axes are `x`, `y` (in the surface) and `z` (the normal).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MaterialModel {
    Vacuum,
    /// `r_TE = -1`, `r_TM = +1` at every frequency.
    PerfectConductor,
    /// `r_TE = +1`, `r_TM = -1` at every frequency.
    PerfectPermeable,
    Isotropic {
        eps: Response,
        #[serde(default)]
        mu: Response,
    },
    Uniaxial {
        eps_xx: Response,
        eps_zz: Response,
        #[serde(default)]
        mu_xx: Response,
        #[serde(default)]
        mu_zz: Response,
    },
    Biaxial {
        eps_xx: Response,
        eps_yy: Response,
        eps_zz: Response,
        #[serde(default)]
        mu_xx: Response,
        #[serde(default)]
        mu_yy: Response,
        #[serde(default)]
        mu_zz: Response,
    },
}

impl MaterialModel {
    pub fn isotropic(eps: Response, mu: Response) -> Self {
        MaterialModel::Isotropic { eps, mu }
    }

    /// Response functions in the order xx, yy, zz for eps then mu.
    pub fn components(&self) -> Option<[&Response; 6]> {
        match self {
            MaterialModel::Vacuum | MaterialModel::PerfectConductor | MaterialModel::PerfectPermeable => None,
            MaterialModel::Isotropic { eps, mu } => Some([eps, eps, eps, mu, mu, mu]),
            MaterialModel::Uniaxial { eps_xx, eps_zz, mu_xx, mu_zz } => Some([eps_xx, eps_xx, eps_zz, mu_xx, mu_xx, mu_zz]),
            MaterialModel::Biaxial { eps_xx, eps_yy, eps_zz, mu_xx, mu_yy, mu_zz } => {
                Some([eps_xx, eps_yy, eps_zz, mu_xx, mu_yy, mu_zz])
            }
        }
    }

    /// Tensor at `xi`. Ideal media have no finite tensor and report an error.
    pub fn tensor(&self, xi: ImaginaryFrequency) -> Result<DiagonalTensorResponse, ModelError> {
        match self {
            MaterialModel::Vacuum => Ok(DiagonalTensorResponse::vacuum()),
            MaterialModel::PerfectConductor | MaterialModel::PerfectPermeable => {
                Err(ModelError::Unsupported("ideal media have no finite response tensor".into()))
            }
            MaterialModel::Isotropic { eps, mu } => Ok(DiagonalTensorResponse::isotropic(eps.eval(xi)?, mu.eval(xi)?)),
            MaterialModel::Uniaxial { eps_xx, eps_zz, mu_xx, mu_zz } => Ok(DiagonalTensorResponse::uniaxial(
                eps_xx.eval(xi)?,
                eps_zz.eval(xi)?,
                mu_xx.eval(xi)?,
                mu_zz.eval(xi)?,
            )),
            MaterialModel::Biaxial { eps_xx, eps_yy, eps_zz, mu_xx, mu_yy, mu_zz } => Ok(DiagonalTensorResponse {
                eps_xx: eps_xx.eval(xi)?,
                eps_yy: eps_yy.eval(xi)?,
                eps_zz: eps_zz.eval(xi)?,
                mu_xx: mu_xx.eval(xi)?,
                mu_yy: mu_yy.eval(xi)?,
                mu_zz: mu_zz.eval(xi)?,
            }),
        }
    }

    /// Whether reflection is independent of the azimuth of incidence.
    pub fn is_azimuthally_symmetric(&self) -> bool {
        !matches!(self, MaterialModel::Biaxial { .. })
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if let Some(c) = self.components() {
            for r in c {
                r.validate()?;
            }
        }
        Ok(())
    }

    /// Static limits in the order of [`MaterialModel::components`].
    pub fn static_limits(&self) -> Result<Option<[StaticLimit; 6]>, ModelError> {
        match self.components() {
            None => Ok(None),
            Some(c) => {
                let mut out = [StaticLimit::Finite(1.0); 6];
                for (o, r) in out.iter_mut().zip(c) {
                    *o = r.static_limit()?;
                }
                Ok(Some(out))
            }
        }
    }

    /// Apply `f` to every permittivity component.
    pub fn map_eps(&self, f: impl Fn(&Response) -> Response) -> MaterialModel {
        match self {
            MaterialModel::Isotropic { eps, mu } => MaterialModel::Isotropic { eps: f(eps), mu: mu.clone() },
            MaterialModel::Uniaxial { eps_xx, eps_zz, mu_xx, mu_zz } => MaterialModel::Uniaxial {
                eps_xx: f(eps_xx),
                eps_zz: f(eps_zz),
                mu_xx: mu_xx.clone(),
                mu_zz: mu_zz.clone(),
            },
            MaterialModel::Biaxial { eps_xx, eps_yy, eps_zz, mu_xx, mu_yy, mu_zz } => MaterialModel::Biaxial {
                eps_xx: f(eps_xx),
                eps_yy: f(eps_yy),
                eps_zz: f(eps_zz),
                mu_xx: mu_xx.clone(),
                mu_yy: mu_yy.clone(),
                mu_zz: mu_zz.clone(),
            },
            other => other.clone(),
        }
    }

    /// Apply `f` to every permeability component.
    pub fn map_mu(&self, f: impl Fn(&Response) -> Response) -> MaterialModel {
        match self {
            MaterialModel::Isotropic { eps, mu } => MaterialModel::Isotropic { eps: eps.clone(), mu: f(mu) },
            MaterialModel::Uniaxial { eps_xx, eps_zz, mu_xx, mu_zz } => MaterialModel::Uniaxial {
                eps_xx: eps_xx.clone(),
                eps_zz: eps_zz.clone(),
                mu_xx: f(mu_xx),
                mu_zz: f(mu_zz),
            },
            MaterialModel::Biaxial { eps_xx, eps_yy, eps_zz, mu_xx, mu_yy, mu_zz } => MaterialModel::Biaxial {
                eps_xx: eps_xx.clone(),
                eps_yy: eps_yy.clone(),
                eps_zz: eps_zz.clone(),
                mu_xx: f(mu_xx),
                mu_yy: f(mu_yy),
                mu_zz: f(mu_zz),
            },
            other => other.clone(),
        }
    }

    /// Apply `f` to every component.
    pub fn map_all(&self, f: impl Fn(&Response) -> Response) -> MaterialModel {
        self.map_eps(&f).map_mu(&f)
    }
}
