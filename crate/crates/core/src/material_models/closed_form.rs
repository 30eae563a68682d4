use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::OMEGA_REF;
use crate::error::ModelError;

/// A point `omega = i xi` on the positive imaginary frequency axis, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ImaginaryFrequency(f64);

impl ImaginaryFrequency {
    pub fn new(xi: f64) -> Result<Self, ModelError> {
        if xi.is_finite() && xi >= 0.0 {
            Ok(Self(xi))
        } else {
            Err(ModelError::InvalidParameter { name: "xi", value: xi })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

impl TryFrom<f64> for ImaginaryFrequency {
    type Error = ModelError;
    fn try_from(xi: f64) -> Result<Self, Self::Error> {
        Self::new(xi)
    }
}

impl From<ImaginaryFrequency> for f64 {
    fn from(xi: ImaginaryFrequency) -> f64 {
        xi.0
    }
}

/// Real or imaginary frequency argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frequency {
    Real(f64),
    Imaginary(ImaginaryFrequency),
}

fn check_nonneg(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter { name, value })
    }
}

/// Free-electron response: plasma frequency and relaxation rate, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrudeParams {
    pub plasma_freq: f64,
    #[serde(default)]
    pub dissipation: f64,
}

impl DrudeParams {
    pub fn new(plasma_freq: f64, dissipation: f64) -> Result<Self, ModelError> {
        let p = Self { plasma_freq, dissipation };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_nonneg("plasma_freq", self.plasma_freq)?;
        check_nonneg("dissipation", self.dissipation)
    }

    /// Gold: `0.96` and `0.004` times the reference frequency.
    pub fn gold() -> Self {
        Self { plasma_freq: 0.96 * OMEGA_REF, dissipation: 0.004 * OMEGA_REF }
    }
}

/// One damped oscillator: `Omega^2 / (omega_r^2 - omega^2 - i gamma omega)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzResonanceParams {
    pub strength: f64,
    pub resonance: f64,
    #[serde(default)]
    pub dissipation: f64,
}

impl LorentzResonanceParams {
    pub fn new(strength: f64, resonance: f64, dissipation: f64) -> Result<Self, ModelError> {
        let p = Self { strength, resonance, dissipation };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_nonneg("strength", self.strength)?;
        check_nonneg("resonance", self.resonance)?;
        check_nonneg("dissipation", self.dissipation)
    }

    pub fn without_strength(self) -> Self {
        Self { strength: 0.0, ..self }
    }
}

/// One principal axis of a wire-type metamaterial: a fraction `f` of Drude
/// metal plus a resonance that carries the remaining weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeAxisParams {
    pub filling_factor: f64,
    pub resonance: LorentzResonanceParams,
    pub drude: DrudeParams,
}

impl CompositeAxisParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(0.0..=1.0).contains(&self.filling_factor) {
            return Err(ModelError::InvalidParameter { name: "filling_factor", value: self.filling_factor });
        }
        self.resonance.validate()?;
        self.drude.validate()
    }
}

/// `1 + Omega^2 / (xi^2 + gamma xi)`.
///
/// Diverges at `xi = 0` for any non-zero plasma frequency; the static
/// behaviour is exposed through `Response::static_limit` instead.
pub fn drude_eps(p: &DrudeParams, xi: ImaginaryFrequency) -> Result<f64, ModelError> {
    let x = xi.get();
    if p.plasma_freq == 0.0 {
        return Ok(1.0);
    }
    if x == 0.0 {
        return Err(ModelError::Domain { what: "Drude permittivity", xi: x });
    }
    Ok(1.0 + p.plasma_freq * p.plasma_freq / (x * (x + p.dissipation)))
}

/// `Omega^2 / (xi^2 + omega_r^2 + gamma xi)`, without the leading 1.
pub fn lorentz_term(p: &LorentzResonanceParams, xi: ImaginaryFrequency) -> Result<f64, ModelError> {
    if p.strength == 0.0 {
        return Ok(0.0);
    }
    let x = xi.get();
    let den = x * x + p.resonance * p.resonance + p.dissipation * x;
    if den == 0.0 {
        return Err(ModelError::Domain { what: "Lorentz term", xi: x });
    }
    Ok(p.strength * p.strength / den)
}

/// `1 + (1 - f) L(i xi) + f (eps_Drude(i xi) - 1)`.
pub fn composite_axis_eps(p: &CompositeAxisParams, xi: ImaginaryFrequency) -> Result<f64, ModelError> {
    let f = p.filling_factor;
    let lorentz = if f < 1.0 { (1.0 - f) * lorentz_term(&p.resonance, xi)? } else { 0.0 };
    let drude = if f > 0.0 { f * (drude_eps(&p.drude, xi)? - 1.0) } else { 0.0 };
    Ok(1.0 + lorentz + drude)
}

/// Maxwell Garnett permittivity of spheres (`eps_met`) at volume fraction `f`
/// in a host `eps_d`. An infinite `eps_met` gives the perfectly conducting
/// limit `eps_d (1 + 2f) / (1 - f)`.
pub fn maxwell_garnett_eps(f: f64, eps_met: f64, eps_d: f64) -> Result<f64, ModelError> {
    if !(0.0..=1.0).contains(&f) {
        return Err(ModelError::InvalidParameter { name: "filling_factor", value: f });
    }
    let value = if eps_met.is_infinite() {
        if f == 1.0 {
            return Err(ModelError::NonFinite("Maxwell Garnett mixing"));
        }
        eps_d * (1.0 + 2.0 * f) / (1.0 - f)
    } else {
        let den = (1.0 - f) * eps_met + (2.0 + f) * eps_d;
        if den == 0.0 {
            return Err(ModelError::NonFinite("Maxwell Garnett mixing"));
        }
        eps_d * ((1.0 + 2.0 * f) * eps_met + 2.0 * (1.0 - f) * eps_d) / den
    };
    if !value.is_finite() {
        return Err(ModelError::NonFinite("Maxwell Garnett mixing"));
    }
    Ok(value)
}

/// Polar-crystal inclusion: `eps_inf [1 + (Omega^2 - w^2) / (w^2 - omega^2 - i gamma omega)]`,
/// with `Omega` the longitudinal and `w` the transverse optical frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolaritonicParams {
    pub eps_inf: f64,
    pub omega_longitudinal: f64,
    pub omega_transverse: f64,
    pub dissipation: f64,
}

impl PolaritonicParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.eps_inf >= 1.0 && self.eps_inf.is_finite()) {
            return Err(ModelError::InvalidParameter { name: "eps_inf", value: self.eps_inf });
        }
        check_nonneg("dissipation", self.dissipation)?;
        if !(self.omega_transverse > 0.0 && self.omega_transverse.is_finite()) {
            return Err(ModelError::InvalidParameter { name: "omega_transverse", value: self.omega_transverse });
        }
        if !(self.omega_longitudinal >= self.omega_transverse && self.omega_longitudinal.is_finite()) {
            return Err(ModelError::InvalidParameter { name: "omega_longitudinal", value: self.omega_longitudinal });
        }
        Ok(())
    }

    pub fn static_eps(&self) -> f64 {
        self.eps_inf * (self.omega_longitudinal / self.omega_transverse).powi(2)
    }
}

pub fn polaritonic_eps(p: &PolaritonicParams, omega: Frequency) -> Complex64 {
    let w2 = p.omega_transverse * p.omega_transverse;
    let num = p.omega_longitudinal * p.omega_longitudinal - w2;
    let den = match omega {
        Frequency::Real(w) => Complex64::new(w2 - w * w, -p.dissipation * w),
        Frequency::Imaginary(xi) => {
            let x = xi.get();
            Complex64::new(w2 + x * x + p.dissipation * x, 0.0)
        }
    };
    p.eps_inf * (1.0 + num / den)
}
