//! Run configuration, read from TOML.
//!
//! Material sections (`[metal]`, `[metamaterial]`) hold a layer description
//! as accepted by `casimir_core::reflection::LayerSpec`. When
//! `units.frequencies = "omega_scale"`, every frequency-valued key inside
//! them is read as a multiple of `units.omega_scale` and converted to rad/s
//! on load.

use std::fmt;

use casimir_core::constants::SPEED_OF_LIGHT;
use casimir_core::lifshitz::{ContrastToggle, QuadratureSpec};
use casimir_core::material_models::AtomParams;
use casimir_core::reflection::LayerSpec;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Keys whose numeric values are angular frequencies.
const FREQUENCY_KEYS: [&str; 6] =
    ["plasma_freq", "dissipation", "strength", "resonance", "omega_longitudinal", "omega_transverse"];
const MATERIAL_SECTIONS: [&str; 2] = ["metal", "metamaterial"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FrequencyUnit {
    #[default]
    #[serde(rename = "rad_s")]
    RadPerSecond,
    #[serde(rename = "omega_scale")]
    OmegaScale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthUnit {
    #[default]
    #[serde(rename = "m")]
    Meter,
    /// Multiples of `2 pi c / omega_scale`.
    Lambda,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Units {
    /// rad/s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_scale: Option<f64>,
    pub frequencies: FrequencyUnit,
    /// Unit of `gap` and `z`, in the geometry and in sweeps.
    pub length: LengthUnit,
}

impl Units {
    /// `2 pi c / omega_scale`, m.
    pub fn lambda(&self) -> Option<f64> {
        self.omega_scale.map(|w| 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / w)
    }

    /// Metres per configured length unit.
    pub fn length_factor(&self) -> Option<f64> {
        match self.length {
            LengthUnit::Meter => Some(1.0),
            LengthUnit::Lambda => self.lambda(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunKind {
    /// `F / F_C` between `[metal]` and `[metamaterial]`.
    Force,
    /// Energy per area at `T = 0`, J/m^2.
    Energy,
    /// Static Matsubara term of the pressure, Pa.
    ZeroMode,
    /// Pressure change when `run.toggle` is applied, Pa.
    Contrast,
    /// Atom-surface potential, J.
    Potential,
    /// Relative trap-frequency shift.
    TrapShift,
    TrapShiftContrast,
    /// `eps` and `mu` of `[metamaterial]` on the imaginary axis.
    Response,
}

impl RunKind {
    pub fn uses_gap(self) -> bool {
        matches!(self, RunKind::Force | RunKind::Energy | RunKind::ZeroMode | RunKind::Contrast)
    }

    pub fn uses_atom(self) -> bool {
        matches!(self, RunKind::Potential | RunKind::TrapShift | RunKind::TrapShiftContrast)
    }

    pub fn uses_toggle(self) -> bool {
        matches!(self, RunKind::Contrast | RunKind::TrapShiftContrast)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSection {
    pub kind: RunKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toggle: Option<ContrastToggle>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Geometry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    /// K.
    #[serde(default)]
    pub temperature: f64,
    /// Atom-surface distance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
}

/// Atom with the polarizability volume in cm^3 and frequencies in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomSection {
    pub static_polarizability_cm3: f64,
    pub transition_freq: f64,
    /// kg.
    pub mass: f64,
    pub trap_freq: f64,
}

impl AtomSection {
    pub fn params(&self) -> Result<AtomParams, CliError> {
        AtomParams::from_cm3(self.static_polarizability_cm3, self.transition_freq, self.mass, self.trap_freq)
            .map_err(|e| CliError::Config(format!("[atom]: {e}")))
    }
}

/// A quantity that a sweep or series can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    Gap,
    Temperature,
    Z,
    /// Every filling factor of the metamaterial.
    FillingFactor,
    FillingFactorX,
    FillingFactorY,
    FillingFactorZ,
    /// Multiplies every dissipation rate of the metamaterial.
    DissipationScale,
    /// Multiplies every dissipation rate of the metal.
    MetalDissipationScale,
    /// `gamma / Omega` of the added electric resonances.
    ElectricDissipationRatio,
    /// `gamma / Omega` of the magnetic resonances.
    MagneticDissipationRatio,
    /// Both of the above.
    DissipationRatio,
    /// Imaginary frequency, in units of `omega_scale` when one is declared.
    Xi,
}

impl Variable {
    pub fn column(self, units: &Units) -> &'static str {
        let lambda = units.length == LengthUnit::Lambda;
        match self {
            Variable::Gap if lambda => "d_over_lambda",
            Variable::Gap => "d_m",
            Variable::Z if lambda => "z_over_lambda",
            Variable::Z => "z_m",
            Variable::Temperature => "T",
            Variable::FillingFactor => "f",
            Variable::FillingFactorX => "f_x",
            Variable::FillingFactorY => "f_y",
            Variable::FillingFactorZ => "f_z",
            Variable::DissipationScale => "dissipation_scale",
            Variable::MetalDissipationScale => "metal_dissipation_scale",
            Variable::ElectricDissipationRatio => "gamma_e_over_omega_e",
            Variable::MagneticDissipationRatio => "gamma_m_over_omega_m",
            Variable::DissipationRatio => "gamma_over_omega",
            Variable::Xi if units.omega_scale.is_some() => "xi_over_omega",
            Variable::Xi => "xi_rad_s",
        }
    }

    /// Whether the variable means anything for `kind`.
    pub fn applies_to(self, kind: RunKind) -> bool {
        match self {
            Variable::Gap => kind.uses_gap(),
            Variable::Temperature => kind.uses_gap(),
            Variable::Z => kind.uses_atom(),
            Variable::Xi => kind == RunKind::Response,
            Variable::MetalDissipationScale => kind.uses_gap(),
            _ => true,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = toml::Value::try_from(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// The innermost loop of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub variable: Variable,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        if n == 1 {
            return vec![self.min];
        }
        (0..n)
            .map(|j| {
                if j == 0 {
                    return self.min;
                }
                if j == n - 1 {
                    return self.max;
                }
                let t = j as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

/// Outer loop: each row of `values` assigns one value to each variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub variables: Vec<Variable>,
    pub values: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub run: Option<RunSection>,
    #[serde(default)]
    pub units: Units,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metal: Option<LayerSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metamaterial: Option<LayerSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom: Option<AtomSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Series>,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
}

/// A parsed configuration with the keys that were not recognised.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub config: RunConfig,
    pub unknown_keys: Vec<String>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Parsed, CliError> {
        let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        resolve_frequencies(&mut table)?;
        let mut unknown_keys = Vec::new();
        let config = serde_ignored::deserialize(toml::Value::Table(table), |path| {
            unknown_keys.push(path.to_string().replace(".?", ""))
        })
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        Ok(Parsed { config, unknown_keys })
    }

    /// TOML text that parses back to `self`.
    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn kind(&self) -> Option<RunKind> {
        self.run.as_ref().map(|r| r.kind)
    }
}

fn resolve_frequencies(table: &mut toml::Table) -> Result<(), CliError> {
    let Some(units) = table.get_mut("units").and_then(|u| u.as_table_mut()) else {
        return Ok(());
    };
    if units.get("frequencies").and_then(|v| v.as_str()) != Some("omega_scale") {
        return Ok(());
    }
    let w = units.get("omega_scale").and_then(number).ok_or_else(|| {
        CliError::Config("units.frequencies = \"omega_scale\" needs a numeric units.omega_scale".into())
    })?;
    if !(w > 0.0 && w.is_finite()) {
        return Err(CliError::Config(format!("units.omega_scale = {w} must be positive")));
    }
    units.insert("frequencies".into(), toml::Value::String("rad_s".into()));
    for name in MATERIAL_SECTIONS {
        if let Some(v) = table.get_mut(name) {
            scale_frequencies(v, w);
        }
    }
    Ok(())
}

fn number(v: &toml::Value) -> Option<f64> {
    match v {
        toml::Value::Float(x) => Some(*x),
        toml::Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

fn scale_frequencies(v: &mut toml::Value, w: f64) {
    match v {
        toml::Value::Table(t) => {
            for (key, x) in t.iter_mut() {
                match number(x) {
                    Some(n) if FREQUENCY_KEYS.contains(&key.as_str()) => *x = toml::Value::Float(n * w),
                    _ => scale_frequencies(x, w),
                }
            }
        }
        toml::Value::Array(a) => a.iter_mut().for_each(|x| scale_frequencies(x, w)),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use casimir_core::material_models::{DrudeParams, MaterialModel, Response};

    const GOLD: &str = r#"
[run]
kind = "force"

[units]
omega_scale = 1.37e16
frequencies = "omega_scale"
length = "lambda"

[geometry]
gap = 1.0

[metal.material]
kind = "isotropic"
eps = { model = "drude", plasma_freq = 0.96, dissipation = 0.004 }

[metamaterial.material]
kind = "perfect_conductor"
"#;

    #[test]
    fn scaled_frequencies_become_rad_per_second() {
        let p = RunConfig::parse(GOLD).unwrap();
        assert!(p.unknown_keys.is_empty(), "{:?}", p.unknown_keys);
        let metal = p.config.metal.as_ref().unwrap();
        let want = MaterialModel::isotropic(
            Response::Drude(DrudeParams { plasma_freq: 0.96 * 1.37e16, dissipation: 0.004 * 1.37e16 }),
            Response::unity(),
        );
        assert_eq!(metal.material, want);
        assert_eq!(p.config.units.frequencies, FrequencyUnit::RadPerSecond);
        assert_eq!(p.config.units.length, LengthUnit::Lambda);
    }

    #[test]
    fn dump_parses_back_to_the_same_config() {
        let c = RunConfig::parse(GOLD).unwrap().config;
        let again = RunConfig::parse(&c.to_toml().unwrap()).unwrap();
        assert_eq!(again.config, c);
        assert!(again.unknown_keys.is_empty());
    }

    #[test]
    fn unknown_keys_are_collected() {
        let p = RunConfig::parse("colour = 3\n[geometry]\ngap = 1e-6\nwidth = 2\n").unwrap();
        assert_eq!(p.unknown_keys, vec!["colour".to_string(), "geometry.width".to_string()]);
    }

    #[test]
    fn scale_without_value_is_rejected() {
        assert!(RunConfig::parse("[units]\nfrequencies = \"omega_scale\"\n").is_err());
    }

    #[test]
    fn sweep_grids() {
        let lin = Sweep { variable: Variable::Gap, min: 1.0, max: 2.0, points: 3, spacing: Spacing::Linear };
        assert_eq!(lin.values(), vec![1.0, 1.5, 2.0]);
        let log = Sweep { spacing: Spacing::Log, min: 1.0, max: 100.0, ..lin };
        let v = log.values();
        assert!((v[1] - 10.0).abs() < 1e-12);
        assert!((v[2] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn variable_names() {
        assert_eq!(Variable::FillingFactorX.to_string(), "filling_factor_x");
        let u = Units { length: LengthUnit::Lambda, ..Units::default() };
        assert_eq!(Variable::Gap.column(&u), "d_over_lambda");
        assert_eq!(Variable::Z.column(&Units::default()), "z_m");
    }
}
