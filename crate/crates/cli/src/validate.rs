//! Configuration checks that do not run any integral.

use std::fmt;

use casimir_core::material_models::{DrudeParams, Inclusion, Response};
use casimir_core::reflection::{min_halfspace_thickness, LayerSpec, ThicknessRegime};

use crate::config::{LengthUnit, Parsed, RunConfig, RunKind, Spacing, Variable};

/// Largest size parameter for which the dipole effective-medium model holds.
pub const MAX_SIZE_PARAMETER: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn error(message: impl Into<String>) -> Self {
        Self { severity: Severity::Error, message: message.into() }
    }

    fn warning(message: impl Into<String>) -> Self {
        Self { severity: Severity::Warning, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// Diagnostics for a configuration text, including parse failures.
pub fn validate_text(text: &str) -> Vec<Diagnostic> {
    match RunConfig::parse(text) {
        Ok(p) => validate_parsed(&p),
        Err(e) => vec![Diagnostic::error(e.to_string())],
    }
}

pub fn validate_parsed(p: &Parsed) -> Vec<Diagnostic> {
    let mut out: Vec<Diagnostic> = p.unknown_keys.iter().map(|k| Diagnostic::error(format!("unknown key `{k}`"))).collect();
    out.extend(validate(&p.config));
    out
}

pub fn validate(c: &RunConfig) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let Some(run) = &c.run else {
        let mut missing = vec!["[run]"];
        for (name, present) in [("[metal]", c.metal.is_some()), ("[metamaterial]", c.metamaterial.is_some()), ("[geometry]", c.geometry.is_some())] {
            if !present {
                missing.push(name);
            }
        }
        out.push(Diagnostic::error(format!(
            "missing required sections: {} (a run needs [run] with `kind`, the bodies and the geometry)",
            missing.join(", ")
        )));
        return out;
    };
    let kind = run.kind;
    let swept = |v: Variable| {
        c.sweep.as_ref().is_some_and(|s| s.variable == v) || c.series.as_ref().is_some_and(|s| s.variables.contains(&v))
    };

    let mut missing = Vec::new();
    if kind.uses_gap() && c.metal.is_none() {
        missing.push("[metal]");
    }
    if c.metamaterial.is_none() {
        missing.push("[metamaterial]");
    }
    if kind.uses_atom() && c.atom.is_none() {
        missing.push("[atom]");
    }
    let geometry = c.geometry.clone().unwrap_or_default();
    if kind.uses_gap() && geometry.gap.is_none() && !swept(Variable::Gap) {
        missing.push("[geometry] gap");
    }
    if kind.uses_atom() && geometry.z.is_none() && !swept(Variable::Z) {
        missing.push("[geometry] z");
    }
    if kind == RunKind::Response && !swept(Variable::Xi) {
        missing.push("[sweep] over xi");
    }
    if !missing.is_empty() {
        out.push(Diagnostic::error(format!("missing required sections: {}", missing.join(", "))));
    }
    if kind.uses_toggle() && run.toggle.is_none() {
        out.push(Diagnostic::error("[run] toggle is required for contrast runs"));
    }
    if !kind.uses_toggle() && run.toggle.is_some() {
        out.push(Diagnostic::warning("[run] toggle is ignored by this run kind"));
    }

    if let Some(w) = c.units.omega_scale {
        if !(w > 0.0 && w.is_finite()) {
            out.push(Diagnostic::error(format!("units.omega_scale = {w} rad/s must be positive")));
        }
    }
    if c.units.length == LengthUnit::Lambda && c.units.omega_scale.is_none() {
        out.push(Diagnostic::error("units.length = \"lambda\" needs units.omega_scale"));
    }

    for (name, v) in [("gap", geometry.gap), ("z", geometry.z)] {
        if let Some(v) = v {
            if !(v > 0.0 && v.is_finite()) {
                out.push(Diagnostic::error(format!("geometry.{name} = {v} must be a positive length")));
            }
        }
    }
    if !(geometry.temperature >= 0.0 && geometry.temperature.is_finite()) {
        out.push(Diagnostic::error(format!("geometry.temperature = {} K must be non-negative", geometry.temperature)));
    }
    if kind.uses_atom() && geometry.temperature != 0.0 {
        out.push(Diagnostic::warning("atom-surface quantities are computed at T = 0; geometry.temperature is ignored"));
    }
    if kind == RunKind::Energy && (geometry.temperature != 0.0 || swept(Variable::Temperature)) {
        out.push(Diagnostic::error("energy runs are available at T = 0 only"));
    }
    if kind == RunKind::ZeroMode && geometry.temperature <= 0.0 && !swept(Variable::Temperature) {
        out.push(Diagnostic::error("zero_mode runs need geometry.temperature > 0"));
    }

    for (name, layer) in [("metal", &c.metal), ("metamaterial", &c.metamaterial)] {
        if let Some(layer) = layer {
            if let Err(e) = layer.validate() {
                out.push(Diagnostic::error(format!("[{name}]: {e}")));
            }
            out.extend(layer_warnings(name, layer));
        }
    }
    if let Some(a) = &c.atom {
        if let Err(e) = a.params() {
            out.push(Diagnostic::error(e.to_string()));
        }
    }
    if let Err(e) = c.quadrature.validate() {
        out.push(Diagnostic::error(format!("[quadrature]: {e}")));
    }

    if let Some(s) = &c.sweep {
        if !s.variable.applies_to(kind) {
            out.push(Diagnostic::error(format!("sweep variable `{}` does not apply to this run kind", s.variable)));
        }
        if !(s.min < s.max) {
            out.push(Diagnostic::error(format!("sweep range needs min < max, got [{}, {}]", s.min, s.max)));
        }
        if s.points < 2 {
            out.push(Diagnostic::error("sweep needs at least 2 points"));
        }
        if s.spacing == Spacing::Log && !(s.min > 0.0) {
            out.push(Diagnostic::error("log spacing needs min > 0"));
        }
        out.extend(range_errors(s.variable, &[s.min, s.max]));
    }
    if let Some(s) = &c.series {
        if s.variables.is_empty() || s.values.is_empty() {
            out.push(Diagnostic::error("series needs at least one variable and one row of values"));
        }
        for v in &s.variables {
            if !v.applies_to(kind) {
                out.push(Diagnostic::error(format!("series variable `{v}` does not apply to this run kind")));
            }
            if c.sweep.as_ref().is_some_and(|w| w.variable == *v) {
                out.push(Diagnostic::error(format!("`{v}` is both swept and in the series")));
            }
        }
        for row in &s.values {
            if row.len() != s.variables.len() {
                out.push(Diagnostic::error(format!("series row {row:?} does not have {} values", s.variables.len())));
            }
        }
        for (j, v) in s.variables.iter().enumerate() {
            let col: Vec<f64> = s.values.iter().filter_map(|r| r.get(j).copied()).collect();
            out.extend(range_errors(*v, &col));
        }
    }
    out
}

fn range_errors(v: Variable, values: &[f64]) -> Vec<Diagnostic> {
    let ok = |x: f64| match v {
        Variable::Gap | Variable::Z => x > 0.0,
        Variable::FillingFactor | Variable::FillingFactorX | Variable::FillingFactorY | Variable::FillingFactorZ => {
            (0.0..1.0).contains(&x)
        }
        _ => x >= 0.0,
    };
    values
        .iter()
        .filter(|x| !(x.is_finite() && ok(**x)))
        .map(|x| Diagnostic::error(format!("value {x} is out of range for `{v}`")))
        .collect()
}

/// Regime checks on one body.
fn layer_warnings(name: &str, layer: &LayerSpec) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let responses: Vec<&Response> = layer.material.components().map(|c| c.to_vec()).unwrap_or_default();
    if let Some(t) = layer.thickness {
        let mut metals = Vec::new();
        for r in &responses {
            collect_drude(r, &mut metals);
        }
        for m in metals {
            let bound = min_halfspace_thickness(&m, ThicknessRegime::HighFrequency);
            if t < bound {
                out.push(Diagnostic::warning(format!(
                    "[{name}] slab thickness {:.3} nm is below the penetration depth c/Omega = {:.3} nm of its Drude metal; \
                     metal films act as half-spaces only above about 10-20 nm, so the slab result differs from a half-space",
                    t * 1e9,
                    bound * 1e9
                )));
            }
        }
    }
    for r in responses {
        size_parameter_warnings(name, r, &mut out);
    }
    out.dedup();
    out
}

fn collect_drude(r: &Response, out: &mut Vec<DrudeParams>) {
    match r {
        Response::Drude(p) => out.push(*p),
        Response::Composite(p) if p.filling_factor > 0.0 => out.push(p.drude),
        Response::Sum { terms } => terms.iter().for_each(|t| collect_drude(t, out)),
        Response::MaxwellGarnett { inclusion, host, .. } => {
            collect_drude(inclusion, out);
            collect_drude(host, out);
        }
        _ => {}
    }
}

fn size_parameter_warnings(name: &str, r: &Response, out: &mut Vec<Diagnostic>) {
    match r {
        Response::EffectiveMedium(t) => {
            let c = &t.spec().composite;
            let w = match c.inclusion {
                Inclusion::Polaritonic(p) => p.omega_longitudinal,
                Inclusion::Drude(p) => p.plasma_freq,
            };
            let x = c.size_parameter(w);
            if x > MAX_SIZE_PARAMETER {
                out.push(Diagnostic::warning(format!(
                    "[{name}] size parameter x = omega R / c = {x:.3} at the inclusion resonance exceeds {MAX_SIZE_PARAMETER}; \
                     the dipole effective-medium response is unreliable"
                )));
            }
        }
        Response::Sum { terms } => terms.iter().for_each(|t| size_parameter_warnings(name, t, out)),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::Preset;

    #[test]
    fn empty_config_lists_required_sections() {
        let d = validate_text("");
        assert_eq!(d.len(), 1);
        assert!(d[0].is_error());
        for s in ["[run]", "[metal]", "[metamaterial]", "[geometry]"] {
            assert!(d[0].message.contains(s), "{}", d[0].message);
        }
    }

    #[test]
    fn presets_have_no_diagnostics() {
        for p in Preset::ALL {
            let d = validate_parsed(&p.parse().unwrap());
            assert!(d.is_empty(), "{p}: {d:?}");
        }
    }

    #[test]
    fn thin_gold_slab_warns() {
        let text = Preset::Fig4.text().replace("[metal.material]", "[metal]\nthickness = 5e-9\n\n[metal.material]");
        let d = validate_text(&text);
        assert_eq!(d.len(), 1, "{d:?}");
        assert_eq!(d[0].severity, Severity::Warning);
        assert!(d[0].message.contains("10-20 nm"), "{}", d[0].message);
        let thick = Preset::Fig4.text().replace("[metal.material]", "[metal]\nthickness = 1e-7\n\n[metal.material]");
        assert!(validate_text(&thick).is_empty());
    }

    #[test]
    fn large_spheres_warn() {
        let text = Preset::Fig10.text().replace("sphere_radius = 1.375e-8", "sphere_radius = 3e-8");
        let d = validate_text(&text);
        assert!(!d.is_empty() && d.iter().all(|x| x.severity == Severity::Warning && x.message.contains("0.3")), "{d:?}");
    }

    #[test]
    fn unit_violations_and_unknown_keys() {
        let text = Preset::Fig4.text().replace("temperature = 0.0", "temperature = -1.0\ncolour = 1");
        let d = validate_text(&text);
        assert!(d.iter().any(|x| x.message.contains("geometry.colour")), "{d:?}");
        assert!(d.iter().any(|x| x.message.contains("non-negative")), "{d:?}");
        let bad_sweep = Preset::Fig4.text().replace("max = 20.0", "max = 0.01");
        assert!(validate_text(&bad_sweep).iter().any(|x| x.message.contains("min < max")));
    }

    #[test]
    fn misplaced_variables() {
        let text = Preset::Fig12.text().replace("variable = \"z\"", "variable = \"gap\"");
        let d = validate_text(&text);
        assert!(d.iter().any(|x| x.message.contains("does not apply")), "{d:?}");
        let no_toggle = Preset::Fig11.text().replace("toggle = \"electric_resonance\"\n", "");
        assert!(validate_text(&no_toggle).iter().any(|x| x.message.contains("toggle")));
    }
}
