//! Change of an observable when one resonance of the bodies is switched off.

use serde::{Deserialize, Serialize};

use super::{casimir_force, trap_frequency_shift, ForceResult, QuadratureSpec, Quantity, Scenario};
use crate::error::LifshitzError;
use crate::material_models::AtomParams;
use crate::reflection::LayerSpec;

/// Which resonance strengths are set to zero in the comparison run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContrastToggle {
    /// Added Lorentz terms of the permittivity.
    ElectricResonance,
    /// Lorentz terms of the permeability.
    MagneticResonance,
}

impl ContrastToggle {
    pub fn apply(self, layer: &LayerSpec) -> LayerSpec {
        let material = match self {
            ContrastToggle::ElectricResonance => layer.material.map_eps(|r| r.without_resonances()),
            ContrastToggle::MagneticResonance => layer.material.map_mu(|r| r.without_resonances()),
        };
        LayerSpec { material, ..layer.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContrastResult {
    /// Toggled minus original.
    pub delta: f64,
    pub abs_error: f64,
    pub original: ForceResult,
    pub toggled: ForceResult,
}

/// `P(toggled) - P(original)` for the scenario at its temperature.
pub fn magnetic_contrast(s: &Scenario, toggle: ContrastToggle) -> Result<ContrastResult, LifshitzError> {
    let off = Scenario { layer1: toggle.apply(&s.layer1), layer2: toggle.apply(&s.layer2), ..s.clone() };
    let original = casimir_force(s)?;
    let toggled = if off == *s { original } else { casimir_force(&off)? };
    Ok(ContrastResult {
        delta: toggled.pressure - original.pressure,
        abs_error: toggled.abs_error + original.abs_error,
        original,
        toggled,
    })
}

/// `gamma(toggled) - gamma(original)` for an atom at distance `z`.
pub fn trap_shift_contrast(
    atom: &AtomParams,
    surface: &LayerSpec,
    z: f64,
    toggle: ContrastToggle,
    q: &QuadratureSpec,
) -> Result<Quantity, LifshitzError> {
    let original = trap_frequency_shift(atom, surface, z, q)?;
    let off = toggle.apply(surface);
    let toggled = if off == *surface { original } else { trap_frequency_shift(atom, &off, z, q)? };
    Ok(Quantity {
        value: toggled.value - original.value,
        abs_error: toggled.abs_error + original.abs_error,
        xi_nodes: original.xi_nodes + toggled.xi_nodes,
        k_nodes: original.k_nodes + toggled.k_nodes,
    })
}
