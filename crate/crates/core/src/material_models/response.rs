//! Scalar response functions on the imaginary axis, composed from the
//! closed-form models and the Kramers-Kronig-backed effective medium.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closed_form::{
    composite_axis_eps, drude_eps, lorentz_term, maxwell_garnett_eps, polaritonic_eps, CompositeAxisParams,
    DrudeParams, Frequency, ImaginaryFrequency, LorentzResonanceParams, PolaritonicParams,
};
use super::kramers_kronig::{kk_to_imaginary_axis, KkOptions};
use super::mie::{emg_effective_response, Inclusion, SphereCompositeParams};
use crate::error::ModelError;

/// Behaviour of a response as `xi -> 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticLimit {
    Finite(f64),
    /// Diverges while `g xi^2 -> 0` (dissipative conductor).
    Divergent,
    /// Diverges with `g xi^2 -> Omega^2` (dissipationless conductor).
    Plasma { plasma_freq_sq: f64 },
}

impl StaticLimit {
    fn add(self, other: StaticLimit) -> StaticLimit {
        use StaticLimit::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (Plasma { plasma_freq_sq: a }, Plasma { plasma_freq_sq: b }) => Plasma { plasma_freq_sq: a + b },
            (p @ Plasma { .. }, _) | (_, p @ Plasma { .. }) => p,
            _ => Divergent,
        }
    }

    fn scale(self, w: f64) -> StaticLimit {
        if w == 0.0 {
            return StaticLimit::Finite(0.0);
        }
        match self {
            StaticLimit::Finite(v) => StaticLimit::Finite(w * v),
            StaticLimit::Plasma { plasma_freq_sq } => StaticLimit::Plasma { plasma_freq_sq: w * plasma_freq_sq },
            StaticLimit::Divergent => StaticLimit::Divergent,
        }
    }
}

/// A real response function `g(i xi)` (a permittivity or permeability).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Response {
    Constant { value: f64 },
    Drude(DrudeParams),
    /// `1 + sum of Lorentz terms`.
    Lorentz { oscillators: Vec<LorentzResonanceParams> },
    Composite(CompositeAxisParams),
    /// `1 + sum (g_i - 1)`.
    Sum { terms: Vec<Response> },
    /// Spheres of `inclusion` at volume fraction `filling_factor` in `host`.
    MaxwellGarnett { filling_factor: f64, inclusion: Box<Response>, host: Box<Response> },
    Polaritonic(PolaritonicParams),
    EffectiveMedium(EmgTable),
}

impl Default for Response {
    fn default() -> Self {
        Response::Constant { value: 1.0 }
    }
}

impl Response {
    pub fn unity() -> Self {
        Self::default()
    }

    pub fn eval(&self, xi: ImaginaryFrequency) -> Result<f64, ModelError> {
        match self {
            Response::Constant { value } => Ok(*value),
            Response::Drude(p) => drude_eps(p, xi),
            Response::Lorentz { oscillators } => {
                let mut v = 1.0;
                for o in oscillators {
                    v += lorentz_term(o, xi)?;
                }
                Ok(v)
            }
            Response::Composite(p) => composite_axis_eps(p, xi),
            Response::Sum { terms } => {
                let mut v = 1.0;
                for t in terms {
                    v += t.eval(xi)? - 1.0;
                }
                Ok(v)
            }
            Response::MaxwellGarnett { filling_factor, inclusion, host } => {
                let e_in = if xi.is_zero() {
                    match inclusion.static_limit()? {
                        StaticLimit::Finite(v) => v,
                        _ => f64::INFINITY,
                    }
                } else {
                    inclusion.eval(xi)?
                };
                maxwell_garnett_eps(*filling_factor, e_in, host.eval(xi)?)
            }
            Response::Polaritonic(p) => Ok(polaritonic_eps(p, Frequency::Imaginary(xi)).re),
            Response::EffectiveMedium(t) => Ok(t.eval(xi.get())),
        }
    }

    /// Classification of the `xi -> 0` behaviour, used for the zero Matsubara mode.
    pub fn static_limit(&self) -> Result<StaticLimit, ModelError> {
        let zero = ImaginaryFrequency::new(0.0)?;
        Ok(match self {
            Response::Constant { value } => StaticLimit::Finite(*value),
            Response::Drude(p) => {
                if p.plasma_freq == 0.0 {
                    StaticLimit::Finite(1.0)
                } else if p.dissipation > 0.0 {
                    StaticLimit::Divergent
                } else {
                    StaticLimit::Plasma { plasma_freq_sq: p.plasma_freq * p.plasma_freq }
                }
            }
            Response::Lorentz { oscillators } => {
                let mut acc = StaticLimit::Finite(1.0);
                for o in oscillators {
                    acc = acc.add(lorentz_static(o)?);
                }
                acc
            }
            Response::Composite(p) => {
                let f = p.filling_factor;
                let metal = Response::Drude(p.drude).static_limit()?;
                let res = lorentz_static(&p.resonance)?;
                StaticLimit::Finite(1.0).add(res.scale(1.0 - f)).add(metal.add(StaticLimit::Finite(-1.0)).scale(f))
            }
            Response::Sum { terms } => {
                let mut acc = StaticLimit::Finite(1.0);
                for t in terms {
                    acc = acc.add(t.static_limit()?.add(StaticLimit::Finite(-1.0)));
                }
                acc
            }
            Response::MaxwellGarnett { host, .. } => match host.static_limit()? {
                StaticLimit::Finite(_) => StaticLimit::Finite(self.eval(zero)?),
                _ => {
                    return Err(ModelError::Unsupported("Maxwell Garnett mixture with a conducting host".into()));
                }
            },
            Response::Polaritonic(p) => StaticLimit::Finite(p.static_eps()),
            Response::EffectiveMedium(t) => StaticLimit::Finite(t.static_value),
        })
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            Response::Constant { value } => {
                if value.is_finite() && *value > 0.0 {
                    Ok(())
                } else {
                    Err(ModelError::InvalidParameter { name: "value", value: *value })
                }
            }
            Response::Drude(p) => p.validate(),
            Response::Lorentz { oscillators } => oscillators.iter().try_for_each(|o| o.validate()),
            Response::Composite(p) => p.validate(),
            Response::Sum { terms } => terms.iter().try_for_each(|t| t.validate()),
            Response::MaxwellGarnett { filling_factor, inclusion, host } => {
                if !(0.0..1.0).contains(filling_factor) {
                    return Err(ModelError::InvalidParameter { name: "filling_factor", value: *filling_factor });
                }
                inclusion.validate()?;
                host.validate()
            }
            Response::Polaritonic(p) => p.validate(),
            Response::EffectiveMedium(t) => t.spec.composite.validate(),
        }
    }

    /// Copy with every resonance strength at this level set to zero. Lorentz
    /// oscillators inside a Maxwell Garnett host are left untouched, since
    /// they describe the host rather than an added resonance.
    pub fn without_resonances(&self) -> Response {
        match self {
            Response::Lorentz { oscillators } => Response::Lorentz {
                oscillators: oscillators.iter().map(|o| o.without_strength()).collect(),
            },
            Response::Composite(p) => Response::Composite(CompositeAxisParams { resonance: p.resonance.without_strength(), ..*p }),
            Response::Sum { terms } => Response::Sum { terms: terms.iter().map(|t| t.without_resonances()).collect() },
            other => other.clone(),
        }
    }

    /// Copy with every dissipation rate scaled by `g`.
    pub fn scaled_dissipation(&self, g: f64) -> Response {
        match self {
            Response::Drude(p) => Response::Drude(DrudeParams { dissipation: g * p.dissipation, ..*p }),
            Response::Lorentz { oscillators } => Response::Lorentz {
                oscillators: oscillators.iter().map(|o| LorentzResonanceParams { dissipation: g * o.dissipation, ..*o }).collect(),
            },
            Response::Composite(p) => Response::Composite(CompositeAxisParams {
                resonance: LorentzResonanceParams { dissipation: g * p.resonance.dissipation, ..p.resonance },
                drude: DrudeParams { dissipation: g * p.drude.dissipation, ..p.drude },
                ..*p
            }),
            Response::Sum { terms } => Response::Sum { terms: terms.iter().map(|t| t.scaled_dissipation(g)).collect() },
            Response::MaxwellGarnett { filling_factor, inclusion, host } => Response::MaxwellGarnett {
                filling_factor: *filling_factor,
                inclusion: Box::new(inclusion.scaled_dissipation(g)),
                host: Box::new(host.scaled_dissipation(g)),
            },
            Response::Polaritonic(p) => Response::Polaritonic(PolaritonicParams { dissipation: g * p.dissipation, ..*p }),
            other => other.clone(),
        }
    }

    /// Copy with each added resonance damped at `gamma = ratio * Omega`.
    /// Host oscillators inside a Maxwell Garnett mixture are left alone,
    /// as in [`Response::without_resonances`].
    pub fn with_resonance_damping(&self, ratio: f64) -> Response {
        let damp = |o: &LorentzResonanceParams| LorentzResonanceParams { dissipation: ratio * o.strength, ..*o };
        match self {
            Response::Lorentz { oscillators } => Response::Lorentz { oscillators: oscillators.iter().map(damp).collect() },
            Response::Composite(p) => Response::Composite(CompositeAxisParams { resonance: damp(&p.resonance), ..*p }),
            Response::Sum { terms } => Response::Sum { terms: terms.iter().map(|t| t.with_resonance_damping(ratio)).collect() },
            other => other.clone(),
        }
    }

    /// Copy with the metallic filling factor replaced, where one exists.
    pub fn with_filling_factor(&self, f: f64) -> Response {
        match self {
            Response::Composite(p) => Response::Composite(CompositeAxisParams { filling_factor: f, ..*p }),
            Response::Sum { terms } => Response::Sum { terms: terms.iter().map(|t| t.with_filling_factor(f)).collect() },
            Response::MaxwellGarnett { inclusion, host, .. } => {
                Response::MaxwellGarnett { filling_factor: f, inclusion: inclusion.clone(), host: host.clone() }
            }
            other => other.clone(),
        }
    }
}

fn lorentz_static(o: &LorentzResonanceParams) -> Result<StaticLimit, ModelError> {
    if o.strength == 0.0 {
        Ok(StaticLimit::Finite(0.0))
    } else if o.resonance > 0.0 {
        Ok(StaticLimit::Finite((o.strength / o.resonance).powi(2)))
    } else if o.dissipation > 0.0 {
        Ok(StaticLimit::Divergent)
    } else {
        Ok(StaticLimit::Plasma { plasma_freq_sq: o.strength * o.strength })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmgComponent {
    Eps,
    Mu,
}

/// Definition of a tabulated effective-medium response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmgSpec {
    pub composite: SphereCompositeParams,
    pub component: EmgComponent,
    /// Table range as multiples of the inclusion's characteristic frequency.
    #[serde(default = "default_table_min")]
    pub table_min: f64,
    #[serde(default = "default_table_max")]
    pub table_max: f64,
    #[serde(default = "default_per_decade")]
    pub points_per_decade: usize,
}

fn default_table_min() -> f64 {
    1e-4
}
fn default_table_max() -> f64 {
    1e3
}
fn default_per_decade() -> usize {
    25
}

impl EmgSpec {
    pub fn new(composite: SphereCompositeParams, component: EmgComponent) -> Self {
        Self {
            composite,
            component,
            table_min: default_table_min(),
            table_max: default_table_max(),
            points_per_decade: default_per_decade(),
        }
    }

    fn characteristic_freq(&self) -> f64 {
        match self.composite.inclusion {
            Inclusion::Polaritonic(p) => p.omega_longitudinal,
            Inclusion::Drude(p) => p.plasma_freq,
        }
    }

    /// `Im` of the selected component on the real axis.
    pub fn imaginary_part(&self, omega: f64) -> Result<f64, ModelError> {
        if omega <= 0.0 {
            return Ok(0.0);
        }
        let r = emg_effective_response(&self.composite, omega)?;
        Ok(match self.component {
            EmgComponent::Eps => r.eps.im,
            EmgComponent::Mu => r.mu.im,
        })
    }
}

/// Effective-medium response continued to the imaginary axis and tabulated
/// at construction. Values between nodes use cubic interpolation in `ln xi`;
/// below the table the static value is joined linearly, above it the
/// `1/xi^2` tail is extrapolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EmgSpec", into = "EmgSpec")]
pub struct EmgTable {
    spec: EmgSpec,
    ln_xi: Vec<f64>,
    values: Vec<f64>,
    static_value: f64,
    /// Largest KK tail truncation frequency over the table, rad/s.
    pub truncation_freq: f64,
    /// Largest KK error estimate over the table.
    pub max_error: f64,
}

impl From<EmgTable> for EmgSpec {
    fn from(t: EmgTable) -> Self {
        t.spec
    }
}

impl TryFrom<EmgSpec> for EmgTable {
    type Error = ModelError;
    fn try_from(spec: EmgSpec) -> Result<Self, Self::Error> {
        EmgTable::build(spec)
    }
}

impl EmgTable {
    pub fn build(spec: EmgSpec) -> Result<Self, ModelError> {
        spec.composite.validate()?;
        if !(spec.table_min > 0.0 && spec.table_max > spec.table_min && spec.points_per_decade >= 4) {
            return Err(ModelError::InvalidParameter { name: "table_min", value: spec.table_min });
        }
        let w = spec.characteristic_freq();
        let opts = KkOptions::new(4.0 * w);
        let decades = (spec.table_max / spec.table_min).log10();
        let n = (decades * spec.points_per_decade as f64).ceil() as usize + 1;
        let (lo, hi) = ((spec.table_min * w).ln(), (spec.table_max * w).ln());
        let ln_xi: Vec<f64> = (0..n).map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64).collect();
        let mut xis: Vec<f64> = vec![0.0];
        xis.extend(ln_xi.iter().map(|l| l.exp()));
        let results = xis
            .par_iter()
            .map(|&xi| kk_to_imaginary_axis(|y| spec.imaginary_part(y), xi, &opts))
            .collect::<Result<Vec<_>, _>>()?;
        let truncation_freq = results.iter().map(|r| r.truncation_freq).fold(0.0, f64::max);
        let max_error = results.iter().map(|r| r.abs_error).fold(0.0, f64::max);
        let static_value = results[0].value;
        let values = results[1..].iter().map(|r| r.value).collect();
        Ok(Self { spec, ln_xi, values, static_value, truncation_freq, max_error })
    }

    pub fn spec(&self) -> &EmgSpec {
        &self.spec
    }

    pub fn static_value(&self) -> f64 {
        self.static_value
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let n = self.ln_xi.len();
        let xi0 = self.ln_xi[0].exp();
        if xi <= xi0 {
            return self.static_value + (self.values[0] - self.static_value) * xi / xi0;
        }
        let l = xi.ln();
        if l >= self.ln_xi[n - 1] {
            let ratio = (self.ln_xi[n - 1] - l).exp();
            return 1.0 + (self.values[n - 1] - 1.0) * ratio * ratio;
        }
        let h = self.ln_xi[1] - self.ln_xi[0];
        let j = (((l - self.ln_xi[0]) / h) as usize).min(n - 2);
        let start = j.saturating_sub(1).min(n - 4);
        // four-point Lagrange interpolation
        let xs = &self.ln_xi[start..start + 4];
        let ys = &self.values[start..start + 4];
        let mut v = 0.0;
        for a in 0..4 {
            let mut w = 1.0;
            for b in 0..4 {
                if a != b {
                    w *= (l - xs[b]) / (xs[a] - xs[b]);
                }
            }
            v += w * ys[a];
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::OMEGA_REF;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn ix(x: f64) -> ImaginaryFrequency {
        ImaginaryFrequency::new(x).unwrap()
    }

    fn bk7() -> Response {
        let o = |s: f64, w: f64| LorentzResonanceParams::new(s * OMEGA_REF, w * OMEGA_REF, 0.0).unwrap();
        Response::Lorentz { oscillators: vec![o(1.84, 1.81), o(0.47, 0.28), o(0.014, 0.014)] }
    }

    #[test]
    fn bk7_static_value() {
        let expect = 1.0 + (1.84f64 / 1.81).powi(2) + (0.47f64 / 0.28).powi(2) + 1.0;
        assert_relative_eq!(bk7().eval(ix(0.0)).unwrap(), expect, max_relative = 1e-14);
        match bk7().static_limit().unwrap() {
            StaticLimit::Finite(v) => assert_relative_eq!(v, expect, max_relative = 1e-14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn maxwell_garnett_with_drude_spheres_is_finite_at_zero() {
        let mg = Response::MaxwellGarnett {
            filling_factor: 0.1,
            inclusion: Box::new(Response::Drude(DrudeParams::gold())),
            host: Box::new(bk7()),
        };
        let e0 = mg.eval(ix(0.0)).unwrap();
        let ed = bk7().eval(ix(0.0)).unwrap();
        assert_relative_eq!(e0, ed * 1.2 / 0.9, max_relative = 1e-14);
        let e_small = mg.eval(ix(1e3)).unwrap();
        assert_relative_eq!(e_small, e0, max_relative = 1e-8);
        assert!(mg.eval(ix(0.1 * OMEGA_REF)).unwrap().is_finite());
    }

    #[test]
    fn static_classification() {
        assert_eq!(Response::Drude(DrudeParams::gold()).static_limit().unwrap(), StaticLimit::Divergent);
        let plasma = DrudeParams::new(2.0, 0.0).unwrap();
        assert_eq!(Response::Drude(plasma).static_limit().unwrap(), StaticLimit::Plasma { plasma_freq_sq: 4.0 });
        let composite = CompositeAxisParams {
            filling_factor: 0.25,
            resonance: LorentzResonanceParams::new(1.0, 1.0, 0.0).unwrap(),
            drude: plasma,
        };
        assert_eq!(Response::Composite(composite).static_limit().unwrap(), StaticLimit::Plasma { plasma_freq_sq: 1.0 });
        let no_metal = CompositeAxisParams { filling_factor: 0.0, ..composite };
        assert_eq!(Response::Composite(no_metal).static_limit().unwrap(), StaticLimit::Finite(2.0));
    }

    #[test]
    fn toggles() {
        let mg = Response::MaxwellGarnett {
            filling_factor: 0.1,
            inclusion: Box::new(Response::Drude(DrudeParams::gold())),
            host: Box::new(bk7()),
        };
        let electric = Response::Lorentz { oscillators: vec![LorentzResonanceParams::new(1e15, 1e15, 0.0).unwrap()] };
        let eps = Response::Sum { terms: vec![mg.clone(), electric] };
        let off = eps.without_resonances();
        let xi = ix(1e15);
        assert_relative_eq!(off.eval(xi).unwrap(), mg.eval(xi).unwrap(), max_relative = 1e-15);
        assert_relative_eq!(eps.eval(xi).unwrap() - off.eval(xi).unwrap(), 0.5, max_relative = 1e-14);
    }

    #[test]
    fn resonance_damping_spares_host_and_drude() {
        let lor = LorentzResonanceParams::new(2.0, 1.0, 0.1).unwrap();
        let drude = DrudeParams::new(5.0, 0.2).unwrap();
        let mg = Response::MaxwellGarnett {
            filling_factor: 0.1,
            inclusion: Box::new(Response::Drude(drude)),
            host: Box::new(Response::Lorentz { oscillators: vec![lor] }),
        };
        let eps = Response::Sum { terms: vec![mg.clone(), Response::Lorentz { oscillators: vec![lor] }] };
        let want = Response::Sum {
            terms: vec![mg, Response::Lorentz { oscillators: vec![LorentzResonanceParams { dissipation: 1.0, ..lor }] }],
        };
        assert_eq!(eps.with_resonance_damping(0.5), want);
        let c = Response::Composite(CompositeAxisParams { filling_factor: 0.1, resonance: lor, drude });
        match c.with_resonance_damping(2.5) {
            Response::Composite(p) => {
                assert_eq!(p.resonance.dissipation, 5.0);
                assert_eq!(p.drude, drude);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn effective_medium_table_matches_direct_kk() {
        let composite = SphereCompositeParams {
            filling_factor: 0.4,
            sphere_radius: 0.1 * crate::constants::lambda_ref(),
            host_eps: 1.0,
            inclusion: Inclusion::Polaritonic(PolaritonicParams {
                eps_inf: 2.0,
                omega_longitudinal: 0.4 * OMEGA_REF,
                omega_transverse: 0.15 * OMEGA_REF,
                dissipation: 0.001 * OMEGA_REF,
            }),
        };
        let spec = EmgSpec { points_per_decade: 10, table_min: 1e-2, table_max: 1e2, ..EmgSpec::new(composite, EmgComponent::Eps) };
        let table = EmgTable::build(spec.clone()).unwrap();
        let opts = KkOptions::new(4.0 * 0.4 * OMEGA_REF);
        for xi in [0.013, 0.07, 0.33, 2.2] {
            let x = xi * 0.4 * OMEGA_REF;
            let direct = kk_to_imaginary_axis(|y| spec.imaginary_part(y), x, &opts).unwrap().value;
            assert_relative_eq!(table.eval(x), direct, max_relative = 2e-4);
        }
        assert!(table.static_value() > 2.0);
        assert!(table.eval(1e3 * OMEGA_REF) > 1.0);
    }

    proptest! {
        #[test]
        fn passive_models_are_at_least_one(
            xi in 1e10f64..1e18,
            f in 0f64..1.0,
            om in 1e13f64..1e17,
            w in 1e12f64..1e17,
            g in 0f64..1e15,
        ) {
            let lor = LorentzResonanceParams::new(om, w, g).unwrap();
            let drude = DrudeParams::new(om, g).unwrap();
            let models = [
                Response::Drude(drude),
                Response::Lorentz { oscillators: vec![lor, lor] },
                Response::Composite(CompositeAxisParams { filling_factor: f, resonance: lor, drude }),
                Response::MaxwellGarnett {
                    filling_factor: f,
                    inclusion: Box::new(Response::Drude(drude)),
                    host: Box::new(Response::Lorentz { oscillators: vec![lor] }),
                },
            ];
            for m in &models {
                let v = m.eval(ix(xi)).unwrap();
                prop_assert!(v.is_finite() && v >= 1.0, "{m:?} at {xi} gave {v}");
            }
        }
    }
}
