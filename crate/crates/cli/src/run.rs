//! Evaluation of a configuration over its sweep and series.

use casimir_core::constants::OMEGA_REF;
use casimir_core::lifshitz::{
    casimir_energy_zero_t, casimir_force, casimir_polder_potential, ideal_normalization, magnetic_contrast,
    trap_frequency_shift, trap_shift_contrast, zero_mode_pressure, Scenario,
};
use casimir_core::material_models::{ImaginaryFrequency, MaterialModel, Response};
use casimir_core::reflection::{LayerSpec, TransverseWave};

use crate::config::{RunConfig, RunKind, Variable};
use crate::error::CliError;
use crate::validate::validate;

/// A table of results with its header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// CSV text: shortest round-trip decimals, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub table: Table,
    pub xi_nodes: usize,
    pub k_nodes: usize,
    /// Largest error estimate in the units of the result column.
    pub max_error: f64,
}

impl RunOutput {
    pub fn summary(&self, path: &str) -> String {
        format!(
            "wrote {} rows to {path}; frequency nodes {}, wavenumber nodes {}, max error estimate {:e}",
            self.table.rows.len(),
            self.xi_nodes,
            self.k_nodes,
            self.max_error
        )
    }
}

/// Everything that a single point of a run depends on.
#[derive(Debug, Clone)]
struct State {
    metal: Option<LayerSpec>,
    surface: Option<LayerSpec>,
    gap: Option<f64>,
    temperature: f64,
    z: Option<f64>,
    xi: Option<f64>,
}

fn map_layer(layer: &mut Option<LayerSpec>, f: impl Fn(&MaterialModel) -> Result<MaterialModel, CliError>) -> Result<(), CliError> {
    if let Some(l) = layer {
        l.material = f(&l.material)?;
    }
    Ok(())
}

fn set_axis(m: &MaterialModel, v: Variable, f: f64) -> Result<MaterialModel, CliError> {
    let set = |r: &Response| r.with_filling_factor(f);
    let mut m = m.clone();
    match (&mut m, v) {
        (MaterialModel::Uniaxial { eps_xx, .. } | MaterialModel::Biaxial { eps_xx, .. }, Variable::FillingFactorX) => {
            *eps_xx = set(eps_xx)
        }
        (MaterialModel::Biaxial { eps_yy, .. }, Variable::FillingFactorY) => *eps_yy = set(eps_yy),
        (MaterialModel::Uniaxial { eps_zz, .. } | MaterialModel::Biaxial { eps_zz, .. }, Variable::FillingFactorZ) => {
            *eps_zz = set(eps_zz)
        }
        _ => return Err(CliError::Config(format!("`{v}` needs a metamaterial with that tensor component"))),
    }
    Ok(m)
}

impl State {
    fn assign(&mut self, v: Variable, x: f64, length: f64, omega: f64) -> Result<(), CliError> {
        match v {
            Variable::Gap => self.gap = Some(x * length),
            Variable::Z => self.z = Some(x * length),
            Variable::Temperature => self.temperature = x,
            Variable::Xi => self.xi = Some(x * omega),
            Variable::FillingFactor => map_layer(&mut self.surface, |m| Ok(m.map_all(|r| r.with_filling_factor(x))))?,
            Variable::FillingFactorX | Variable::FillingFactorY | Variable::FillingFactorZ => {
                map_layer(&mut self.surface, |m| set_axis(m, v, x))?
            }
            Variable::DissipationScale => map_layer(&mut self.surface, |m| Ok(m.map_all(|r| r.scaled_dissipation(x))))?,
            Variable::MetalDissipationScale => map_layer(&mut self.metal, |m| Ok(m.map_all(|r| r.scaled_dissipation(x))))?,
            Variable::ElectricDissipationRatio => {
                map_layer(&mut self.surface, |m| Ok(m.map_eps(|r| r.with_resonance_damping(x))))?
            }
            Variable::MagneticDissipationRatio => {
                map_layer(&mut self.surface, |m| Ok(m.map_mu(|r| r.with_resonance_damping(x))))?
            }
            Variable::DissipationRatio => {
                map_layer(&mut self.surface, |m| Ok(m.map_all(|r| r.with_resonance_damping(x))))?
            }
        }
        Ok(())
    }
}

fn required<T: Clone>(v: &Option<T>, what: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::Config(format!("{what} is not set")))
}

/// One evaluated point: result columns and node counts.
struct Point {
    values: Vec<f64>,
    error: f64,
    xi_nodes: usize,
    k_nodes: usize,
}

fn result_columns(kind: RunKind, c: &RunConfig) -> Vec<&'static str> {
    match kind {
        RunKind::Force => vec!["F_over_FC", "err"],
        RunKind::Energy => vec!["energy_j_per_m2", "err"],
        RunKind::ZeroMode => vec!["pressure_pa", "err"],
        RunKind::Contrast => vec!["delta_p_pa", "err"],
        RunKind::Potential => vec!["potential_j", "err"],
        RunKind::TrapShift => vec!["gamma", "err"],
        RunKind::TrapShiftContrast => vec!["delta_gamma", "err"],
        RunKind::Response => match c.metamaterial.as_ref().map(|l| &l.material) {
            Some(MaterialModel::Isotropic { .. }) => vec!["eps", "mu"],
            _ => vec!["eps_xx", "eps_yy", "eps_zz", "mu_xx", "mu_yy", "mu_zz"],
        },
    }
}

fn evaluate(kind: RunKind, c: &RunConfig, st: &State) -> Result<Point, CliError> {
    let q = &c.quadrature;
    let toggle = || required(&c.run.as_ref().and_then(|r| r.toggle), "run.toggle");
    let scenario = || -> Result<Scenario, CliError> {
        Ok(Scenario::new(required(&st.metal, "[metal]")?, required(&st.surface, "[metamaterial]")?, required(&st.gap, "gap")?)
            .at_temperature(st.temperature)
            .with_quadrature(q.clone()))
    };
    let atom = || required(&c.atom, "[atom]")?.params();
    let point = |values: Vec<f64>, error: f64, xi_nodes: usize, k_nodes: usize| Point { values, error, xi_nodes, k_nodes };
    Ok(match kind {
        RunKind::Force => {
            let s = scenario()?;
            let r = casimir_force(&s)?;
            let err = r.abs_error / ideal_normalization(s.gap);
            point(vec![r.normalized, err], err, r.xi_nodes, r.k_nodes)
        }
        RunKind::Energy => {
            let r = casimir_energy_zero_t(&scenario()?)?;
            point(vec![r.value, r.abs_error], r.abs_error, r.xi_nodes, r.k_nodes)
        }
        RunKind::ZeroMode => {
            let r = zero_mode_pressure(&scenario()?)?;
            point(vec![r.pressure, r.abs_error], r.abs_error, r.xi_nodes, r.k_nodes)
        }
        RunKind::Contrast => {
            let r = magnetic_contrast(&scenario()?, toggle()?)?;
            let (xi, k) = (r.original.xi_nodes + r.toggled.xi_nodes, r.original.k_nodes + r.toggled.k_nodes);
            point(vec![r.delta, r.abs_error], r.abs_error, xi, k)
        }
        RunKind::Potential | RunKind::TrapShift | RunKind::TrapShiftContrast => {
            let surface = required(&st.surface, "[metamaterial]")?;
            let z = required(&st.z, "z")?;
            let r = match kind {
                RunKind::Potential => casimir_polder_potential(&atom()?, &surface, z, q)?,
                RunKind::TrapShift => trap_frequency_shift(&atom()?, &surface, z, q)?,
                _ => trap_shift_contrast(&atom()?, &surface, z, toggle()?, q)?,
            };
            point(vec![r.value, r.abs_error], r.abs_error, r.xi_nodes, r.k_nodes)
        }
        RunKind::Response => {
            let m = required(&st.surface, "[metamaterial]")?.material;
            let xi = ImaginaryFrequency::new(required(&st.xi, "xi")?)?;
            let t = m.tensor(xi)?.as_array();
            let values = match m {
                MaterialModel::Isotropic { .. } => vec![t[0], t[3]],
                _ => t.to_vec(),
            };
            point(values, 0.0, 0, 0)
        }
    })
}

/// Run a validated configuration. Points are evaluated one after another;
/// each integral uses the current rayon pool.
pub fn run(c: &RunConfig) -> Result<RunOutput, CliError> {
    let errors: Vec<String> = validate(c).into_iter().filter(|d| d.is_error()).map(|d| d.message).collect();
    if !errors.is_empty() {
        return Err(CliError::Config(errors.join("; ")));
    }
    let kind = required(&c.kind(), "run.kind")?;
    let length = c.units.length_factor().unwrap_or(1.0);
    let omega = c.units.omega_scale.unwrap_or(1.0);
    let geometry = c.geometry.clone().unwrap_or_default();
    let base = State {
        metal: c.metal.clone(),
        surface: c.metamaterial.clone(),
        gap: geometry.gap.map(|g| g * length),
        temperature: geometry.temperature,
        z: geometry.z.map(|z| z * length),
        xi: None,
    };

    let mut header: Vec<String> = Vec::new();
    let sweep_values = match &c.sweep {
        Some(s) => {
            header.push(s.variable.column(&c.units).into());
            s.values().into_iter().map(Some).collect()
        }
        None => vec![None],
    };
    let (series_vars, series_rows) = match &c.series {
        Some(s) => (s.variables.clone(), s.values.clone()),
        None => (Vec::new(), vec![Vec::new()]),
    };
    header.extend(series_vars.iter().map(|v| v.column(&c.units).to_string()));
    header.extend(result_columns(kind, c).into_iter().map(String::from));

    let mut out = RunOutput { table: Table { header, rows: Vec::new() }, xi_nodes: 0, k_nodes: 0, max_error: 0.0 };
    for row in &series_rows {
        let mut st = base.clone();
        for (v, x) in series_vars.iter().zip(row) {
            st.assign(*v, *x, length, omega)?;
        }
        for x in &sweep_values {
            let mut p = st.clone();
            let mut line = Vec::new();
            if let (Some(x), Some(s)) = (x, &c.sweep) {
                p.assign(s.variable, *x, length, omega)?;
                line.push(*x);
            }
            line.extend(row.iter().copied());
            let r = evaluate(kind, c, &p)?;
            line.extend(r.values);
            out.xi_nodes += r.xi_nodes;
            out.k_nodes += r.k_nodes;
            out.max_error = out.max_error.max(r.error);
            out.table.rows.push(line);
        }
    }
    Ok(out)
}

/// Which body a dump describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DumpLayer {
    Metal,
    #[default]
    Metamaterial,
}

fn dump_target(c: &RunConfig, which: DumpLayer) -> Result<LayerSpec, CliError> {
    match which {
        DumpLayer::Metal => required(&c.metal, "[metal]"),
        DumpLayer::Metamaterial => required(&c.metamaterial, "[metamaterial]"),
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|j| (lo.ln() + (hi.ln() - lo.ln()) * j as f64 / (n - 1) as f64).exp()).collect()
}

/// `eps` and `mu` tensors from `1e-4` to `1e2` times the frequency scale,
/// 20 points per decade.
pub fn material_dump(c: &RunConfig, which: DumpLayer) -> Result<Table, CliError> {
    let layer = dump_target(c, which)?;
    let w = c.units.omega_scale.unwrap_or(OMEGA_REF);
    let header = ["xi_rad_s", "eps_xx", "eps_yy", "eps_zz", "mu_xx", "mu_yy", "mu_zz"];
    let mut rows = Vec::new();
    for xi in log_grid(1e-4 * w, 1e2 * w, 121) {
        let t = layer.material.tensor(ImaginaryFrequency::new(xi)?)?;
        let mut row = vec![xi];
        row.extend(t.as_array());
        rows.push(row);
    }
    Ok(Table { header: header.iter().map(|s| s.to_string()).collect(), rows })
}

/// Reflection matrices on a coarse `(xi, k_par, phi)` grid, with `k_par`
/// in multiples of `xi / c`.
pub fn reflectivity_dump(c: &RunConfig, which: DumpLayer) -> Result<Table, CliError> {
    let layer = dump_target(c, which)?;
    let w = c.units.omega_scale.unwrap_or(OMEGA_REF);
    let header = ["xi_rad_s", "k_par", "phi", "r_tete", "r_tetm", "r_tmte", "r_tmtm"];
    let mut rows = Vec::new();
    for xi in log_grid(1e-3 * w, 1e2 * w, 11) {
        let x = ImaginaryFrequency::new(xi)?;
        for ratio in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let k = ratio * xi / casimir_core::constants::SPEED_OF_LIGHT;
            for j in 0..5 {
                let phi = j as f64 * std::f64::consts::PI / 8.0;
                let r = layer.reflection(&TransverseWave::new(k, phi, x)?)?;
                rows.push(vec![xi, k, phi, r.te_te, r.te_tm, r.tm_te, r.tm_tm]);
            }
        }
    }
    Ok(Table { header: header.iter().map(|s| s.to_string()).collect(), rows })
}
