//! The command-line workflow, separated from argument parsing.

use std::fs;
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::presets::Preset;
use crate::run::{material_dump, reflectivity_dump, run, DumpLayer, Table};
use crate::validate::{validate_parsed, Diagnostic};

#[derive(Debug, Clone)]
pub enum Source {
    Preset(Preset),
    File(PathBuf),
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub source: Option<Source>,
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub dump_materials: Option<PathBuf>,
    pub dump_reflectivity: Option<PathBuf>,
    pub dump_layer: DumpLayer,
    pub dump_config: Option<PathBuf>,
    /// Report diagnostics and stop.
    pub check: bool,
}

/// What a successful invocation did, for printing.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub diagnostics: Vec<Diagnostic>,
    pub lines: Vec<String>,
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn write_table(path: &Path, t: &Table) -> Result<(), CliError> {
    write(path, &t.to_csv())
}

pub fn load(source: &Source) -> Result<(String, String), CliError> {
    match source {
        Source::Preset(p) => Ok((p.text().to_string(), format!("{p}.csv"))),
        Source::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
            Ok((text, format!("{stem}.csv")))
        }
    }
}

pub fn execute(o: &Options) -> Result<Report, CliError> {
    let source = o.source.as_ref().ok_or_else(|| CliError::Config("give --preset or --config".into()))?;
    let (text, default_out) = load(source)?;
    let mut parsed = RunConfig::parse(&text)?;
    if let Some(t) = o.tolerance {
        parsed.config.quadrature.rel_tol = t;
    }
    let diagnostics = validate_parsed(&parsed);
    let errors: Vec<String> = diagnostics.iter().filter(|d| d.is_error()).map(|d| d.message.clone()).collect();
    let mut report = Report { diagnostics, lines: Vec::new() };
    if o.check {
        return if errors.is_empty() { Ok(report) } else { Err(CliError::Config(errors.join("; "))) };
    }
    if !errors.is_empty() {
        return Err(CliError::Config(errors.join("; ")));
    }
    let config = parsed.config;

    if let Some(path) = &o.dump_config {
        write(path, &config.to_toml()?)?;
        report.lines.push(format!("wrote configuration to {}", path.display()));
    }
    if let Some(path) = &o.dump_materials {
        let t = material_dump(&config, o.dump_layer)?;
        write_table(path, &t)?;
        report.lines.push(format!("wrote {} material rows to {}", t.rows.len(), path.display()));
    }
    if let Some(path) = &o.dump_reflectivity {
        let t = reflectivity_dump(&config, o.dump_layer)?;
        write_table(path, &t)?;
        report.lines.push(format!("wrote {} reflectivity rows to {}", t.rows.len(), path.display()));
    }
    let dumped = o.dump_config.is_some() || o.dump_materials.is_some() || o.dump_reflectivity.is_some();
    if dumped && o.out.is_none() {
        return Ok(report);
    }

    let out_path = o
        .out
        .clone()
        .or_else(|| config.run.as_ref().and_then(|r| r.output.clone()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(default_out));
    let result = run(&config)?;
    write_table(&out_path, &result.table)?;
    report.lines.push(result.summary(&out_path.display().to_string()));
    Ok(report)
}
