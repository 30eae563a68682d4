use std::path::PathBuf;
use std::process::ExitCode;

use casimir_cli::app::{execute, Options, Source};
use casimir_cli::presets::Preset;
use casimir_cli::run::DumpLayer;
use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Layer {
    Metal,
    Metamaterial,
}

/// Casimir-Lifshitz pressures, energies and atom-surface potentials for
/// planar magnetodielectric media.
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
struct Args {
    /// Built-in configuration: fig4, fig5, fig6, fig7, fig8a, fig8b, fig9, fig10, fig11, fig12.
    #[arg(long, conflicts_with = "config")]
    preset: Option<Preset>,
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV output path; defaults to `run.output` or `<name>.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative tolerance of the frequency integrals.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Worker threads for the integrals.
    #[arg(long, env = "CASIMIR_THREADS")]
    threads: Option<usize>,
    /// Write eps and mu on a log-spaced imaginary-frequency grid.
    #[arg(long)]
    dump_materials: Option<PathBuf>,
    /// Write reflection matrices on a coarse (xi, k, phi) grid.
    #[arg(long)]
    dump_reflectivity: Option<PathBuf>,
    /// Body described by the dumps.
    #[arg(long, value_enum, default_value = "metamaterial")]
    dump_layer: Layer,
    /// Write the resolved configuration (frequencies in rad/s) as TOML.
    #[arg(long)]
    dump_config: Option<PathBuf>,
    /// Only validate the configuration.
    #[arg(long)]
    check: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let source = match (args.preset, args.config) {
        (Some(p), _) => Some(Source::Preset(p)),
        (None, Some(path)) => Some(Source::File(path)),
        (None, None) => None,
    };
    let options = Options {
        source,
        out: args.out,
        tolerance: args.tolerance,
        dump_materials: args.dump_materials,
        dump_reflectivity: args.dump_reflectivity,
        dump_layer: match args.dump_layer {
            Layer::Metal => DumpLayer::Metal,
            Layer::Metamaterial => DumpLayer::Metamaterial,
        },
        dump_config: args.dump_config,
        check: args.check,
    };
    match execute(&options) {
        Ok(report) => {
            for d in &report.diagnostics {
                eprintln!("{d}");
            }
            if options.check && report.diagnostics.is_empty() {
                println!("configuration is valid");
            }
            for line in &report.lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
