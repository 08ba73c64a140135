//! Command-line driver: load a config file or preset, apply flag overrides,
//! run the scenario and emit CSV or JSON.
//!
//! Exit status: 0 success, 2 invalid configuration, 3 computation failure
//! (the message names the failing mode cell).

mod config;
mod emit;
mod presets;
mod run;

use clap::Parser;
use config::{OutputFormat, RunConfig};
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "udw-cavity",
    about = "Mode-resolved response of a two-level detector crossing a cylindrical cavity",
    after_help = "Exactly one of --config or --preset is required. \
                  Presets: table1 table3 table4 table5 table6 fig2 fig3 fig4 fig5 fig6."
)]
struct Args {
    /// Configuration file (key = value format, see README)
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,

    /// Built-in parameter block
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,

    /// Output file (default: stdout)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format override
    #[arg(long, value_name = "csv|json")]
    format: Option<String>,

    /// Radial cutoff override (N_l)
    #[arg(long, value_name = "INT")]
    cutoff_l: Option<u32>,

    /// Longitudinal cutoff override (N_n)
    #[arg(long, value_name = "INT")]
    cutoff_n: Option<u64>,

    /// Quadrature relative tolerance override
    #[arg(long, value_name = "FLOAT")]
    tol: Option<f64>,
}

fn load_config(args: &Args) -> Result<RunConfig, String> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            config::parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, Some(name)) => presets::preset(name).ok_or_else(|| {
            format!(
                "unknown preset '{name}' (expected one of {})",
                presets::PRESET_NAMES.join(", ")
            )
        })?,
        _ => return Err("exactly one of --config or --preset is required".into()),
    };
    if let Some(cl) = args.cutoff_l {
        cfg.cutoff_l = cl;
    }
    if let Some(cn) = args.cutoff_n {
        cfg.cutoff_n = cn;
    }
    if let Some(tol) = args.tol {
        cfg.tol = tol;
    }
    if let Some(fmt) = &args.format {
        cfg.format = match fmt.as_str() {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => return Err(format!("--format: expected csv or json, got '{other}'")),
        };
    }
    if let Some(path) = &args.out {
        cfg.out_path = Some(path.display().to_string());
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match load_config(&args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let output = match run::run(&cfg) {
        Ok(o) => o,
        Err(run::RunError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(run::RunError::Compute(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let emit = |w: &mut dyn Write| match cfg.format {
        OutputFormat::Csv => emit::write_csv(&output, w),
        OutputFormat::Json => emit::write_json(&output, w),
    };
    let result = match &cfg.out_path {
        Some(path) => {
            let mut file = match fs::File::create(path) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: cannot create {path}: {e}");
                    return ExitCode::from(2);
                }
            };
            emit(&mut file)
        }
        None => emit(&mut std::io::stdout().lock()),
    };
    if let Err(e) = result {
        eprintln!("error: write failed: {e}");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
