//! Command-line driver for the verification suites.
//!
//! Configuration precedence: defaults < PTSCARF_CONFIG file < flags.
//! Exit status: 0 when every non-informational check passes, 1 on any
//! hard failure, 2 on configuration or I/O errors.

use clap::{Parser, Subcommand, ValueEnum};
use ptscarf::config::{ReportFormat, RunConfig};
use ptscarf::report::{write_atomic, ReportError};
use ptscarf::suites::{
    cmd_compare_kernel, cmd_full_report, cmd_verify_c_action, cmd_verify_completeness,
    cmd_verify_orthonormality, SuiteOutput,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "ptscarf",
    about = "Constructs and verifies the C operator for the PT-symmetric Scarf I potential"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Real part of alpha (must exceed 1/2)
    #[arg(long, global = true)]
    alpha_re: Option<f64>,
    /// Imaginary part of alpha
    #[arg(long, global = true)]
    alpha_im: Option<f64>,
    /// Highest eigenfunction index in the orthonormality suite
    #[arg(long, global = true)]
    n_max: Option<u32>,
    /// Quadrature panels across the interval
    #[arg(long, global = true)]
    quad_panels: Option<usize>,
    /// Gauss-Legendre order per panel
    #[arg(long, global = true)]
    quad_order: Option<usize>,
    /// Abel schedule start: t = -1 + 2^{-k_min}
    #[arg(long, global = true)]
    abel_k_min: Option<u32>,
    /// Abel schedule end: t = -1 + 2^{-k_max}
    #[arg(long, global = true)]
    abel_k_max: Option<u32>,
    /// Orthonormality tolerance
    #[arg(long, global = true)]
    tol_orth: Option<f64>,
    /// Kernel three-route agreement tolerance
    #[arg(long, global = true)]
    tol_kernel: Option<f64>,
    /// C-action tolerance
    #[arg(long, global = true)]
    tol_action: Option<f64>,
    /// Completeness reconstruction tolerance
    #[arg(long, global = true)]
    tol_complete: Option<f64>,
    /// Kernel sample grid points per axis
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    /// Output path (JSON file, or prefix for CSV exports)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Evaluate sample grids concurrently
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gram matrix of the PT inner product against diag((-1)^n)
    VerifyOrthonormality,
    /// Closed-form kernel against the Abel oracle and the limit route
    CompareKernel,
    /// C psi_n = (-1)^n psi_n, C^2 = 1, and the real-alpha parity limit
    VerifyCAction,
    /// Delta-sequence reconstruction of the probe corpus
    VerifyCompleteness,
    /// All suites plus the special-function identity floor
    FullReport,
}

fn apply_overrides(cfg: &mut RunConfig, cli: &Cli) {
    if let Some(v) = cli.alpha_re {
        cfg.alpha_re = v;
    }
    if let Some(v) = cli.alpha_im {
        cfg.alpha_im = v;
    }
    if let Some(v) = cli.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = cli.quad_panels {
        cfg.quad_panels = v;
    }
    if let Some(v) = cli.quad_order {
        cfg.quad_order = v;
    }
    if let Some(v) = cli.abel_k_min {
        cfg.abel_k_min = v;
    }
    if let Some(v) = cli.abel_k_max {
        cfg.abel_k_max = v;
    }
    if let Some(v) = cli.tol_orth {
        cfg.tol_orth = v;
    }
    if let Some(v) = cli.tol_kernel {
        cfg.tol_kernel = v;
    }
    if let Some(v) = cli.tol_action {
        cfg.tol_action = v;
    }
    if let Some(v) = cli.tol_complete {
        cfg.tol_complete = v;
    }
    if let Some(v) = cli.grid_points {
        cfg.grid_points = v;
    }
    if let Some(v) = &cli.out {
        cfg.out_path = Some(v.clone());
    }
    if let Some(v) = cli.format {
        cfg.format = match v {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        };
    }
    if cli.parallel {
        cfg.parallel = true;
    }
}

fn emit(output: &SuiteOutput, cfg: &RunConfig) -> Result<(), ReportError> {
    match cfg.format {
        ReportFormat::Json => {
            let json = output.report.to_json()?;
            match &cfg.out_path {
                Some(path) => write_atomic(path, json.as_bytes())?,
                None => println!("{json}"),
            }
        }
        ReportFormat::Csv => match &cfg.out_path {
            Some(prefix) => {
                for (stem, content) in &output.csv_files {
                    let mut path = prefix.as_os_str().to_owned();
                    path.push("-");
                    path.push(stem);
                    path.push(".csv");
                    write_atomic(std::path::Path::new(&path), content.as_bytes())?;
                }
                let mut path = prefix.as_os_str().to_owned();
                path.push("-report.json");
                write_atomic(
                    std::path::Path::new(&path),
                    output.report.to_json()?.as_bytes(),
                )?;
            }
            None => {
                for (stem, content) in &output.csv_files {
                    println!("# {stem}.csv");
                    print!("{content}");
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match RunConfig::from_env() {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("config error: {err}");
            return ExitCode::from(2);
        }
    };
    apply_overrides(&mut cfg, &cli);
    if let Err(err) = cfg.validate() {
        eprintln!("config error: {err}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::VerifyOrthonormality => cmd_verify_orthonormality(&cfg),
        Command::CompareKernel => cmd_compare_kernel(&cfg),
        Command::VerifyCAction => cmd_verify_c_action(&cfg),
        Command::VerifyCompleteness => cmd_verify_completeness(&cfg),
        Command::FullReport => cmd_full_report(&cfg),
    };
    let output = match result {
        Ok(output) => output,
        Err(err) => {
            eprintln!("suite error: {err}");
            return ExitCode::from(2);
        }
    };
    for check in &output.report.checks {
        let status = if check.pass {
            "pass"
        } else if check.informational {
            "info"
        } else {
            "FAIL"
        };
        eprintln!(
            "[{status}] {}: residual {:.3e} (tolerance {:.3e})",
            check.id, check.residual, check.tolerance
        );
    }
    if let Err(err) = emit(&output, &cfg) {
        eprintln!("output error: {err}");
        return ExitCode::from(2);
    }
    if output.report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
