use clap::{Parser, Subcommand};
use fermigas::configuration::exchange_matrix;
use fermigas::entanglement::EntanglementReport;
use fermigas::pair_decomposition::fit_weights;
use fermigas::runner::{
    run_figure, run_scenario, write_outputs, FigureOverrides, RunError, ScenarioSpec, SweepResult,
    DEFAULT_EPS,
};
use fermigas::spin_density_matrix;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fermigas", version, about = "Spin entanglement of an ideal Fermi gas at T = 0")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the dataset behind one of the four figures.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Number of grid points.
        #[arg(long)]
        grid: Option<usize>,
        /// Isosceles base length (figure 2).
        #[arg(long)]
        base: Option<f64>,
        /// Upper end of the sweep (figure 1: distance between fermions 1 and 3).
        #[arg(long)]
        xmax: Option<f64>,
        /// Smallest simplex edge (figures 3 and 4).
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Run the sweep described by a JSON scenario file.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the entanglement report for a single configuration.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
    },
}

fn finish(result: &SweepResult, out: &Path, stem: &str, eps: f64) -> Result<ExitCode, RunError> {
    let (csv, json) = write_outputs(result, out, stem, eps)?;
    eprintln!("wrote {} and {}", csv.display(), json.display());
    if result.all_degenerate() {
        eprintln!("every row is degenerate");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn analyze(spec: &ScenarioSpec) -> Result<serde_json::Value, RunError> {
    let at = spec.grid.map(|g| g.start).unwrap_or(1.0);
    let config = spec.configuration_at(at)?;
    let rho = spin_density_matrix(&exchange_matrix(&config))?;
    let report = EntanglementReport::analyze(&rho)?;
    let weights = fit_weights(&rho)?;
    Ok(serde_json::json!({
        "positions": config.positions(),
        "grid_value": at,
        "report": report,
        "pair_weights": {
            "background": weights.background(),
            "singlet": weights.singlet,
            "residual": weights.residual,
        },
    }))
}

fn run(cli: Cli) -> Result<ExitCode, RunError> {
    match cli.command {
        Command::Figure { id, out, grid, base, xmax, eps } => {
            let o = FigureOverrides { grid, base, xmax, eps };
            let result = run_figure(id, o)?;
            finish(&result, &out, &format!("figure{id}"), eps.unwrap_or(DEFAULT_EPS))
        }
        Command::Sweep { spec, out } => {
            let scenario = ScenarioSpec::from_file(&spec)?;
            let result = run_scenario(&scenario)?;
            let stem = spec.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
            finish(&result, &out, stem, DEFAULT_EPS)
        }
        Command::Analyze { spec } => {
            let scenario = ScenarioSpec::from_file(&spec)?;
            let value = analyze(&scenario)?;
            println!("{}", serde_json::to_string_pretty(&value).expect("report serializes"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
