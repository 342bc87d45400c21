use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pcsa::annealing::SeededRng;
use pcsa::experiments::{
    emit_plot_data, read_records, read_trends, render_table, run_grid_with_progress, summarize_grid,
    write_summary_csv, ExperimentConfig, ObjectiveConfig, RunOptions, CONFIG_FILE, RECORDS_FILE,
};
use pcsa::objectives::Objective;
use pcsa::proposal::ProposalPolicy;
use pcsa::theory::predict_vs_empirical;
use rand::SeedableRng;

#[derive(Parser)]
#[command(name = "pcsa", version, about = "Partial-coordinate simulated annealing experiments")]
struct Cli {
    /// More progress output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    /// Only print errors.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute an experiment grid.
    Run {
        /// Experiment config (TOML).
        #[arg(short, long)]
        config: PathBuf,
        /// Output directory; defaults to the config's `output` or `runs/<name>`.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads (0 = one per core).
        #[arg(short, long, env = "PCSA_WORKERS", default_value_t = 0)]
        workers: usize,
        /// Discard existing results instead of resuming.
        #[arg(long)]
        no_resume: bool,
        /// Override the config's base seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Aggregate a run directory into mean ± std per cell.
    Summarize {
        dir: PathBuf,
        /// Also write the summary as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write violin and trend data for external plotting.
    PlotData {
        dir: PathBuf,
        /// Output JSON path; defaults to `<dir>/plot_data.json`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare predicted and measured one-shot acceptance at a random point.
    Predict {
        #[arg(long, value_enum)]
        objective: Kind,
        /// Problem size (particles for Lennard-Jones).
        #[arg(short, long)]
        n: usize,
        /// Coordinates moved per proposal.
        #[arg(short, long)]
        d: usize,
        /// Inverse of the total proposal variance.
        #[arg(long)]
        inv_sigma2_total: f64,
        #[arg(short, long, default_value_t = 1.0)]
        temperature: f64,
        #[arg(long, default_value_t = 10_000)]
        proposals: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    LennardJones,
    Rosenbrock,
    HyperEllipsoid,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn execute(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    let level = if cli.quiet { 0 } else { 1 + cli.verbose };
    match cli.command {
        Command::Run {
            config,
            output,
            workers,
            no_resume,
            seed,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.base_seed = s;
            }
            let out = output
                .or_else(|| cfg.output.clone())
                .unwrap_or_else(|| PathBuf::from("runs").join(&cfg.name));
            let options = RunOptions {
                workers,
                resume: !no_resume,
                stop_after_cells: None,
                base_dir: config.parent().map(PathBuf::from),
            };
            let outcome = run_grid_with_progress(&cfg, &out, &options, |p| {
                if level >= 2 {
                    eprintln!("cells {}/{}  runs {}", p.cells_done, p.cells_total, p.runs_executed);
                }
            })?;
            if level >= 1 {
                eprintln!(
                    "{}: {} runs executed, {} records in {}",
                    cfg.name,
                    outcome.executed,
                    outcome.records.len(),
                    out.join(RECORDS_FILE).display()
                );
            }
        }
        Command::Summarize { dir, csv, format } => {
            let records = read_records(dir.join(RECORDS_FILE))?;
            let cfg_path = dir.join(CONFIG_FILE);
            let expected = if cfg_path.exists() {
                ExperimentConfig::load(&cfg_path)?.cells()
            } else {
                Vec::new()
            };
            let summary = summarize_grid(&records, &expected);
            if let Some(path) = csv {
                write_summary_csv(&summary, path)?;
            }
            match format {
                Format::Table => print!("{}", render_table(&summary)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
            }
            let missing = summary.missing().count();
            if missing > 0 && level >= 1 {
                eprintln!("{missing} cell(s) missing");
            }
        }
        Command::PlotData { dir, output } => {
            let records = read_records(dir.join(RECORDS_FILE))?;
            let summary = summarize_grid(&records, &[]);
            let path = output.unwrap_or_else(|| dir.join("plot_data.json"));
            let data = emit_plot_data(&summary, &read_trends(&dir)?, &path)?;
            if level >= 1 {
                eprintln!(
                    "{} violin groups, {} trend series -> {}",
                    data.violins.len(),
                    data.trends.len(),
                    path.display()
                );
            }
        }
        Command::Predict {
            objective,
            n,
            d,
            inv_sigma2_total,
            temperature,
            proposals,
            seed,
        } => {
            let kind = match objective {
                Kind::LennardJones => ObjectiveConfig::LennardJones {
                    epsilon: 1.0,
                    sigma: 1.0,
                    overlap_floor: 0.4,
                    reference_file: None,
                },
                Kind::Rosenbrock => ObjectiveConfig::Rosenbrock,
                Kind::HyperEllipsoid => ObjectiveConfig::HyperEllipsoid,
            };
            let f = kind.build(n, None)?;
            if d == 0 || d > f.dimension() {
                return Err(format!("d = {d} outside 1..={}", f.dimension()).into());
            }
            if !(inv_sigma2_total > 0.0 && temperature > 0.0) {
                return Err("inv-sigma2-total and temperature must be positive".into());
            }
            if proposals < 1_000 {
                return Err("need at least 1000 proposals".into());
            }
            let mut rng = SeededRng::seed_from_u64(seed);
            let x = f.random_initial_state(&mut rng)?;
            let policy = ProposalPolicy::new(d, 1.0 / inv_sigma2_total);
            let report = predict_vs_empirical(&f, &x, &policy, temperature, proposals, &mut rng);
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
    }
    Ok(())
}
