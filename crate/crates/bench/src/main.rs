use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cfo_bench::acceptance::{run_acceptance, Evaluator};
use cfo_bench::config::RunSpec;
use cfo_bench::oracle::refined_oracle;
use cfo_bench::{load_config, run_benchmark, sweep_runs, BenchError, Result};
use cfo_objectives::external::serve;
use cfo_objectives::{lookup, Dims, ObjectiveOptions, Registered};
use clap::{Parser, Subcommand};

/// Output directory when neither `--out`, the config nor `CFO_OUT_DIR` names one.
const DEFAULT_OUT_DIR: &str = "cfo-out";

#[derive(Parser)]
#[command(name = "cfo-bench", version, about = "Central Force Optimization benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run specification.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; overrides the config and CFO_OUT_DIR.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the objective's noise stream.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Suppress the result lines on stdout.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a single run (or the sweep, if the config has one).
    Run,
    /// Execute the sweep in the config.
    Sweep,
    /// Brute-force grid search of the config's objective.
    Oracle {
        /// Grid points per axis: one value for every axis or one per axis,
        /// comma separated.
        #[arg(long, value_delimiter = ',', default_value = "101")]
        resolution: Vec<usize>,
        /// Follow the grid with a local compass search.
        #[arg(long)]
        refine: bool,
    },
    /// Run the acceptance suite; exits 1 if any criterion fails.
    Verify,
    /// Serve a registered objective over the external protocol on
    /// stdin/stdout.
    Serve {
        /// Registered objective id, e.g. GP or PBM_2.
        id: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("cfo-bench: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Run => {
            let spec = spec(cli)?;
            if spec.sweep.is_some() {
                return sweep(cli, &spec);
            }
            let outcome = run_benchmark(&spec, &out_dir(cli, &spec))?;
            if !cli.quiet {
                println!("{}", outcome.result_line());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep => sweep(cli, &spec(cli)?),
        Command::Oracle { resolution, refine } => oracle(cli, resolution, *refine),
        Command::Verify => {
            let exe = std::env::current_exe().map_err(|e| BenchError::config(format!("cannot locate cfo-bench: {e}")))?;
            let results = run_acceptance(&Evaluator::new(exe, &["serve"]));
            let failed = results.iter().filter(|c| !c.passed).count();
            for c in &results {
                if !cli.quiet || !c.passed {
                    println!("{}", c.line());
                }
            }
            println!("{} passed, {failed} failed", results.len() - failed);
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Serve { id } => serve_objective(id),
    }
}

fn spec(cli: &Cli) -> Result<RunSpec> {
    let path = cli.config.as_deref().ok_or_else(|| BenchError::config("--config is required"))?;
    let mut spec = load_config(path)?;
    if let Some(seed) = cli.seed {
        if spec.objective.noise.is_none() {
            return Err(BenchError::config("--seed given but the objective has no noise"));
        }
        spec.set_seed(seed);
    }
    Ok(spec)
}

/// `--out`, then the config, then `CFO_OUT_DIR`, then `cfo-out`.
fn out_dir(cli: &Cli, spec: &RunSpec) -> PathBuf {
    cli.out
        .clone()
        .or_else(|| spec.outputs.directory.clone())
        .or_else(|| std::env::var_os("CFO_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
}

fn sweep(cli: &Cli, spec: &RunSpec) -> Result<ExitCode> {
    let report = sweep_runs(spec, &out_dir(cli, spec))?;
    if !cli.quiet {
        for o in &report.outcomes {
            println!("run {}: {}", o.run_number, o.result_line());
        }
        if let Some(best) = report.best() {
            println!("best run {}: {}", best.run_number, best.result_line());
        }
        println!("total function evaluations {}", report.summary.total_evaluations());
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(cli: &Cli, resolution: &[usize], refine: bool) -> Result<ExitCode> {
    let spec = spec(cli)?;
    if spec.objective.external.is_some() {
        return Err(BenchError::config("oracle: external objectives are not supported"));
    }
    let id = lookup(&spec.objective.id)?;
    let mut opts: ObjectiveOptions = spec.objective.options();
    if opts.n_dims.is_none() && matches!(id.dims(), Dims::Configurable { .. }) {
        opts.n_dims = Some(spec.space.n_dims());
    }
    let obj = Registered::new(id, &opts)?;
    let n = spec.space.n_dims();
    let resolution = match resolution.len() {
        1 => vec![resolution[0]; n],
        k if k == n => resolution.to_vec(),
        k => return Err(BenchError::config(format!("--resolution has {k} values for {n} axes"))),
    };
    // Noise, if configured, is ignored: the oracle looks at the clean objective.
    let f = |x: &[f64]| obj.value(x).unwrap_or(f64::NAN);
    let (grid, fine) = refined_oracle(f, &spec.space, &resolution, &[])?;
    let mut doc = serde_json::json!({ "objective": spec.label(), "grid": grid });
    if refine {
        doc["refined"] = serde_json::to_value(&fine).expect("serializable");
    }
    let dir = out_dir(cli, &spec);
    cfo_bench::output::prepare_dir(&dir)?;
    let path = dir.join("oracle.json");
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    std::fs::write(&path, text).map_err(|source| BenchError::Output { path: path.clone(), source })?;
    if !cli.quiet {
        let (argmax, value) = if refine { (&fine.argmax, fine.value) } else { (&grid.argmax, grid.value) };
        println!("{}: oracle max {} at ({}) over {} grid points", spec.label(), value, join(argmax), grid.evaluations);
    }
    Ok(ExitCode::SUCCESS)
}

fn join(x: &[f64]) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn serve_objective(id: &str) -> Result<ExitCode> {
    let fid = lookup(id)?;
    let fixed = match fid.dims() {
        Dims::Fixed(_) => Some(Registered::new(fid, &ObjectiveOptions::default())?),
        Dims::Configurable { .. } => None,
    };
    let stdin = io::stdin().lock();
    let stdout = BufWriter::new(io::stdout().lock());
    serve(stdin, stdout, |req| {
        let value = match &fixed {
            Some(obj) => obj.value(&req.x),
            None => Registered::new(fid, &ObjectiveOptions { n_dims: Some(req.x.len()), ..Default::default() })
                .and_then(|obj| obj.value(&req.x)),
        };
        value.map_err(|e| e.to_string())
    })
    .map_err(|source| BenchError::Output { path: Path::new("<stdout>").to_path_buf(), source })?;
    Ok(ExitCode::SUCCESS)
}
