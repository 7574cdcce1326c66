use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use nmwit::decoherence::{rtn_dn, rtn_dn_montecarlo};
use nmwit::runner::{self, validate::validate, ConfigFile, Preset, RunConfig};
use nmwit::Error;

/// Worker count for the internal thread pool.
const THREADS_ENV: &str = "NMWIT_THREADS";

#[derive(Parser)]
#[command(name = "nmwit", version, about = "Hilbert-Schmidt speed non-Markovianity witness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute witness series for a preset or config file and write CSV/SVG.
    #[command(group(ArgGroup::new("source").required(true).args(["preset", "config"])))]
    Run {
        /// fig2 .. fig8
        #[arg(long)]
        preset: Option<String>,
        /// JSON run configuration
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the golden-table, closed-form and Monte-Carlo self checks.
    Validate,
    /// Compare the telegraph-noise average D_n with Monte Carlo.
    OracleDn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Run {
            preset,
            config,
            out_dir,
            seed,
        } => load_config(preset, config, seed).and_then(|cfg| run(&cfg, &out_dir)),
        Command::Validate => run_validate(),
        Command::OracleDn {
            n,
            q,
            tau,
            trials,
            seed,
        } => oracle_dn(n, q, tau, trials, seed),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("{THREADS_ENV}={value} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn load_config(
    preset: Option<String>,
    config: Option<PathBuf>,
    seed: Option<u64>,
) -> nmwit::Result<RunConfig> {
    let mut cfg = match (preset, config) {
        (Some(name), _) => Preset::from_name(&name)?.config(),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Error::ConfigInvalid(format!("cannot read {}: {e}", path.display()))
            })?;
            ConfigFile::parse(&text)?.resolve()?
        }
        (None, None) => return Err(Error::ConfigInvalid("need --preset or --config".into())),
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cfg: &RunConfig, out_dir: &std::path::Path) -> nmwit::Result<ExitCode> {
    let (result, files) = runner::run(cfg, out_dir)?;
    for s in &result.series {
        let label = match s.p {
            Some(p) => format!("{} p={p}", cfg.name),
            None => cfg.name.clone(),
        };
        println!(
            "{label}: {} non-Markovian interval(s), {} HSS extrema ({} misaligned), {} sudden-death interval(s)",
            s.series.nonmarkov_intervals.len(),
            s.extrema.hss.len(),
            s.extrema.misaligned().len(),
            s.extrema.sudden_death.len()
        );
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn run_validate() -> nmwit::Result<ExitCode> {
    let report = validate()?;
    println!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn oracle_dn(n: u32, q: f64, tau: f64, trials: usize, seed: u64) -> nmwit::Result<ExitCode> {
    let closed = rtn_dn(n, q, tau)?;
    let mc = rtn_dn_montecarlo(n, q, tau, trials, seed)?;
    let diff = mc.mean - closed;
    let sigmas = if mc.stderr > 0.0 { diff.abs() / mc.stderr } else { 0.0 };
    println!("D_{n}(q={q}, tau={tau})");
    println!("closed form  {closed:.9}");
    println!("monte carlo  {:.9} ± {:.3e}  ({} trials, seed {seed})", mc.mean, mc.stderr, mc.trials);
    println!("difference   {diff:.3e}  ({sigmas:.2} stderr)");
    Ok(ExitCode::SUCCESS)
}
