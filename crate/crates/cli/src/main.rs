//! `infodyn`: command-line workbench for chaos-degree sweeps, quantum chaos
//! degree reports, recognition runs, the axiom suite and the value/chaos
//! conjecture harness.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 dynamics error (orbit
//! escape, missing Jacobian), 4 dimension mismatch, 5 probability-domain
//! error.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use infodyn_core::channel::ChannelDescriptor;
use infodyn_core::classical::{builtin_map, sweep, SweepConfig, BUILTIN_MAPS};
use infodyn_core::hilbert::{json, DensityOperator, LogBase};
use infodyn_core::metrics::{
    axiom_suite, chaos_degree_quantum, conjecture_batch, random_conjecture_instance,
    ConjectureBatchSpec, ComplexityConfig,
};
use infodyn_core::recognition::Experiment;
use infodyn_core::Error;

#[derive(Parser)]
#[command(name = "infodyn", version, about = "Entropic chaos degree and recognition-channel workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Logarithm base for entropies and exponents: e (nats) or 2 (bits).
    #[arg(long, global = true, default_value = "e", value_parser = parse_log_base)]
    log_base: LogBase,
    /// Write the primary output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "INFODYN_THREADS")]
    threads: Option<usize>,
}

fn parse_log_base(s: &str) -> std::result::Result<LogBase, String> {
    match s {
        "e" | "ln" | "natural" | "nats" => Ok(LogBase::Natural),
        "2" | "bits" | "two" => Ok(LogBase::Two),
        _ => Err(format!("unknown log base `{s}` (use e or 2)")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the classical chaos degree and Lyapunov exponent of a map.
    EcdSweep(SweepArgs),
    /// Quantum chaos degree of a state under a channel.
    QuantumEcd(QuantumArgs),
    /// Run a recognition experiment and print its history as JSON lines.
    Recognize(RecognizeArgs),
    /// Randomized check of the complexity axioms.
    Axioms(AxiomArgs),
    /// Chaos degree versus value-of-information conjecture harness.
    Value(ValueArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = BUILTIN_MAPS)]
    map: String,
    /// First parameter value; defaults to the map's standard parameter.
    #[arg(long)]
    from: Option<f64>,
    /// Last parameter value; defaults to `--from`.
    #[arg(long)]
    to: Option<f64>,
    #[arg(long, default_value_t = 0.005)]
    step: f64,
    /// Cells per axis.
    #[arg(long, default_value_t = 100)]
    bins: usize,
    #[arg(long, default_value_t = 1000)]
    transient: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Initial first coordinate; defaults to the map's standard point.
    #[arg(long)]
    x0: Option<f64>,
    /// Initial second coordinate for two-dimensional maps.
    #[arg(long)]
    y0: Option<f64>,
    /// Trailing window used for the classification label.
    #[arg(long, default_value_t = SweepConfig::DEFAULT_WINDOW)]
    window: usize,
    #[arg(long, default_value_t = SweepConfig::DEFAULT_EPS_ZERO)]
    eps_zero: f64,
    #[arg(long, default_value_t = SweepConfig::DEFAULT_EPS_CONST)]
    eps_const: f64,
    /// Also write an SVG plot of D and the Lyapunov exponent.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct QuantumArgs {
    /// JSON density matrix.
    #[arg(long)]
    state: PathBuf,
    /// JSON channel descriptor.
    #[arg(long)]
    channel: PathBuf,
    /// Random decompositions tried for a degenerate spectrum.
    #[arg(long, default_value_t = 1000)]
    restarts: usize,
}

#[derive(Args)]
struct RecognizeArgs {
    /// JSON experiment file.
    experiment: PathBuf,
}

#[derive(Args)]
struct AxiomArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Args)]
struct ValueArgs {
    /// JSON batch file; without it a random batch is generated.
    #[arg(long)]
    batch: Option<PathBuf>,
    /// Size of the random batch.
    #[arg(long, default_value_t = 100)]
    pairs: usize,
    /// Signal-space dimension of random instances.
    #[arg(long, default_value_t = 2)]
    dim_p: usize,
    /// Observer-space dimension of random instances.
    #[arg(long, default_value_t = 2)]
    dim_o: usize,
    #[arg(long, default_value_t = 1000)]
    restarts: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::OrbitEscape { .. } | Error::MissingJacobian(_) => 3,
            Error::DimensionMismatch { .. } => 4,
            Error::ZeroProbabilityOutcome { .. } | Error::OutsideDomain(_) => 5,
            _ => 2,
        };
    }
    if err.downcast_ref::<io::Error>().is_some() || err.downcast_ref::<serde_json::Error>().is_some()
    {
        return 2;
    }
    1
}

fn run(cli: Cli) -> Result<()> {
    let g = cli.global;
    let pool = match g.threads {
        Some(0) => return Err(Error::InvalidParameter("threads must be positive".into()).into()),
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build()?,
        None => rayon::ThreadPoolBuilder::new().build()?,
    };
    pool.install(|| match cli.command {
        Command::EcdSweep(a) => cmd_ecd_sweep(&g, a),
        Command::QuantumEcd(a) => cmd_quantum_ecd(&g, a),
        Command::Recognize(a) => cmd_recognize(&g, a),
        Command::Axioms(a) => cmd_axioms(&g, a),
        Command::Value(a) => cmd_value(&g, a),
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(g: &Global, bytes: &[u8]) -> Result<()> {
    match &g.output {
        Some(path) => {
            fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_json<T: serde::Serialize>(g: &Global, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(g, text.as_bytes())
}

fn cmd_ecd_sweep(g: &Global, a: SweepArgs) -> Result<()> {
    let map = builtin_map(&a.map).ok_or_else(|| Error::InvalidParameter(format!("unknown map {}", a.map)))?;
    let from = a.from.unwrap_or_else(|| map.default_parameter());
    let to = a.to.unwrap_or(from);
    let mut cfg = SweepConfig::new(map.as_ref(), from, to, a.step);
    cfg.bins = a.bins;
    cfg.window = a.window;
    cfg.eps_zero = a.eps_zero;
    cfg.eps_const = a.eps_const;
    cfg.orbit.transient = a.transient;
    cfg.orbit.samples = a.samples;
    if let Some(x) = a.x0 {
        cfg.orbit.initial[0] = x;
    }
    if let Some(y) = a.y0 {
        cfg.orbit.initial[1] = y;
    }
    let rows = sweep(map.as_ref(), &cfg)?;
    let mut csv = Vec::new();
    output::write_sweep_csv(&rows, g.log_base, &mut csv)?;
    emit(g, &csv)?;
    if let Some(path) = &a.svg {
        fs::write(path, output::sweep_svg(&rows, g.log_base, &a.map))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_quantum_ecd(g: &Global, a: QuantumArgs) -> Result<()> {
    let state: serde_json::Value = serde_json::from_str(&read(&a.state)?)?;
    let rho = DensityOperator::new(json::matrix_from_value(&state)?)?;
    let descriptor: ChannelDescriptor = serde_json::from_str(&read(&a.channel)?)?;
    let channel = descriptor.build()?;
    let cfg = ComplexityConfig {
        log_base: g.log_base,
        restarts: a.restarts,
        seed: g.seed,
        ..ComplexityConfig::default()
    };
    let report = chaos_degree_quantum(&rho, &channel, &cfg)?;
    emit_json(g, &report)
}

fn cmd_recognize(g: &Global, a: RecognizeArgs) -> Result<()> {
    let experiment = Experiment::from_json(&read(&a.experiment)?)?;
    let state = experiment.run()?;
    let mut out = String::new();
    for record in &state.history {
        out.push_str(&serde_json::to_string(record)?);
        out.push('\n');
    }
    emit(g, out.as_bytes())
}

fn cmd_axioms(g: &Global, a: AxiomArgs) -> Result<()> {
    let report = axiom_suite(a.dim, a.trials, g.seed)?;
    emit_json(g, &report)
}

fn cmd_value(g: &Global, a: ValueArgs) -> Result<()> {
    let instances = match &a.batch {
        Some(path) => ConjectureBatchSpec::from_json(&read(path)?)?.build()?,
        None => {
            if a.dim_p == 0 || a.dim_o == 0 {
                return Err(Error::InvalidParameter("dimensions must be positive".into()).into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            (0..a.pairs)
                .map(|_| random_conjecture_instance(a.dim_p, a.dim_o, &mut rng))
                .collect()
        }
    };
    let cfg = ComplexityConfig {
        log_base: g.log_base,
        restarts: a.restarts,
        seed: g.seed,
        ..ComplexityConfig::default()
    };
    let summary = conjecture_batch(&instances, &cfg)?;
    emit_json(g, &summary)
}
