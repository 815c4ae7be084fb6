use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use daqc_core::bench::{
    density, double_occupancy, fidelity, run_experiment, write_records, ExperimentConfig,
    OutputFormat, TimeGrid,
};
use daqc_core::compile::{
    compile_factor, trotterize_model, Architecture, CompileOptions, Schedule,
};
use daqc_core::dense::Propagator;
use daqc_core::fermion::{split_terms, FactorKind, Model, ModelSpec};
use daqc_core::pauli::PauliSum;
use daqc_core::statevector::{random_product_state, run_schedule, StateVector};

#[derive(Parser)]
#[command(
    name = "daqc",
    version,
    about = "Digital-analog compiler and simulator for 1D fermionic models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a Trotter factor or a full Trotter evolution into a schedule.
    Compile(CompileArgs),
    /// Run a schedule on a random product state.
    Run(RunArgs),
    /// Sweep fidelity and observables over times and Trotter step counts.
    Sweep(SweepArgs),
    /// Print cost statistics of a schedule.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Fh,
    Ladder,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArchKind {
    Linear,
    Ladder,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Factor {
    Z,
    Zz,
    Xx,
    Yy,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value = "fh")]
    model: ModelKind,
    /// Site count (rungs for the ladder model).
    #[arg(long, required_unless_present = "params")]
    n: Option<usize>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    mu: f64,
    /// Rung hopping of the ladder model.
    #[arg(long = "J", default_value_t = 0.0, allow_negative_numbers = true)]
    j_rung: f64,
    /// Single-qubit field of the ladder model.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
    /// Model as JSON, inline or a file path; replaces the flags above.
    #[arg(long, conflicts_with_all = ["n", "lambda", "epsilon", "mu", "j_rung", "delta"])]
    params: Option<String>,
}

impl ModelArgs {
    fn model(&self) -> Result<Model> {
        let spec = match &self.params {
            Some(p) => {
                let text = if p.trim_start().starts_with('{') {
                    p.clone()
                } else {
                    fs::read_to_string(p).with_context(|| format!("reading {p}"))?
                };
                serde_json::from_str::<ModelSpec>(&text).context("parsing model parameters")?
            }
            None => ModelSpec {
                model: match self.model {
                    ModelKind::Fh => "fh",
                    ModelKind::Ladder => "ladder",
                }
                .into(),
                n: self.n.expect("required by clap"),
                lambda: self.lambda,
                epsilon: self.epsilon,
                mu: self.mu,
                j_rung: self.j_rung,
                delta: self.delta,
            },
        };
        Ok(Model::try_from(&spec)?)
    }
}

#[derive(Args)]
struct ArchArgs {
    #[arg(long, value_enum, default_value = "linear")]
    arch: ArchKind,
    /// Chain coupling of the linear architecture.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    /// Leg coupling of the ladder architecture.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Rung coupling of the ladder architecture.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
}

impl ArchArgs {
    fn architecture(&self, model: &Model) -> Result<Architecture> {
        Ok(match self.arch {
            ArchKind::Linear => Architecture::linear(model.n_qubits(), self.beta)?,
            ArchKind::Ladder => Architecture::ladder(model.n_sites(), self.alpha, self.gamma)?,
        })
    }
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    arch: ArchArgs,
    #[arg(long, value_enum, default_value = "full")]
    factor: Factor,
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
    /// Trotter steps (full evolution only).
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Schedule JSON output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the target Hamiltonian (or factor) as Pauli-sum JSON.
    #[arg(long)]
    hamiltonian_out: Option<PathBuf>,
    /// Accept negative analog durations (simulation only).
    #[arg(long)]
    allow_signed_times: bool,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    schedule: PathBuf,
    #[arg(long, default_value_t = 0)]
    state_seed: u64,
    /// Write the final state: JSON for `.json`, little-endian f64 pairs otherwise.
    #[arg(long)]
    dump_state: Option<PathBuf>,
    /// Pauli-sum JSON; reports fidelity against its exact evolution for the schedule's t.
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    arch: ArchArgs,
    #[arg(long, default_value_t = 0.0)]
    t_min: f64,
    #[arg(long, default_value_t = 5.0)]
    t_max: f64,
    #[arg(long, default_value_t = 50)]
    t_points: usize,
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    l: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    seeds: usize,
    /// Seed of the first random state; state k uses base + k.
    #[arg(long, default_value_t = 0)]
    seed_base: u64,
    #[arg(long, default_value_t = 1)]
    site: usize,
    /// Results file; CSV to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; inferred from the file extension by default.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    allow_signed_times: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    schedule: PathBuf,
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_schedule(path: &Path) -> Result<Schedule> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Schedule::from_json(&text).with_context(|| format!("loading schedule {}", path.display()))
}

fn compile(args: &CompileArgs) -> Result<()> {
    let model = args.model.model()?;
    let arch = args.arch.architecture(&model)?;
    let opts = CompileOptions {
        allow_signed_times: args.allow_signed_times,
        ..Default::default()
    };
    let h = model.hamiltonian()?;
    let (schedule, target) = match args.factor {
        Factor::Full => (trotterize_model(&model, args.t, args.l, &arch, &opts)?, h),
        single => {
            if args.l != 1 {
                bail!("--l applies to --factor full only");
            }
            let kind = match single {
                Factor::Z => FactorKind::Z,
                Factor::Zz => FactorKind::Zz,
                Factor::Xx => FactorKind::Xx,
                _ => FactorKind::Yy,
            };
            let part = split_terms(&h)?.get(kind).clone();
            (compile_factor(&arch, kind, &part, args.t, &opts)?, part)
        }
    };
    if let Some(path) = &args.hamiltonian_out {
        write_text(path, &target.to_json()?)?;
    }
    let text = schedule.to_json()?;
    match &args.out {
        Some(path) => {
            write_text(path, &text)?;
            let s = schedule.stats();
            println!(
                "wrote {}: {} analog blocks, {} rotation layers, {} swaps",
                path.display(),
                s.analog_blocks,
                s.rotation_layers,
                s.swaps
            );
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn run(args: &RunArgs) -> Result<()> {
    let schedule = read_schedule(&args.schedule)?;
    let n_q = schedule.n_qubits();
    let psi = random_product_state(args.state_seed, n_q);
    let out = run_schedule(&psi, &schedule)?;
    if let Some(path) = &args.dump_state {
        out.dump(path)?;
    }
    let mut report = json!({
        "n_q": n_q,
        "state_seed": args.state_seed,
        "t": schedule.meta.t,
        "norm": out.norm(),
        "stats": schedule.stats(),
    });
    if n_q % 2 == 0 {
        let n = n_q / 2;
        let dens: Vec<f64> = (1..=n)
            .map(|i| density(&out, i, n))
            .collect::<Result<_, _>>()?;
        let docc: Vec<f64> = (1..=n)
            .map(|i| double_occupancy(&out, i, n))
            .collect::<Result<_, _>>()?;
        report["density"] = json!(dens);
        report["double_occupancy"] = json!(docc);
    }
    if let Some(path) = &args.hamiltonian {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let h = PauliSum::from_json(&text)
            .with_context(|| format!("loading Hamiltonian {}", path.display()))?;
        let exact = Propagator::new(&h)?.evolve(schedule.meta.t, psi.amplitudes())?;
        let exact = StateVector::from_amplitudes(n_q, exact)?;
        report["fidelity"] = json!(fidelity(&exact, &out)?);
    }
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let model = args.model.model()?;
    let arch = args.arch.architecture(&model)?;
    let format = match (args.format, &args.out) {
        (Some(Format::Csv), _) => OutputFormat::Csv,
        (Some(Format::Json), _) => OutputFormat::Json,
        (None, Some(path)) => OutputFormat::from_path(path),
        (None, None) => OutputFormat::Csv,
    };
    let cfg = ExperimentConfig {
        model,
        arch,
        times: TimeGrid::new(args.t_min, args.t_max, args.t_points)?,
        steps: args.l.clone(),
        seeds: args.seeds,
        base_seed: args.seed_base,
        site: args.site,
        options: CompileOptions {
            allow_signed_times: args.allow_signed_times,
            ..Default::default()
        },
        output: args.out.clone().map(|p| (p, format)),
    };
    let records = run_experiment(&cfg)?;
    match &args.out {
        Some(path) => println!("wrote {} records to {}", records.len(), path.display()),
        None => write_records(&records, format, io::stdout().lock())?,
    }
    Ok(())
}

fn stats(args: &StatsArgs) -> Result<()> {
    let schedule = read_schedule(&args.schedule)?;
    let report = json!({
        "arch": schedule.arch,
        "meta": schedule.meta,
        "stats": schedule.stats(),
        "final_layout": schedule.final_layout(),
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compile(a) => compile(a),
        Command::Run(a) => run(a),
        Command::Sweep(a) => sweep(a),
        Command::Stats(a) => stats(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(io::stderr(), "error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
