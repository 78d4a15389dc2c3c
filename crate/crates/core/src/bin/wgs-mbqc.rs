use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wgs_mbqc::harness::{
    self, emit_records, format_table, run_disorder, run_sweep, table1_report, thresholds, write_json,
    AlphaGrid, SweepConfig, Table1Options, ThresholdOptions,
};
use wgs_mbqc::robustness::SamplingMode;
use wgs_mbqc::wgs::DistanceMode;
use wgs_mbqc::{Error, Gate, Result};

const OUT_DIR_ENV: &str = "WGS_MBQC_OUT_DIR";
const THREADS_ENV: &str = "WGS_MBQC_THREADS";

#[derive(Parser)]
#[command(name = "wgs-mbqc", version, about = "MBQC gate fidelities on power-law weighted graph states")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    /// Directory that relative output paths are resolved against.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity records over a (gate, α, λ, n, σ) grid.
    Sweep(GridArgs),
    /// Unsharp-measurement drops Δⁿ (defaults λ = 0.95, 0.85, 0.75).
    Unsharp(GridArgs),
    /// Quenched-disorder errors δ_σ (defaults σ = 0.01, 0.05, 0.1).
    Disorder(GridArgs),
    /// α_max, α_s and α_th for one gate.
    Thresholds(ThresholdArgs),
    /// Reproduce the published threshold table.
    Table1(Table1Args),
    /// Run the invariant suite; exit code 1 if any check fails.
    Validate,
}

#[derive(Args)]
struct GridArgs {
    /// TOML file with SweepConfig keys; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "gate", value_name = "GATE")]
    gates: Vec<String>,
    #[arg(long)]
    alpha_start: Option<f64>,
    #[arg(long)]
    alpha_stop: Option<f64>,
    #[arg(long)]
    alpha_step: Option<f64>,
    /// Explicit α values (overrides the range).
    #[arg(long = "alpha", value_delimiter = ',')]
    alphas: Vec<f64>,
    #[arg(long = "lambda", value_delimiter = ',')]
    lambdas: Vec<f64>,
    #[arg(long = "n", value_delimiter = ',')]
    ns: Vec<usize>,
    #[arg(long = "sigma", value_delimiter = ',')]
    sigmas: Vec<f64>,
    #[arg(long)]
    realizations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// per-bond | per-site
    #[arg(long)]
    sampling: Option<String>,
    /// CNOT distance convention: label-chain | graph | euclidean
    #[arg(long)]
    distance_mode: Option<String>,
    /// Evolution time t.
    #[arg(long)]
    time: Option<f64>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    gate: String,
    #[arg(long)]
    distance_mode: Option<String>,
    #[arg(long, default_value_t = 1e-2)]
    saturation_tol: f64,
    #[arg(long, default_value_t = 0.02)]
    step: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    /// Force the CNOT distance convention instead of calibrating.
    #[arg(long)]
    cnot_distance_mode: Option<String>,
    #[arg(long, default_value_t = 1e-2)]
    saturation_tol: f64,
    /// Print JSON instead of the text table.
    #[arg(long)]
    json: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

enum Preset {
    Sweep,
    Unsharp,
    Disorder,
}

impl GridArgs {
    fn into_config(self, preset: Preset) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(p) => SweepConfig::from_toml_file(p)?,
            None => {
                let mut c = SweepConfig::default();
                match preset {
                    Preset::Sweep => {}
                    Preset::Unsharp => c.lambdas = vec![0.95, 0.85, 0.75],
                    Preset::Disorder => c.sigmas = vec![0.01, 0.05, 0.1],
                }
                c
            }
        };
        if !self.gates.is_empty() {
            cfg.gates = self.gates.iter().map(|g| g.parse()).collect::<Result<Vec<Gate>>>()?;
        }
        if !self.alphas.is_empty() {
            cfg.alpha = AlphaGrid::Points(self.alphas);
        } else if self.alpha_start.is_some() || self.alpha_stop.is_some() || self.alpha_step.is_some() {
            let (mut start, mut stop, mut step) = match cfg.alpha {
                AlphaGrid::Range { start, stop, step } => (start, stop, step),
                AlphaGrid::Points(_) => (0.0, 12.0, 0.02),
            };
            start = self.alpha_start.unwrap_or(start);
            stop = self.alpha_stop.unwrap_or(stop);
            step = self.alpha_step.unwrap_or(step);
            cfg.alpha = AlphaGrid::Range { start, stop, step };
        }
        if !self.lambdas.is_empty() {
            cfg.lambdas = self.lambdas;
        }
        if !self.ns.is_empty() {
            cfg.ns = Some(self.ns);
        }
        if !self.sigmas.is_empty() {
            cfg.sigmas = self.sigmas;
        }
        if let Some(r) = self.realizations {
            cfg.realizations = r;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(s) = self.sampling {
            cfg.sampling = match s.as_str() {
                "per-bond" => SamplingMode::PerBond,
                "per-site" => SamplingMode::PerSite,
                other => return Err(Error::InvalidConfig(format!("unknown sampling `{other}`"))),
            };
        }
        if let Some(m) = self.distance_mode {
            cfg.distance_mode = m.parse()?;
        }
        if let Some(t) = self.time {
            cfg.time = t;
        }
        if let Some(f) = self.format {
            cfg.format = f.parse()?;
        }
        if self.output.is_some() {
            cfg.output = self.output;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn resolve(out_dir: Option<&Path>, path: Option<PathBuf>) -> Option<PathBuf> {
    match (out_dir, path) {
        (Some(dir), Some(p)) if p.is_relative() => Some(dir.join(p)),
        (_, p) => p,
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    }
    let dir = cli.out_dir.as_deref();
    match cli.command {
        Command::Sweep(args) => grid(args.into_config(Preset::Sweep)?, dir),
        Command::Unsharp(args) => grid(args.into_config(Preset::Unsharp)?, dir),
        Command::Disorder(args) => {
            let cfg = args.into_config(Preset::Disorder)?;
            let rows = run_disorder(&cfg)?;
            emit_records(&rows, cfg.format, resolve(dir, cfg.output).as_deref())?;
            Ok(true)
        }
        Command::Thresholds(args) => {
            let gate: Gate = args.gate.parse()?;
            let mode = args.distance_mode.map(|m| m.parse()).transpose()?;
            let setup = match mode {
                Some(m) => wgs_mbqc::GateSetup::with_distance_mode(gate, m),
                None => wgs_mbqc::GateSetup::new(gate),
            };
            let opts = ThresholdOptions {
                step: args.step,
                saturation_tol: args.saturation_tol,
                ..Default::default()
            };
            let report = thresholds(&setup, &opts)?;
            to_json(&report, resolve(dir, args.output))?;
            Ok(true)
        }
        Command::Table1(args) => {
            let opts = Table1Options {
                thresholds: ThresholdOptions { saturation_tol: args.saturation_tol, ..Default::default() },
                cnot_mode: args.cnot_distance_mode.map(|m| m.parse::<DistanceMode>()).transpose()?,
            };
            let report = table1_report(&opts)?;
            let path = resolve(dir, args.output);
            if args.json {
                to_json(&report, path)?;
            } else {
                let text = format_table(&report);
                match path {
                    Some(p) => std::fs::write(p, text)?,
                    None => print!("{text}"),
                }
            }
            Ok(true)
        }
        Command::Validate => {
            let checks = harness::run_validation()?;
            for c in &checks {
                println!("{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}

fn grid(cfg: SweepConfig, dir: Option<&Path>) -> Result<bool> {
    let out = run_sweep(&cfg)?;
    emit_records(&out.records, cfg.format, resolve(dir, cfg.output.clone()).as_deref())?;
    for f in &out.failures {
        eprintln!(
            "failed: gate={} alpha={} lambda={} n={} sigma={}: {}",
            f.gate, f.alpha, f.lambda, f.n, f.sigma, f.error
        );
    }
    Ok(out.failures.is_empty())
}

fn to_json<T: serde::Serialize>(value: &T, path: Option<PathBuf>) -> Result<()> {
    match path {
        Some(p) => write_json(value, std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => write_json(value, std::io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
