//! Batch front end: construct the graded families, run the named
//! verification suites, build the reduced family, and simulate flows.
//! All outputs are deterministic JSON/CSV; exit code 0 means pass,
//! 1 means a verification or runtime failure, 2 a usage or
//! configuration error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use gtoda_core::aks::reduce;
use gtoda_core::comm::CommPoly;
use gtoda_core::error::Error as CoreError;
use gtoda_core::family::{classical_family, delta_coefficients, quantum_family};
use gtoda_core::json as doc;
use gtoda_core::sim;
use gtoda_core::verify::{run_suite, Mode, Suite};

const OUT_DIR_ENV: &str = "GTODA_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "gtoda",
    about = "Exact commutative families of the generic Toda system and their flows",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the characteristic polynomial and write the graded family
    Charpoly(CharpolyArgs),
    /// Run a named verification suite
    Verify(VerifyArgs),
    /// Build the reduced family in the Borel enveloping algebra
    Reduce(ReduceArgs),
    /// Integrate a flow and report conserved-quantity drift
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Classical,
    Quantum,
    Both,
}

impl ModeArg {
    fn to_mode(self) -> Mode {
        match self {
            ModeArg::Classical => Mode::Classical,
            ModeArg::Quantum => Mode::Quantum,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Args)]
struct CharpolyArgs {
    /// Rank of gl_n
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Output path (stdout when absent); relative paths resolve under
    /// GTODA_OUT_DIR when set
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the cost guardrails (may run long)
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: poisson-commutativity, quantum-commutativity, grading,
    /// symmetrized-match, determinant-equivalence, conjugation,
    /// characters, aks-identity, ratio-commutativity, ore, parabolic
    #[arg(long)]
    suite: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModeArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Open,
    Kk,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    dt: f64,
    #[arg(long = "t-end")]
    t_end: f64,
    /// Spectral corner weight for the open chain
    #[arg(long, default_value_t = 0.0)]
    w: f64,
    /// Hamiltonian for the kk model, e.g. delta:0,1
    #[arg(long, default_value = "delta:0,1")]
    hamiltonian: String,
    /// JSON file with initial data ({"q":[..],"p":[..]} or {"x":{"i,j":v}})
    #[arg(long)]
    init: Option<PathBuf>,
    /// Seed for generated initial data when --init is absent
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Samples are recorded every this many steps
    #[arg(long, default_value_t = 100)]
    stride: usize,
    /// CSV trace path
    #[arg(long, default_value = "gtoda_trace.csv")]
    trace: PathBuf,
    /// Drift report path (stdout when absent)
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Charpoly(args) => cmd_charpoly(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Usage/config problems end up as Err (exit 2); verification failures
/// return Ok(1).
type CmdResult = anyhow::Result<ExitCode>;

fn resolve_out(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir).join(path),
        None => path.to_path_buf(),
    }
}

fn emit(out: &Option<PathBuf>, value: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        None => println!("{text}"),
        Some(path) => {
            let path = resolve_out(path);
            fs::write(&path, text + "\n")
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
        }
    }
    Ok(())
}

fn cmd_charpoly(args: CharpolyArgs) -> CmdResult {
    if args.n < 1 {
        anyhow::bail!("rank must be at least 1");
    }
    let limit = match args.mode {
        ModeArg::Classical => 5,
        ModeArg::Quantum => 4,
        ModeArg::Both => anyhow::bail!("charpoly needs --mode classical or quantum"),
    };
    if args.n > limit && !args.force {
        anyhow::bail!(
            "rank {} exceeds the {} guardrail ({limit}); pass --force to run anyway",
            args.n,
            match args.mode {
                ModeArg::Classical => "classical",
                _ => "quantum",
            }
        );
    }
    let value = match args.mode {
        ModeArg::Classical => doc::classical_family_to_json(&classical_family(args.n)?),
        ModeArg::Quantum => doc::quantum_family_to_json(&quantum_family(args.n)?),
        ModeArg::Both => unreachable!(),
    };
    emit(&args.out, &value)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let suite = Suite::from_str(&args.suite)?;
    let report = run_suite(suite, args.n, args.mode.to_mode(), args.force)?;
    emit(&args.out, &report.to_json())?;
    eprint!("{}", report.render_text());
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_reduce(args: ReduceArgs) -> CmdResult {
    if args.n < 1 {
        anyhow::bail!("rank must be at least 1");
    }
    if args.n > 3 && !args.force {
        anyhow::bail!(
            "rank {} exceeds the reduction guardrail (3); pass --force to run anyway",
            args.n
        );
    }
    match reduce(args.n) {
        Ok(red) => {
            emit(&args.out, &doc::reduced_family_to_json(&red))?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ CoreError::CharacterFailure { .. }) => {
            eprintln!("internal check failed: {e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_hamiltonian(selector: &str, n: usize) -> anyhow::Result<(String, CommPoly)> {
    if let Some(rest) = selector.strip_prefix("delta:") {
        let (k, i) = rest
            .split_once(',')
            .ok_or_else(|| anyhow::anyhow!("expected delta:k,i"))?;
        let k: usize = k.parse()?;
        let i: usize = i.parse()?;
        let coeffs = delta_coefficients(n, k)?;
        let poly = coeffs
            .get(i)
            .ok_or_else(|| anyhow::anyhow!("no lambda^{i} coefficient at level {k}"))?
            .clone();
        Ok((format!("delta[{k},{i}]"), poly))
    } else if let Some(path) = selector.strip_prefix("file:") {
        let text = fs::read_to_string(path)?;
        let poly = doc::comm_poly_from_json(&serde_json::from_str(&text)?)?;
        Ok((format!("file:{path}"), poly))
    } else {
        anyhow::bail!("hamiltonian must be delta:k,i or file:<path>");
    }
}

fn load_init_open(args: &SimulateArgs) -> anyhow::Result<(Vec<f64>, Vec<f64>)> {
    if let Some(path) = &args.init {
        let v: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
        let get = |key: &str| -> anyhow::Result<Vec<f64>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| anyhow::anyhow!("initial data needs array field `{key}`"))?
                .iter()
                .map(|x| {
                    x.as_f64()
                        .ok_or_else(|| anyhow::anyhow!("non-numeric entry"))
                })
                .collect()
        };
        let (q, p) = (get("q")?, get("p")?);
        if q.len() != args.n || p.len() != args.n {
            anyhow::bail!("initial data must have {} positions and momenta", args.n);
        }
        Ok((q, p))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let q = (0..args.n).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let p = (0..args.n).map(|_| rng.gen_range(-0.5..0.5)).collect();
        Ok((q, p))
    }
}

fn load_init_kk(args: &SimulateArgs) -> anyhow::Result<Vec<f64>> {
    let coords = sim::borel_coords(args.n);
    if let Some(path) = &args.init {
        let v: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
        let map = v
            .get("x")
            .and_then(Value::as_object)
            .ok_or_else(|| anyhow::anyhow!("initial data needs object field `x`"))?;
        let mut values: BTreeMap<(u8, u8), f64> = BTreeMap::new();
        for (key, val) in map {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| anyhow::anyhow!("coordinate keys look like \"i,j\""))?;
            values.insert(
                (i.trim().parse()?, j.trim().parse()?),
                val.as_f64()
                    .ok_or_else(|| anyhow::anyhow!("non-numeric entry"))?,
            );
        }
        Ok(coords
            .iter()
            .map(|v| values.get(v).copied().unwrap_or(0.0))
            .collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        Ok((0..coords.len())
            .map(|_| rng.gen_range(-0.5..0.5))
            .collect())
    }
}

fn cmd_simulate(args: SimulateArgs) -> CmdResult {
    if args.n < 1 {
        anyhow::bail!("rank must be at least 1");
    }
    if !(args.dt.is_finite() && args.dt > 0.0) {
        anyhow::bail!("dt must be positive and finite");
    }
    if !(args.t_end.is_finite() && args.t_end > 0.0) {
        anyhow::bail!("t-end must be positive and finite");
    }
    let steps = (args.t_end / args.dt).round().max(1.0) as usize;

    let outcome = match args.model {
        Model::Open => simulate_open(&args, steps),
        Model::Kk => simulate_kk(&args, steps),
    }?;
    let (traj, drift, coord_names, extra) = match outcome {
        SimOutcome::Finished(t, d, c, e) => (t, d, c, e),
        SimOutcome::BlewUp(t_last, msg) => {
            eprintln!("aborted: {msg}; last good time t = {t_last}");
            return Ok(ExitCode::from(1));
        }
    };

    let trace_path = resolve_out(&args.trace);
    let file = fs::File::create(&trace_path)
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", trace_path.display()))?;
    sim::write_csv(std::io::BufWriter::new(file), &coord_names, &traj, &drift)?;

    let mut fields = vec![
        (
            "model",
            json!(match args.model {
                Model::Open => "open",
                Model::Kk => "kk",
            }),
        ),
        ("n", json!(args.n)),
        ("dt", json!(args.dt)),
        ("t_end", json!(args.t_end)),
        ("trace", json!(trace_path.display().to_string())),
    ];
    fields.extend(extra);
    let report = drift.to_json(&fields);
    emit(&args.report, &report)?;
    Ok(ExitCode::SUCCESS)
}

enum SimOutcome {
    Finished(
        sim::Trajectory,
        sim::DriftReport,
        Vec<String>,
        Vec<(&'static str, Value)>,
    ),
    BlewUp(f64, String),
}

fn simulate_open(args: &SimulateArgs, steps: usize) -> anyhow::Result<SimOutcome> {
    let n = args.n;
    let (q, p) = load_init_open(args)?;
    let mut y0 = q;
    y0.extend_from_slice(&p);
    let field = sim::open_toda_field(n);
    let traj = match sim::integrate_rk4(&y0, 0.0, args.dt, steps, args.stride, &field) {
        Ok(t) => t,
        Err(CoreError::NonFinite { t } | CoreError::Overflow { t }) => {
            return Ok(SimOutcome::BlewUp(t, "state left the finite range".into()))
        }
        Err(e) => return Err(e.into()),
    };
    let drift = sim::spectral_drift(&traj, n, args.w);
    let mut coord_names: Vec<String> = (1..=n).map(|k| format!("q{k}")).collect();
    coord_names.extend((1..=n).map(|k| format!("p{k}")));
    Ok(SimOutcome::Finished(
        traj,
        drift,
        coord_names,
        vec![("w", json!(args.w))],
    ))
}

fn simulate_kk(args: &SimulateArgs, steps: usize) -> anyhow::Result<SimOutcome> {
    let n = args.n;
    let (h_name, h) = parse_hamiltonian(&args.hamiltonian, n)?;
    let y0 = load_init_kk(args)?;
    let field = sim::kk_flow_field(&h, n)?;
    let traj = match sim::integrate_rk4(&y0, 0.0, args.dt, steps, args.stride, &field) {
        Ok(t) => t,
        Err(CoreError::NonFinite { t }) => {
            return Ok(SimOutcome::BlewUp(t, "state left the finite range".into()))
        }
        Err(e) => return Err(e.into()),
    };
    let (mut names, mut monitors) = sim::minor_root_monitors(n)?;
    names.push(format!("H={h_name}"));
    monitors.push(sim::Monitor::Poly(sim::CompiledPoly::compile(&h, n)?));
    let drift = sim::monitor_drift(&traj, names, &monitors);
    let coord_names: Vec<String> = sim::borel_coords(n)
        .into_iter()
        .map(|(i, j)| format!("x{i}{j}"))
        .collect();
    Ok(SimOutcome::Finished(
        traj,
        drift,
        coord_names,
        vec![("hamiltonian", json!(h_name))],
    ))
}
