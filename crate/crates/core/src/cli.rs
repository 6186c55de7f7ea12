//! Command implementations behind the `vcplab` binary.
//!
//! Exit codes: 0 when every requested check passed, 1 when a check failed,
//! 2 on usage or I/O errors. Identical arguments give byte-identical output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::densesim::{
    apply_pauli_channel, gates, sample_vcp_shots, vcp_circuit_expectations, CMatrix,
    DensityMatrix, ShotEstimate, VcpCircuitSpec,
};
use crate::io::{self, format_plain};
use crate::pauli::{DepolarizingSpec, PauliChannel, PauliIndex};
use crate::regions::{
    emit_region_grid, iid_gate_bounds, log_spaced, write_iid_csv, write_region_csv, IidBounds,
    RegionPoint,
};
use crate::sampling::random_density_matrix;
use crate::vcp::{
    alpha_level, effective_mu_order_m, purify, theorem6_conditions, EffectiveChannelResult,
    NoisyAdvantageCheck, OrderRule, SwapNoiseSpec,
};
use crate::verify::{self, VerificationReport, VerifyConfig};
use crate::{Error, Result};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "VCPLAB_THREADS";

const CSV_DIGITS: usize = 15;

#[derive(Debug, Parser)]
#[command(name = "vcplab", version, about = "Virtual channel purification analysis toolkit")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Numerical tolerance for pass/fail decisions.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, compose, purify or conjugate Pauli channels.
    Channel(ChannelArgs),
    /// Effective channel of a VCP circuit with noisy controlled-SWAPs.
    Mu(MuArgs),
    /// Advantage-region grid for depolarizing noise.
    Region(RegionArgs),
    /// Gate-count bounds for circuits of IID depolarizing gates.
    Iid(IidArgs),
    /// Seeded verification campaign.
    Verify(VerifyArgs),
    /// Density-matrix simulation of the order-2 VCP circuit.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelAction {
    Compose,
    Purify,
    Conjugate,
    Depolarizing,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    #[arg(value_enum)]
    pub action: ChannelAction,
    /// Input channel files (two for compose, one for purify and conjugate).
    pub inputs: Vec<PathBuf>,
    /// Purification order.
    #[arg(long)]
    pub order: Option<u32>,
    /// Clifford as a gate word such as "h0 s1 cx01".
    #[arg(long)]
    pub gates: Option<String>,
    /// Qubit count for `depolarizing`.
    #[arg(long)]
    pub qubits: Option<usize>,
    /// Depolarizing parameter.
    #[arg(long)]
    pub param: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    /// Swap-noise file (swap-noise/v1).
    #[arg(long)]
    pub swap: PathBuf,
    /// Circuit-noise file (pauli-channel/v1).
    #[arg(long)]
    pub circuit: PathBuf,
    /// VCP order; must match the swap-noise file.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// Grid points per axis.
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    /// Grid points along q, when different from `--grid`.
    #[arg(long)]
    pub grid_q: Option<usize>,
}

#[derive(Debug, Args)]
pub struct IidArgs {
    /// Swap-noise parameters (repeatable).
    #[arg(long = "p", num_args = 1.., default_values_t = [0.05, 0.1, 0.2, 0.3, 0.4, 0.5])]
    pub p: Vec<f64>,
    /// A single gate-noise value instead of the log-spaced range.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, default_value_t = 1e-4)]
    pub q_min: f64,
    #[arg(long, default_value_t = 1e-1)]
    pub q_max: f64,
    #[arg(long, default_value_t = 50)]
    pub q_count: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// lemma1, thm1, thm2, thm3, thm6 or thm4-oracle.
    #[arg(long)]
    pub theorem: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// System size N.
    #[arg(long, default_value_t = 1)]
    pub qubits: usize,
    /// Tuples the thm3 order condition ranges over.
    #[arg(long, value_enum, default_value_t = OrderRuleArg::NonIdentity)]
    pub order_rule: OrderRuleArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderRuleArg {
    NonIdentity,
    IdentityInclusive,
}

impl From<OrderRuleArg> for OrderRule {
    fn from(a: OrderRuleArg) -> Self {
        match a {
            OrderRuleArg::NonIdentity => OrderRule::NonIdentity,
            OrderRuleArg::IdentityInclusive => OrderRule::IdentityInclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputState {
    Zero,
    Mixed,
    Random,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Circuit-noise file (pauli-channel/v1).
    #[arg(long)]
    pub circuit: PathBuf,
    /// Order-2 swap-noise file (swap-noise/v1).
    #[arg(long)]
    pub swap: PathBuf,
    /// Observable file (observable/v1).
    #[arg(long)]
    pub observable: PathBuf,
    #[arg(long, value_enum, default_value_t = InputState::Random)]
    pub state: InputState,
    /// Clifford applied to both copies, as a gate word.
    #[arg(long)]
    pub gates: Option<String>,
    /// Also estimate the ratio from this many sampled shots.
    #[arg(long)]
    pub shots: Option<usize>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_PASS;
        }
    };
    configure_threads();
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // A pool that already exists keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Channel(a) => {
            let (channel, summary) = cmd_channel(a)?;
            let text = io::write_channel(&channel);
            match &cli.out {
                Some(path) => {
                    io::write_file(path, &text)?;
                    emit(stdout, &summary)?;
                }
                None => {
                    emit(stdout, &text)?;
                    emit(stderr, &summary)?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Mu(a) => {
            let swap = io::read_swap_noise(&io::read_file(&a.swap)?)?;
            let circuit = io::read_channel(&io::read_file(&a.circuit)?)?;
            let report = cmd_mu(&swap, &circuit, a.order.unwrap_or(swap.order()), cli.tolerance)?;
            if let Some(path) = &cli.out {
                io::write_file(path, &io::write_channel(&report.result.mu))?;
            }
            let text = match cli.format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => to_json(&MuSummary::from(&report))?,
                OutputFormat::Csv => mu_csv(&report),
            };
            emit(stdout, &text)?;
            Ok(if report.check.holds() { EXIT_PASS } else { EXIT_CHECK_FAILED })
        }
        Command::Region(a) => {
            let rows = cmd_region(a.grid, a.grid_q.unwrap_or(a.grid))?;
            let text = match cli.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => csv_string(|w| write_region_csv(&rows, w))?,
                OutputFormat::Json => to_json(&rows)?,
            };
            write_output(cli.out.as_deref(), stdout, &text)?;
            Ok(EXIT_PASS)
        }
        Command::Iid(a) => {
            let qs = match a.q {
                Some(q) => vec![q],
                None => log_spaced(a.q_min, a.q_max, a.q_count)?,
            };
            let rows = cmd_iid(&a.p, &qs)?;
            let text = match cli.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => csv_string(|w| write_iid_csv(&rows, w))?,
                OutputFormat::Json => to_json(&rows)?,
            };
            write_output(cli.out.as_deref(), stdout, &text)?;
            Ok(EXIT_PASS)
        }
        Command::Verify(a) => {
            let mut config = VerifyConfig::new(a.theorem.parse()?, a.trials, cli.seed, a.qubits)
                .with_order_rule(a.order_rule.into());
            if let Some(t) = cli.tolerance {
                config = config.with_slack(t);
            }
            let report = cmd_verify(&config)?;
            let text = match cli.format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Csv => verify_csv(&report),
            };
            write_output(cli.out.as_deref(), stdout, &text)?;
            Ok(if report.pass { EXIT_PASS } else { EXIT_CHECK_FAILED })
        }
        Command::Simulate(a) => {
            let report = cmd_simulate(a, cli.seed, cli.tolerance)?;
            let text = match cli.format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Csv => simulate_csv(&report),
            };
            write_output(cli.out.as_deref(), stdout, &text)?;
            Ok(if report.pass { EXIT_PASS } else { EXIT_CHECK_FAILED })
        }
    }
}

fn emit(w: &mut dyn Write, text: &str) -> Result<()> {
    w.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn write_output(path: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match path {
        Some(p) => io::write_file(p, text),
        None => emit(stdout, text),
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_string(f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    f(&mut buf).map_err(|source| Error::Io {
        path: PathBuf::from("<buffer>"),
        source,
    })?;
    Ok(String::from_utf8(buf).expect("CSV writers emit UTF-8"))
}

fn load_channel(path: &Path) -> Result<PauliChannel> {
    io::read_channel(&io::read_file(path)?)
}

/// Parses a gate word such as `"h0 s1 cx01"` into an `n`-qubit unitary.
/// Gates apply left to right.
pub fn parse_gate_word(word: &str, num_qubits: usize) -> Result<CMatrix> {
    let bad = |tok: &str| Error::domain(format!("unknown gate {tok:?}"));
    let qubit = |s: &str, tok: &str| -> Result<usize> {
        let q: usize = s.parse().map_err(|_| bad(tok))?;
        if q >= num_qubits {
            return Err(Error::domain(format!("gate {tok:?} addresses qubit {q} of {num_qubits}")));
        }
        Ok(q)
    };
    let mut u = gates::identity(num_qubits);
    for tok in word.split_whitespace() {
        let g = if let Some(rest) = tok.strip_prefix("cx") {
            let mut chars = rest.chars();
            let (c, t) = match (chars.next(), chars.next(), chars.next()) {
                (Some(c), Some(t), None) => (c.to_string(), t.to_string()),
                _ => return Err(bad(tok)),
            };
            gates::cnot(qubit(&c, tok)?, qubit(&t, tok)?, num_qubits)?
        } else if let Some(rest) = tok.strip_prefix('h') {
            gates::embed(&gates::hadamard(), qubit(rest, tok)?, num_qubits)?
        } else if let Some(rest) = tok.strip_prefix('s') {
            gates::embed(&gates::phase(), qubit(rest, tok)?, num_qubits)?
        } else {
            return Err(bad(tok));
        };
        u = g * u;
    }
    Ok(u)
}

fn channel_summary(c: &PauliChannel) -> String {
    let mut s = format!("identity_weight {}\n", format_plain(c.identity_weight(), CSV_DIGITS));
    if c.is_identity_dominant() {
        for order in 1..=4 {
            if let Ok(a) = alpha_level(c, order) {
                s.push_str(&format!("alpha_{order} {}\n", format_plain(a, CSV_DIGITS)));
            }
        }
    } else {
        s.push_str("identity-dominant false\n");
    }
    s
}

/// Returns the resulting channel and a short text summary.
pub fn cmd_channel(a: &ChannelArgs) -> Result<(PauliChannel, String)> {
    let want_inputs = |k: usize| -> Result<()> {
        if a.inputs.len() != k {
            return Err(Error::domain(format!(
                "{:?} takes {k} input file(s), got {}",
                a.action,
                a.inputs.len()
            )));
        }
        Ok(())
    };
    let channel = match a.action {
        ChannelAction::Compose => {
            want_inputs(2)?;
            load_channel(&a.inputs[0])?.compose(&load_channel(&a.inputs[1])?)?
        }
        ChannelAction::Purify => {
            want_inputs(1)?;
            let order = a.order.ok_or_else(|| Error::domain("purify needs --order"))?;
            purify(&load_channel(&a.inputs[0])?, order)?
        }
        ChannelAction::Conjugate => {
            want_inputs(1)?;
            let c = load_channel(&a.inputs[0])?;
            let word = a.gates.as_deref().ok_or_else(|| Error::domain("conjugate needs --gates"))?;
            let u = parse_gate_word(word, c.num_qubits())?;
            c.conjugate(&gates::clifford_permutation_of(&u, c.num_qubits())?)?
        }
        ChannelAction::Depolarizing => {
            want_inputs(0)?;
            let n = a.qubits.ok_or_else(|| Error::domain("depolarizing needs --qubits"))?;
            let p = a.param.ok_or_else(|| Error::domain("depolarizing needs --param"))?;
            PauliChannel::depolarizing(DepolarizingSpec::new(n, p)?)?
        }
    };
    let summary = channel_summary(&channel);
    Ok((channel, summary))
}

pub struct MuReport {
    pub result: EffectiveChannelResult,
    pub circuit: PauliChannel,
    pub check: NoisyAdvantageCheck,
}

#[derive(Serialize)]
struct MuSummary {
    normalization: f64,
    mu: Vec<f64>,
    tau: Vec<f64>,
    advantage: NoisyAdvantageCheck,
    conditions_hold: bool,
}

impl From<&MuReport> for MuSummary {
    fn from(r: &MuReport) -> Self {
        Self {
            normalization: r.result.normalization,
            mu: r.result.mu.probs().to_vec(),
            tau: r.result.tau.clone(),
            advantage: r.check,
            conditions_hold: r.check.holds(),
        }
    }
}

fn mu_csv(r: &MuReport) -> String {
    let n = r.circuit.num_qubits();
    let mut s = String::from("k,pauli,tau,mu,q\n");
    for k in 0..r.circuit.dim() {
        s.push_str(&format!(
            "{k},{},{},{},{}\n",
            PauliIndex(k).label(n),
            format_plain(r.result.tau[k], CSV_DIGITS),
            format_plain(r.result.mu.probs()[k], CSV_DIGITS),
            format_plain(r.circuit.probs()[k], CSV_DIGITS)
        ));
    }
    s
}

/// Effective channel plus the noisy-advantage conditions against `circuit`.
pub fn cmd_mu(
    swap: &SwapNoiseSpec,
    circuit: &PauliChannel,
    order: usize,
    tolerance: Option<f64>,
) -> Result<MuReport> {
    let result = effective_mu_order_m(swap, circuit, order)?;
    let check = theorem6_conditions(&result.mu, circuit, tolerance.unwrap_or(verify::DEFAULT_SLACK))?;
    Ok(MuReport {
        result,
        circuit: circuit.clone(),
        check,
    })
}

pub fn cmd_region(p_steps: usize, q_steps: usize) -> Result<Vec<RegionPoint>> {
    emit_region_grid(p_steps, q_steps)
}

/// One row per `(p, q)` pair, `p`-major.
pub fn cmd_iid(ps: &[f64], qs: &[f64]) -> Result<Vec<IidBounds>> {
    ps.iter()
        .flat_map(|&p| qs.iter().map(move |&q| iid_gate_bounds(p, q)))
        .collect()
}

pub fn cmd_verify(config: &VerifyConfig) -> Result<VerificationReport> {
    verify::run(config)
}

fn verify_csv(r: &VerificationReport) -> String {
    let mut s = String::from("theorem,num_qubits,trials,seed,max_violation,rejected_samples,failures,pass\n");
    s.push_str(&format!(
        "{},{},{},{},{:e},{},{},{}\n",
        r.theorem.as_str(),
        r.num_qubits,
        r.trials,
        r.seed,
        r.max_violation,
        r.rejected_samples,
        r.failures.len(),
        r.pass
    ));
    s
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub seed: u64,
    pub num_qubits: usize,
    pub num: f64,
    pub den: f64,
    pub ratio_circuit: f64,
    pub ratio_formula: f64,
    pub abs_diff: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<ShotEstimate>,
    pub pass: bool,
}

fn simulate_csv(r: &SimulateReport) -> String {
    format!(
        "seed,N,ratio_circuit,ratio_formula,abs_diff,pass\n{},{},{},{},{:e},{}\n",
        r.seed,
        r.num_qubits,
        format_plain(r.ratio_circuit, CSV_DIGITS),
        format_plain(r.ratio_formula, CSV_DIGITS),
        r.abs_diff,
        r.pass
    )
}

/// Simulates the circuit and compares with `Tr(O E_μ(CρC†))`.
pub fn cmd_simulate(a: &SimulateArgs, seed: u64, tolerance: Option<f64>) -> Result<SimulateReport> {
    let circuit = load_channel(&a.circuit)?;
    let swap = io::read_swap_noise(&io::read_file(&a.swap)?)?;
    let obs = io::read_observable(&io::read_file(&a.observable)?)?;
    let n = circuit.num_qubits();
    let rho = match a.state {
        InputState::Zero => DensityMatrix::zero_state(n)?,
        InputState::Mixed => DensityMatrix::maximally_mixed(n)?,
        InputState::Random => random_density_matrix(n, &mut ChaCha8Rng::seed_from_u64(seed))?,
    };
    let mut spec = VcpCircuitSpec::new(rho.clone(), obs.clone(), circuit.clone(), &swap)?;
    let joint = swap.to_dense()?;
    let (moved, first) = match &a.gates {
        Some(word) => {
            let u = parse_gate_word(word, n)?;
            spec = spec.with_clifford(u.clone())?;
            let g2 = spec.clifford().expect("just set").1.parallel(2)?;
            (rho.evolve(&u)?, joint.conjugate(&g2)?)
        }
        None => (rho, joint.clone()),
    };
    let exp = vcp_circuit_expectations(&spec)?;
    let ratio_circuit = exp.ratio()?;
    let mu = crate::vcp::effective_mu_grouped(&first, &joint, &circuit, 2)?.mu;
    let ratio_formula = obs.expectation(&apply_pauli_channel(&moved, &mu)?)?;
    let shots = a.shots.map(|k| sample_vcp_shots(&spec, k, seed)).transpose()?;
    let tolerance = tolerance.unwrap_or(verify::ORACLE_TOL);
    let abs_diff = (ratio_circuit - ratio_formula).abs();
    Ok(SimulateReport {
        seed,
        num_qubits: n,
        num: exp.num,
        den: exp.den,
        ratio_circuit,
        ratio_formula,
        abs_diff,
        tolerance,
        shots,
        pass: abs_diff <= tolerance,
    })
}
