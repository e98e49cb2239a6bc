//! Command-line front end. Everything is driven through [`run`], which writes
//! reports to `out` and progress notes to `log`; the binary maps errors to
//! exit codes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use bellchain::bell::{classify, cluster_state, cluster_to_bell_subspace, BellLabel, LabelVector};
use bellchain::channels::{ground_space, Boundary, ModelKind, SpinChainModel};
use bellchain::qstate::{read_state, write_state, State};
use bellchain::qudit::{
    nbell_product, nbell_state, qudit_class_correction, qudit_correction, qudit_outcomes, qudit_teleport_branch,
    QuditLabel,
};
use bellchain::teleport::{
    channel_fidelity_profile, fidelity_bound, o_parameter, sweep_experiment, teleport_branch, teleport_sample,
    write_sweep_csv, Sampler,
};
use bellchain::{PureState, C64};
use clap::{Parser, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest chain for which `teleport` prints every branch.
pub const BRANCH_TABLE_PAIRS: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad or missing flags: exit status 1.
    #[error("usage: {0}")]
    Usage(String),
    /// Rejected input or failed computation: exit status 2.
    #[error(transparent)]
    Core(#[from] bellchain::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(_) | CliError::Io(_) => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    GroundState,
    Classify,
    Teleport,
    Sweep,
    QuditDemo,
    ClusterCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    HeisenbergNnn,
    Ising,
    Aklt,
}

#[derive(Debug, Parser)]
#[command(name = "bellchain", version, about = "Teleportation through spin-chain channels by chained Bell measurements")]
pub struct CommandConfig {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    #[arg(long)]
    pub sites: Option<usize>,
    /// Next-nearest-neighbour coupling.
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    /// Biquadratic coupling of the spin-1 chain.
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub alpha: f64,
    /// periodic | open | open-with-half-spin-ends
    #[arg(long)]
    pub boundary: Option<String>,
    /// Channel state file.
    #[arg(long)]
    pub channel: Option<PathBuf>,
    /// `theta,phi` or `re+imi,re+imi`.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub target: String,
    /// ++ | +- | -+ | -- | auto
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub subspace: String,
    #[arg(long, default_value_t = 2000)]
    pub channels: usize,
    /// Sampled runs for `teleport`; 0 enumerates branches instead.
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "biased")]
    pub sampler: String,
    #[arg(long, default_value_t = 3)]
    pub local_dim: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_real(s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| usage(format!("not a number: {s:?}")))
}

fn parse_complex(s: &str) -> Result<C64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(parse_real(s)?, 0.0));
    };
    // split before the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => parse_real(x)?,
    };
    Ok(C64::new(re, im))
}

/// Target qubit from Bloch angles `theta,phi` or two amplitudes
/// `re+imi,re+imi` (normalized).
pub fn parse_target(spec: &str) -> Result<PureState> {
    let parts: Vec<&str> = spec.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(usage(format!("target {spec:?} must have two comma-separated parts")));
    };
    if a.contains('i') || b.contains('i') {
        let amps = vec![parse_complex(a)?, parse_complex(b)?];
        return State::normalized(2, 1, amps).map_err(|e| usage(format!("target {spec:?}: {e}")));
    }
    let (theta, phi) = (parse_real(a)?, parse_real(b)?);
    let amps = vec![C64::new((theta / 2.0).cos(), 0.0), C64::from_polar((theta / 2.0).sin(), phi)];
    State::normalized(2, 1, amps).map_err(|e| usage(format!("target {spec:?}: {e}")))
}

fn parse_subspace(s: &str) -> Result<Option<BellLabel>> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| usage(format!("subspace {s:?} is not one of ++, +-, -+, --, auto")))
}

fn require<T: Copy>(value: Option<T>, flag: &str, command: &str) -> Result<T> {
    value.ok_or_else(|| usage(format!("{command} requires --{flag}")))
}

fn load_channel(config: &CommandConfig, command: &str) -> Result<PureState> {
    let path = config.channel.as_ref().ok_or_else(|| usage(format!("{command} requires --channel")))?;
    Ok(read_state(path)?)
}

fn build_model(config: &CommandConfig) -> Result<SpinChainModel<f64>> {
    let model = require(config.model, "model", "ground-state")?;
    let sites = require(config.sites, "sites", "ground-state")?;
    let base = match model {
        Model::HeisenbergNnn => SpinChainModel::heisenberg_nnn(sites, config.beta),
        Model::Ising => SpinChainModel::ising_af(sites),
        Model::Aklt => SpinChainModel {
            kind: ModelKind::Aklt { alpha: config.alpha },
            ..SpinChainModel::aklt(sites)
        },
    };
    Ok(match &config.boundary {
        Some(b) => base.with_boundary(b.parse::<Boundary>().map_err(|e| usage(e.to_string()))?),
        None => base,
    })
}

/// Executes one subcommand.
pub fn run(config: &CommandConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<()> {
    match config.command {
        Command::GroundState => ground_state(config, out),
        Command::Classify => classify_cmd(config, out),
        Command::Teleport => teleport(config, out),
        Command::Sweep => sweep(config, out, log),
        Command::QuditDemo => qudit_demo(config, out),
        Command::ClusterCheck => cluster_check(config, out),
    }
}

fn report_subspaces(state: &PureState, out: &mut dyn Write) -> Result<()> {
    let w = classify(state)?;
    let o = o_parameter(state)?;
    writeln!(out, "weights: {}", w.to_json())?;
    writeln!(out, "dominant: {} ({:.12})", w.argmax(), w.max_weight())?;
    let [sx, sy, sz] = o.components;
    writeln!(out, "O: {:.12} (Sx {sx:.12}, Sy {sy:.12}, Sz {sz:.12})", o.value)?;
    writeln!(out, "bound: {:.12}", fidelity_bound(&o))?;
    Ok(())
}

fn ground_state(config: &CommandConfig, out: &mut dyn Write) -> Result<()> {
    let model = build_model(config)?;
    let gs = ground_space(&model, 1e-10)?;
    writeln!(out, "seed: {}", config.seed)?;
    writeln!(out, "model: {:?}, sites {}, boundary {:?}", model.kind, model.sites, model.boundary)?;
    writeln!(out, "energy: {:.12}", gs.energy)?;
    writeln!(out, "degeneracy: {}", gs.degeneracy())?;
    writeln!(out, "residual: {:.3e}", gs.max_residual())?;
    let state = gs.ground_state();
    if state.local_dim() == 2 && state.sites() % 2 == 0 {
        report_subspaces(state, out)?;
    }
    if let Some(path) = &config.out {
        write_state(path, state)?;
        writeln!(out, "wrote: {}", path.display())?;
    }
    Ok(())
}

fn classify_cmd(config: &CommandConfig, out: &mut dyn Write) -> Result<()> {
    let state = load_channel(config, "classify")?;
    report_subspaces(&state, out)
}

fn teleport(config: &CommandConfig, out: &mut dyn Write) -> Result<()> {
    let channel = load_channel(config, "teleport")?;
    let target = parse_target(&config.target)?;
    let assumed = match parse_subspace(&config.subspace)? {
        Some(l) => l,
        None => classify(&channel)?.argmax(),
    };
    let pairs = channel.sites() / 2;
    writeln!(out, "seed: {}", config.seed)?;
    writeln!(out, "sites: {}, measured pairs: {pairs}, assumed subspace: {assumed}", channel.sites())?;
    if config.trials > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let (mut sum, mut min, mut flagged) = (0.0, f64::INFINITY, 0);
        for _ in 0..config.trials {
            let r = teleport_sample(&channel, &target, assumed, &mut rng)?;
            match r.fidelity {
                Some(f) => {
                    sum += f;
                    min = min.min(f);
                }
                None => flagged += 1,
            }
        }
        let kept = config.trials - flagged;
        writeln!(out, "trials: {}, flagged: {flagged}", config.trials)?;
        if kept > 0 {
            writeln!(out, "fidelity mean: {:.12}, min: {min:.12}", sum / kept as f64)?;
        }
        return Ok(());
    }
    if pairs <= BRANCH_TABLE_PAIRS {
        writeln!(out, "outcomes\tprobability\tcorrection\tfidelity")?;
        for labels in LabelVector::enumerate(pairs.max(1)) {
            let r = teleport_branch(&channel, &target, &labels, assumed)?;
            let f = r.fidelity.map_or("undefined".to_string(), |f| format!("{f:.12}"));
            writeln!(out, "{labels}\t{:.12}\t{}\t{f}", r.probability, r.applied_correction)?;
        }
    }
    let profile = channel_fidelity_profile(&channel, std::slice::from_ref(&target), assumed)?;
    writeln!(out, "fidelity min: {:.12}, mean: {:.12}", profile.min, profile.mean)?;
    Ok(())
}

fn sweep(config: &CommandConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<()> {
    let sites = config.sites.unwrap_or(4);
    let sampler: Sampler = config.sampler.parse().map_err(|e: bellchain::Error| usage(e.to_string()))?;
    let records = sweep_experiment::<f64>(config.channels, sites, config.seed, sampler)?;
    let violations = records.iter().filter(|r| r.fidelity_min < r.bound - 1e-9).count();
    let mean_violations = records.iter().filter(|r| r.fidelity_mean < r.bound - 1e-9).count();
    let summary = format!(
        "seed: {}\nchannels: {}, sites: {sites}, sampler: {}\nrows with F_min below bound: {violations}\n\
         rows with F_mean below bound: {mean_violations}",
        config.seed,
        records.len(),
        config.sampler
    );
    match &config.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_sweep_csv(&mut file, &records)?;
            file.flush()?;
            writeln!(out, "{summary}\nwrote: {}", path.display())?;
        }
        None => {
            write_sweep_csv(&mut *out, &records)?;
            writeln!(log, "{summary}")?;
        }
    }
    Ok(())
}

fn qudit_demo(config: &CommandConfig, out: &mut dyn Write) -> Result<()> {
    let n = config.local_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let target = State::random_haar(n, 1, &mut rng)?;
    writeln!(out, "seed: {}", config.seed)?;
    writeln!(out, "local dimension: {n}, Haar target")?;
    writeln!(out, "channel\toutcome\tcorrection\tprobability\tfidelity")?;
    let mut worst: f64 = 1.0;
    for ch in QuditLabel::all(n) {
        let channel = nbell_state::<f64>(n, ch)?;
        for outcome in qudit_outcomes(n, 1) {
            let r = qudit_teleport_branch(&channel, &target, &outcome, ch)?;
            let f = r.fidelity.unwrap_or(f64::NAN);
            worst = worst.min(f);
            let w = qudit_correction(n, ch, outcome[0])?;
            writeln!(out, "{ch}\t{}\t{w}\t{:.12}\t{f:.12}", outcome[0], r.probability)?;
        }
    }
    let labels = [QuditLabel::new(n, 1, 1), QuditLabel::new(n, 1, n - 1)];
    let channel = nbell_product::<f64>(n, &labels)?;
    let class = labels[0].plus(labels[1], n);
    let mut pair_worst: f64 = 1.0;
    for outcome in qudit_outcomes(n, 2) {
        let r = qudit_teleport_branch(&channel, &target, &outcome, class)?;
        pair_worst = pair_worst.min(r.fidelity.unwrap_or(f64::NAN));
        qudit_class_correction(n, class, &outcome)?;
    }
    writeln!(out, "single-pair min fidelity: {worst:.12}")?;
    writeln!(out, "two-pair channel {}{}: min fidelity {pair_worst:.12} over {} branches", labels[0], labels[1], (n * n).pow(2))?;
    Ok(())
}

fn cluster_check(config: &CommandConfig, out: &mut dyn Write) -> Result<()> {
    let sites = config.sites.unwrap_or(2);
    let before = classify(&cluster_state::<f64>(sites)?)?;
    let mapping = cluster_to_bell_subspace::<f64>(sites)?;
    let after = classify(&mapping.mapped)?;
    writeln!(out, "sites: {sites}")?;
    writeln!(out, "before: {}", before.to_json())?;
    writeln!(out, "after: {}", after.to_json())?;
    Ok(())
}
