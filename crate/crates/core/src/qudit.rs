//! N-level generalization: N-Bell states, the Weyl correction group generated
//! by the cyclic shift `P` and the clock `Q`, and teleportation through
//! chains of qudits.
//!
//! `P` has ones on the superdiagonal and in the bottom-left corner, so
//! `P|j⟩ = |j−1⟩`; `Q = diag(1, ω, …, ω^{N−1})` with `ω = e^{2πi/N}`.
//! With these matrices `QP = ω⁻¹PQ`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::qstate::{Operator, State};
use crate::scalar::{cis, cre, Amp, Real};
use crate::teleport::protocol::{check_target, contract_all_but_last, corrected_fidelity};

/// `|A B} = (1/√N) Σ_i ω^{B i} |i, i+A⟩`, with `A, B ∈ 0..N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuditLabel {
    pub a: usize,
    pub b: usize,
}

impl QuditLabel {
    pub fn new(n: usize, a: usize, b: usize) -> Self {
        QuditLabel { a: a % n, b: b % n }
    }

    /// All `N²` labels, `A` slowest.
    pub fn all(n: usize) -> impl Iterator<Item = QuditLabel> {
        (0..n).flat_map(move |a| (0..n).map(move |b| QuditLabel { a, b }))
    }

    /// Index in [`QuditLabel::all`] order.
    pub fn index(self, n: usize) -> usize {
        self.a * n + self.b
    }

    /// Componentwise sum mod `n`.
    pub fn plus(self, other: QuditLabel, n: usize) -> QuditLabel {
        QuditLabel::new(n, self.a + other.a, self.b + other.b)
    }
}

impl fmt::Display for QuditLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// `ω^phase_power · P^p_power · Q^q_power`, exponents reduced mod `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeylCorrection {
    pub p_power: usize,
    pub q_power: usize,
    pub phase_power: usize,
}

impl WeylCorrection {
    pub const IDENTITY: WeylCorrection = WeylCorrection { p_power: 0, q_power: 0, phase_power: 0 };

    pub fn new(n: usize, p_power: i64, q_power: i64, phase_power: i64) -> Self {
        let m = |x: i64| x.rem_euclid(n as i64) as usize;
        WeylCorrection { p_power: m(p_power), q_power: m(q_power), phase_power: m(phase_power) }
    }

    pub fn matrix<T: Real>(self, n: usize) -> Operator<T> {
        let mut m = Operator::zeros(n);
        // column j: Q^q gives ω^{qj}, then P^p sends |j⟩ to |j−p⟩
        for j in 0..n {
            let row = (j + n - self.p_power % n) % n;
            m.set(row, j, omega_pow(n, (self.q_power * j + self.phase_power) as i64));
        }
        m
    }

    /// Same element up to the global phase.
    pub fn same_class(self, other: WeylCorrection) -> bool {
        self.p_power == other.p_power && self.q_power == other.q_power
    }

    pub fn inverse(self, n: usize) -> WeylCorrection {
        let (p, q, c) = (self.p_power as i64, self.q_power as i64, self.phase_power as i64);
        WeylCorrection::new(n, -p, -q, -c - p * q)
    }
}

impl fmt::Display for WeylCorrection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{} P^{} Q^{}", self.phase_power, self.p_power, self.q_power)
    }
}

/// `ω^k`, exact at quarter turns.
pub fn omega_pow<T: Real>(n: usize, k: i64) -> Amp<T> {
    let k = k.rem_euclid(n as i64) as usize;
    if (4 * k) % n == 0 {
        let (re, im) = match 4 * k / n {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
        return Amp::new(T::lit(re), T::lit(im));
    }
    cis(T::lit(2.0 * std::f64::consts::PI * k as f64 / n as f64))
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Validation(format!("local dimension must be at least 2, got {n}")));
    }
    Ok(())
}

pub fn nbell_state<T: Real>(n: usize, label: QuditLabel) -> Result<State<T>> {
    check_n(n)?;
    let norm = T::lit(n as f64).sqrt().recip();
    let mut amps = vec![cre(T::zero()); n * n];
    for i in 0..n {
        amps[i * n + (i + label.a) % n] = omega_pow::<T>(n, (label.b * i) as i64) * norm;
    }
    State::from_amplitudes(n, 2, amps)
}

/// `(P, Q)`.
pub fn weyl_matrices<T: Real>(n: usize) -> Result<(Operator<T>, Operator<T>)> {
    check_n(n)?;
    Ok((
        WeylCorrection { p_power: 1, ..Default::default() }.matrix(n),
        WeylCorrection { q_power: 1, ..Default::default() }.matrix(n),
    ))
}

/// Product `a·b` (b applied first), reordered with `Q^q P^p = ω^{−qp} P^p Q^q`.
pub fn compose_weyl(a: WeylCorrection, b: WeylCorrection, n: usize) -> WeylCorrection {
    let phase = a.phase_power as i64 + b.phase_power as i64 - (a.q_power * b.p_power) as i64;
    WeylCorrection::new(n, (a.p_power + b.p_power) as i64, (a.q_power + b.q_power) as i64, phase)
}

type CacheKey = (usize, QuditLabel, QuditLabel);

fn cache() -> &'static RwLock<HashMap<CacheKey, WeylCorrection>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, WeylCorrection>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Correction left on the output when `|v⟩ ⊗ |channel}` is projected onto
/// `|outcome}` on its first two qudits: the residual map is `W/N`.
///
/// Solved numerically by expanding the residual in the `P^a Q^b` basis and
/// cached per key.
pub fn qudit_correction(n: usize, channel: QuditLabel, outcome: QuditLabel) -> Result<WeylCorrection> {
    check_n(n)?;
    let channel = QuditLabel::new(n, channel.a, channel.b);
    let outcome = QuditLabel::new(n, outcome.a, outcome.b);
    let key = (n, channel, outcome);
    if let Some(w) = cache().read().expect("cache lock").get(&key) {
        return Ok(*w);
    }
    let w = solve_correction(n, channel, outcome)?;
    cache().write().expect("cache lock").insert(key, w);
    Ok(w)
}

fn solve_correction(n: usize, channel: QuditLabel, outcome: QuditLabel) -> Result<WeylCorrection> {
    let c = nbell_state::<f64>(n, channel)?;
    let o = nbell_state::<f64>(n, outcome)?;
    let (c, o) = (c.amplitudes(), o.amplitudes());
    // residual R[k][x] = Σ_y conj(o[x, y]) c[y, k]
    let mut r = Operator::<f64>::zeros(n);
    for k in 0..n {
        for x in 0..n {
            let v = (0..n).fold(cre(0.0), |acc, y| acc + o[x * n + y].conj() * c[y * n + k]);
            r.set(k, x, v);
        }
    }
    let scale = (n as f64).recip();
    let integrity = || {
        Error::Integrity(format!(
            "residual for channel {channel} and outcome {outcome} at N = {n} is not a single Weyl operator"
        ))
    };
    for p in 0..n {
        for q in 0..n {
            let basis = WeylCorrection { p_power: p, q_power: q, phase_power: 0 }.matrix::<f64>(n);
            // coefficient t with R = t · basis, from the Hilbert–Schmidt product
            let t = (&basis.adjoint() * &r).trace() / n as f64;
            if t.norm() < 0.5 * scale {
                continue;
            }
            let fitted = basis.scale(t);
            if fitted.max_abs_diff(&r) > 1e-10 || (t.norm() - scale).abs() > 1e-10 {
                return Err(integrity());
            }
            let turns = t.arg() * n as f64 / (2.0 * std::f64::consts::PI);
            if (turns - turns.round()).abs() > 1e-8 {
                return Err(integrity());
            }
            return Ok(WeylCorrection::new(n, p as i64, q as i64, turns.round() as i64));
        }
    }
    Err(integrity())
}

/// Total correction `W_𝓛 ⋯ W_1` for an explicit channel label vector.
pub fn qudit_chain_correction(n: usize, channel: &[QuditLabel], outcomes: &[QuditLabel]) -> Result<WeylCorrection> {
    if channel.len() != outcomes.len() || channel.is_empty() {
        return Err(Error::Dimension(format!("{} channel labels for {} outcomes", channel.len(), outcomes.len())));
    }
    channel.iter().zip(outcomes).try_fold(WeylCorrection::IDENTITY, |acc, (&c, &o)| {
        Ok(compose_weyl(qudit_correction(n, c, o)?, acc, n))
    })
}

/// Total correction for a channel whose labels sum to `class` (componentwise
/// mod `N`), using the representative `((0,0), …, (0,0), class)`. Other
/// representatives differ only by a global phase.
pub fn qudit_class_correction(n: usize, class: QuditLabel, outcomes: &[QuditLabel]) -> Result<WeylCorrection> {
    let mut channel = vec![QuditLabel { a: 0, b: 0 }; outcomes.len()];
    if let Some(last) = channel.last_mut() {
        *last = class;
    }
    qudit_chain_correction(n, &channel, outcomes)
}

/// Tensor product of N-Bell states, pair `i` on sites `2i−1, 2i`.
pub fn nbell_product<T: Real>(n: usize, labels: &[QuditLabel]) -> Result<State<T>> {
    let (first, rest) = labels
        .split_first()
        .ok_or_else(|| Error::Validation("at least one label required".into()))?;
    rest.iter().try_fold(nbell_state(n, *first)?, |acc, &l| acc.tensor(&nbell_state(n, l)?))
}

#[derive(Clone, Debug)]
pub struct QuditTeleportOutcome<T> {
    pub outcomes: Vec<QuditLabel>,
    pub probability: T,
    pub output: Option<State<T>>,
    /// Inverse of the expected total correction.
    pub applied_correction: WeylCorrection,
    pub fidelity: Option<T>,
}

/// Qudit analogue of [`crate::teleport::teleport_branch`]: same pairing,
/// N-Bell projections, and `W⁻¹` applied to the output for the assumed class.
pub fn qudit_teleport_branch<T: Real>(
    channel: &State<T>,
    target: &State<T>,
    outcomes: &[QuditLabel],
    assumed_class: QuditLabel,
) -> Result<QuditTeleportOutcome<T>> {
    let n = channel.local_dim();
    check_n(n)?;
    if channel.sites() % 2 == 1 {
        return Err(Error::OddLength(channel.sites()));
    }
    check_target(target, n)?;
    let pairs = channel.sites() / 2;
    if outcomes.len() != pairs {
        return Err(Error::Dimension(format!("{} outcomes for {pairs} measured pairs", outcomes.len())));
    }
    let mut state = target.tensor(channel)?;
    for (i, &label) in outcomes.iter().enumerate() {
        let projector = Operator::projector(nbell_state::<T>(n, label)?.amplitudes());
        state = state.project(&[2 * i + 1, 2 * i + 2], &projector)?.0;
    }
    let bra = nbell_product::<T>(n, outcomes)?;
    let residual = contract_all_but_last(state.amplitudes(), bra.amplitudes(), n);
    let probability = state.norm_sqr();
    let applied_correction = qudit_class_correction(n, assumed_class, outcomes)?.inverse(n);
    let (output, fidelity) = corrected_fidelity(&residual, probability, &applied_correction.matrix(n), target)?;
    Ok(QuditTeleportOutcome { outcomes: outcomes.to_vec(), probability, output, applied_correction, fidelity })
}

/// All `N^{2𝓛}` outcome vectors for `pairs` measured pairs, first pair slowest.
pub fn qudit_outcomes(n: usize, pairs: usize) -> impl Iterator<Item = Vec<QuditLabel>> {
    let total = (n * n).pow(pairs as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![QuditLabel { a: 0, b: 0 }; pairs];
        for slot in v.iter_mut().rev() {
            let d = k % (n * n);
            k /= n * n;
            *slot = QuditLabel { a: d / n, b: d % n };
        }
        v
    })
}
