use rand::Rng;

use crate::bell::{bell_product, bell_state, subspace_correction, BellLabel, LabelVector, SignedCorrection};
use crate::error::{Error, Result};
use crate::qstate::{Operator, State};
use crate::scalar::{cre, Amp, Real};

/// One run of the chained Bell-measurement protocol.
#[derive(Clone, Debug)]
pub struct TeleportOutcome<T> {
    pub outcomes: LabelVector,
    /// Born probability of the whole measurement record.
    pub probability: T,
    /// Normalized residual qubit before correction; `None` on a
    /// zero-probability branch.
    pub output_qubit: Option<State<T>>,
    /// Inverse of the expected total correction, applied to the output.
    pub applied_correction: SignedCorrection,
    /// `|⟨target|corrected output⟩|²`; undefined on zero-probability branches.
    pub fidelity: Option<T>,
}

impl<T: Real> TeleportOutcome<T> {
    pub fn is_flagged(&self) -> bool {
        self.fidelity.is_none()
    }
}

pub(crate) fn check_channel<T: Real>(channel: &State<T>) -> Result<usize> {
    if channel.local_dim() != 2 {
        return Err(Error::Validation(format!("qubit channel expected, got local dimension {}", channel.local_dim())));
    }
    if channel.sites() % 2 == 1 {
        return Err(Error::OddLength(channel.sites()));
    }
    Ok(channel.sites() / 2)
}

pub(crate) fn check_target<T: Real>(target: &State<T>, local_dim: usize) -> Result<()> {
    if target.sites() != 1 || target.local_dim() != local_dim {
        return Err(Error::Dimension(format!(
            "target must be a single site of dimension {local_dim}, got {}^{}",
            target.local_dim(),
            target.sites()
        )));
    }
    Ok(())
}

/// `(⟨bra| ⊗ I) full`, where `bra` covers every site but the last.
pub(crate) fn contract_all_but_last<T: Real>(full: &[Amp<T>], bra: &[Amp<T>], local_dim: usize) -> Vec<Amp<T>> {
    let mut out = vec![cre(T::zero()); local_dim];
    for (i, b) in bra.iter().enumerate() {
        if b.re == T::zero() && b.im == T::zero() {
            continue;
        }
        let bc = b.conj();
        for (k, o) in out.iter_mut().enumerate() {
            *o = *o + bc * full[i * local_dim + k];
        }
    }
    out
}

/// Fidelity of the corrected output against the target, or `None` below the
/// zero-branch threshold.
pub(crate) fn corrected_fidelity<T: Real>(
    residual: &[Amp<T>],
    probability: T,
    correction: &Operator<T>,
    target: &State<T>,
) -> Result<(Option<State<T>>, Option<T>)> {
    if probability <= T::zero_branch_tol() {
        return Ok((None, None));
    }
    let out = State::normalized(target.local_dim(), 1, residual.to_vec())?;
    let corrected = State::from_amplitudes(target.local_dim(), 1, correction.apply(out.amplitudes())?)?;
    let f = target.inner(&corrected)?.norm_sqr();
    Ok((Some(out), Some(f.min(T::one()))))
}

fn finish<T: Real>(
    branch: &State<T>,
    outcomes: LabelVector,
    target: &State<T>,
    assumed_subspace: BellLabel,
) -> Result<TeleportOutcome<T>> {
    let bra = bell_product::<T>(&outcomes);
    let residual = contract_all_but_last(branch.amplitudes(), bra.amplitudes(), 2);
    let probability = branch.norm_sqr();
    let applied_correction = subspace_correction(assumed_subspace, &outcomes).inverse();
    let (output_qubit, fidelity) = corrected_fidelity(&residual, probability, &applied_correction.matrix(), target)?;
    Ok(TeleportOutcome { outcomes, probability, output_qubit, applied_correction, fidelity })
}

/// Teleports `target` through `channel` for a fixed measurement record.
///
/// The target sits in front of the chain; pairs `(target, 1), (2, 3), …,
/// (L−2, L−1)` are projected onto the Bell states named by `outcomes`, one
/// after the other, and the output is chain site `L`.
pub fn teleport_branch<T: Real>(
    channel: &State<T>,
    target: &State<T>,
    outcomes: &LabelVector,
    assumed_subspace: BellLabel,
) -> Result<TeleportOutcome<T>> {
    let pairs = check_channel(channel)?;
    check_target(target, 2)?;
    if outcomes.len() != pairs {
        return Err(Error::Dimension(format!("{} outcomes for {pairs} measured pairs", outcomes.len())));
    }
    let mut state = target.tensor(channel)?;
    for (i, &label) in outcomes.iter().enumerate() {
        let projector = Operator::projector(bell_state::<T>(label).amplitudes());
        state = state.project(&[2 * i + 1, 2 * i + 2], &projector)?.0;
    }
    finish(&state, outcomes.clone(), target, assumed_subspace)
}

/// Born-samples the measurement record pair by pair.
pub fn teleport_sample<T: Real, R: Rng + ?Sized>(
    channel: &State<T>,
    target: &State<T>,
    assumed_subspace: BellLabel,
    rng: &mut R,
) -> Result<TeleportOutcome<T>> {
    let pairs = check_channel(channel)?;
    check_target(target, 2)?;
    let projectors: Vec<Operator<T>> =
        BellLabel::ALL.iter().map(|&l| Operator::projector(bell_state::<T>(l).amplitudes())).collect();
    let mut state = target.tensor(channel)?;
    let mut labels = Vec::with_capacity(pairs);
    for i in 0..pairs {
        let sites = [2 * i + 1, 2 * i + 2];
        let norm = state.norm_sqr();
        let mut branches = Vec::with_capacity(4);
        for p in &projectors {
            branches.push(state.project(&sites, p)?);
        }
        let u = T::lit(rng.random::<f64>()) * norm;
        let mut acc = T::zero();
        let mut chosen = 3;
        for (k, (_, p)) in branches.iter().enumerate() {
            acc = acc + *p;
            if u < acc {
                chosen = k;
                break;
            }
        }
        // guard against rounding leaving the tail label with zero weight
        while branches[chosen].1 <= T::zero() && chosen > 0 {
            chosen -= 1;
        }
        labels.push(BellLabel::ALL[chosen]);
        state = branches.swap_remove(chosen).0;
    }
    finish(&state, LabelVector::new(labels)?, target, assumed_subspace)
}

/// Output qubits of every measurement record in one pass: for each of the
/// `4^𝓛` label vectors the unnormalized residual `(⟨bell product| ⊗ I)(v ⊗ ψ)`.
pub fn branch_residuals<T: Real>(channel: &State<T>, target: &State<T>) -> Result<Vec<(LabelVector, Vec<Amp<T>>)>> {
    let pairs = check_channel(channel)?;
    check_target(target, 2)?;
    let full = target.tensor(channel)?;
    Ok(LabelVector::enumerate(pairs)
        .map(|labels| {
            let bra = bell_product::<T>(&labels);
            let residual = contract_all_but_last(full.amplitudes(), bra.amplitudes(), 2);
            (labels, residual)
        })
        .collect())
}

/// Worst-case and probability-weighted fidelity over targets and branches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityProfile<T> {
    /// Minimum over targets and branches with nonzero probability.
    pub min: T,
    /// Probability-weighted mean over branches, averaged over targets.
    pub mean: T,
}

pub fn channel_fidelity_profile<T: Real>(
    channel: &State<T>,
    targets: &[State<T>],
    assumed_subspace: BellLabel,
) -> Result<FidelityProfile<T>> {
    let pairs = check_channel(channel)?;
    if targets.is_empty() {
        return Err(Error::Validation("fidelity profile needs at least one target".into()));
    }
    let corrections: Vec<(LabelVector, Operator<T>)> = LabelVector::enumerate(pairs)
        .map(|l| {
            let c = subspace_correction(assumed_subspace, &l).inverse().matrix();
            (l, c)
        })
        .collect();
    let mut min = T::infinity();
    let mut mean_sum = T::zero();
    for target in targets {
        let residuals = branch_residuals(channel, target)?;
        let mut weighted = T::zero();
        for ((_, residual), (_, correction)) in residuals.iter().zip(&corrections) {
            let p = residual.iter().map(|a| a.norm_sqr()).fold(T::zero(), |x, y| x + y);
            if let (_, Some(f)) = corrected_fidelity(residual, p, correction, target)? {
                min = min.min(f);
                weighted = weighted + p * f;
            }
        }
        mean_sum = mean_sum + weighted;
    }
    Ok(FidelityProfile { min, mean: mean_sum / T::lit(targets.len() as f64) })
}

/// `|±z⟩, |±x⟩, |±y⟩`.
pub fn axis_targets<T: Real>() -> Vec<State<T>> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    let mk = |a: Amp<T>, b: Amp<T>| State::from_amplitudes(2, 1, vec![a, b]).expect("qubit");
    vec![
        State::up(),
        State::down(),
        mk(cre(h), cre(h)),
        mk(cre(h), cre(-h)),
        mk(cre(h), Amp::new(z, h)),
        mk(cre(h), Amp::new(z, -h)),
    ]
}

/// Number of Haar targets added to the axis set by [`default_targets`].
pub const HAAR_TARGETS: usize = 20;

/// The six axis states followed by [`HAAR_TARGETS`] Haar-random qubits.
pub fn default_targets<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Result<Vec<State<T>>> {
    let mut targets = axis_targets();
    for _ in 0..HAAR_TARGETS {
        targets.push(State::random_haar(2, 1, rng)?);
    }
    Ok(targets)
}
