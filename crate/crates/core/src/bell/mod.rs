//! Bell basis and correction-group algebra.
//!
//! Bell states are labelled `|kl}` by their `σx⊗σx` and `σz⊗σz` eigenvalues.
//! The four correction matrices are `X⁰ = I`, `X¹ = σx`, `X² = −σz`,
//! `X³ = iσy`, and the Bell states are `(I ⊗ Xⁱ) v⁰` with `v⁰` the singlet.
//! An even chain of qubits splits into four Bell subspaces, the joint
//! eigenspaces of the x- and z-string operators.

mod cluster;
mod correction;
mod label;
mod subspace;

pub use cluster::{cluster_state, cluster_to_bell_subspace, clifford_group, ClusterMapping};
pub use correction::{chain_correction, compose, correction, subspace_correction, SignedCorrection, CORRECTION_TABLE};
pub use label::{BellLabel, LabelVector, Sign};
pub use subspace::{
    classify, project_subspace, random_subspace_state, string_operator, Axis, StringOperator, SubspaceWeights,
};

use crate::qstate::State;
use crate::scalar::{cre, Real};

/// `(I ⊗ Xⁱ) v⁰` for the label's correction index `i`.
pub fn bell_state<T: Real>(label: BellLabel) -> State<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    // v⁰ = (|↑↓⟩ − |↓↑⟩)/√2 and its images under I ⊗ Xⁱ
    let amps = match label.index() {
        0 => [z, h, -h, z],
        1 => [h, z, z, -h],
        2 => [z, h, h, z],
        _ => [h, z, z, h],
    };
    State::from_amplitudes(2, 2, amps.iter().map(|&a| cre(a)).collect()).expect("two-qubit state")
}

/// Tensor product of Bell states, pair `i` on sites `2i−1, 2i`.
pub fn bell_product<T: Real>(labels: &LabelVector) -> State<T> {
    let mut it = labels.iter();
    let first = bell_state(*it.next().expect("label vectors are nonempty"));
    it.fold(first, |acc, &l| acc.tensor(&bell_state(l)).expect("qubit tensor"))
}
