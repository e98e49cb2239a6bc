//! Bell measurement as a CNOT–Hadamard circuit followed by two single-qubit
//! computational-basis projections.

use crate::bell::{bell_state, BellLabel};
use crate::error::{Error, Result};
use crate::qstate::{pauli, Operator, State};
use crate::scalar::{cre, Real};

/// `U = (H ⊗ I)·CNOT`, control on the first qubit. Maps each Bell state to a
/// computational basis state up to sign.
pub fn bell_entangler<T: Real>() -> Operator<T> {
    let cnot = Operator::real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ]);
    &pauli::hadamard::<T>().kron(&pauli::id()) * &cnot
}

/// Computational-basis digits `(j₁, j₂)` reached by `U` from the Bell state.
pub fn circuit_digits(label: BellLabel) -> (usize, usize) {
    let image = bell_entangler::<f64>().apply(bell_state::<f64>(label).amplitudes()).expect("4x4");
    let k = (0..4)
        .max_by(|&a, &b| image[a].norm_sqr().total_cmp(&image[b].norm_sqr()))
        .expect("nonempty");
    (k / 2, k % 2)
}

/// Projects sites `(a, b)` onto the Bell state `label` by rotating with `U`,
/// projecting each qubit onto its digit, and rotating back.
/// Returns the unnormalized branch and its probability.
pub fn bell_measure_via_circuit<T: Real>(state: &State<T>, pair: (usize, usize), label: BellLabel) -> Result<(State<T>, T)> {
    if state.local_dim() != 2 {
        return Err(Error::Validation("circuit measurement needs qubits".into()));
    }
    let u = bell_entangler::<T>();
    let (j1, j2) = circuit_digits(label);
    let digit = |j: usize| {
        let (a, b) = if j == 0 { (T::one(), T::zero()) } else { (T::zero(), T::one()) };
        Operator::diagonal(&[cre(a), cre(b)])
    };
    let rotated = state.apply_local(&[pair.0, pair.1], &u)?;
    let (rotated, _) = rotated.project(&[pair.0], &digit(j1))?;
    let (rotated, _) = rotated.project(&[pair.1], &digit(j2))?;
    let branch = rotated.apply_local(&[pair.0, pair.1], &u.adjoint())?;
    let p = branch.norm_sqr();
    Ok((branch, p))
}
