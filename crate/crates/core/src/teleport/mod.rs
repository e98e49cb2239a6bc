//! Teleportation of a qubit through an even spin chain by chained Bell
//! measurements, and the `𝒪` diagnostic bounding its worst-case fidelity.

mod circuit;
pub(crate) mod protocol;
mod sweep;

pub use circuit::{bell_entangler, bell_measure_via_circuit, circuit_digits};
pub use protocol::{
    axis_targets, branch_residuals, channel_fidelity_profile, default_targets, teleport_branch, teleport_sample,
    FidelityProfile, TeleportOutcome, HAAR_TARGETS,
};
pub use sweep::{read_sweep_csv, sweep_experiment, write_sweep_csv, Sampler, SweepRecord, SWEEP_HEADER};

use crate::bell::{string_operator, Axis};
use crate::error::Result;
use crate::qstate::State;
use crate::scalar::Real;

/// `𝒪 = |⟨Sx⟩| + |⟨Sy⟩| + |⟨Sz⟩|` for the string operators of the chain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OParameter<T> {
    pub value: T,
    /// `⟨Sx⟩, ⟨Sy⟩, ⟨Sz⟩`.
    pub components: [T; 3],
}

pub fn o_parameter<T: Real>(channel: &State<T>) -> Result<OParameter<T>> {
    protocol::check_channel(channel)?;
    let mut components = [T::zero(); 3];
    for (slot, axis) in components.iter_mut().zip([Axis::X, Axis::Y, Axis::Z]) {
        *slot = channel.expectation(&string_operator(channel.sites(), axis)?)?.re;
    }
    let value = components.iter().fold(T::zero(), |acc, c| acc + c.abs());
    Ok(OParameter { value, components })
}

/// Lower bound `(𝒪 − 1)/2` on the worst-case fidelity. Not clamped, so it
/// is negative (and vacuous) for `𝒪 < 1`.
pub fn fidelity_bound<T: Real>(o: &OParameter<T>) -> T {
    (o.value - T::one()) / T::lit(2.0)
}

#[cfg(test)]
mod tests;
