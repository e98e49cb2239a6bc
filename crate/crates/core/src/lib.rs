//! Measurement-based teleportation along quantum spin chains.
//!
//! The crate is generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix it to `f64`, which is what the
//! CLI and the acceptance suite use.

pub mod bell;
pub mod channels;
pub mod error;
pub mod qstate;
pub mod qudit;
pub mod scalar;
pub mod teleport;

pub use error::{Error, Result};
pub use scalar::{Amp, Real};

/// Double-precision complex amplitude.
pub type C64 = num_complex::Complex<f64>;
/// Double-precision pure state.
pub type PureState = qstate::State<f64>;
/// Double-precision dense operator.
pub type OperatorMatrix = qstate::Operator<f64>;
/// Double-precision local-term Hamiltonian.
pub type Hamiltonian = qstate::LocalHamiltonian<f64>;
/// Double-precision teleportation branch.
pub type BranchOutcome = teleport::TeleportOutcome<f64>;
/// Double-precision sweep row.
pub type SweepRow = teleport::SweepRecord<f64>;
