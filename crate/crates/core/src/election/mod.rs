//! Full elections on density matrices.
//!
//! Each round follows its [`RoundPlan`](crate::protocols::RoundPlan): gate
//! noise is applied after every gate, hop noise to every travel qubit on
//! every transfer, and readout flips to the final distribution. The verdict
//! is taken from the modal readout of the sampled shots.

mod config;
mod report;
mod run;
mod sweep;

pub use config::{ElectionConfig, ProtocolKind, Termination, DEFAULT_SHOTS};
pub use report::{
    ElectionReport, FidelitySummary, IterationReport, Payload, RunReport, Transcript,
    TranscriptEvent,
};
pub use run::{fidelity_vs_ideal, run_election, simulate_round, NoisyRound};
pub use sweep::{noise_sweep, strength_grid, SweepRow};
