//! Simulation core for two quantum anonymous veto protocols.
//!
//! The crate is `no_std` (it needs `alloc`) and has four layers:
//!
//! * [`qcore`]: dense state vectors and density matrices over a handful of
//!   qubits, gate application, computational-basis readout, seeded shot
//!   sampling and the Uhlmann fidelity.
//! * [`noise`]: single-qubit Kraus channels, readout flips and device noise
//!   models built from calibration records.
//! * [`protocols`]: the iterative Bell-state veto (protocol A) and the
//!   single-round GHZ / cluster-state veto (protocol B) as round plans.
//! * [`election`]: runs a full election on density matrices with noise
//!   injected per hop or per gate, producing reports and transcripts.
//!
//! [`reference`] carries the expected outcome tables used to check the
//! noiseless protocols.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod election;
mod error;
pub mod noise;
pub mod protocols;
pub mod qcore;
pub mod reference;

pub use error::{Error, Result};
