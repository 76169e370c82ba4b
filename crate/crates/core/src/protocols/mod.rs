//! The two veto protocols as round plans over [`crate::qcore`].
//!
//! A [`RoundPlan`] is the gate and transfer sequence of one round:
//! preparation by the authority, one hop per voter with that voter's
//! encoding, the return hop, and the basis-reversal circuit. The same plan
//! drives the noiseless pure-state evaluation here and the noisy
//! density-matrix evaluation in [`crate::election`].

mod bell;
mod entangled;
mod plan;
mod votes;

pub use bell::{
    max_iterations, protocol_a_plan, protocol_a_round, protocol_a_run, sigma_z_t, BellOutcome,
    ProtocolAIteration,
};
pub use entangled::{
    protocol_b_plan, protocol_b_plan_ordered, protocol_b_run, verdict_b, EncodingTable,
    ProtocolBResult, ProtocolBVariant,
};
pub use plan::{GateOp, Party, RoundOutcome, RoundPlan, Step};
pub use votes::VoteVector;

use core::fmt;

/// Outcome of an election.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Decision {
    /// Protocol A: every round came back `phi_plus`, nobody vetoed.
    Pass,
    /// Protocol A: some round produced `phi_minus`.
    Reject,
    /// Protocol B: all-zeros readout, so no voter or every voter vetoed.
    Unanimous,
    /// Protocol B: any other readout.
    NotUnanimous,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Pass => "Pass",
            Decision::Reject => "Reject",
            Decision::Unanimous => "Unanimous",
            Decision::NotUnanimous => "NotUnanimous",
        })
    }
}
