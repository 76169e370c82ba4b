use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::input_err;
use crate::noise::NoiseModel;
use crate::protocols::{protocol_a_plan, protocol_b_plan, ProtocolBVariant, VoteVector};
use crate::{Error, Result};

/// Shots per round unless configured otherwise.
pub const DEFAULT_SHOTS: u64 = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolKind {
    /// Iterative Bell-pair protocol.
    A,
    /// Single-round protocol over a GHZ state.
    BGhz,
    /// Single-round protocol over a 4-qubit cluster state.
    BCluster,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 3] =
        [ProtocolKind::A, ProtocolKind::BGhz, ProtocolKind::BCluster];

    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolKind::A => "a",
            ProtocolKind::BGhz => "b-ghz",
            ProtocolKind::BCluster => "b-cluster",
        }
    }

    pub fn variant(self) -> Option<ProtocolBVariant> {
        match self {
            ProtocolKind::A => None,
            ProtocolKind::BGhz => Some(ProtocolBVariant::Ghz3),
            ProtocolKind::BCluster => Some(ProtocolBVariant::Cluster4),
        }
    }

    pub fn n_qubits(self) -> usize {
        self.variant().map_or(2, ProtocolBVariant::n_qubits)
    }

    /// Register pairs coupled by two-qubit gates; the same for every vote
    /// vector.
    pub fn interaction_pairs(self) -> Vec<(usize, usize)> {
        let votes = VoteVector::new(alloc::vec![true; 4]).expect("4 voters");
        match self.variant() {
            None => protocol_a_plan(&votes, 0).two_qubit_pairs(),
            Some(v) => protocol_b_plan(&votes, v)
                .expect("4-voter plan")
                .two_qubit_pairs(),
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProtocolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(ProtocolKind::A),
            "b-ghz" | "b_ghz" | "ghz" => Ok(ProtocolKind::BGhz),
            "b-cluster" | "b_cluster" | "cluster" => Ok(ProtocolKind::BCluster),
            other => Err(input_err!(
                "unknown protocol {other:?} (expected a|b-ghz|b-cluster)"
            )),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ProtocolKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// When protocol A stops iterating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Termination {
    /// Stop at the first round whose modal readout is `phi_minus`.
    #[default]
    Modal,
    /// Run exactly the rounds the noiseless protocol runs, so metrics at
    /// different noise strengths refer to the same rounds.
    FollowIdeal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElectionConfig {
    pub protocol: ProtocolKind,
    pub n_voters: usize,
    pub shots: u64,
    pub seed: u64,
    pub noise: NoiseModel,
    /// Independent runs with seeds `seed, seed + 1, …`.
    pub repeats: u32,
    pub termination: Termination,
}

impl ElectionConfig {
    /// Noiseless configuration with default shots, seed 0 and one repeat.
    pub fn new(protocol: ProtocolKind, n_voters: usize) -> Self {
        Self {
            protocol,
            n_voters,
            shots: DEFAULT_SHOTS,
            seed: 0,
            noise: NoiseModel::identity(),
            repeats: 1,
            termination: Termination::Modal,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_shots(mut self, shots: u64) -> Self {
        self.shots = shots;
        self
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Self {
        self.noise = noise;
        self
    }

    pub fn with_repeats(mut self, repeats: u32) -> Self {
        self.repeats = repeats;
        self
    }

    pub fn with_termination(mut self, termination: Termination) -> Self {
        self.termination = termination;
        self
    }

    pub fn validate(&self, votes: &VoteVector) -> Result<()> {
        if self.shots == 0 {
            return Err(input_err!("shots must be at least 1"));
        }
        if self.repeats == 0 {
            return Err(input_err!("repeats must be at least 1"));
        }
        if votes.len() != self.n_voters {
            return Err(input_err!(
                "{} votes given for {} voters",
                votes.len(),
                self.n_voters
            ));
        }
        if self.protocol != ProtocolKind::A && self.n_voters != 4 {
            return Err(input_err!(
                "protocol {} needs exactly 4 voters, got {}",
                self.protocol,
                self.n_voters
            ));
        }
        let width = self.protocol.n_qubits();
        if !self.noise.readout_flip.is_empty() && self.noise.readout_flip.len() != width {
            return Err(Error::Config(alloc::format!(
                "readout model covers {} qubits, protocol {} uses {width}",
                self.noise.readout_flip.len(),
                self.protocol
            )));
        }
        self.noise.validate()
    }
}
