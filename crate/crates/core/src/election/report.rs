use alloc::string::String;
use alloc::vec::Vec;

use super::ProtocolKind;
use crate::protocols::{BellOutcome, Decision, Party};
use crate::qcore::ShotCounts;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Payload {
    QubitTransfer { qubits: Vec<usize> },
    ClassicalAnnouncement { readout: String },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TranscriptEvent {
    pub from: Party,
    pub to: Party,
    pub payload: Payload,
    /// 1-based round number.
    pub iteration: u32,
}

/// Ordered record of everything the parties exchanged.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Transcript {
    pub events: Vec<TranscriptEvent>,
    /// Readout histogram of each round, in round order.
    pub readout_counts: Vec<ShotCounts>,
}

impl Transcript {
    /// Qubit transfers of round `iteration` as `(from, to)` pairs.
    pub fn hops(&self, iteration: u32) -> Vec<(Party, Party)> {
        self.events
            .iter()
            .filter(|e| e.iteration == iteration)
            .filter(|e| matches!(e.payload, Payload::QubitTransfer { .. }))
            .map(|e| (e.from, e.to))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IterationReport {
    /// 1-based round number.
    pub iteration: u32,
    pub counts: ShotCounts,
    pub modal_outcome: String,
    /// Readout the noiseless protocol produces in this round.
    pub ideal_outcome: String,
    /// Probability mass on `ideal_outcome` after all noise.
    pub success_probability: f64,
    /// Fidelity of the noisy pre-measurement state with the ideal one.
    pub fidelity: f64,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub bell_outcome: Option<BellOutcome>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RunReport {
    pub seed: u64,
    pub decision: Decision,
    pub iterations: Vec<IterationReport>,
    pub transcript: Transcript,
}

impl RunReport {
    pub fn final_iteration(&self) -> &IterationReport {
        self.iterations.last().expect("every run has a round")
    }
}

/// Mean and sample standard deviation (n − 1 denominator) of the
/// final-round fidelity across repeats.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FidelitySummary {
    pub runs: usize,
    pub mean: f64,
    pub std_dev: f64,
}

impl FidelitySummary {
    pub fn from_values(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return Self {
                runs: 0,
                mean: 0.0,
                std_dev: 0.0,
            };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std_dev = if n > 1 {
            let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
            libm::sqrt(ss / (n - 1) as f64)
        } else {
            0.0
        };
        Self {
            runs: n,
            mean,
            std_dev,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ElectionReport {
    pub protocol: ProtocolKind,
    pub votes: String,
    /// Decision of the first run (seed = configured seed).
    pub decision: Decision,
    pub runs: Vec<RunReport>,
    pub repeats_summary: FidelitySummary,
}

impl ElectionReport {
    /// Rounds of the first run.
    pub fn iterations(&self) -> &[IterationReport] {
        &self.runs[0].iterations
    }

    /// Per-round fidelity of the first run.
    pub fn fidelity_vs_ideal(&self) -> Vec<f64> {
        self.iterations().iter().map(|i| i.fidelity).collect()
    }

    pub fn transcript(&self) -> &Transcript {
        &self.runs[0].transcript
    }
}
