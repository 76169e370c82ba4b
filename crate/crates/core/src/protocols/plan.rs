use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::qcore::{basis_state, measure_probs, GateMatrix, OutcomeDistribution, StateVector};
use crate::Result;

/// A participant of the election.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    /// The voting authority, which prepares and measures.
    Authority,
    /// Voter `V_i`, 1-based.
    Voter(usize),
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Party::Authority => f.write_str("VA"),
            Party::Voter(i) => write!(f, "V{i}"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Party {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A gate applied by one party.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub name: String,
    pub gate: GateMatrix,
    pub targets: Vec<usize>,
    pub actor: Party,
}

impl GateOp {
    pub fn new(name: &str, gate: GateMatrix, targets: &[usize], actor: Party) -> Self {
        Self {
            name: name.into(),
            gate,
            targets: targets.to_vec(),
            actor,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Gate(GateOp),
    /// The travel qubits move from one party to the next.
    Transfer {
        from: Party,
        to: Party,
    },
    /// The travel qubits are back with the authority; the register now holds
    /// the state that is compared against the ideal one.
    Checkpoint,
}

/// Gate and transfer sequence of one protocol round, starting from |0…0⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundPlan {
    pub n_qubits: usize,
    pub travel: Vec<usize>,
    pub steps: Vec<Step>,
}

/// Noiseless evaluation of a [`RoundPlan`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoundOutcome {
    /// State at the checkpoint, before the basis-reversal circuit.
    pub pre_measure: StateVector,
    /// State after the basis-reversal circuit.
    pub final_state: StateVector,
    pub distribution: OutcomeDistribution,
}

impl RoundPlan {
    pub fn gates(&self) -> impl Iterator<Item = &GateOp> {
        self.steps.iter().filter_map(|s| match s {
            Step::Gate(op) => Some(op),
            _ => None,
        })
    }

    pub fn transfers(&self) -> impl Iterator<Item = (Party, Party)> + '_ {
        self.steps.iter().filter_map(|s| match s {
            Step::Transfer { from, to } => Some((*from, *to)),
            _ => None,
        })
    }

    /// Unordered register pairs touched by two-qubit gates, deduplicated.
    pub fn two_qubit_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for op in self.gates().filter(|op| op.targets.len() == 2) {
            let (a, b) = (op.targets[0], op.targets[1]);
            let key = (a.min(b), a.max(b));
            if !pairs.contains(&key) {
                pairs.push(key);
            }
        }
        pairs
    }

    pub fn run_pure(&self) -> Result<RoundOutcome> {
        let zeros: String = (0..self.n_qubits).map(|_| '0').collect();
        let mut state = basis_state(self.n_qubits, &zeros)?;
        let mut pre_measure = None;
        for step in &self.steps {
            match step {
                Step::Gate(op) => state = state.apply(&op.gate, &op.targets)?,
                Step::Transfer { .. } => {}
                Step::Checkpoint => pre_measure = Some(state.clone()),
            }
        }
        let distribution = measure_probs(&state);
        Ok(RoundOutcome {
            pre_measure: pre_measure.unwrap_or_else(|| state.clone()),
            final_state: state,
            distribution,
        })
    }
}

/// Hop sequence `VA → V1 → … → Vn → VA` with each voter's gates in between.
pub(crate) fn circulate(
    steps: &mut Vec<Step>,
    n_voters: usize,
    mut encode: impl FnMut(usize, &mut Vec<Step>),
) {
    steps.push(Step::Transfer {
        from: Party::Authority,
        to: Party::Voter(1),
    });
    for voter in 1..=n_voters {
        encode(voter, steps);
        let to = if voter == n_voters {
            Party::Authority
        } else {
            Party::Voter(voter + 1)
        };
        steps.push(Step::Transfer {
            from: Party::Voter(voter),
            to,
        });
    }
    steps.push(Step::Checkpoint);
}
