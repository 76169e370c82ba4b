//! Protocol B: single-round veto over a GHZ or 4-qubit cluster state.
//!
//! Qubits 1 and 2 travel. A vetoing voter `V_i` applies `U_i = A ⊗ B`, with
//! `A` on qubit 1 and `B` on qubit 2; everyone else applies identities. The
//! authority then runs the preparation circuit backwards and reads out in
//! the computational basis: all zeros means the state came back unchanged
//! up to a global phase.

use alloc::string::String;
use alloc::vec::Vec;

use super::plan::circulate;
use super::{Decision, GateOp, Party, RoundPlan, Step, VoteVector};
use crate::error::input_err;
use crate::qcore::{Complex, GateMatrix, OutcomeDistribution, StateVector};
use crate::Result;

const TRAVEL: [usize; 2] = [1, 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ProtocolBVariant {
    /// `(|000⟩ + |111⟩)/√2`.
    Ghz3,
    /// `½(|0000⟩ + |0011⟩ + |1100⟩ − |1111⟩)`.
    Cluster4,
}

/// Per-voter encodings `U_i = A_i ⊗ B_i` for four voters.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingTable {
    factors: [(GateMatrix, GateMatrix); 4],
}

impl EncodingTable {
    /// `(A_i, B_i)` for voter `i` in 1..=4.
    pub fn factors(&self, voter: usize) -> Result<&(GateMatrix, GateMatrix)> {
        voter
            .checked_sub(1)
            .and_then(|i| self.factors.get(i))
            .ok_or_else(|| input_err!("voter {voter} has no encoding (1..=4)"))
    }

    /// The two-qubit unitary `A_i ⊗ B_i`.
    pub fn unitary(&self, voter: usize) -> Result<GateMatrix> {
        let (a, b) = self.factors(voter)?;
        GateMatrix::tensor(a, b)
    }
}

impl ProtocolBVariant {
    pub fn n_qubits(self) -> usize {
        match self {
            ProtocolBVariant::Ghz3 => 3,
            ProtocolBVariant::Cluster4 => 4,
        }
    }

    pub fn travel_qubits(self) -> (usize, usize) {
        (TRAVEL[0], TRAVEL[1])
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolBVariant::Ghz3 => "ghz3",
            ProtocolBVariant::Cluster4 => "cluster4",
        }
    }

    pub fn encoding(self) -> EncodingTable {
        let (x, z, i, iy) = (
            GateMatrix::pauli_x(),
            GateMatrix::pauli_z(),
            GateMatrix::identity(),
            GateMatrix::i_y(),
        );
        let factors = match self {
            ProtocolBVariant::Cluster4 => [
                (x.clone(), iy.clone()),
                (x, z.clone()),
                (iy.clone(), z),
                (iy.clone(), iy),
            ],
            ProtocolBVariant::Ghz3 => [
                (x.clone(), i.clone()),
                (x.clone(), x.clone()),
                (iy.clone(), x),
                (iy, i),
            ],
        };
        EncodingTable { factors }
    }

    /// Preparation circuit from |0…0⟩, applied by the authority.
    pub fn preparation(self) -> Vec<GateOp> {
        let va = Party::Authority;
        let h = || GateMatrix::hadamard();
        let cx = || GateMatrix::cnot();
        match self {
            ProtocolBVariant::Ghz3 => alloc::vec![
                GateOp::new("h", h(), &[0], va),
                GateOp::new("cx", cx(), &[0, 1], va),
                GateOp::new("cx", cx(), &[0, 2], va),
            ],
            ProtocolBVariant::Cluster4 => alloc::vec![
                GateOp::new("h", h(), &[0], va),
                GateOp::new("h", h(), &[2], va),
                GateOp::new("cx", cx(), &[0, 1], va),
                GateOp::new("cx", cx(), &[2, 3], va),
                GateOp::new("cz", GateMatrix::cz(), &[0, 2], va),
            ],
        }
    }

    /// Adjoint of [`preparation`](Self::preparation): reversed order,
    /// each gate conjugate-transposed.
    pub fn unpreparation(self) -> Vec<GateOp> {
        self.preparation()
            .into_iter()
            .rev()
            .map(|op| GateOp {
                gate: op.gate.adjoint(),
                ..op
            })
            .collect()
    }

    /// The defining ket of the variant.
    pub fn initial_state(self) -> StateVector {
        let one = Complex::new(1.0, 0.0);
        let terms: &[(&str, Complex)] = match self {
            ProtocolBVariant::Ghz3 => &[("000", one), ("111", one)],
            ProtocolBVariant::Cluster4 => &[
                ("0000", one),
                ("0011", one),
                ("1100", one),
                ("1111", Complex::new(-1.0, 0.0)),
            ],
        };
        StateVector::from_terms(self.n_qubits(), terms).expect("defining kets are normalized")
    }

    /// Runs the preparation circuit on |0…0⟩.
    pub fn prepare(self) -> Result<StateVector> {
        let zeros: String = (0..self.n_qubits()).map(|_| '0').collect();
        let mut state = crate::qcore::basis_state(self.n_qubits(), &zeros)?;
        for op in self.preparation() {
            state = state.apply(&op.gate, &op.targets)?;
        }
        Ok(state)
    }
}

impl core::str::FromStr for ProtocolBVariant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ghz" | "ghz3" => Ok(ProtocolBVariant::Ghz3),
            "cluster" | "cluster4" => Ok(ProtocolBVariant::Cluster4),
            other => Err(input_err!("unknown protocol B variant {other:?}")),
        }
    }
}

/// Round plan with the vetoing voters' unitaries applied in hop order.
pub fn protocol_b_plan(votes: &VoteVector, variant: ProtocolBVariant) -> Result<RoundPlan> {
    protocol_b_plan_ordered(votes, variant, &votes.vetoing_voters())
}

/// Round plan where the `j`-th vetoing voter along the route applies the
/// unitary of voter `order[j]`. `order` must be a permutation of the
/// vetoing voters.
pub fn protocol_b_plan_ordered(
    votes: &VoteVector,
    variant: ProtocolBVariant,
    order: &[usize],
) -> Result<RoundPlan> {
    if votes.len() != 4 {
        return Err(input_err!(
            "protocol B is defined for 4 voters, got {}",
            votes.len()
        ));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != votes.vetoing_voters() {
        return Err(input_err!("order must permute the vetoing voters"));
    }
    let table = variant.encoding();
    let mut steps: Vec<Step> = variant.preparation().into_iter().map(Step::Gate).collect();
    let mut next = order.iter();
    let mut failure = None;
    circulate(&mut steps, votes.len(), |voter, steps| {
        let actor = Party::Voter(voter);
        let (a, b) = if votes.vetoed(voter) {
            let owner = *next.next().expect("order has one entry per veto");
            match table.factors(owner) {
                Ok((a, b)) => (a.clone(), b.clone()),
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
        } else {
            (GateMatrix::identity(), GateMatrix::identity())
        };
        steps.push(Step::Gate(GateOp::new("enc_a", a, &[TRAVEL[0]], actor)));
        steps.push(Step::Gate(GateOp::new("enc_b", b, &[TRAVEL[1]], actor)));
    });
    if let Some(e) = failure {
        return Err(e);
    }
    steps.extend(variant.unpreparation().into_iter().map(Step::Gate));
    Ok(RoundPlan {
        n_qubits: variant.n_qubits(),
        travel: TRAVEL.to_vec(),
        steps,
    })
}

/// Noiseless outcome of protocol B.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolBResult {
    /// State after all voters, before the basis reversal.
    pub final_state: StateVector,
    pub distribution: OutcomeDistribution,
    pub readout: String,
    pub decision: Decision,
}

pub fn protocol_b_run(votes: &VoteVector, variant: ProtocolBVariant) -> Result<ProtocolBResult> {
    let out = protocol_b_plan(votes, variant)?.run_pure()?;
    let (readout, _) = out.distribution.most_likely();
    Ok(ProtocolBResult {
        final_state: out.pre_measure,
        decision: verdict_b(&readout),
        readout,
        distribution: out.distribution,
    })
}

/// All zeros is unanimous; anything else is not.
pub fn verdict_b(readout: &str) -> Decision {
    if !readout.is_empty() && readout.bytes().all(|b| b == b'0') {
        Decision::Unanimous
    } else {
        Decision::NotUnanimous
    }
}
