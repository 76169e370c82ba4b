//! Protocol A: iterative veto over a shared Bell pair.
//!
//! Qubit 0 stays with the authority, qubit 1 travels. In round `t` each
//! vetoing voter applies `diag(1, e^{iπ/2^t})` to the travel qubit, so with
//! `k` vetoes the pair returns as `(|00⟩ + e^{ikπ/2^t}|11⟩)/√2`. Decoding with
//! CNOT then H reads `phi_minus` as `10`.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::plan::circulate;
use super::{Decision, GateOp, Party, RoundPlan, Step, VoteVector};
use crate::error::input_err;
use crate::qcore::{Complex, GateMatrix, OutcomeDistribution, StateVector};
use crate::Result;

const HOME: usize = 0;
const TRAVEL: usize = 1;

/// `diag(1, e^{iπ/2^t})`; `t = 0` is Pauli-Z and `t = 1` is the S gate.
pub fn sigma_z_t(t: u32) -> GateMatrix {
    match t {
        0 => GateMatrix::pauli_z(),
        1 => GateMatrix::phase_exact(Complex::new(0.0, 1.0)),
        _ => GateMatrix::phase(PI / libm::pow(2.0, t as f64)),
    }
}

/// Upper bound on rounds for `n` voters: `1 + ⌈log₂ n⌉`.
pub fn max_iterations(n: usize) -> Result<u32> {
    if n < 2 {
        return Err(input_err!("need at least two voters, got {n}"));
    }
    let ceil_log2 = usize::BITS - (n - 1).leading_zeros();
    Ok(1 + ceil_log2)
}

/// Result of a Bell measurement, named by the state it identifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    /// Decoded readout of CNOT(home→travel), H(home).
    pub fn from_readout(readout: &str) -> Result<Self> {
        match readout {
            "00" => Ok(BellOutcome::PhiPlus),
            "10" => Ok(BellOutcome::PhiMinus),
            "01" => Ok(BellOutcome::PsiPlus),
            "11" => Ok(BellOutcome::PsiMinus),
            other => Err(input_err!("{other:?} is not a two-bit readout")),
        }
    }

    pub fn readout(self) -> &'static str {
        match self {
            BellOutcome::PhiPlus => "00",
            BellOutcome::PhiMinus => "10",
            BellOutcome::PsiPlus => "01",
            BellOutcome::PsiMinus => "11",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BellOutcome::PhiPlus => "phi_plus",
            BellOutcome::PhiMinus => "phi_minus",
            BellOutcome::PsiPlus => "psi_plus",
            BellOutcome::PsiMinus => "psi_minus",
        }
    }

    pub fn is_conclusive(self) -> bool {
        self == BellOutcome::PhiMinus
    }
}

/// One round of protocol A.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProtocolAIteration {
    /// Round index; the round number is `t + 1`.
    pub t: u32,
    pub bell_outcome: BellOutcome,
    pub readout: String,
    pub conclusive: bool,
}

/// Circuit for round `t`: Bell preparation, one hop per voter, decoding.
pub fn protocol_a_plan(votes: &VoteVector, t: u32) -> RoundPlan {
    let va = Party::Authority;
    let mut steps = Vec::new();
    steps.push(Step::Gate(GateOp::new(
        "h",
        GateMatrix::hadamard(),
        &[HOME],
        va,
    )));
    steps.push(Step::Gate(GateOp::new(
        "cx",
        GateMatrix::cnot(),
        &[HOME, TRAVEL],
        va,
    )));
    let veto = sigma_z_t(t);
    circulate(&mut steps, votes.len(), |voter, steps| {
        let op = if votes.vetoed(voter) {
            GateOp::new("sigma_z_t", veto.clone(), &[TRAVEL], Party::Voter(voter))
        } else {
            GateOp::new("id", GateMatrix::identity(), &[TRAVEL], Party::Voter(voter))
        };
        steps.push(Step::Gate(op));
    });
    steps.push(Step::Gate(GateOp::new(
        "cx",
        GateMatrix::cnot(),
        &[HOME, TRAVEL],
        va,
    )));
    steps.push(Step::Gate(GateOp::new(
        "h",
        GateMatrix::hadamard(),
        &[HOME],
        va,
    )));
    RoundPlan {
        n_qubits: 2,
        travel: alloc::vec![TRAVEL],
        steps,
    }
}

/// Pre-measurement Bell pair and decoded readout distribution of round `t`.
pub fn protocol_a_round(votes: &VoteVector, t: u32) -> Result<(StateVector, OutcomeDistribution)> {
    let out = protocol_a_plan(votes, t).run_pure()?;
    Ok((out.pre_measure, out.distribution))
}

/// Runs rounds `t = 0, 1, …` until a `phi_minus` readout (Reject) or until
/// [`max_iterations`] inconclusive rounds (Pass).
pub fn protocol_a_run(votes: &VoteVector) -> Result<(Decision, Vec<ProtocolAIteration>)> {
    let rounds = max_iterations(votes.len())?;
    let mut iterations = Vec::new();
    for t in 0..rounds {
        let (_, dist) = protocol_a_round(votes, t)?;
        let (readout, _) = dist.most_likely();
        let bell_outcome = BellOutcome::from_readout(&readout)?;
        let conclusive = bell_outcome.is_conclusive();
        iterations.push(ProtocolAIteration {
            t,
            bell_outcome,
            readout,
            conclusive,
        });
        if conclusive {
            return Ok((Decision::Reject, iterations));
        }
    }
    Ok((Decision::Pass, iterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{equal_up_to_global_phase, Complex};

    fn votes(bits: &str) -> VoteVector {
        bits.parse().unwrap()
    }

    #[test]
    fn sigma_z_t_examples() {
        let one = Complex::new(1.0, 0.0);
        assert_eq!(sigma_z_t(0).matrix()[3], Complex::new(-1.0, 0.0));
        assert_eq!(sigma_z_t(0).matrix()[0], one);
        assert_eq!(sigma_z_t(1).matrix()[3], Complex::new(0.0, 1.0));
        let e = sigma_z_t(2).matrix()[3];
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((e - Complex::new(h, h)).norm() < 1e-15);
        for t in 0..6 {
            assert!(sigma_z_t(t).unitarity_error() < 1e-12);
        }
    }

    #[test]
    fn max_iterations_examples() {
        assert_eq!(max_iterations(4).unwrap(), 3);
        assert_eq!(max_iterations(2).unwrap(), 2);
        assert_eq!(max_iterations(5).unwrap(), 4);
        assert_eq!(max_iterations(8).unwrap(), 4);
        assert_eq!(max_iterations(9).unwrap(), 5);
        assert!(max_iterations(1).is_err());
    }

    #[test]
    fn single_veto_gives_phi_minus() {
        let (state, dist) = protocol_a_round(&votes("0100"), 0).unwrap();
        let one = Complex::new(1.0, 0.0);
        let phi_minus = StateVector::from_terms(2, &[("00", one), ("11", -one)]).unwrap();
        assert!(state.max_abs_diff(&phi_minus) < 1e-12);
        assert!((dist.get("10") - 1.0).abs() < 1e-12);
    }

    #[test]
    fn run_examples() {
        let (d, its) = protocol_a_run(&votes("0000")).unwrap();
        assert_eq!(d, Decision::Pass);
        assert_eq!(its.len(), 3);
        assert!(its.iter().all(|i| i.readout == "00" && !i.conclusive));

        let (d, its) = protocol_a_run(&votes("0011")).unwrap();
        assert_eq!(d, Decision::Reject);
        let r: Vec<_> = its.iter().map(|i| i.readout.as_str()).collect();
        assert_eq!(r, ["00", "10"]);

        let (d, its) = protocol_a_run(&votes("1111")).unwrap();
        assert_eq!(d, Decision::Reject);
        let r: Vec<_> = its.iter().map(|i| i.readout.as_str()).collect();
        assert_eq!(r, ["00", "00", "10"]);
        assert_eq!(its[2].bell_outcome, BellOutcome::PhiMinus);
    }

    #[test]
    fn plan_shape() {
        let plan = protocol_a_plan(&votes("1010"), 0);
        let hops: Vec<_> = plan.transfers().collect();
        assert_eq!(hops.len(), 5);
        assert_eq!(hops[0], (Party::Authority, Party::Voter(1)));
        assert_eq!(hops[4], (Party::Voter(4), Party::Authority));
        assert_eq!(plan.two_qubit_pairs(), [(0, 1)]);
    }

    #[test]
    fn bell_decoding_map() {
        let one = Complex::new(1.0, 0.0);
        let cases = [
            (("00", one), ("11", one), "00"),
            (("00", one), ("11", -one), "10"),
            (("01", one), ("10", one), "01"),
            (("01", one), ("10", -one), "11"),
        ];
        for (a, b, want) in cases {
            let s = StateVector::from_terms(2, &[a, b]).unwrap();
            let s = s.apply(&GateMatrix::cnot(), &[HOME, TRAVEL]).unwrap();
            let s = s.apply(&GateMatrix::hadamard(), &[HOME]).unwrap();
            let target = crate::qcore::basis_state(2, want).unwrap();
            assert!(equal_up_to_global_phase(&s, &target, 1e-12), "{want}");
        }
    }
}
