use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::config::{ElectionConfig, ProtocolKind, Termination};
use super::report::{
    ElectionReport, FidelitySummary, IterationReport, Payload, RunReport, Transcript,
    TranscriptEvent,
};
use crate::error::input_err;
use crate::noise::{apply_channel, apply_readout_flip, NoiseModel};
use crate::protocols::{
    max_iterations, protocol_a_plan, protocol_b_plan, verdict_b, BellOutcome, Decision, Party,
    RoundPlan, Step, VoteVector,
};
use crate::qcore::{
    apply_gate_dm, fidelity, measure_probs, sample_with, to_density, DensityMatrix,
    OutcomeDistribution, ShotCounts, StateVector,
};
use crate::Result;

/// Mixed-state result of one noisy round.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyRound {
    /// Register at the checkpoint, before the basis-reversal circuit.
    pub pre_measure: DensityMatrix,
    pub final_state: DensityMatrix,
    /// Readout distribution including readout flips.
    pub distribution: OutcomeDistribution,
}

/// Runs `plan` on a density matrix with the channels of `noise`.
pub fn simulate_round(plan: &RoundPlan, noise: &NoiseModel) -> Result<NoisyRound> {
    let zeros: String = (0..plan.n_qubits).map(|_| '0').collect();
    let mut rho = to_density(&crate::qcore::basis_state(plan.n_qubits, &zeros)?);
    let mut pre_measure = None;
    for step in &plan.steps {
        match step {
            Step::Gate(op) => {
                rho = apply_gate_dm(&rho, &op.gate, &op.targets)?;
                for channel in noise.gate_channels(&op.targets) {
                    for &q in &op.targets {
                        rho = apply_channel(&rho, channel, q)?;
                    }
                }
            }
            Step::Transfer { .. } => {
                for &q in &plan.travel {
                    for channel in noise.hop_channels(q) {
                        rho = apply_channel(&rho, channel, q)?;
                    }
                }
            }
            Step::Checkpoint => pre_measure = Some(rho.clone()),
        }
    }
    let distribution = apply_readout_flip(&measure_probs(&rho), &noise.readout_flip)?;
    Ok(NoisyRound {
        pre_measure: pre_measure.unwrap_or_else(|| rho.clone()),
        final_state: rho,
        distribution,
    })
}

/// Fidelity of a noisy register with the pure state it should hold.
pub fn fidelity_vs_ideal(noisy: &DensityMatrix, ideal: &StateVector) -> Result<f64> {
    if noisy.n_qubits() != ideal.n_qubits() {
        return Err(input_err!(
            "noisy state has {} qubits, ideal state {}",
            noisy.n_qubits(),
            ideal.n_qubits()
        ));
    }
    fidelity(&to_density(ideal), noisy)
}

pub fn run_election(config: &ElectionConfig, votes: &VoteVector) -> Result<ElectionReport> {
    config.validate(votes)?;
    let mut runs = Vec::with_capacity(config.repeats as usize);
    for r in 0..config.repeats {
        let seed = config.seed.wrapping_add(u64::from(r));
        runs.push(run_once(config, votes, seed)?);
    }
    let finals: Vec<f64> = runs.iter().map(|r| r.final_iteration().fidelity).collect();
    Ok(ElectionReport {
        protocol: config.protocol,
        votes: votes.to_bits(),
        decision: runs[0].decision,
        repeats_summary: FidelitySummary::from_values(&finals),
        runs,
    })
}

fn run_once(config: &ElectionConfig, votes: &VoteVector, seed: u64) -> Result<RunReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations = Vec::new();
    let mut transcript = Transcript::default();
    let decision = match config.protocol {
        ProtocolKind::A => {
            let rounds = max_iterations(votes.len())?;
            let mut decision = Decision::Pass;
            for t in 0..rounds {
                let plan = protocol_a_plan(votes, t);
                let report = round(config, &plan, t + 1, &mut rng, seed, &mut transcript)?;
                let rejected = report.modal_outcome == BellOutcome::PhiMinus.readout();
                let ideal_stop = report.ideal_outcome == BellOutcome::PhiMinus.readout();
                let bell = BellOutcome::from_readout(&report.modal_outcome)?;
                iterations.push(IterationReport {
                    bell_outcome: Some(bell),
                    ..report
                });
                if rejected {
                    decision = Decision::Reject;
                }
                let stop = match config.termination {
                    Termination::Modal => rejected,
                    Termination::FollowIdeal => ideal_stop,
                };
                if stop {
                    break;
                }
            }
            decision
        }
        ProtocolKind::BGhz | ProtocolKind::BCluster => {
            let variant = config.protocol.variant().expect("protocol B variant");
            let plan = protocol_b_plan(votes, variant)?;
            let report = round(config, &plan, 1, &mut rng, seed, &mut transcript)?;
            let decision = verdict_b(&report.modal_outcome);
            iterations.push(report);
            decision
        }
    };
    Ok(RunReport {
        seed,
        decision,
        iterations,
        transcript,
    })
}

fn round(
    config: &ElectionConfig,
    plan: &RoundPlan,
    iteration: u32,
    rng: &mut ChaCha8Rng,
    seed: u64,
    transcript: &mut Transcript,
) -> Result<IterationReport> {
    let ideal = plan.run_pure()?;
    let noisy = simulate_round(plan, &config.noise)?;
    let counts = ShotCounts {
        shots: config.shots,
        counts: sample_with(&noisy.distribution, config.shots, rng)?,
        seed,
    };
    let modal_outcome = String::from(counts.modal().expect("at least one shot"));
    let (ideal_outcome, _) = ideal.distribution.most_likely();
    let success_probability = noisy.distribution.get(&ideal_outcome).clamp(0.0, 1.0);
    let fidelity = fidelity_vs_ideal(&noisy.pre_measure, &ideal.pre_measure)?;

    for (from, to) in plan.transfers() {
        transcript.events.push(TranscriptEvent {
            from,
            to,
            payload: Payload::QubitTransfer {
                qubits: plan.travel.clone(),
            },
            iteration,
        });
    }
    for voter in 1..=config.n_voters {
        transcript.events.push(TranscriptEvent {
            from: Party::Authority,
            to: Party::Voter(voter),
            payload: Payload::ClassicalAnnouncement {
                readout: modal_outcome.clone(),
            },
            iteration,
        });
    }
    transcript.readout_counts.push(counts.clone());

    Ok(IterationReport {
        iteration,
        counts,
        modal_outcome,
        ideal_outcome,
        success_probability,
        fidelity,
        bell_outcome: None,
    })
}
