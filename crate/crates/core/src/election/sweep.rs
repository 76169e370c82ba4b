use alloc::string::String;
use alloc::vec::Vec;

use super::config::{ElectionConfig, ProtocolKind, Termination};
use super::run::run_election;
use crate::error::input_err;
use crate::noise::{ChannelKind, NoiseModel, Placement};
use crate::protocols::VoteVector;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepRow {
    pub strength: f64,
    /// Fidelity of the last round.
    pub fidelity: f64,
    pub success_probability: f64,
    pub modal_outcome: String,
}

/// Runs one election per strength with a single channel kind.
///
/// Protocol A always runs the rounds of the noiseless protocol here, so
/// every row describes the same circuit.
pub fn noise_sweep(
    protocol: ProtocolKind,
    votes: &VoteVector,
    kind: ChannelKind,
    strengths: &[f64],
    placement: Placement,
    seed: u64,
    shots: u64,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(strengths.len());
    for &strength in strengths {
        let noise = NoiseModel::single(kind.channel(strength)?, placement);
        let config = ElectionConfig::new(protocol, votes.len())
            .with_seed(seed)
            .with_shots(shots)
            .with_noise(noise)
            .with_termination(Termination::FollowIdeal);
        let report = run_election(&config, votes)?;
        let last = report.runs[0].final_iteration();
        rows.push(SweepRow {
            strength,
            fidelity: last.fidelity,
            success_probability: last.success_probability,
            modal_outcome: last.modal_outcome.clone(),
        });
    }
    Ok(rows)
}

/// `min, min + step, …` up to `max` inclusive (with a small tolerance for
/// accumulated rounding).
pub fn strength_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) || step <= 0.0 || min > max {
        return Err(input_err!("invalid grid {min}:{max}:{step}"));
    }
    if min < 0.0 || max > 1.0 {
        return Err(input_err!("strengths must lie in [0, 1], got {min}:{max}"));
    }
    let count = libm::floor((max - min) / step + 1e-9) as usize + 1;
    Ok((0..count)
        .map(|i| (min + step * i as f64).min(max))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_endpoint() {
        let g = strength_grid(0.0, 0.5, 0.05).unwrap();
        assert_eq!(g.len(), 11);
        assert!((g[10] - 0.5).abs() < 1e-12);
        assert_eq!(strength_grid(0.2, 0.2, 0.1).unwrap(), alloc::vec![0.2]);
        assert!(strength_grid(0.0, 1.5, 0.1).is_err());
        assert!(strength_grid(0.0, 0.5, 0.0).is_err());
    }
}
