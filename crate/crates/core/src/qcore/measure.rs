use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{index_of, label_of, DensityMatrix, StateVector, STATE_TOL};
use crate::error::input_err;
use crate::Result;

/// Probability of each computational-basis readout, stored densely by
/// basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    n_qubits: usize,
    probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    /// Builds a distribution from `(bitstring, probability)` pairs. Missing
    /// labels get probability 0.
    pub fn from_pairs<'a>(
        n_qubits: usize,
        pairs: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<Self> {
        super::check_width(n_qubits)?;
        let mut probabilities = alloc::vec![0.0; 1 << n_qubits];
        for (label, p) in pairs {
            probabilities[index_of(label, n_qubits)?] += p;
        }
        Self::from_dense(n_qubits, probabilities)
    }

    /// Wraps a dense probability vector after checking range and total mass.
    pub fn from_dense(n_qubits: usize, probabilities: Vec<f64>) -> Result<Self> {
        super::check_width(n_qubits)?;
        if probabilities.len() != 1 << n_qubits {
            return Err(input_err!("distribution length mismatch"));
        }
        if probabilities
            .iter()
            .any(|p| !p.is_finite() || *p < -STATE_TOL || *p > 1.0 + STATE_TOL)
        {
            return Err(input_err!("probability outside [0, 1]"));
        }
        let total: f64 = probabilities.iter().sum();
        if libm::fabs(total - 1.0) > STATE_TOL {
            return Err(input_err!("probabilities sum to {total}"));
        }
        Ok(Self {
            n_qubits,
            probabilities,
        })
    }

    pub(crate) fn from_raw(n_qubits: usize, probabilities: Vec<f64>) -> Self {
        Self {
            n_qubits,
            probabilities,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dense(&self) -> &[f64] {
        &self.probabilities
    }

    /// Probability of `label`; 0 for malformed labels.
    pub fn get(&self, label: &str) -> f64 {
        index_of(label, self.n_qubits)
            .map(|i| self.probabilities[i])
            .unwrap_or(0.0)
    }

    /// Outcomes with probability above `1e-15`, in label order.
    pub fn support(&self) -> impl Iterator<Item = (String, f64)> + '_ {
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 1e-15)
            .map(|(i, p)| (label_of(i, self.n_qubits), *p))
    }

    pub fn to_map(&self) -> BTreeMap<String, f64> {
        self.support().collect()
    }

    /// Most probable outcome; ties go to the smallest label.
    pub fn most_likely(&self) -> (String, f64) {
        let (idx, p) =
            self.probabilities
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, &p)| {
                    if p > best.1 {
                        (i, p)
                    } else {
                        best
                    }
                });
        (label_of(idx, self.n_qubits), p)
    }

    pub fn max_abs_diff(&self, other: &OutcomeDistribution) -> f64 {
        self.probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }
}

/// Anything with computational-basis readout probabilities.
pub trait Measurable {
    fn outcome_distribution(&self) -> OutcomeDistribution;
}

impl Measurable for StateVector {
    fn outcome_distribution(&self) -> OutcomeDistribution {
        let probs = self.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        OutcomeDistribution::from_raw(self.n_qubits(), probs)
    }
}

impl Measurable for DensityMatrix {
    fn outcome_distribution(&self) -> OutcomeDistribution {
        let probs = (0..self.dim())
            .map(|i| self.entry(i, i).re.max(0.0))
            .collect();
        OutcomeDistribution::from_raw(self.n_qubits(), probs)
    }
}

/// `|⟨b|ψ⟩|²` or `⟨b|ρ|b⟩` for every basis label `b`.
pub fn measure_probs<M: Measurable + ?Sized>(state: &M) -> OutcomeDistribution {
    state.outcome_distribution()
}

/// Readout histogram from a seeded multinomial draw.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShotCounts {
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
    pub seed: u64,
}

impl ShotCounts {
    pub fn count(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    /// Most frequent readout; ties go to the smallest label.
    pub fn modal(&self) -> Option<&str> {
        self.counts
            .iter()
            .fold(None::<(&String, u64)>, |best, (k, &v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((k, v)),
            })
            .map(|(k, _)| k.as_str())
    }

    pub fn frequency(&self, label: &str) -> f64 {
        self.count(label) as f64 / self.shots as f64
    }
}

/// Draws `shots` readouts from `dist`.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
/// Each shot takes one `u64`, keeps its top 53 bits as a uniform `u` in
/// `[0, 1)`, and selects the first basis index whose cumulative probability
/// exceeds `u`.
pub fn sample_shots(dist: &OutcomeDistribution, shots: u64, seed: u64) -> Result<ShotCounts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = sample_with(dist, shots, &mut rng)?;
    Ok(ShotCounts {
        shots,
        counts,
        seed,
    })
}

/// Draws `shots` readouts from `dist` with a caller-owned generator, using
/// the same inverse-CDF rule as [`sample_shots`].
pub fn sample_with<R: RngCore>(
    dist: &OutcomeDistribution,
    shots: u64,
    rng: &mut R,
) -> Result<BTreeMap<String, u64>> {
    if shots == 0 {
        return Err(input_err!("shot count must be at least 1"));
    }
    let cumulative: Vec<f64> = dist
        .probabilities
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p.max(0.0);
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().unwrap_or(&0.0);
    let last_nonzero = dist
        .probabilities
        .iter()
        .rposition(|p| *p > 0.0)
        .unwrap_or(0);

    let mut hist = alloc::vec![0u64; dist.probabilities.len()];
    for _ in 0..shots {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * total;
        let idx = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(last_nonzero);
        hist[idx] += 1;
    }
    Ok(hist
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(i, c)| (label_of(i, dist.n_qubits), *c))
        .collect())
}
