use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::KrausChannel;
use crate::error::input_err;
use crate::qcore::OutcomeDistribution;
use crate::{Error, Result};

/// Where a swept channel is injected during a protocol run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Placement {
    /// Once per travel qubit per transfer between parties.
    #[default]
    Hop,
    /// After every gate, on each qubit the gate touched.
    Gate,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::Hop => "hop",
            Placement::Gate => "gate",
        })
    }
}

impl FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hop" => Ok(Placement::Hop),
            "gate" => Ok(Placement::Gate),
            other => Err(input_err!(
                "unknown placement {other:?} (expected hop|gate)"
            )),
        }
    }
}

/// Channel applied to travelling qubits on every transfer.
#[derive(Debug, Clone, PartialEq)]
pub struct HopNoise {
    pub channel: KrausChannel,
    /// Restricts the channel to these register qubits; `None` means every
    /// travel qubit of the protocol.
    pub qubits: Option<Vec<usize>>,
}

/// Which gates a [`GateNoise`] entry follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateScope {
    /// Every gate.
    Any,
    /// Single-qubit gates on this register qubit.
    Single(usize),
    /// Two-qubit gates on this unordered pair.
    Pair(usize, usize),
}

impl fmt::Display for GateScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateScope::Any => f.write_str("any"),
            GateScope::Single(q) => write!(f, "q{q}"),
            GateScope::Pair(a, b) => write!(f, "q{a}-q{b}"),
        }
    }
}

impl GateScope {
    fn matches(&self, targets: &[usize]) -> bool {
        match (*self, targets) {
            (GateScope::Any, _) => true,
            (GateScope::Single(q), [t]) => q == *t,
            (GateScope::Pair(a, b), [x, y]) => (a, b) == (*x, *y) || (a, b) == (*y, *x),
            _ => false,
        }
    }
}

/// Channel applied to each target qubit after every matching gate.
#[derive(Debug, Clone, PartialEq)]
pub struct GateNoise {
    pub scope: GateScope,
    pub channel: KrausChannel,
}

/// Noise injected over a protocol run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NoiseModel {
    pub hop: Vec<HopNoise>,
    pub gate: Vec<GateNoise>,
    /// Symmetric readout flip probability per register qubit. Empty means
    /// perfect readout.
    pub readout_flip: Vec<f64>,
}

impl NoiseModel {
    pub fn identity() -> Self {
        Self::default()
    }

    /// A single channel placed per hop or per gate.
    pub fn single(channel: KrausChannel, placement: Placement) -> Self {
        let mut model = Self::default();
        model.add(channel, placement);
        model
    }

    pub fn add(&mut self, channel: KrausChannel, placement: Placement) {
        match placement {
            Placement::Hop => self.hop.push(HopNoise {
                channel,
                qubits: None,
            }),
            Placement::Gate => self.gate.push(GateNoise {
                scope: GateScope::Any,
                channel,
            }),
        }
    }

    /// True when no channel or readout flip can change a state.
    pub fn is_identity(&self) -> bool {
        self.hop.iter().all(|h| h.channel.is_identity())
            && self.gate.iter().all(|g| g.channel.is_identity())
            && self.readout_flip.iter().all(|p| *p == 0.0)
    }

    /// Channels to apply to travel qubit `qubit` on each transfer.
    pub fn hop_channels<'a>(&'a self, qubit: usize) -> impl Iterator<Item = &'a KrausChannel> + 'a {
        self.hop
            .iter()
            .filter(move |h| h.qubits.as_ref().is_none_or(|qs| qs.contains(&qubit)))
            .map(|h| &h.channel)
    }

    /// Channels that follow a gate on `targets`.
    pub fn gate_channels<'a>(
        &'a self,
        targets: &'a [usize],
    ) -> impl Iterator<Item = &'a KrausChannel> + 'a {
        self.gate
            .iter()
            .filter(move |g| g.scope.matches(targets))
            .map(|g| &g.channel)
    }

    pub fn validate(&self) -> Result<()> {
        for p in &self.readout_flip {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::Config(alloc::format!(
                    "readout flip probability {p} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Flips each readout bit `j` independently with probability `flips[j]`.
///
/// `flips` may be empty (no error) or hold one probability per qubit.
pub fn apply_readout_flip(
    dist: &OutcomeDistribution,
    flips: &[f64],
) -> Result<OutcomeDistribution> {
    let n = dist.n_qubits();
    if flips.is_empty() {
        return Ok(dist.clone());
    }
    if flips.len() != n {
        return Err(input_err!(
            "{} readout flip probabilities for {n} qubits",
            flips.len()
        ));
    }
    let mut probs = dist.dense().to_vec();
    for (q, &f) in flips.iter().enumerate() {
        if !(0.0..=1.0).contains(&f) {
            return Err(input_err!("readout flip probability {f} outside [0, 1]"));
        }
        if f == 0.0 {
            continue;
        }
        let mask = 1usize << (n - 1 - q);
        let prev = probs.clone();
        for (i, p) in probs.iter_mut().enumerate() {
            *p = (1.0 - f) * prev[i] + f * prev[i ^ mask];
        }
    }
    Ok(OutcomeDistribution::from_raw(n, probs))
}
