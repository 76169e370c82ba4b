use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::input_err;
use crate::qcore::kernel::{check_targets, conjugate_by};
use crate::qcore::{Complex, DensityMatrix};
use crate::{Error, Result};

/// Row-major 2x2 Kraus operator.
pub type KrausOperator = [Complex; 4];

const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

const ZERO: Complex = c(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
    Depolarizing,
    BitFlip,
    Custom,
}

impl ChannelKind {
    /// The four named families, in a fixed report order.
    pub const NAMED: [ChannelKind; 4] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::Depolarizing,
        ChannelKind::BitFlip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude_damping",
            ChannelKind::PhaseDamping => "phase_damping",
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::BitFlip => "bit_flip",
            ChannelKind::Custom => "custom",
        }
    }

    /// Constructs the named channel at `strength`.
    pub fn channel(self, strength: f64) -> Result<KrausChannel> {
        match self {
            ChannelKind::AmplitudeDamping => amplitude_damping(strength),
            ChannelKind::PhaseDamping => phase_damping(strength),
            ChannelKind::Depolarizing => depolarizing(strength),
            ChannelKind::BitFlip => bit_flip(strength),
            ChannelKind::Custom => Err(input_err!("custom channels need explicit operators")),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "amplitude_damping" | "amplitude" | "ad" => Ok(ChannelKind::AmplitudeDamping),
            "phase_damping" | "phase" | "pd" | "dephasing" => Ok(ChannelKind::PhaseDamping),
            "depolarizing" | "depolarising" | "depol" => Ok(ChannelKind::Depolarizing),
            "bit_flip" | "bitflip" | "bit" => Ok(ChannelKind::BitFlip),
            other => Err(input_err!("unknown noise kind {other:?}")),
        }
    }
}

/// Single-qubit CPTP map `ρ ↦ Σ K ρ K†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kind: ChannelKind,
    strength: f64,
    operators: Vec<KrausOperator>,
}

fn check_strength(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(input_err!("{name} strength {p} outside [0, 1]"));
    }
    Ok(())
}

fn identity_only(kind: ChannelKind) -> KrausChannel {
    KrausChannel {
        kind,
        strength: 0.0,
        operators: vec![[c(1.0, 0.0), ZERO, ZERO, c(1.0, 0.0)]],
    }
}

/// `K0 = diag(1, √(1-γ))`, `K1 = √γ |0⟩⟨1|`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    check_strength("amplitude damping", gamma)?;
    if gamma == 0.0 {
        return Ok(identity_only(ChannelKind::AmplitudeDamping));
    }
    let keep = libm::sqrt(1.0 - gamma);
    let decay = libm::sqrt(gamma);
    Ok(KrausChannel {
        kind: ChannelKind::AmplitudeDamping,
        strength: gamma,
        operators: vec![
            [c(1.0, 0.0), ZERO, ZERO, c(keep, 0.0)],
            [ZERO, c(decay, 0.0), ZERO, ZERO],
        ],
    })
}

/// `K0 = diag(1, √(1-λ))`, `K1 = diag(0, √λ)`.
pub fn phase_damping(lambda: f64) -> Result<KrausChannel> {
    check_strength("phase damping", lambda)?;
    if lambda == 0.0 {
        return Ok(identity_only(ChannelKind::PhaseDamping));
    }
    Ok(KrausChannel {
        kind: ChannelKind::PhaseDamping,
        strength: lambda,
        operators: vec![
            [c(1.0, 0.0), ZERO, ZERO, c(libm::sqrt(1.0 - lambda), 0.0)],
            [ZERO, ZERO, ZERO, c(libm::sqrt(lambda), 0.0)],
        ],
    })
}

/// `ρ ↦ (1-p) ρ + p I/2`, written as `√(1-3p/4) I` and `√(p/4)` X, Y, Z.
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    check_strength("depolarizing", p)?;
    if p == 0.0 {
        return Ok(identity_only(ChannelKind::Depolarizing));
    }
    let a = libm::sqrt(1.0 - 0.75 * p);
    let b = libm::sqrt(0.25 * p);
    Ok(KrausChannel {
        kind: ChannelKind::Depolarizing,
        strength: p,
        operators: vec![
            [c(a, 0.0), ZERO, ZERO, c(a, 0.0)],
            [ZERO, c(b, 0.0), c(b, 0.0), ZERO],
            [ZERO, c(0.0, -b), c(0.0, b), ZERO],
            [c(b, 0.0), ZERO, ZERO, c(-b, 0.0)],
        ],
    })
}

/// `√(1-p) I` and `√p X`.
pub fn bit_flip(p: f64) -> Result<KrausChannel> {
    check_strength("bit flip", p)?;
    if p == 0.0 {
        return Ok(identity_only(ChannelKind::BitFlip));
    }
    let a = libm::sqrt(1.0 - p);
    let b = libm::sqrt(p);
    Ok(KrausChannel {
        kind: ChannelKind::BitFlip,
        strength: p,
        operators: vec![
            [c(a, 0.0), ZERO, ZERO, c(a, 0.0)],
            [ZERO, c(b, 0.0), c(b, 0.0), ZERO],
        ],
    })
}

impl KrausChannel {
    /// A user-supplied Kraus set; completeness is checked to 1e-9.
    pub fn custom(operators: Vec<KrausOperator>) -> Result<Self> {
        if operators.is_empty() {
            return Err(input_err!("a channel needs at least one Kraus operator"));
        }
        let ch = Self {
            kind: ChannelKind::Custom,
            strength: 0.0,
            operators,
        };
        let err = ch.completeness_error();
        if err > crate::qcore::STATE_TOL {
            return Err(input_err!(
                "Kraus operators are not complete (deviation {err:e})"
            ));
        }
        Ok(ch)
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn operators(&self) -> &[KrausOperator] {
        &self.operators
    }

    /// True when the Kraus set is exactly `{I}`.
    pub fn is_identity(&self) -> bool {
        self.operators.len() == 1 && self.operators[0] == [c(1.0, 0.0), ZERO, ZERO, c(1.0, 0.0)]
    }

    /// Largest entry-wise deviation of `Σ K†K` from `I`.
    pub fn completeness_error(&self) -> f64 {
        let mut sum = [ZERO; 4];
        for k in &self.operators {
            for i in 0..2 {
                for j in 0..2 {
                    sum[i * 2 + j] += k[i].conj() * k[j] + k[2 + i].conj() * k[2 + j];
                }
            }
        }
        let id = [c(1.0, 0.0), ZERO, ZERO, c(1.0, 0.0)];
        sum.iter()
            .zip(id.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Applies `channel` to qubit `target` of `rho`.
pub fn apply_channel(
    rho: &DensityMatrix,
    channel: &KrausChannel,
    target: usize,
) -> Result<DensityMatrix> {
    check_targets(&[target], 1, rho.n_qubits())?;
    if channel.is_identity() {
        return Ok(rho.clone());
    }
    let n = rho.n_qubits();
    let mut total = vec![ZERO; rho.entries().len()];
    for op in &channel.operators {
        let mut term = rho.entries().to_vec();
        conjugate_by(&mut term, n, op, &[target]);
        total.iter_mut().zip(&term).for_each(|(acc, t)| *acc += t);
    }
    Ok(DensityMatrix::from_raw(n, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{basis_state, fidelity, to_density, StateVector};

    fn diag(rho: &DensityMatrix) -> Vec<f64> {
        (0..rho.dim()).map(|i| rho.entry(i, i).re).collect()
    }

    fn plus() -> DensityMatrix {
        let one = c(1.0, 0.0);
        to_density(&StateVector::from_terms(1, &[("0", one), ("1", one)]).unwrap())
    }

    #[test]
    fn amplitude_damping_examples() {
        let one = to_density(&basis_state(1, "1").unwrap());
        let zero = to_density(&basis_state(1, "0").unwrap());
        let out = apply_channel(&one, &amplitude_damping(1.0).unwrap(), 0).unwrap();
        assert!(out.max_abs_diff(&zero) < 1e-15);
        let out = apply_channel(&one, &amplitude_damping(0.5).unwrap(), 0).unwrap();
        let d = diag(&out);
        assert!((d[0] - 0.5).abs() < 1e-15 && (d[1] - 0.5).abs() < 1e-15);
        assert!(out.entry(0, 1).norm() < 1e-15);
    }

    #[test]
    fn phase_damping_examples() {
        let out = apply_channel(&plus(), &phase_damping(1.0).unwrap(), 0).unwrap();
        assert!(out.entry(0, 1).norm() < 1e-15);
        assert!((out.entry(0, 0).re - 0.5).abs() < 1e-15);
        let out = apply_channel(&plus(), &phase_damping(0.5).unwrap(), 0).unwrap();
        assert!((out.entry(0, 1).norm() - 0.5 * libm::sqrt(0.5)).abs() < 1e-15);
    }

    #[test]
    fn depolarizing_examples() {
        let zero = to_density(&basis_state(1, "0").unwrap());
        let mixed = DensityMatrix::maximally_mixed(1).unwrap();
        let out = apply_channel(&zero, &depolarizing(1.0).unwrap(), 0).unwrap();
        assert!(out.max_abs_diff(&mixed) < 1e-15);
        let out = apply_channel(&zero, &depolarizing(0.4).unwrap(), 0).unwrap();
        let d = diag(&out);
        assert!((d[0] - 0.8).abs() < 1e-15 && (d[1] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn bit_flip_examples() {
        let zero = to_density(&basis_state(1, "0").unwrap());
        let out = apply_channel(&zero, &bit_flip(1.0).unwrap(), 0).unwrap();
        assert!(out.max_abs_diff(&to_density(&basis_state(1, "1").unwrap())) < 1e-15);
        let out = apply_channel(&zero, &bit_flip(0.3).unwrap(), 0).unwrap();
        let d = diag(&out);
        assert!((d[0] - 0.7).abs() < 1e-15 && (d[1] - 0.3).abs() < 1e-15);

        let rho = to_density(&basis_state(2, "00").unwrap());
        let out = apply_channel(&rho, &bit_flip(1.0).unwrap(), 1).unwrap();
        assert!(out.max_abs_diff(&to_density(&basis_state(2, "01").unwrap())) < 1e-15);
    }

    #[test]
    fn zero_strength_is_identity() {
        let rho = plus();
        for kind in ChannelKind::NAMED {
            let ch = kind.channel(0.0).unwrap();
            assert!(ch.is_identity());
            assert_eq!(apply_channel(&rho, &ch, 0).unwrap(), rho);
        }
    }

    #[test]
    fn dephased_bell_pair_has_half_fidelity() {
        let one = c(1.0, 0.0);
        let phi = to_density(&StateVector::from_terms(2, &[("00", one), ("11", one)]).unwrap());
        let out = apply_channel(&phi, &phase_damping(1.0).unwrap(), 1).unwrap();
        assert!((fidelity(&phi, &out).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn strength_validation() {
        for kind in ChannelKind::NAMED {
            assert!(kind.channel(-0.1).is_err());
            assert!(kind.channel(1.01).is_err());
            assert!(kind.channel(f64::NAN).is_err());
        }
        assert!(apply_channel(&plus(), &bit_flip(0.1).unwrap(), 1).is_err());
    }

    #[test]
    fn parse_kinds() {
        assert_eq!(
            "phase".parse::<ChannelKind>().unwrap(),
            ChannelKind::PhaseDamping
        );
        assert_eq!(
            "bit-flip".parse::<ChannelKind>().unwrap(),
            ChannelKind::BitFlip
        );
        assert_eq!(
            "amplitude_damping".parse::<ChannelKind>().unwrap(),
            ChannelKind::AmplitudeDamping
        );
        assert!("thermal".parse::<ChannelKind>().is_err());
    }

    #[test]
    fn custom_channel_checks_completeness() {
        let half = c(libm::sqrt(0.5), 0.0);
        assert!(
            KrausChannel::custom(vec![[half, ZERO, ZERO, half], [ZERO, half, half, ZERO]]).is_ok()
        );
        assert!(KrausChannel::custom(vec![[half, ZERO, ZERO, half]]).is_err());
    }
}
