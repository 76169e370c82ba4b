use alloc::vec;
use alloc::vec::Vec;

use super::kernel::{apply_strided, check_targets};
use super::{all_finite, check_width, index_of, Complex, GateMatrix, ONE, STATE_TOL, ZERO};
use crate::error::input_err;
use crate::Result;

/// Normalized pure state over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex>,
}

impl StateVector {
    /// Checks length `2^n_qubits`, finiteness and unit norm within 1e-9.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex>) -> Result<Self> {
        check_width(n_qubits)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(input_err!(
                "{} amplitudes given for {n_qubits} qubits",
                amplitudes.len()
            ));
        }
        if !all_finite(&amplitudes) {
            return Err(input_err!("state has non-finite amplitudes"));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if libm::fabs(norm_sq - 1.0) > STATE_TOL {
            return Err(input_err!("state norm² is {norm_sq}, expected 1"));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Builds `Σ c_i |label_i⟩` and normalizes it.
    pub fn from_terms(n_qubits: usize, terms: &[(&str, Complex)]) -> Result<Self> {
        check_width(n_qubits)?;
        let mut amps = vec![ZERO; 1 << n_qubits];
        for (label, coeff) in terms {
            amps[index_of(label, n_qubits)?] += *coeff;
        }
        let norm = libm::sqrt(amps.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm == 0.0 || !norm.is_finite() {
            return Err(input_err!("superposition has zero norm"));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::new(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: &str) -> Result<Complex> {
        Ok(self.amplitudes[index_of(label, self.n_qubits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex> {
        if self.dim() != other.dim() {
            return Err(input_err!("inner product of states with different widths"));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies `gate` to `targets` and returns the new state.
    pub fn apply(&self, gate: &GateMatrix, targets: &[usize]) -> Result<Self> {
        apply_gate(self, gate, targets)
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `|label⟩` with qubit 0 as the leftmost symbol.
pub fn basis_state(n_qubits: usize, label: &str) -> Result<StateVector> {
    check_width(n_qubits)?;
    let idx = index_of(label, n_qubits)?;
    let mut amplitudes = vec![ZERO; 1 << n_qubits];
    amplitudes[idx] = ONE;
    Ok(StateVector {
        n_qubits,
        amplitudes,
    })
}

/// Embeds `gate` on `targets` and applies it to `state`.
pub fn apply_gate(
    state: &StateVector,
    gate: &GateMatrix,
    targets: &[usize],
) -> Result<StateVector> {
    check_targets(targets, gate.arity(), state.n_qubits)?;
    let mut amplitudes = state.amplitudes.clone();
    apply_strided(
        &mut amplitudes,
        0,
        1,
        state.n_qubits,
        gate.matrix(),
        targets,
    );
    Ok(StateVector {
        n_qubits: state.n_qubits,
        amplitudes,
    })
}

/// True when `a = c·b` for some `|c| = 1`, within `tol` per amplitude.
pub fn equal_up_to_global_phase(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let Some((pivot, _)) = b
        .amplitudes
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))
    else {
        return false;
    };
    let bp = b.amplitudes[pivot];
    if bp.norm() == 0.0 {
        return false;
    }
    let ratio = a.amplitudes[pivot] / bp;
    let norm = ratio.norm();
    if norm == 0.0 {
        return false;
    }
    let phase = ratio / norm;
    a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .all(|(x, y)| (x - phase * y).norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn basis_state_examples() {
        let s = basis_state(2, "00").unwrap();
        assert_eq!(s.amplitudes(), &[ONE, ZERO, ZERO, ZERO]);
        let s = basis_state(3, "111").unwrap();
        assert_eq!(s.amplitudes()[7], ONE);
        let s = basis_state(4, "0011").unwrap();
        assert_eq!(s.amplitudes()[3], ONE);
        assert_eq!(s.amplitudes().iter().filter(|a| **a == ONE).count(), 1);
        assert!(basis_state(3, "01").is_err());
    }

    #[test]
    fn bell_preparation() {
        let s = basis_state(2, "00").unwrap();
        let s = apply_gate(&s, &GateMatrix::hadamard(), &[0]).unwrap();
        let s = apply_gate(&s, &GateMatrix::cnot(), &[0, 1]).unwrap();
        let want =
            StateVector::new(2, vec![c(FRAC_1_SQRT_2), ZERO, ZERO, c(FRAC_1_SQRT_2)]).unwrap();
        assert!(s.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn identity_and_pauli_x() {
        let s =
            StateVector::from_terms(2, &[("01", c(1.0)), ("10", Complex::new(0.0, 1.0))]).unwrap();
        assert_eq!(apply_gate(&s, &GateMatrix::identity(), &[1]).unwrap(), s);
        let s = basis_state(3, "000").unwrap();
        let s = apply_gate(&s, &GateMatrix::pauli_x(), &[1]).unwrap();
        assert_eq!(s, basis_state(3, "010").unwrap());
    }

    #[test]
    fn cnot_respects_target_order() {
        let s = basis_state(3, "001").unwrap();
        // control qubit 2, target qubit 0
        let s = apply_gate(&s, &GateMatrix::cnot(), &[2, 0]).unwrap();
        assert_eq!(s, basis_state(3, "101").unwrap());
    }

    #[test]
    fn target_validation() {
        let s = basis_state(2, "00").unwrap();
        assert!(apply_gate(&s, &GateMatrix::cnot(), &[0, 0]).is_err());
        assert!(apply_gate(&s, &GateMatrix::pauli_x(), &[2]).is_err());
        assert!(apply_gate(&s, &GateMatrix::pauli_x(), &[0, 1]).is_err());
    }

    #[test]
    fn global_phase_comparison() {
        let ghz = StateVector::from_terms(3, &[("000", c(1.0)), ("111", c(1.0))]).unwrap();
        let neg = StateVector::from_terms(3, &[("000", c(-1.0)), ("111", c(-1.0))]).unwrap();
        assert!(equal_up_to_global_phase(&neg, &ghz, 1e-12));
        let rel = StateVector::from_terms(3, &[("000", c(-1.0)), ("111", c(1.0))]).unwrap();
        assert!(!equal_up_to_global_phase(&rel, &ghz, 1e-6));
        let zero = basis_state(1, "0").unwrap();
        let one = basis_state(1, "1").unwrap();
        assert!(!equal_up_to_global_phase(&zero, &one, 1e-6));
        let i_one = StateVector::new(1, vec![ZERO, Complex::new(0.0, 1.0)]).unwrap();
        assert!(equal_up_to_global_phase(&i_one, &one, 1e-12));
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(StateVector::new(1, vec![ONE, ONE]).is_err());
        assert!(StateVector::new(1, vec![ONE]).is_err());
        assert!(StateVector::new(9, vec![ZERO; 512]).is_err());
    }
}
