use alloc::vec;
use alloc::vec::Vec;

use super::kernel::{check_targets, conjugate_by};
use super::{all_finite, check_width, hermitian_eigenvalues, Complex, GateMatrix, StateVector};
use super::{STATE_TOL, ZERO};
use crate::error::input_err;
use crate::{Error, Result};

/// Row-major `2^n x 2^n` density matrix.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Vec<Complex>,
}

impl DensityMatrix {
    /// Validates shape, Hermiticity, unit trace and positivity (eigenvalues
    /// no lower than -1e-9).
    pub fn new(n_qubits: usize, entries: Vec<Complex>) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(input_err!(
                "{} entries given for a {dim}x{dim} matrix",
                entries.len()
            ));
        }
        if !all_finite(&entries) {
            return Err(input_err!("density matrix has non-finite entries"));
        }
        let rho = Self { n_qubits, entries };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_raw(n_qubits: usize, entries: Vec<Complex>) -> Self {
        Self { n_qubits, entries }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        let mut entries = vec![ZERO; dim * dim];
        let w = Complex::new(1.0 / dim as f64, 0.0);
        for i in 0..dim {
            entries[i * dim + i] = w;
        }
        Ok(Self { n_qubits, entries })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim()).map(|i| self.entry(i, i)).sum()
    }

    /// Largest `|ρ_ij - conj(ρ_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.entry(i, j) - self.entry(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries, self.dim())
    }

    /// Checks the density-matrix invariants at the 1e-9 tolerance.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > STATE_TOL {
            return Err(Error::InvalidState(alloc::format!(
                "matrix is not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - Complex::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(Error::InvalidState(alloc::format!(
                "trace is {tr}, expected 1"
            )));
        }
        let min = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -STATE_TOL {
            return Err(Error::InvalidState(alloc::format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    /// `⟨ψ|ρ|ψ⟩`, real part.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        if psi.dim() != self.dim() {
            return Err(input_err!("state and density matrix widths differ"));
        }
        let d = self.dim();
        let a = psi.amplitudes();
        let mut acc = ZERO;
        for i in 0..d {
            for j in 0..d {
                acc += a[i].conj() * self.entry(i, j) * a[j];
            }
        }
        Ok(acc.re)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Returns `U ρ U†` for `gate` embedded on `targets`.
    pub fn apply(&self, gate: &GateMatrix, targets: &[usize]) -> Result<Self> {
        apply_gate_dm(self, gate, targets)
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn to_density(state: &StateVector) -> DensityMatrix {
    let d = state.dim();
    let a = state.amplitudes();
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            entries.push(a[i] * a[j].conj());
        }
    }
    DensityMatrix::from_raw(state.n_qubits(), entries)
}

/// `U ρ U†` for `gate` embedded on `targets`.
pub fn apply_gate_dm(
    rho: &DensityMatrix,
    gate: &GateMatrix,
    targets: &[usize],
) -> Result<DensityMatrix> {
    check_targets(targets, gate.arity(), rho.n_qubits)?;
    let mut out = rho.clone();
    conjugate_by(&mut out.entries, rho.n_qubits, gate.matrix(), targets);
    Ok(out)
}
