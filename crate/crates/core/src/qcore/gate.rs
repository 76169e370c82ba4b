use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use super::{all_finite, Complex, ONE, STATE_TOL, ZERO};
use crate::error::input_err;
use crate::Result;

/// A one- or two-qubit unitary, stored row-major.
///
/// For two-qubit gates the first target passed to [`apply_gate`](super::apply_gate)
/// is the more significant qubit of the matrix.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GateMatrix {
    arity: usize,
    matrix: Vec<Complex>,
}

const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

impl GateMatrix {
    /// Builds a gate, checking shape, finiteness and `U†U = I` within 1e-9.
    pub fn new(arity: usize, matrix: Vec<Complex>) -> Result<Self> {
        if !(1..=2).contains(&arity) {
            return Err(input_err!("gate arity {arity} not in 1..=2"));
        }
        let dim = 1 << arity;
        if matrix.len() != dim * dim {
            return Err(input_err!(
                "gate of arity {arity} needs {} entries, got {}",
                dim * dim,
                matrix.len()
            ));
        }
        if !all_finite(&matrix) {
            return Err(input_err!("gate matrix has non-finite entries"));
        }
        let gate = Self { arity, matrix };
        let err = gate.unitarity_error();
        if err > STATE_TOL {
            return Err(input_err!("gate is not unitary (max deviation {err:e})"));
        }
        Ok(gate)
    }

    fn from_parts(arity: usize, matrix: Vec<Complex>) -> Self {
        Self { arity, matrix }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn matrix(&self) -> &[Complex] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.matrix[row * self.dim() + col]
    }

    /// Largest entry-wise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.entry(k, i).conj() * self.entry(k, j);
                }
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let mut m = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                m[j * d + i] = self.entry(i, j).conj();
            }
        }
        Self::from_parts(self.arity, m)
    }

    /// Kronecker product `a ⊗ b` of two single-qubit gates.
    pub fn tensor(a: &GateMatrix, b: &GateMatrix) -> Result<Self> {
        if a.arity != 1 || b.arity != 1 {
            return Err(input_err!(
                "tensor product is defined for single-qubit gates"
            ));
        }
        let mut m = vec![ZERO; 16];
        for ar in 0..2 {
            for ac in 0..2 {
                for br in 0..2 {
                    for bc in 0..2 {
                        m[(ar * 2 + br) * 4 + (ac * 2 + bc)] = a.entry(ar, ac) * b.entry(br, bc);
                    }
                }
            }
        }
        Ok(Self::from_parts(2, m))
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &GateMatrix) -> Result<Self> {
        if self.arity != other.arity {
            return Err(input_err!("cannot compose gates of different arity"));
        }
        let d = self.dim();
        let mut m = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.entry(i, k) * other.entry(k, j);
                }
                m[i * d + j] = acc;
            }
        }
        Ok(Self::from_parts(self.arity, m))
    }

    pub fn approx_eq(&self, other: &GateMatrix, tol: f64) -> bool {
        self.arity == other.arity
            && self
                .matrix
                .iter()
                .zip(&other.matrix)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn identity() -> Self {
        Self::from_parts(1, vec![ONE, ZERO, ZERO, ONE])
    }

    pub fn pauli_x() -> Self {
        Self::from_parts(1, vec![ZERO, ONE, ONE, ZERO])
    }

    pub fn pauli_y() -> Self {
        Self::from_parts(1, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO])
    }

    /// `iY`, the real matrix `[[0, 1], [-1, 0]]`.
    pub fn i_y() -> Self {
        Self::from_parts(1, vec![ZERO, ONE, c(-1.0, 0.0), ZERO])
    }

    pub fn pauli_z() -> Self {
        Self::from_parts(1, vec![ONE, ZERO, ZERO, c(-1.0, 0.0)])
    }

    pub fn hadamard() -> Self {
        let h = c(FRAC_1_SQRT_2, 0.0);
        Self::from_parts(1, vec![h, h, h, -h])
    }

    /// `diag(1, e^{iθ})`.
    pub fn phase(theta: f64) -> Self {
        let e = Complex::new(libm::cos(theta), libm::sin(theta));
        Self::from_parts(1, vec![ONE, ZERO, ZERO, e])
    }

    /// `diag(1, e)` for a phase `e` given exactly; `|e|` must be 1.
    pub fn phase_exact(e: Complex) -> Self {
        debug_assert!((e.norm() - 1.0).abs() < STATE_TOL);
        Self::from_parts(1, vec![ONE, ZERO, ZERO, e])
    }

    /// CNOT with the first target as control.
    pub fn cnot() -> Self {
        let mut m = vec![ZERO; 16];
        m[0] = ONE;
        m[5] = ONE;
        m[11] = ONE;
        m[14] = ONE;
        Self::from_parts(2, m)
    }

    pub fn cz() -> Self {
        let mut m = vec![ZERO; 16];
        m[0] = ONE;
        m[5] = ONE;
        m[10] = ONE;
        m[15] = c(-1.0, 0.0);
        Self::from_parts(2, m)
    }
}
