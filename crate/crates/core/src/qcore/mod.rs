//! Dense complex linear algebra for small qubit registers.
//!
//! Qubit 0 is the most significant bit of a basis index, so the label
//! `"0011"` is index 3 and kets print left to right in qubit order.

mod bits;
mod density;
mod fidelity;
mod gate;
pub(crate) mod kernel;
mod linalg;
mod measure;
mod state;

pub use bits::{index_of, label_of};
pub use density::{apply_gate_dm, to_density, DensityMatrix};
pub use fidelity::{fidelity, pure_fidelity};
pub use gate::GateMatrix;
pub use linalg::{hermitian_eigenvalues, hermitian_sqrt};
pub use measure::{
    measure_probs, sample_shots, sample_with, Measurable, OutcomeDistribution, ShotCounts,
};
pub use state::{apply_gate, basis_state, equal_up_to_global_phase, StateVector};

/// Complex amplitude type used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Largest register the dense representation accepts.
pub const MAX_QUBITS: usize = 8;

/// Tolerance for normalization, Hermiticity and unitarity checks.
pub const STATE_TOL: f64 = 1e-9;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

pub(crate) fn check_width(n_qubits: usize) -> crate::Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(crate::error::input_err!(
            "qubit count {n_qubits} outside 1..={MAX_QUBITS}"
        ));
    }
    Ok(())
}

pub(crate) fn all_finite(values: &[Complex]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Expands a slice of `Complex` into a displayable ket like `1/2(|00⟩-|11⟩)`.
///
/// Amplitudes below `1e-9` are dropped. When all surviving magnitudes agree,
/// the common factor is pulled out and the phases are printed per term.
pub fn format_ket(state: &StateVector) -> alloc::string::String {
    use alloc::format;
    use alloc::string::String;
    use alloc::vec::Vec;

    let n = state.n_qubits();
    let terms: Vec<(usize, Complex)> = state
        .amplitudes()
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-9)
        .collect();
    if terms.is_empty() {
        return String::from("0");
    }
    let mag = terms[0].1.norm();
    let uniform = terms.iter().all(|(_, a)| libm::fabs(a.norm() - mag) < 1e-9);
    let mut out = String::new();
    if uniform && terms.len() > 1 {
        let inv_sq = 1.0 / (mag * mag);
        let rounded = libm::round(inv_sq);
        let prefix = if libm::fabs(inv_sq - rounded) < 1e-6 {
            let r = rounded as u64;
            let root = libm::round(libm::sqrt(r as f64)) as u64;
            if root * root == r {
                format!("1/{root}")
            } else {
                format!("1/√{r}")
            }
        } else {
            format!("{mag:.4}")
        };
        out.push_str(&prefix);
        out.push('(');
        for (i, (idx, a)) in terms.iter().enumerate() {
            let phase = *a / mag;
            out.push_str(&phase_sign(phase, i == 0));
            out.push_str(&format!("|{}⟩", label_of(*idx, n)));
        }
        out.push(')');
    } else {
        for (i, (idx, a)) in terms.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            out.push_str(&format!(
                "({:.4}{:+.4}i)|{}⟩",
                a.re,
                a.im,
                label_of(*idx, n)
            ));
        }
    }
    out
}

fn phase_sign(phase: Complex, first: bool) -> alloc::string::String {
    use alloc::format;
    use alloc::string::String;
    const EPS: f64 = 1e-9;
    if libm::fabs(phase.re - 1.0) < EPS {
        String::from(if first { "" } else { "+" })
    } else if libm::fabs(phase.re + 1.0) < EPS {
        String::from("-")
    } else if libm::fabs(phase.im - 1.0) < EPS {
        String::from(if first { "i" } else { "+i" })
    } else if libm::fabs(phase.im + 1.0) < EPS {
        String::from("-i")
    } else {
        let sep = if first { "" } else { "+" };
        format!("{sep}e^(i{:.4})", phase.arg())
    }
}
