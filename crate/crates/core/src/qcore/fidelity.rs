use super::linalg::{hermitian_eigenvalues, hermitian_sqrt, matmul};
use super::{DensityMatrix, StateVector};
use crate::error::input_err;
use crate::{Error, Result};

/// Eigenvalues in `[-NEGATIVE_LIMIT, 0)` are rounding noise and clamped.
const NEGATIVE_LIMIT: f64 = 1e-6;

fn check_spectrum(name: &str, values: &[f64]) -> Result<()> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -NEGATIVE_LIMIT {
        return Err(Error::InvalidState(alloc::format!(
            "{name} has eigenvalue {min:e}"
        )));
    }
    Ok(())
}

/// Uhlmann fidelity `F(σ, ρ) = (Tr √(√σ ρ √σ))²`.
///
/// `√σ` comes from a Hermitian eigendecomposition, the trace of the outer
/// root from the eigenvalues of `√σ ρ √σ`. The result is clamped to `[0, 1]`.
pub fn fidelity(sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<f64> {
    if sigma.dim() != rho.dim() {
        return Err(input_err!(
            "fidelity of {}-qubit and {}-qubit states",
            sigma.n_qubits(),
            rho.n_qubits()
        ));
    }
    let dim = sigma.dim();
    check_spectrum("sigma", &sigma.eigenvalues())?;
    check_spectrum("rho", &rho.eigenvalues())?;

    let root = hermitian_sqrt(sigma.entries(), dim);
    let inner = matmul(&matmul(&root, rho.entries(), dim), &root, dim);
    let spectrum = hermitian_eigenvalues(&inner, dim);
    check_spectrum("sqrt(sigma) rho sqrt(sigma)", &spectrum)?;

    let trace_root: f64 = spectrum.iter().map(|&x| libm::sqrt(x.max(0.0))).sum();
    Ok((trace_root * trace_root).clamp(0.0, 1.0))
}

/// `⟨ψ|ρ|ψ⟩`, the fidelity against a pure reference state.
pub fn pure_fidelity(psi: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    Ok(rho.expectation(psi)?.clamp(0.0, 1.0))
}
