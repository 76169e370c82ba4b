//! Hermitian eigen-solver for small dense matrices.
//!
//! A Hermitian `H = A + iB` is embedded as the real symmetric block matrix
//! `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
//! doubled. Cyclic Jacobi rotations diagonalize the embedding, and any
//! spectral function `f(H)` is read back from the blocks of `f(embedding)`.

use alloc::vec;
use alloc::vec::Vec;

use super::Complex;

const MAX_SWEEPS: usize = 100;

struct RealEigen {
    values: Vec<f64>,
    /// Column-major eigenvectors: `vectors[k * n + i]` is component i of vector k.
    vectors: Vec<f64>,
}

fn embed(h: &[Complex], dim: usize) -> Vec<f64> {
    let n = 2 * dim;
    let mut m = vec![0.0; n * n];
    for i in 0..dim {
        for j in 0..dim {
            // symmetrize to absorb rounding in the input
            let z = (h[i * dim + j] + h[j * dim + i].conj()) * 0.5;
            m[i * n + j] = z.re;
            m[(i + dim) * n + (j + dim)] = z.re;
            m[i * n + (j + dim)] = -z.im;
            m[(i + dim) * n + j] = z.im;
        }
    }
    m
}

fn jacobi(mut a: Vec<f64>, n: usize) -> RealEigen {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    // transpose v so each eigenvector is contiguous
    let mut vectors = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            vectors[k * n + i] = v[i * n + k];
        }
    }
    RealEigen { values, vectors }
}

/// Eigenvalues of a row-major Hermitian `dim x dim` matrix, ascending.
pub fn hermitian_eigenvalues(h: &[Complex], dim: usize) -> Vec<f64> {
    let eig = jacobi(embed(h, dim), 2 * dim);
    let mut vals = eig.values;
    vals.sort_by(f64::total_cmp);
    // each eigenvalue of H appears twice in the embedding
    vals.chunks(2)
        .map(|pair| 0.5 * (pair[0] + pair[1]))
        .collect()
}

/// Applies the real function `f` to the spectrum of Hermitian `h`.
pub(crate) fn hermitian_function(
    h: &[Complex],
    dim: usize,
    f: impl Fn(f64) -> f64,
) -> Vec<Complex> {
    let n = 2 * dim;
    let eig = jacobi(embed(h, dim), n);
    let mut fm = vec![0.0; n * n];
    for (k, &lambda) in eig.values.iter().enumerate() {
        let w = f(lambda);
        if w == 0.0 {
            continue;
        }
        let u = &eig.vectors[k * n..(k + 1) * n];
        for i in 0..n {
            let wi = w * u[i];
            for j in 0..n {
                fm[i * n + j] += wi * u[j];
            }
        }
    }
    let mut out = vec![Complex::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[i * dim + j] = Complex::new(fm[i * n + j], fm[(i + dim) * n + j]);
        }
    }
    out
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below zero are clamped to zero.
pub fn hermitian_sqrt(h: &[Complex], dim: usize) -> Vec<Complex> {
    hermitian_function(h, dim, |x| libm::sqrt(x.max(0.0)))
}

pub(crate) fn matmul(a: &[Complex], b: &[Complex], dim: usize) -> Vec<Complex> {
    let mut out = vec![Complex::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik.re == 0.0 && aik.im == 0.0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    out
}
