//! Strided local-operator application shared by state vectors, density
//! matrices and Kraus maps.

use super::bits::bit_of;
use super::{Complex, ZERO};

/// Applies the `2^k x 2^k` row-major `op` to the qubits in `targets`, where
/// `targets[0]` is the most significant qubit of the local operator.
///
/// The register is addressed as `data[base + index * stride]` for each basis
/// index, which lets the same routine act on a column or a row of a
/// density matrix.
pub(crate) fn apply_strided(
    data: &mut [Complex],
    base: usize,
    stride: usize,
    n_qubits: usize,
    op: &[Complex],
    targets: &[usize],
) {
    let k = targets.len();
    let local_dim = 1usize << k;
    debug_assert_eq!(op.len(), local_dim * local_dim);
    debug_assert!(k <= 2);

    let masks: [usize; 2] = {
        let mut m = [0usize; 2];
        for (j, &t) in targets.iter().enumerate() {
            m[j] = 1 << bit_of(t, n_qubits);
        }
        m
    };
    let target_mask = masks[..k].iter().fold(0, |acc, m| acc | m);

    let mut idx = [0usize; 4];
    let mut buf = [ZERO; 4];
    for i in 0..(1usize << n_qubits) {
        if i & target_mask != 0 {
            continue;
        }
        for l in 0..local_dim {
            let mut full = i;
            for (j, mask) in masks[..k].iter().enumerate() {
                if (l >> (k - 1 - j)) & 1 == 1 {
                    full |= mask;
                }
            }
            idx[l] = base + full * stride;
            buf[l] = data[idx[l]];
        }
        for r in 0..local_dim {
            let row = &op[r * local_dim..(r + 1) * local_dim];
            let mut acc = ZERO;
            for l in 0..local_dim {
                acc += row[l] * buf[l];
            }
            data[idx[r]] = acc;
        }
    }
}

/// Computes `op · rho · op†` in place on a row-major `dim x dim` matrix.
pub(crate) fn conjugate_by(
    rho: &mut [Complex],
    n_qubits: usize,
    op: &[Complex],
    targets: &[usize],
) {
    let dim = 1usize << n_qubits;
    for col in 0..dim {
        apply_strided(rho, col, dim, n_qubits, op, targets);
    }
    let op_conj: alloc::vec::Vec<Complex> = op.iter().map(|z| z.conj()).collect();
    for row in 0..dim {
        apply_strided(rho, row * dim, 1, n_qubits, &op_conj, targets);
    }
}

/// Validates a target list against the register width and operator arity.
pub(crate) fn check_targets(targets: &[usize], arity: usize, n_qubits: usize) -> crate::Result<()> {
    use crate::error::input_err;
    if targets.len() != arity {
        return Err(input_err!(
            "operator of arity {arity} given {} targets",
            targets.len()
        ));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_qubits {
            return Err(input_err!(
                "target qubit {t} out of range for {n_qubits} qubits"
            ));
        }
        if targets[..i].contains(&t) {
            return Err(input_err!("duplicate target qubit {t}"));
        }
    }
    Ok(())
}
