use alloc::string::String;

use crate::error::input_err;
use crate::Result;

/// Basis index of a bitstring label; the first character is qubit 0 (MSB).
pub fn index_of(label: &str, n_qubits: usize) -> Result<usize> {
    if label.len() != n_qubits {
        return Err(input_err!(
            "label {label:?} has length {}, expected {n_qubits}",
            label.len()
        ));
    }
    label.bytes().try_fold(0usize, |acc, b| match b {
        b'0' => Ok(acc << 1),
        b'1' => Ok((acc << 1) | 1),
        _ => Err(input_err!("label {label:?} contains non-binary character")),
    })
}

/// Bitstring label of a basis index, qubit 0 first.
pub fn label_of(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| {
            if (index >> (n_qubits - 1 - q)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Bit position of qubit `q` inside a basis index.
#[inline]
pub(crate) fn bit_of(q: usize, n_qubits: usize) -> usize {
    n_qubits - 1 - q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for n in 1..=4 {
            for i in 0..(1 << n) {
                assert_eq!(index_of(&label_of(i, n), n).unwrap(), i);
            }
        }
        assert_eq!(index_of("0011", 4).unwrap(), 3);
        assert_eq!(label_of(4, 3), "100");
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(index_of("01", 3).is_err());
        assert!(index_of("0a1", 3).is_err());
    }
}
