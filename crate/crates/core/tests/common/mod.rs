#![allow(dead_code)]

use proptest::prelude::*;
use qveto_core::qcore::Complex as C;
use qveto_core::qcore::{DensityMatrix, GateMatrix, StateVector};

pub fn u3(theta: f64, phi: f64, lambda: f64) -> GateMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    GateMatrix::new(
        1,
        vec![
            C::new(c, 0.0),
            -C::from_polar(s, lambda),
            C::from_polar(s, phi),
            C::from_polar(c, phi + lambda),
        ],
    )
    .unwrap()
}

pub fn angles() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0..std::f64::consts::PI, -3.2..3.2f64, -3.2..3.2f64)
}

/// Random two-qubit unitary: local layer, CNOT, local layer.
pub fn unitary2() -> impl Strategy<Value = GateMatrix> {
    proptest::array::uniform4(angles()).prop_map(|a| {
        let l1 =
            GateMatrix::tensor(&u3(a[0].0, a[0].1, a[0].2), &u3(a[1].0, a[1].1, a[1].2)).unwrap();
        let l2 =
            GateMatrix::tensor(&u3(a[2].0, a[2].1, a[2].2), &u3(a[3].0, a[3].1, a[3].2)).unwrap();
        l2.compose(&GateMatrix::cnot())
            .unwrap()
            .compose(&l1)
            .unwrap()
    })
}

/// ρ = G G† / Tr(G G†) for a random complex G, optionally of reduced rank.
pub fn density(n: usize) -> impl Strategy<Value = DensityMatrix> {
    let dim = 1usize << n;
    (
        proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim),
        1..=dim,
    )
        .prop_map(move |(raw, rank)| {
            let g: Vec<C> = raw.iter().map(|&(re, im)| C::new(re, im)).collect();
            let mut rho = vec![C::new(0.0, 0.0); dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = C::new(0.0, 0.0);
                    for k in 0..rank {
                        acc += g[i * dim + k] * g[j * dim + k].conj();
                    }
                    rho[i * dim + j] = acc;
                }
            }
            let tr: f64 = (0..dim).map(|i| rho[i * dim + i].re).sum();
            for v in &mut rho {
                *v /= tr;
            }
            // enforce exact Hermiticity after rounding
            for i in 0..dim {
                rho[i * dim + i].im = 0.0;
                for j in 0..i {
                    rho[i * dim + j] = rho[j * dim + i].conj();
                }
            }
            DensityMatrix::new(n, rho).unwrap()
        })
}

pub fn pure(n: usize) -> impl Strategy<Value = StateVector> {
    let dim = 1usize << n;
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim)
        .prop_filter("non-zero", |v| {
            v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
        })
        .prop_map(move |raw| {
            let norm: f64 = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            StateVector::new(
                n,
                raw.iter()
                    .map(|&(a, b)| C::new(a / norm, b / norm))
                    .collect(),
            )
            .unwrap()
        })
}

/// Single-qubit fidelity in closed form: Tr(ρσ) + 2 √(det ρ · det σ).
pub fn qubit_fidelity_oracle(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let e = |m: &DensityMatrix, i: usize, j: usize| m.entry(i, j);
    let mut tr = C::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            tr += e(a, i, j) * e(b, j, i);
        }
    }
    let det = |m: &DensityMatrix| {
        (e(m, 0, 0) * e(m, 1, 1) - e(m, 0, 1) * e(m, 1, 0))
            .re
            .max(0.0)
    };
    tr.re + 2.0 * (det(a) * det(b)).sqrt()
}
