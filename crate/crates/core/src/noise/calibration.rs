use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{depolarizing, GateNoise, GateScope, NoiseModel};
use crate::{Error, Result};

/// One qubit's row of a device calibration sheet.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationRecord {
    pub qubit_id: u32,
    pub t1_us: f64,
    pub t2_us: f64,
    pub frequency_ghz: f64,
    pub readout_error: f64,
    pub pauli_x_error: f64,
    /// CNOT error keyed by `(control, target)` physical qubit ids.
    pub cnot_errors: BTreeMap<(u32, u32), f64>,
}

impl CalibrationRecord {
    pub fn validate(&self) -> Result<()> {
        let q = self.qubit_id;
        let rate = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "qubit {q}: {name} = {v} outside [0, 1]"
                )))
            }
        };
        rate("readout_error", self.readout_error)?;
        rate("pauli_x_error", self.pauli_x_error)?;
        for (&(c, t), &e) in &self.cnot_errors {
            rate(&format!("cnot_errors.cx{c}_{t}"), e)?;
        }
        for (name, v) in [("t1_us", self.t1_us), ("t2_us", self.t2_us)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Config(format!(
                    "qubit {q}: {name} = {v} must be non-negative"
                )));
            }
        }
        Ok(())
    }
}

/// How a logical two-qubit interaction is charged against the device.
#[derive(Debug, Clone, PartialEq)]
pub struct PairError {
    /// Register qubits of the protocol circuit.
    pub roles: (usize, usize),
    /// Physical route from the first role's qubit to the second's.
    pub route: Vec<u32>,
    /// Depolarizing strength applied to both qubits after the gate.
    pub error: f64,
}

impl PairError {
    pub fn is_routed(&self) -> bool {
        self.route.len() > 2
    }
}

fn direct_cnot(records: &[CalibrationRecord], a: u32, b: u32) -> Option<f64> {
    let find = |c: u32, t: u32| {
        records
            .iter()
            .find_map(|r| r.cnot_errors.get(&(c, t)).copied())
    };
    find(a, b).or_else(|| find(b, a))
}

fn shortest_route(records: &[CalibrationRecord], from: u32, to: u32) -> Option<Vec<u32>> {
    let mut edges: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for r in records {
        for &(c, t) in r.cnot_errors.keys() {
            edges.entry(c).or_default().push(t);
            edges.entry(t).or_default().push(c);
        }
    }
    let mut prev: BTreeMap<u32, u32> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        if q == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &next in edges.get(&q).map(Vec::as_slice).unwrap_or(&[]) {
            if next != from && !prev.contains_key(&next) {
                prev.insert(next, q);
                queue.push_back(next);
            }
        }
    }
    None
}

/// Resolves the error charged to each used register pair.
///
/// A pair without a direct CNOT entry is an error unless `allow_routing`
/// is set. With routing, the first qubit is swapped along the shortest
/// coupling path next to the second and the gate runs there; the layout
/// stays permuted afterwards, as a transpiler would leave it. Each SWAP
/// costs three CNOTs, so the charged error is
/// `1 - Π(1 - e_swap)^3 · (1 - e_gate)`.
pub fn pair_errors(
    records: &[CalibrationRecord],
    mapping: &[u32],
    used_pairs: &[(usize, usize)],
    allow_routing: bool,
) -> Result<Vec<PairError>> {
    let mut out = Vec::with_capacity(used_pairs.len());
    for &(a, b) in used_pairs {
        let (Some(&qa), Some(&qb)) = (mapping.get(a), mapping.get(b)) else {
            return Err(Error::Config(format!(
                "register pair ({a}, {b}) is not mapped"
            )));
        };
        if let Some(e) = direct_cnot(records, qa, qb) {
            out.push(PairError {
                roles: (a, b),
                route: vec![qa, qb],
                error: e,
            });
            continue;
        }
        if !allow_routing {
            return Err(Error::Config(format!(
                "no cnot_error for physical pair cx{qa}_{qb} used by register pair ({a}, {b})"
            )));
        }
        let route = shortest_route(records, qa, qb).ok_or_else(|| {
            Error::Config(format!("physical qubits {qa} and {qb} are not connected"))
        })?;
        let hops: Vec<f64> = route
            .windows(2)
            .map(|w| direct_cnot(records, w[0], w[1]).unwrap_or(0.0))
            .collect();
        let (last, swaps) = hops.split_last().expect("route has at least one edge");
        let survive = swaps
            .iter()
            .fold(1.0 - last, |acc, e| acc * libm::pow(1.0 - e, 3.0));
        out.push(PairError {
            roles: (a, b),
            route,
            error: 1.0 - survive,
        });
    }
    Ok(out)
}

fn build(
    records: &[CalibrationRecord],
    mapping: &[u32],
    used_pairs: &[(usize, usize)],
    allow_routing: bool,
) -> Result<NoiseModel> {
    for r in records {
        r.validate()?;
    }
    let mut model = NoiseModel::identity();
    for (role, &qid) in mapping.iter().enumerate() {
        if mapping[..role].contains(&qid) {
            return Err(Error::Config(format!("physical qubit {qid} mapped twice")));
        }
        let rec = records
            .iter()
            .find(|r| r.qubit_id == qid)
            .ok_or_else(|| Error::Config(format!("no calibration record for qubit {qid}")))?;
        model.gate.push(GateNoise {
            scope: GateScope::Single(role),
            channel: depolarizing(rec.pauli_x_error)?,
        });
        model.readout_flip.push(rec.readout_error);
    }
    for pair in pair_errors(records, mapping, used_pairs, allow_routing)? {
        model.gate.push(GateNoise {
            scope: GateScope::Pair(pair.roles.0, pair.roles.1),
            channel: depolarizing(pair.error)?,
        });
    }
    Ok(model)
}

/// Device model: depolarizing at the Pauli-X error after each single-qubit
/// gate, depolarizing at the CNOT error on both qubits after each
/// two-qubit gate, and a symmetric readout flip at the assignment error.
///
/// `mapping[role]` is the physical qubit hosting register qubit `role`.
/// Every pair in `used_pairs` needs a CNOT entry. T1, T2 and frequency are
/// carried in the records but do not enter the model.
pub fn device_model_from_calibration(
    records: &[CalibrationRecord],
    mapping: &[u32],
    used_pairs: &[(usize, usize)],
) -> Result<NoiseModel> {
    build(records, mapping, used_pairs, false)
}

/// Like [`device_model_from_calibration`], but pairs that are not coupled
/// on the device are charged a routed SWAP error (see [`pair_errors`]).
pub fn device_model_with_routing(
    records: &[CalibrationRecord],
    mapping: &[u32],
    used_pairs: &[(usize, usize)],
) -> Result<NoiseModel> {
    build(records, mapping, used_pairs, true)
}
