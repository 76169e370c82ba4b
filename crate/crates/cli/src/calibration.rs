//! TOML calibration files.
//!
//! ```toml
//! device = "name"            # optional
//!
//! [[qubits]]
//! qubit_id = 0
//! t1_us = 108.61
//! t2_us = 38.65
//! frequency_ghz = 4.822
//! readout_error = 3.74e-2
//! pauli_x_error = 2.531e-4
//!
//! [qubits.cnot_errors]
//! cx0_1 = 1.081e-2
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use qveto_core::election::ProtocolKind;
use qveto_core::noise::{
    device_model_with_routing, pair_errors, CalibrationRecord, NoiseModel, PairError,
};
use toml::{Table, Value};

use crate::CliError;

/// The bundled calibration of the 4-qubit section of IBM Q Casablanca.
pub const BUNDLED: &str = include_str!("../data/ibmq_casablanca.toml");

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationFile {
    pub device: Option<String>,
    pub records: Vec<CalibrationRecord>,
}

impl CalibrationFile {
    pub fn bundled() -> Self {
        parse(BUNDLED).expect("bundled calibration parses")
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        parse(&text)
    }

    /// Register-to-physical mapping used for `protocol`.
    ///
    /// Protocol A sits on the Q0-Q1 coupling. The GHZ hub goes on Q1 so both
    /// of its CNOTs are native. The cluster state cannot be embedded in a
    /// star, so its (q2, q3) interaction is routed through Q1.
    pub fn mapping(&self, protocol: ProtocolKind) -> Vec<u32> {
        match protocol {
            ProtocolKind::A => vec![0, 1],
            ProtocolKind::BGhz => vec![1, 0, 2],
            ProtocolKind::BCluster => vec![1, 0, 2, 3],
        }
    }

    pub fn noise_model(&self, protocol: ProtocolKind) -> Result<NoiseModel, CliError> {
        device_model_with_routing(
            &self.records,
            &self.mapping(protocol),
            &protocol.interaction_pairs(),
        )
        .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn pair_errors(&self, protocol: ProtocolKind) -> Result<Vec<PairError>, CliError> {
        pair_errors(
            &self.records,
            &self.mapping(protocol),
            &protocol.interaction_pairs(),
            true,
        )
        .map_err(|e| CliError::Config(e.to_string()))
    }
}

pub fn parse(text: &str) -> Result<CalibrationFile, CliError> {
    let root: Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Config(format!("calibration: {}", e.message())))?;
    let device = match root.get("device") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(schema("device", "a string")),
    };
    let qubits = match root.get("qubits") {
        Some(Value::Array(a)) if !a.is_empty() => a,
        Some(_) => return Err(schema("qubits", "a non-empty array of tables")),
        None => {
            return Err(CliError::Config(
                "calibration: missing field `qubits`".into(),
            ))
        }
    };
    let mut records = Vec::with_capacity(qubits.len());
    for (i, q) in qubits.iter().enumerate() {
        let path = format!("qubits[{i}]");
        let Value::Table(t) = q else {
            return Err(schema(&path, "a table"));
        };
        records.push(record(t, &path)?);
    }
    for (i, r) in records.iter().enumerate() {
        if records[..i].iter().any(|o| o.qubit_id == r.qubit_id) {
            return Err(CliError::Config(format!(
                "calibration: qubits[{i}].qubit_id: duplicate id {}",
                r.qubit_id
            )));
        }
        r.validate()
            .map_err(|e| CliError::Config(format!("calibration: qubits[{i}]: {e}")))?;
    }
    Ok(CalibrationFile { device, records })
}

fn schema(path: &str, expected: &str) -> CliError {
    CliError::Config(format!("calibration: {path} must be {expected}"))
}

fn number(t: &Table, path: &str, key: &str) -> Result<f64, CliError> {
    match t.get(key) {
        Some(Value::Float(f)) => Ok(*f),
        Some(Value::Integer(i)) => Ok(*i as f64),
        Some(_) => Err(schema(&format!("{path}.{key}"), "a number")),
        None => Err(CliError::Config(format!(
            "calibration: missing field {path}.{key}"
        ))),
    }
}

fn record(t: &Table, path: &str) -> Result<CalibrationRecord, CliError> {
    let qubit_id = match t.get("qubit_id") {
        Some(Value::Integer(i)) => u32::try_from(*i)
            .map_err(|_| schema(&format!("{path}.qubit_id"), "a non-negative integer"))?,
        Some(_) => return Err(schema(&format!("{path}.qubit_id"), "an integer")),
        None => {
            return Err(CliError::Config(format!(
                "calibration: missing field {path}.qubit_id"
            )))
        }
    };
    let mut cnot_errors = BTreeMap::new();
    match t.get("cnot_errors") {
        None => {}
        Some(Value::Table(cx)) => {
            for (key, v) in cx {
                let field = format!("{path}.cnot_errors.{key}");
                let pair =
                    parse_cx(key).ok_or_else(|| schema(&field, "named cx<control>_<target>"))?;
                let e = match v {
                    Value::Float(f) => *f,
                    Value::Integer(i) => *i as f64,
                    _ => return Err(schema(&field, "a number")),
                };
                cnot_errors.insert(pair, e);
            }
        }
        Some(_) => return Err(schema(&format!("{path}.cnot_errors"), "a table")),
    }
    Ok(CalibrationRecord {
        qubit_id,
        t1_us: number(t, path, "t1_us")?,
        t2_us: number(t, path, "t2_us")?,
        frequency_ghz: number(t, path, "frequency_ghz")?,
        readout_error: number(t, path, "readout_error")?,
        pauli_x_error: number(t, path, "pauli_x_error")?,
        cnot_errors,
    })
}

fn parse_cx(key: &str) -> Option<(u32, u32)> {
    let (c, t) = key.strip_prefix("cx")?.split_once('_')?;
    Some((c.parse().ok()?, t.parse().ok()?))
}
