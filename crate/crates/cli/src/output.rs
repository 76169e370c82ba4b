//! Result rows and their CSV/JSON encodings.

use std::io::Write;

use qveto_core::election::ElectionReport;
use serde::Serialize;

use crate::CliError;

/// One row per (repeat × round) of `run`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub protocol: String,
    pub votes: String,
    pub iteration: u32,
    pub modal_outcome: String,
    pub success_probability: f64,
    pub fidelity: f64,
    pub noise_kind: String,
    /// Empty when several channels or a calibration model are combined.
    pub noise_strength: Option<f64>,
    pub seed: u64,
}

impl ResultRow {
    pub fn from_report(
        report: &ElectionReport,
        noise_kind: &str,
        noise_strength: Option<f64>,
    ) -> Vec<Self> {
        report
            .runs
            .iter()
            .flat_map(|run| {
                run.iterations.iter().map(move |it| ResultRow {
                    protocol: report.protocol.to_string(),
                    votes: report.votes.clone(),
                    iteration: it.iteration,
                    modal_outcome: it.modal_outcome.clone(),
                    success_probability: it.success_probability,
                    fidelity: it.fidelity,
                    noise_kind: noise_kind.to_string(),
                    noise_strength,
                    seed: run.seed,
                })
            })
            .collect()
    }
}

/// One row per (protocol × channel × strength) of `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepLine {
    pub protocol: String,
    pub votes: String,
    pub noise_kind: String,
    pub placement: String,
    pub strength: f64,
    pub fidelity: f64,
    pub success_probability: f64,
    pub modal_outcome: String,
    pub seed: u64,
}

pub fn write_csv<R: Serialize>(out: &mut dyn Write, rows: &[R]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn csv_error(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::Io(io),
        other => CliError::Simulation(format!("csv: {other:?}")),
    }
}

/// `0.98765` → `"98.77%"`.
pub fn percent(p: f64) -> String {
    format!("{:.2}%", p * 100.0)
}
