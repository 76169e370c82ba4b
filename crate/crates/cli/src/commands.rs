use std::io::Write;

use qveto_core::election::{
    noise_sweep, run_election, strength_grid, ElectionConfig, ElectionReport, ProtocolKind,
    SweepRow,
};
use qveto_core::noise::NoiseModel;
use qveto_core::protocols::{verdict_b, VoteVector};
use qveto_core::reference::{check_table, RowCheck, Table};
use serde::Serialize;

use crate::args::{
    Command, DeviceArgs, DocFormat, NoiseSpec, OutFormat, RunArgs, SweepArgs, TablesArgs,
};
use crate::calibration::CalibrationFile;
use crate::output::{percent, write_csv, write_json, ResultRow, SweepLine};
use crate::CliError;

pub fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Run(a) => run(a, out),
        Command::Tables(a) => tables(a, out, err),
        Command::Sweep(a) => sweep(a, out),
        Command::DeviceInfo(a) => device_info(a, out),
    }
}

fn parse_votes(s: &str) -> Result<VoteVector, CliError> {
    s.parse::<VoteVector>()
        .map_err(|e| CliError::Usage(format!("--votes: {e}")))
}

fn run(a: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let protocol = ProtocolKind::from(a.protocol);
    let votes = parse_votes(&a.votes)?;
    let calibration = a
        .calibration
        .as_deref()
        .map(CalibrationFile::load)
        .transpose()?;
    let mut noise = match &calibration {
        Some(cal) => cal.noise_model(protocol)?,
        None => NoiseModel::identity(),
    };
    for spec in &a.noise {
        let strength = spec.strength.ok_or_else(|| {
            CliError::Usage(format!(
                "--noise {}: strength is required for run",
                spec.kind
            ))
        })?;
        noise.add(spec.kind.channel(strength)?, spec.placement);
    }
    let (noise_kind, noise_strength) = describe_noise(&a.noise, calibration.is_some());

    let config = ElectionConfig::new(protocol, votes.len())
        .with_shots(a.common.shots)
        .with_seed(a.common.seed)
        .with_repeats(a.repeats)
        .with_noise(noise);
    let report = run_election(&config, &votes)?;
    let rows = ResultRow::from_report(&report, &noise_kind, noise_strength);
    match a.common.out {
        OutFormat::Text => run_text(out, &report, &config, &noise_kind),
        OutFormat::Json => write_json(out, &rows),
        OutFormat::Csv => write_csv(out, &rows),
        OutFormat::Report => write_json(out, &report),
    }
}

fn describe_noise(specs: &[NoiseSpec], calibrated: bool) -> (String, Option<f64>) {
    let mut parts: Vec<String> = Vec::new();
    if calibrated {
        parts.push("calibrated".into());
    }
    parts.extend(specs.iter().map(|s| format!("{}@{}", s.kind, s.placement)));
    match (calibrated, specs) {
        (false, []) => ("none".into(), Some(0.0)),
        (false, [one]) => (one.kind.to_string(), one.strength),
        _ => (parts.join("+"), None),
    }
}

fn run_text(
    out: &mut dyn Write,
    report: &ElectionReport,
    config: &ElectionConfig,
    noise: &str,
) -> Result<(), CliError> {
    writeln!(out, "protocol  {}", report.protocol)?;
    writeln!(out, "votes     {}", report.votes)?;
    writeln!(out, "noise     {noise}")?;
    writeln!(out, "shots     {}", config.shots)?;
    writeln!(out, "decision  {}", report.decision)?;
    for run in &report.runs {
        if report.runs.len() > 1 {
            writeln!(out, "run seed={}  decision {}", run.seed, run.decision)?;
        }
        for it in &run.iterations {
            let bell = it
                .bell_outcome
                .map(|b| format!(" ({})", b.as_str()))
                .unwrap_or_default();
            writeln!(
                out,
                "  iteration {}  modal {}{bell}  success {}  fidelity {}",
                it.iteration,
                it.modal_outcome,
                percent(it.success_probability),
                percent(it.fidelity)
            )?;
            let counts: Vec<String> = it
                .counts
                .counts
                .iter()
                .map(|(k, v)| format!("{k}:{v}"))
                .collect();
            writeln!(out, "    counts {}", counts.join(" "))?;
        }
    }
    if report.runs.len() > 1 {
        let s = report.repeats_summary;
        writeln!(
            out,
            "fidelity over {} runs: mean {}  std {}",
            s.runs,
            percent(s.mean),
            percent(s.std_dev)
        )?;
    }
    Ok(())
}

fn selected_tables(which: Option<u8>) -> Vec<Table> {
    match which.and_then(Table::from_number) {
        Some(t) => vec![t],
        None => vec![Table::Bell, Table::Cluster, Table::Ghz],
    }
}

fn table_title(t: Table) -> &'static str {
    match t {
        Table::Bell => "Bell-pair protocol",
        Table::Cluster => "cluster-state protocol",
        Table::Ghz => "GHZ-state protocol",
    }
}

#[derive(Serialize)]
struct TableLine {
    table: u8,
    case: u8,
    votes: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    iteration: Option<u32>,
    state: String,
    readout: String,
    probability: f64,
    result: &'static str,
    hardware_probability: f64,
    hardware_fidelity_pct: f64,
    matches: bool,
}

fn result_label(check: &RowCheck) -> &'static str {
    match check.row.table {
        Table::Bell if check.conclusive => "conclusive (reject)",
        Table::Bell => "inconclusive",
        _ => match verdict_b(&check.simulated_readout) {
            qveto_core::protocols::Decision::Unanimous => "unanimous",
            _ => "not unanimous",
        },
    }
}

fn tables(a: &TablesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for table in selected_tables(a.which) {
        for check in check_table(table)? {
            if !check.passed() {
                failures.push(format!(
                    "table {} case {} votes {}{}: expected {} / {}, got {} / {} (p = {})",
                    table.number(),
                    check.row.case,
                    check.row.votes,
                    check
                        .row
                        .iteration
                        .map(|i| format!(" iteration {i}"))
                        .unwrap_or_default(),
                    check.row.state_terms,
                    check.row.readout,
                    check.simulated_ket,
                    check.simulated_readout,
                    check.readout_probability
                ));
            }
            lines.push(TableLine {
                table: table.number(),
                case: check.row.case,
                votes: check.row.votes,
                iteration: check.row.iteration,
                result: result_label(&check),
                state: check.simulated_ket.clone(),
                readout: check.simulated_readout.clone(),
                probability: check.readout_probability,
                hardware_probability: check.row.hardware_probability,
                hardware_fidelity_pct: check.row.hardware_fidelity_pct,
                matches: check.passed(),
            });
        }
    }
    match a.out {
        DocFormat::Json => write_json(out, &lines)?,
        DocFormat::Text => tables_text(out, &lines)?,
    }
    if a.check {
        if !failures.is_empty() {
            for f in &failures {
                writeln!(err, "{f}")?;
            }
            return Err(CliError::Check(format!(
                "{} row(s) deviate",
                failures.len()
            )));
        }
        writeln!(err, "all {} rows match", lines.len())?;
    }
    Ok(())
}

fn tables_text(out: &mut dyn Write, lines: &[TableLine]) -> Result<(), CliError> {
    let mut current = 0;
    for l in lines {
        if l.table != current {
            current = l.table;
            let t = Table::from_number(current).expect("known table");
            if current != lines[0].table {
                writeln!(out)?;
            }
            writeln!(out, "table {current}: {}", table_title(t))?;
            writeln!(
                out,
                "{:<5} {:<6} {:<5} {:<48} {:<8} {:<20} {:>9} {:>9}",
                "case", "votes", "iter", "state", "readout", "result", "hw prob", "hw fid"
            )?;
        }
        let iter = l
            .iteration
            .map(|i| i.to_string())
            .unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{:<5} {:<6} {:<5} {:<48} {:<8} {:<20} {:>9} {:>9}{}",
            l.case,
            l.votes,
            iter,
            l.state,
            l.readout,
            l.result,
            percent(l.hardware_probability),
            format!("{:.2}%", l.hardware_fidelity_pct),
            if l.matches { "" } else { "  MISMATCH" }
        )?;
    }
    Ok(())
}

fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let votes = parse_votes(&a.votes)?;
    let grid = strength_grid(a.strengths.min, a.strengths.max, a.strengths.step)?;
    for spec in &a.noise {
        if spec.strength.is_some() {
            return Err(CliError::Usage(
                "--noise for sweep takes no strength; use --strengths".into(),
            ));
        }
    }
    let mut lines = Vec::new();
    for protocol in a.protocol.kinds() {
        ElectionConfig::new(protocol, votes.len())
            .with_shots(a.common.shots)
            .validate(&votes)?;
        for spec in &a.noise {
            let rows = noise_sweep(
                protocol,
                &votes,
                spec.kind,
                &grid,
                spec.placement,
                a.common.seed,
                a.common.shots,
            )?;
            lines.extend(rows.into_iter().map(|r: SweepRow| SweepLine {
                protocol: protocol.to_string(),
                votes: votes.to_bits(),
                noise_kind: spec.kind.to_string(),
                placement: spec.placement.to_string(),
                strength: r.strength,
                fidelity: r.fidelity,
                success_probability: r.success_probability,
                modal_outcome: r.modal_outcome,
                seed: a.common.seed,
            }));
        }
    }
    match a.common.out {
        OutFormat::Json | OutFormat::Report => write_json(out, &lines),
        OutFormat::Csv => write_csv(out, &lines),
        OutFormat::Text => {
            writeln!(
                out,
                "{:<10} {:<18} {:<5} {:>8} {:>9} {:>9} {:<6}",
                "protocol", "noise", "place", "strength", "fidelity", "success", "modal"
            )?;
            for l in &lines {
                writeln!(
                    out,
                    "{:<10} {:<18} {:<5} {:>8.4} {:>9} {:>9} {:<6}",
                    l.protocol,
                    l.noise_kind,
                    l.placement,
                    l.strength,
                    percent(l.fidelity),
                    percent(l.success_probability),
                    l.modal_outcome
                )?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct QubitInfo {
    qubit_id: u32,
    t1_us: f64,
    t2_us: f64,
    frequency_ghz: f64,
    readout_error: f64,
    pauli_x_error: f64,
    cnot_errors: std::collections::BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct ChannelInfo {
    scope: String,
    kind: String,
    strength: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    route: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct ModelInfo {
    protocol: String,
    mapping: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    identity: bool,
    readout_flip: Vec<f64>,
    gate_channels: Vec<ChannelInfo>,
}

#[derive(Serialize)]
struct DeviceInfo {
    device: Option<String>,
    qubits: Vec<QubitInfo>,
    models: Vec<ModelInfo>,
}

fn model_info(cal: &CalibrationFile, protocol: ProtocolKind) -> ModelInfo {
    let mapping = cal.mapping(protocol);
    let built = cal
        .noise_model(protocol)
        .and_then(|m| Ok((m, cal.pair_errors(protocol)?)));
    match built {
        Ok((model, pairs)) => ModelInfo {
            protocol: protocol.to_string(),
            mapping,
            error: None,
            identity: model.is_identity(),
            readout_flip: model.readout_flip.clone(),
            gate_channels: model
                .gate
                .iter()
                .map(|g| {
                    let route = match g.scope {
                        qveto_core::noise::GateScope::Pair(a, b) => pairs
                            .iter()
                            .find(|p| p.roles == (a, b))
                            .map(|p| p.route.clone()),
                        _ => None,
                    };
                    ChannelInfo {
                        scope: g.scope.to_string(),
                        kind: g.channel.kind().to_string(),
                        strength: g.channel.strength(),
                        route,
                    }
                })
                .collect(),
        },
        Err(e) => ModelInfo {
            protocol: protocol.to_string(),
            mapping,
            error: Some(e.to_string()),
            identity: false,
            readout_flip: Vec::new(),
            gate_channels: Vec::new(),
        },
    }
}

fn device_info(a: &DeviceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cal = CalibrationFile::load(&a.calibration)?;
    let info = DeviceInfo {
        device: cal.device.clone(),
        qubits: cal
            .records
            .iter()
            .map(|r| QubitInfo {
                qubit_id: r.qubit_id,
                t1_us: r.t1_us,
                t2_us: r.t2_us,
                frequency_ghz: r.frequency_ghz,
                readout_error: r.readout_error,
                pauli_x_error: r.pauli_x_error,
                cnot_errors: r
                    .cnot_errors
                    .iter()
                    .map(|(&(c, t), &e)| (format!("cx{c}_{t}"), e))
                    .collect(),
            })
            .collect(),
        models: ProtocolKind::ALL
            .iter()
            .map(|&p| model_info(&cal, p))
            .collect(),
    };
    match a.out {
        DocFormat::Json => write_json(out, &info),
        DocFormat::Text => device_text(out, &info),
    }
}

fn device_text(out: &mut dyn Write, info: &DeviceInfo) -> Result<(), CliError> {
    writeln!(
        out,
        "device {}",
        info.device.as_deref().unwrap_or("(unnamed)")
    )?;
    writeln!(
        out,
        "{:<6} {:>8} {:>8} {:>9} {:>10} {:>10}  cnot errors",
        "qubit", "T1 us", "T2 us", "freq GHz", "readout", "pauli-x"
    )?;
    for q in &info.qubits {
        let cx: Vec<String> = q
            .cnot_errors
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(
            out,
            "Q{:<5} {:>8} {:>8} {:>9} {:>10} {:>10}  {}",
            q.qubit_id,
            q.t1_us,
            q.t2_us,
            q.frequency_ghz,
            q.readout_error,
            q.pauli_x_error,
            cx.join(", ")
        )?;
    }
    for m in &info.models {
        writeln!(out)?;
        let mapping: Vec<String> = m
            .mapping
            .iter()
            .enumerate()
            .map(|(role, q)| format!("q{role}->Q{q}"))
            .collect();
        writeln!(
            out,
            "protocol {}  mapping {}",
            m.protocol,
            mapping.join(" ")
        )?;
        if let Some(e) = &m.error {
            writeln!(out, "  unavailable: {e}")?;
            continue;
        }
        writeln!(out, "  identity model: {}", m.identity)?;
        let flips: Vec<String> = m
            .readout_flip
            .iter()
            .enumerate()
            .map(|(q, p)| format!("q{q}={p}"))
            .collect();
        writeln!(out, "  readout flip: {}", flips.join(" "))?;
        for c in &m.gate_channels {
            let route = c
                .route
                .as_ref()
                .filter(|r| r.len() > 2)
                .map(|r| {
                    let hops: Vec<String> = r.iter().map(|q| format!("Q{q}")).collect();
                    format!("  routed via {}", hops.join("-"))
                })
                .unwrap_or_default();
            writeln!(
                out,
                "  after gates on {:<6} {} {}{route}",
                c.scope, c.kind, c.strength
            )?;
        }
    }
    Ok(())
}
