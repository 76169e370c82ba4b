use std::process::{Command, Output};

use serde_json::Value;

const BUNDLED: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/ibmq_casablanca.toml");

fn qveto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qveto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = qveto(args);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn no_vetoes_pass_after_three_rounds() {
    let rows = json(&[
        "run",
        "--protocol",
        "a",
        "--votes",
        "0000",
        "--shots",
        "8192",
        "--seed",
        "7",
        "--out",
        "json",
    ]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r["iteration"], i as u64 + 1);
        assert_eq!(r["modal_outcome"], "00");
        assert_eq!(r["seed"], 7);
    }
    let text = stdout(&qveto(&[
        "run",
        "--protocol",
        "a",
        "--votes",
        "0000",
        "--seed",
        "7",
    ]));
    assert!(text.contains("decision  Pass"), "{text}");
}

#[test]
fn ghz_single_veto_is_not_unanimous() {
    let out = qveto(&["run", "--protocol", "b-ghz", "--votes", "1000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("modal 010"), "{text}");
    assert!(text.contains("decision  NotUnanimous"), "{text}");
}

#[test]
fn cluster_all_vetoes_are_unanimous() {
    let report = json(&[
        "run",
        "--protocol",
        "b-cluster",
        "--votes",
        "1111",
        "--out",
        "report",
    ]);
    assert_eq!(report["decision"], "Unanimous");
    assert_eq!(report["runs"][0]["iterations"][0]["modal_outcome"], "0000");
    let hops = report["runs"][0]["transcript"]["events"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["payload"]["kind"] == "qubit_transfer")
        .count();
    assert_eq!(hops, 5);
}

#[test]
fn repeats_give_one_row_per_round_and_seed() {
    let rows = json(&[
        "run",
        "--protocol",
        "a",
        "--votes",
        "1010",
        "--repeats",
        "4",
        "--seed",
        "10",
        "--out",
        "json",
    ]);
    let seeds: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["seed"].as_u64().unwrap())
        .collect();
    assert_eq!(seeds, vec![10, 10, 11, 11, 12, 12, 13, 13]);
}

#[test]
fn json_and_csv_carry_the_same_fields() {
    for args in [
        vec![
            "run",
            "--protocol",
            "a",
            "--votes",
            "1111",
            "--noise",
            "kind=amplitude_damping,strength=0.2",
        ],
        vec![
            "run",
            "--protocol",
            "b-ghz",
            "--votes",
            "0110",
            "--calibration",
            BUNDLED,
        ],
        vec![
            "sweep",
            "--protocol",
            "all",
            "--noise",
            "bit_flip",
            "--noise",
            "kind=phase,placement=gate",
            "--strengths",
            "0:0.3:0.1",
        ],
    ] {
        let with = |fmt: &str| {
            let mut a = args.clone();
            a.extend(["--out", fmt]);
            qveto(&a)
        };
        let j: Value = serde_json::from_slice(&with("json").stdout).unwrap();
        let csv_out = with("csv");
        let mut reader = csv::Reader::from_reader(csv_out.stdout.as_slice());
        let headers = reader.headers().unwrap().clone();
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        let objs = j.as_array().unwrap();
        assert_eq!(objs.len(), records.len(), "{args:?}");
        for (obj, rec) in objs.iter().zip(&records) {
            let obj = obj.as_object().unwrap();
            assert_eq!(obj.len(), headers.len());
            for (h, field) in headers.iter().zip(rec.iter()) {
                match &obj[h] {
                    Value::Null => assert_eq!(field, ""),
                    Value::String(s) => assert_eq!(s, field),
                    Value::Number(n) => {
                        assert_eq!(n.as_f64().unwrap(), field.parse::<f64>().unwrap(), "{h}")
                    }
                    other => panic!("unexpected {other}"),
                }
            }
        }
    }
}

#[test]
fn every_table_checks_clean() {
    for (which, rows) in [("3", 8), ("4", 16), ("5", 16)] {
        let out = qveto(&["tables", "--which", which, "--check"]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(stderr(&out).contains(&format!("all {rows} rows match")));
        let lines = json(&["tables", "--which", which, "--out", "json"]);
        assert_eq!(lines.as_array().unwrap().len(), rows);
    }
    let all = json(&["tables", "--out", "json"]);
    assert_eq!(all.as_array().unwrap().len(), 40);
}

#[test]
fn tables_show_two_decimal_percentages() {
    let text = stdout(&qveto(&["tables", "--which", "3"]));
    assert!(text.contains("87.80%"), "{text}");
    assert!(text.contains("96.50%"), "{text}");
}

#[test]
fn zero_strength_sweep_has_unit_fidelity() {
    let rows = json(&[
        "sweep",
        "--protocol",
        "all",
        "--noise",
        "depolarizing",
        "--strengths",
        "0:0:1",
        "--out",
        "json",
    ]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!((r["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn dephasing_sweep_orders_the_protocols() {
    let rows = json(&[
        "sweep",
        "--protocol",
        "all",
        "--noise",
        "phase",
        "--strengths",
        "0:0.5:0.05",
        "--out",
        "json",
    ]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 33);
    let column = |p: &str| -> Vec<f64> {
        rows.iter()
            .filter(|r| r["protocol"] == p)
            .map(|r| r["fidelity"].as_f64().unwrap())
            .collect()
    };
    let (a, g, c) = (column("a"), column("b-ghz"), column("b-cluster"));
    for i in 0..11 {
        assert!(a[i] + 1e-9 >= g[i] && g[i] + 1e-9 >= c[i], "row {i}");
    }
}

#[test]
fn sweep_is_reproducible() {
    let args = [
        "sweep",
        "--noise",
        "amplitude",
        "--strengths",
        "0:0.2:0.1",
        "--seed",
        "3",
        "--out",
        "csv",
    ];
    assert_eq!(qveto(&args).stdout, qveto(&args).stdout);
}

#[test]
fn bundled_calibration_is_reported() {
    let info = json(&["device-info", "--calibration", BUNDLED, "--out", "json"]);
    let q1 = &info["qubits"][1]["cnot_errors"];
    let keys: Vec<&String> = q1.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["cx1_0", "cx1_2", "cx1_3"]);
    assert_eq!(info["qubits"][0]["cnot_errors"]["cx0_1"], 1.081e-2);
    let a = &info["models"][0];
    assert_eq!(a["protocol"], "a");
    assert_eq!(a["identity"], false);
    let text = stdout(&qveto(&["device-info", "--calibration", BUNDLED]));
    assert!(
        text.contains("cx1_0=0.01081, cx1_2=0.009599, cx1_3=0.006945"),
        "{text}"
    );
}

#[test]
fn all_zero_calibration_is_identity() {
    let zeroed = std::fs::read_to_string(BUNDLED)
        .unwrap()
        .lines()
        .map(|l| match l.split_once(" = ") {
            Some((k, _)) if k != "device" && k != "qubit_id" => format!("{k} = 0.0"),
            _ => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.toml");
    std::fs::write(&path, zeroed).unwrap();
    let info = json(&[
        "device-info",
        "--calibration",
        path.to_str().unwrap(),
        "--out",
        "json",
    ]);
    for m in info["models"].as_array().unwrap() {
        assert_eq!(m["identity"], true, "{m}");
    }
    let rows = json(&[
        "run",
        "--protocol",
        "b-cluster",
        "--votes",
        "0101",
        "--calibration",
        path.to_str().unwrap(),
        "--out",
        "json",
    ]);
    assert!((rows[0]["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(rows[0]["success_probability"], 1.0);
}

#[test]
fn missing_field_is_named() {
    let broken = std::fs::read_to_string(BUNDLED)
        .unwrap()
        .replace("pauli_x_error = 2.716e-4\n", "");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, broken).unwrap();
    let out = qveto(&["device-info", "--calibration", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("qubits[2].pauli_x_error"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["run", "--protocol", "a"],
        vec!["run", "--protocol", "c", "--votes", "0000"],
        vec!["run", "--protocol", "a", "--votes", "01x0"],
        vec!["run", "--protocol", "b-ghz", "--votes", "00000"],
        vec!["run", "--protocol", "a", "--votes", "0000", "--shots", "0"],
        vec![
            "run",
            "--protocol",
            "a",
            "--votes",
            "0000",
            "--noise",
            "kind=phase",
        ],
        vec![
            "run",
            "--protocol",
            "a",
            "--votes",
            "0000",
            "--noise",
            "kind=phase,strength=2",
        ],
        vec!["sweep", "--noise", "phase", "--strengths", "0.5:0.1:0.1"],
        vec!["sweep", "--noise", "phase", "--strengths", "0:1"],
        vec!["sweep", "--strengths", "0:0.5:0.1"],
        vec!["tables", "--which", "6"],
        vec![
            "device-info",
            "--calibration",
            "/nonexistent/calibration.toml",
        ],
        vec!["frobnicate"],
    ] {
        let out = qveto(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn help_exits_cleanly() {
    let out = qveto(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("device-info"));
}
