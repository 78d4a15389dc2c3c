use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_wgs-mbqc"));
    c.env_remove("WGS_MBQC_OUT_DIR").env_remove("WGS_MBQC_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Enough of JSON Schema for the published record schema: type (with
/// unions), enum, minimum, maximum, required, additionalProperties, items.
fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().map(|x| x.as_str().unwrap()).collect(),
            _ => unreachable!(),
        };
        let ok = types.iter().any(|t| match *t {
            "array" => v.is_array(),
            "object" => v.is_object(),
            "string" => v.is_string(),
            "number" => v.is_number(),
            "integer" => v.is_u64() || v.is_i64(),
            "null" => v.is_null(),
            _ => false,
        });
        if !ok {
            return Err(format!("{path}: {v} is not {types:?}"));
        }
    }
    if let Some(Value::Array(allowed)) = schema.get("enum") {
        if !allowed.contains(v) {
            return Err(format!("{path}: {v} not in {allowed:?}"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            return Err(format!("{path}: {x} < {min}"));
        }
    }
    if let (Some(max), Some(x)) = (schema.get("maximum").and_then(Value::as_f64), v.as_f64()) {
        if x > max {
            return Err(format!("{path}: {x} > {max}"));
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(items, x, &format!("{path}[{i}]"))?;
        }
    }
    if let Some(obj) = v.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        if let Some(Value::Array(req)) = schema.get("required") {
            for r in req {
                if !obj.contains_key(r.as_str().unwrap()) {
                    return Err(format!("{path}: missing {r}"));
                }
            }
        }
        for (k, x) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(s) => validate(s, x, &format!("{path}.{k}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("{path}: unexpected key {k}"))
                }
                None => {}
            }
        }
    }
    Ok(())
}

fn schema() -> Value {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/sweep_record.schema.json");
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn csv_header_and_empty_fields() {
    let o = run(&["sweep", "--gate", "H", "--gate", "CNOT", "--alpha", "1,3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "gate,alpha,lambda,n,sigma,fid_opt,fid_restricted,fid_quenched,stderr,delta_rf,f_classical"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for r in &rows {
        let f: Vec<&str> = r.split(',').collect();
        assert_eq!(f.len(), 11);
        // No disorder requested: quenched mean and its error are empty, not zero.
        assert_eq!((f[7], f[8]), ("", ""));
    }
    assert!(rows[0].starts_with("H,1.0000000000000000e0,"));
}

#[test]
fn json_output_validates_against_schema() {
    let o = run(&[
        "sweep", "--gate", "T", "--gate", "CNOT", "--alpha", "0,2.5", "--lambda", "1,0.85", "--sigma", "0,0.05",
        "--realizations", "20", "--format", "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    validate(&schema(), &v, "$").unwrap();
    let recs = v.as_array().unwrap();
    // T: 2 α × (1 sharp + 4 unsharp) × 2 σ; CNOT: 2 α × (1 + 2) × 2 σ
    assert_eq!(recs.len(), 20 + 12);
    assert!(recs.iter().any(|r| r["fid_quenched"].is_null()));
    assert!(recs.iter().any(|r| r["fid_quenched"].is_number()));
}

#[test]
fn schema_rejects_malformed_records() {
    let bad = serde_json::json!([{ "gate": "H", "alpha": 1.0 }]);
    assert!(validate(&schema(), &bad, "$").is_err());
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["sweep", "--gate", "H", "--alpha", "2,4", "--sigma", "0.05", "--realizations", "40", "--seed", "5"];
    let a = run(&args);
    let b = bin().args(args).env("WGS_MBQC_THREADS", "1").output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn empty_lambda_list_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "gate = \"H\"\nlambda = []\n").unwrap();
    let o = run(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("λ"));
}

#[test]
fn config_file_drives_the_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(
        &cfg,
        "preset = \"cnot-T-4\"\nalpha = { start = 1.0, stop = 2.0, step = 0.5 }\nformat = \"json\"\noutput = \"out.json\"\n",
    )
    .unwrap();
    let o = bin()
        .args(["sweep", "--config", cfg.to_str().unwrap()])
        .env("WGS_MBQC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("out.json")).unwrap()).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 3);
    assert!(recs.iter().all(|r| r["gate"] == "CNOT" && r["f_classical"] == 0.4));
}

#[test]
fn unwritable_output_path_fails() {
    let o = run(&["sweep", "--gate", "H", "--alpha", "1", "--output", "/nonexistent-dir/x/out.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn partial_failures_listed_on_stderr() {
    let o = run(&["unsharp", "--gate", "T", "--gate", "CNOT", "--alpha", "3", "--lambda", "0.85", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("failed: gate=CNOT alpha=3 lambda=0.85 n=3"), "{err}");
    // The T row is still emitted.
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn thresholds_report_for_t() {
    let o = run(&["thresholds", "--gate", "T"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["alpha_max"].as_f64().unwrap() - 0.05).abs() < 0.02);
    assert!((v["alpha_th"].as_f64().unwrap() - 2.78).abs() < 0.02);
    assert!(v["alpha_th"].as_f64() <= v["alpha_s"].as_f64());
}

#[test]
fn thresholds_absent_when_never_reached() {
    let o = run(&["thresholds", "--gate", "CNOT", "--distance-mode", "label-chain"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["alpha_th"].is_null());
    assert!(v["alpha_s"].is_null());
}

#[test]
fn table1_flags_forced_label_chain() {
    let o = run(&["table1", "--cnot-distance-mode", "label-chain", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cnot_calibration"]["selected"], "euclidean");
    let cnot = &v["rows"][3];
    assert_eq!(cnot["gate"], "CNOT");
    assert_eq!(cnot["matches"], false);
    assert!(cnot["flag"].as_str().unwrap().contains("label-chain"));
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["metrics"].as_array().unwrap().len() == 4));
}

#[test]
fn table1_text_mentions_calibration() {
    let o = run(&["table1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("CNOT distance calibration selected: euclidean"));
}

#[test]
fn disorder_subcommand_columns() {
    let o = run(&["disorder", "--gate", "H", "--alpha", "4.5", "--sigma", "0.05", "--realizations", "30"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("gate,alpha,sigma,sampling,realizations,seed,fid_ordered,fid_quenched,"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn validate_subcommand_passes() {
    let o = run(&["validate"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn unknown_gate_rejected() {
    let o = run(&["sweep", "--gate", "Q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn shipped_config_parses() {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/cnot_disorder.toml");
    let cfg = wgs_mbqc::harness::SweepConfig::from_toml_file(&p).unwrap();
    assert_eq!(cfg.gates, vec![wgs_mbqc::Gate::Cnot]);
    assert_eq!(cfg.sigmas, vec![0.0, 0.01, 0.05]);
}
