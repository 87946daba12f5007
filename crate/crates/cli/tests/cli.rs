use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vbfcodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&args)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vbfcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn function_properties() {
    let g = json(&["fn", "props", "--fn", "gold:5:1"]);
    assert_eq!(g["almost_bent"], true);
    assert_eq!(g["nonlinearity"], 12);
    let mm = json(&["fn", "props", "--fn", "mm:3"]);
    assert_eq!(mm["perfect_nonlinear"], true);
    assert_eq!(mm["nonlinearity"], 28);
    // x^7 is the Welch function at m = 5, so it is almost bent; x^15 is not.
    assert_eq!(json(&["fn", "props", "--fn", "power:5:7"])["almost_bent"], true);
    assert_eq!(json(&["fn", "props", "--fn", "power:5:15"])["almost_bent"], false);
}

#[test]
fn printed_codes() {
    let c = json(&["code", "build", "--fn", "gold:5:1", "--lambda", "1", "--a", "a^3"]);
    assert_eq!(c["parameters"]["n"], 12);
    assert_eq!(c["enumerator"], "1+30z^2+255z^4+452z^6+255z^8+30z^{10}+z^{12}");
    assert_eq!(c["walsh_route_agrees"], true);
    assert_eq!(c["contains_all_one"], true);

    let text = stdout(&["code", "build", "--fn", "mm:4", "--lambda", "1", "--c", "1"]);
    assert!(text.contains("[136,12,60]"), "{text}");

    let s = stdout(&["code", "subcode", "--fn", "gold:9:1", "--lambda", "1", "--normal", "1"]);
    assert!(s.contains("[256,17,112]"), "{s}");
    assert!(s.contains("contains all-one word: false"));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "table2", "--m", "7"]), 0);
    assert_eq!(code(&["verify", "kloosterman", "--m", "1..15"]), 0);
    assert_eq!(code(&["verify", "example1"]), 0);
    assert_eq!(code(&["verify", "theorem9", "--m", "5"]), 0);
    assert_eq!(code(&["verify", "no-such-target"]), 2);
    assert_eq!(code(&["verify", "lemma11", "--convention", "exclude"]), 1);
    assert_eq!(code(&["verify", "table1", "--m", "5"]), 2);
    assert_eq!(code(&["code", "subcode", "--fn", "mm:4"]), 2);
    assert_eq!(code(&["fn", "props", "--fn", "gold:5"]), 2);
    assert_eq!(code(&["code", "build", "--fn", "gold:5:1", "--c", "2"]), 2);
}

#[test]
fn verify_report_shape() {
    let r = json(&["verify", "example2"]);
    assert_eq!(r["target"], "example2");
    assert_eq!(r["pass"], true);
    let rows = r["rows"].as_array().unwrap();
    assert!(rows.iter().all(|row| row["match"] == true));
    assert!(rows.iter().any(|row| row["w"] == 112 && row["predicted"] == 8172));
}

#[test]
fn exported_table_round_trips() {
    let path = scratch("gold7.json");
    let p = path.to_str().unwrap();
    stdout(&["export", "table", "--fn", "gold:7:1", "--out", p]);
    let mut direct = json(&["code", "build", "--fn", "gold:7:1", "--a", "a^7"]);
    let mut imported = json(&["code", "build", "--fn", p, "--a", "a^7"]);
    assert_eq!(imported["header"]["function"], p);
    direct["header"]["function"] = Value::Null;
    imported["header"]["function"] = Value::Null;
    assert_eq!(direct, imported);

    let mut a = json(&["fn", "props", "--fn", "gold:7:1"]);
    let mut b = json(&["fn", "props", "--fn", p]);
    a["function"] = Value::Null;
    b["function"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn generator_matrix_export() {
    let text = stdout(&["export", "gm", "--fn", "gold:5:1", "--a", "a^3"]);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.len() == 12 && r.chars().all(|c| c == '0' || c == '1')));
    assert!(text.contains("# lambda = 1, a = 8"));

    let path = scratch("gm.json");
    stdout(&["export", "gm", "--fn", "mm:4", "--normal", "a^3", "--format", "json", "--out", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dimension"], 11);
    assert_eq!(v["header"]["hyperplane_normal"], 8);
}

#[test]
fn field_and_walsh() {
    let f = json(&["field", "show", "--m", "9"]);
    assert_eq!(f["modulus"], "0x211");
    assert_eq!(f["trace_of_one"], 1);
    let custom = json(&["field", "show", "--m", "5", "--modulus", "x^5+x^3+1"]);
    assert_eq!(custom["modulus"], "0x29");
    assert_eq!(code(&["field", "show", "--m", "4", "--modulus", "0x1f"]), 2);

    let w = json(&["fn", "walsh", "--fn", "gold:7:1", "--lambda", "1", "--full"]);
    assert_eq!(w["values"].as_array().unwrap().len(), 128);
    let counts: Vec<(i64, u64)> = w["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["value"].as_i64().unwrap(), c["count"].as_u64().unwrap()))
        .collect();
    assert_eq!(counts, [(-16, 28), (0, 64), (16, 36)]);

    let other = json(&["fn", "props", "--fn", "gold:5:1", "--modulus", "x^5+x^3+1"]);
    assert_eq!(other["almost_bent"], true);
}

#[test]
fn commands_are_deterministic() {
    let args = ["verify", "lemma8", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}
