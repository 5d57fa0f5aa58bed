use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use reinhardt_cli::{parse_domain_file, parse_map_file, serialize_domain, serialize_map};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn reinhardt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reinhardt")).args(args).output().unwrap()
}

fn fx(name: &str) -> String {
    fixture(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn documents(dir: &Path, out: &mut Vec<PathBuf>) {
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.is_dir() {
            documents(&p, out);
        } else if p.extension().is_some_and(|e| e == "json") && !p.to_string_lossy().contains("params") {
            out.push(p);
        }
    }
}

#[test]
fn fixtures_round_trip() {
    let mut files = Vec::new();
    documents(&fixture(""), &mut files);
    assert!(files.len() >= 20);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let kind: serde_json::Value = serde_json::from_str(&text).unwrap();
        match kind["type"].as_str().unwrap() {
            "polyhedral" | "exphorn" => {
                let d = parse_domain_file(&text).unwrap();
                let again = serialize_domain(&d);
                assert_eq!(parse_domain_file(&again).unwrap(), d, "{}", f.display());
                assert_eq!(serialize_domain(&parse_domain_file(&again).unwrap()), again);
            }
            _ => {
                let m = parse_map_file(&text).unwrap();
                let again = serialize_map(&m);
                assert_eq!(parse_map_file(&again).unwrap(), m, "{}", f.display());
            }
        }
    }
}

#[test]
fn invariants_report() {
    let o = reinhardt(&["invariants", &fx("type1_envelope.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d=0 s=1 s*=0 t=2, non-hyperbolic\n");
    let o = reinhardt(&["--json", "invariants", &fx("hartogs.json")]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["t"], 1);
    assert_eq!(doc["hyperbolic"], true);
}

#[test]
fn bound_wedge() {
    let o = reinhardt(&["--json", "bound", &fx("wedge.json")]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let m: [[i64; 2]; 2] = serde_json::from_value(doc["matrix"].clone()).unwrap();
    assert_eq!((m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs(), 1);
    assert_eq!(reinhardt(&["bound", &fx("strip.json")]).status.code(), Some(1));
}

#[test]
fn exists_exit_codes() {
    let o = reinhardt(&["exists", &fx("c2.json"), &fx("cxcstar.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "Nonexistent (R4: special domains)\n");
    let o = reinhardt(&["exists", &fx("cstar2.json"), &fx("c2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = reinhardt(&["exists", &fx("bidisc.json"), &fx("punctured_bidisc.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_and_fibers() {
    let o = reinhardt(&["--json", "eval", &fx("elementary.json"), "1", "0", "-1", "0"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["f"][0], serde_json::json!([-1.0, 0.0]));
    assert_eq!(doc["f"][1], serde_json::json!([-0.5, -2.0]));
    let o = reinhardt(&["fiber-count", &fx("elementary.json"), "--point", "0.3", "-1.7", "2.2", "0.9"]);
    assert_eq!(stdout(&o), "6\n");
    let o = reinhardt(&["fiber-count", &fx("type1_pair/map.json"), "--point", "0.3", "-1.7", "2.2", "0.9"]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn build_map_writes_a_verifiable_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().display().to_string();
    let o = reinhardt(&["build-map", "--family", "type2", "--params", &fx("type2_params.json"), "--out-dir", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let p = |n: &str| dir.path().join(n).display().to_string();
    let o = reinhardt(&["verify", "--samples", "5000", &p("map.json"), &p("source.json"), &p("target.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verdict: pass (consistent with properness)\n"));
}

#[test]
fn envelope_and_hyp_part_write_domains() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hyp.json");
    let o = reinhardt(&["hyp-part", &fx("half_wedge.json"), "-o", &out.display().to_string()]);
    assert_eq!(o.status.code(), Some(0));
    let d = parse_domain_file(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(d.is_brody_hyperbolic());
    let o = reinhardt(&["envelope", &fx("hartogs.json")]);
    assert_eq!(parse_domain_file(&stdout(&o)).unwrap().invariant_tuple().t, 1);
}

#[test]
fn error_exit_codes() {
    assert_eq!(reinhardt(&["verify"]).status.code(), Some(64));
    assert_eq!(reinhardt(&["invariants", "/does/not/exist.json"]).status.code(), Some(64));
    assert_eq!(reinhardt(&["invariants", &fx("identity.json")]).status.code(), Some(65));
    assert_eq!(reinhardt(&["eval", &fx("c2.json"), "1", "1", "1", "1"]).status.code(), Some(65));
    assert_eq!(reinhardt(&["verify", "--seed", "0xZZ", "a", "b", "c"]).status.code(), Some(64));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"schema_version": 1, "type": "polyhedral", "constraints": [{"normal": [-1, 0], "offset": 0.0}],
            "axis1": {"state": "attached"}, "axis2": {"state": "detached"}}"#,
    )
    .unwrap();
    let o = reinhardt(&["invariants", &bad.display().to_string()]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("axis1"));
}

#[test]
fn verify_seed_accepts_hex_and_decimal() {
    let args = |seed: &str| {
        let o = reinhardt(&[
            "verify", "--samples", "500", "--seed", seed,
            &fx("identity.json"), &fx("bidisc.json"), &fx("bidisc.json"),
        ]);
        stdout(&o)
    };
    assert_eq!(args("0x10"), args("16"));
}
