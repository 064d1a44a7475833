use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sftkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sftkit"))
        .args(args)
        .env_remove("SFTKIT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn count(args: &[&str]) -> String {
    let out = sftkit(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    report(&out)["payload"]["count"].as_str().unwrap().to_string()
}

#[test]
fn counts_of_small_blocks() {
    assert_eq!(count(&["count", "--shift", "wire_W", "--block", "2x1"]), "25");
    assert_eq!(count(&["count", "--shift", "wire_Wk", "--k", "2", "--block", "1x1"]), "8");
    assert_eq!(count(&["count", "--shift", "wire_Wk?k=2", "--block", "1x1"]), "8");
    assert_eq!(count(&["count", "--shift", "wire_Wel", "--block", "1x1x2"]), "30");
    assert_eq!(count(&["count", "--shift", "full", "--symbols", "3", "--block", "2x2"]), "81");
}

#[test]
fn exit_codes() {
    assert_eq!(sftkit(&["verify", "fixed-points", "--k", "3"]).status.code(), Some(0));
    // at n = 1 the strip interval is far wider than 0.2 nats
    let fail = sftkit(&["verify", "entropy-wk2", "--n", "1"]);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(report(&fail)["payload"]["passed"], Value::Bool(false));
    assert_eq!(sftkit(&["count", "--shift", "wire_W", "--block", "400x400"]).status.code(), Some(2));
    assert_eq!(sftkit(&["count", "--shift", "nope", "--block", "2x2"]).status.code(), Some(3));
    assert_eq!(sftkit(&["count", "--shift", "wire_W", "--block", "2x0"]).status.code(), Some(3));
    assert_eq!(sftkit(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(sftkit(&["verify", "no-such-claim"]).status.code(), Some(3));
    let bad = sftkit(&["count", "--shift", "wire_W"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(bad.stdout.is_empty());
}

#[test]
fn payloads_are_deterministic() {
    let args = ["entropy", "--shift", "wire_Wk", "--k", "2", "--n", "4", "--g", "2"];
    let a = report(&sftkit(&args));
    let b = report(&sftkit(&["--threads", "1", args[0], args[1], args[2], args[3], args[4], args[5], args[6], args[7], args[8]]));
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["payload_sha256"], b["payload_sha256"]);
    let payload = serde_json::to_vec(&a["payload"]).unwrap();
    assert_eq!(a["payload_sha256"].as_str().unwrap(), sftkit::report::sha256_hex(&payload));
    let (lo, hi) = (a["payload"]["lower"].as_f64().unwrap(), a["payload"]["upper"].as_f64().unwrap());
    assert!(lo <= 2f64.ln() && 2f64.ln() <= hi);
}

#[test]
fn entropy_examples() {
    let full = report(&sftkit(&["entropy", "--shift", "full", "--symbols", "3", "--n", "2", "--g", "0"]));
    for key in ["lower", "upper"] {
        assert!((full["payload"][key].as_f64().unwrap() - 3f64.ln()).abs() < 1e-9);
    }
    let w = report(&sftkit(&["entropy", "--shift", "wire_W", "--n", "5", "--g", "2"]));
    let (lo, hi) = (w["payload"]["lower"].as_f64().unwrap(), w["payload"]["upper"].as_f64().unwrap());
    assert!(lo < 1.964f64.ln() && 1.75f64.ln() < hi);
}

#[test]
fn entropy_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["entropy", "--shift", "wire_W", "--n", "3", "--g", "2"];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sftkit"))
            .args(args)
            .env("SFTKIT_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = report(&run());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = report(&run());
    assert_eq!(first["payload_sha256"], second["payload_sha256"]);
}

#[test]
fn named_claims() {
    for args in [
        vec!["verify", "projection-lambda", "--k", "2"],
        vec!["verify", "pb-inequality", "--d", "1", "--k", "2", "--N", "3"],
        vec!["verify", "corner-condition-2"],
        vec!["verify", "periodic-112"],
        vec!["verify", "degeneracy-wel"],
    ] {
        let out = sftkit(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(report(&out)["payload"]["passed"], Value::Bool(true));
    }
    let list = report(&sftkit(&["verify", "list"]));
    assert!(list["payload"].as_array().unwrap().len() >= 10);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn render_frame_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let three = write(dir.path(), "three.txt", "dim 2\nextents 1 1\n3\n");
    let out = report(&sftkit(&["render", "--shift", "wire_W", "--pattern", &three]));
    assert_eq!(out["payload"]["document"], " |\n-+-\n\n");

    let svg_path = dir.path().join("stack.svg");
    let stack = write(dir.path(), "stack.txt", "dim 3\nextents 1 1 2\n2\n\n5\n");
    let out = sftkit(&[
        "render", "--shift", "wire_Wel", "--pattern", &stack, "--format", "svg", "--out",
        svg_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.contains("z = 0") && svg.contains("z = 1"));

    let framed_path = dir.path().join("framed.txt");
    let out = sftkit(&[
        "frame", "--shift", "wire_W", "--pattern", &three, "--margin", "2", "--out",
        framed_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["payload"]["framed"]["extents"], serde_json::json!([5, 5]));
    let framed = std::fs::read_to_string(&framed_path).unwrap();
    let w = sftkit::wire::build_wire_shift(1).unwrap();
    let p = sftkit::sft::parse_pattern(&framed, w.sft().symbols()).unwrap();
    assert!(sftkit::sft::is_locally_valid(w.sft(), &p).unwrap());

    let def = dir.path().join("w2.json");
    let out = sftkit(&["export", "--shift", "wire_Wk", "--k", "2", "--out", def.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(count(&["count", "--definition", def.to_str().unwrap(), "--block", "1x1"]), "8");
    let bad = write(dir.path(), "bad.json", "{\"schema\": 7}");
    assert_eq!(sftkit(&["count", "--definition", &bad, "--block", "1x1"]).status.code(), Some(3));
}

#[test]
fn periodic_points() {
    let out = report(&sftkit(&["periodic", "--shift", "wire_Wel", "--periods", "1x1x2"]));
    assert_eq!(out["payload"]["count"], "14");
    assert_eq!(out["payload"]["fixed_points"], serde_json::json!(["1_1", "1_2"]));
    let out = report(&sftkit(&["periodic", "--shift", "wire_Wk", "--k", "4", "--periods", "1x1"]));
    assert_eq!(out["payload"]["count"], "6");
}
