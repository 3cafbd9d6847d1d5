use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrorforge")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", e, String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mirrorforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["potential", "table"]).status.code(), Some(0));
    assert_eq!(run(&["surface", "euler", "I9 I1"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["periods", "ramification"]).status.code(), Some(2));
    assert_eq!(run(&["periods", "ramification", "--q", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["repro", "no-such-criterion"]).status.code(), Some(2));
    assert_eq!(run(&["toric", "info", "--polytope", "/nonexistent/file.txt"]).status.code(), Some(2));
}

#[test]
fn ramification_json() {
    let out = run(&["periods", "ramification", "--q", "-2"]);
    assert!(out.status.success());
    let v = json(&out);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 4);
    let s3 = 3f64.sqrt();
    for want in [(0.0, 1.0), (0.0, -1.0), (-2.0 + s3, 0.0), (-2.0 - s3, 0.0)] {
        assert!(roots.iter().any(|r| {
            let re = r["value"][0].as_f64().unwrap();
            let im = r["value"][1].as_f64().unwrap();
            (re - want.0).abs() < 1e-10 && (im - want.1).abs() < 1e-10
        }));
    }
    assert!(v["collisions"].as_array().unwrap().is_empty());
}

#[test]
fn minus_one_on_the_square() {
    let out = run(&["toric", "minus-one", "--polytope", "square.txt"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(v["roots"].as_array().unwrap().iter().all(|r| r == "-1"));
    // A file on disk works the same way.
    let path = scratch("p2.txt");
    std::fs::write(&path, "# P2\n-1 -1\n2 -1\n-1 2\n").unwrap();
    let out = run(&["toric", "minus-one", "--polytope", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["all_minus_one"], Value::Bool(true));
}

#[test]
fn repro_table() {
    let out = run(&["repro", "table-w0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["all_pass"], Value::Bool(true));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("table-w0") && stderr.contains("PASS"), "{}", stderr);
    assert_eq!(json(&run(&["repro", "9"])), v);
}

#[test]
fn wall_crossing_command() {
    let out = run(&["potential", "wallcross", "--normals", "1,1;-1,1;-1,-1;1,-1", "--rule", "y=y*(x+1/x+2)"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("6*y^-1"), "{}", text);
    let bad = run(&["potential", "wallcross", "--normals", "1,0;0,1;-1,-1", "--rule", "y=y*(1+x)"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn thread_cap() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mirrorforge"));
    let ok = cmd.env("MIRRORFORGE_THREADS", "1").args(["novikov", "verify-cover", "--n", "2", "--samples", "60"]).output().unwrap();
    assert!(ok.status.success());
    assert_eq!(json(&ok)["pass"], Value::Bool(true));
    for bad in ["0", "many"] {
        let out = Command::new(env!("CARGO_BIN_EXE_mirrorforge")).env("MIRRORFORGE_THREADS", bad).args(["potential", "table"]).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{}", bad);
    }
}

#[test]
fn out_and_svg_files() {
    let out_path = scratch("ram.json");
    let svg_path = scratch("ram.svg");
    let out = run(&["periods", "ramification", "--q", "-2+0.5i", "--out", out_path.to_str().unwrap(), "--svg", svg_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["roots"].as_array().unwrap().len(), 4);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["--seed", "17", "novikov", "verify-cover", "--n", "3", "--samples", "150"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["--seed", "4", "repro", "skeleton", "appendix-a"]);
    let b = run(&["--seed", "4", "repro", "skeleton", "appendix-a"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["criteria"].as_array().unwrap().len(), 2);
}

#[test]
fn surface_report() {
    let out = run(&["surface", "appendixA", "--d", "3", "--report", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["k_squared"], Value::from(0));
    let text = run(&["surface", "appendix-a", "--d", "2", "--report", "text"]);
    assert!(text.status.success());
    assert!(!text.stdout.is_empty());
}
