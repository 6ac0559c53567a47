use std::path::PathBuf;

use bourbaki::cli::run;
use bourbaki::manifest::Manifest;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["bourbaki"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bourbaki-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_examples_pass() {
    for name in ["example1.json", "example2.json", "example3.json"] {
        let (code, out, err) = call(&["verify", &example(name), "--nontriviality"]);
        assert_eq!(code, 0, "{name}: {out}{err}");
        assert!(out.contains("result: PASS"));
    }
}

#[test]
fn example3_is_non_trivial() {
    let (code, out, _) = call(&["verify", &example("example3.json"), "--nontriviality"]);
    assert_eq!(code, 0);
    assert!(out.contains("non-triviality: non-trivial"), "{out}");
}

#[test]
fn beta_in_e3_is_rejected_with_witness() {
    let mut m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(example("example1.json")).unwrap()).unwrap();
    m["beta"][0] = "x1*e[2,3] - x2*e[1,3] + x3*e[1,2]".into();
    m["f"] = serde_json::json!({
        "source_twists": [3],
        "columns": [["0", "0", "0", "x6", "-x5", "x4"]]
    });
    let dir = scratch("e3");
    let path = dir.join("bad.json");
    std::fs::write(&path, serde_json::to_string(&m).unwrap()).unwrap();
    let (code, out, err) = call(&["verify", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 1, "{out}{err}");
    assert!((out.clone() + &err).contains("Ker ε"), "{out}{err}");
}

#[test]
fn dropping_a_beta_fails_condition_a() {
    let mut m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(example("example1.json")).unwrap()).unwrap();
    m["beta"].as_array_mut().unwrap().truncate(5);
    m["f"] = serde_json::json!({
        "source_twists": [3],
        "columns": [["x3", "-x2", "x1", "0", "0"]]
    });
    let dir = scratch("drop");
    let path = dir.join("short.json");
    std::fs::write(&path, serde_json::to_string(&m).unwrap()).unwrap();
    let (code, out, _) = call(&["verify", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"), "{out}");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(call(&["verify", "/nonexistent/manifest.json"]).0, 2);
    assert_eq!(call(&["koszul", "d", "--n", "3", "--s", "7"]).0, 2);
    assert_eq!(call(&["--field", "p:8", "verify", &example("example1.json")]).0, 2);
    assert_eq!(call(&["cohomology", "E(6,9,0)"]).0, 2);
    assert_eq!(call(&["cohomology", "E(6,2"]).0, 2);
    assert_eq!(call(&["no-such-command"]).0, 2);

    let dir = scratch("garbage");
    let path = dir.join("garbage.json");
    std::fs::write(&path, "{ \"n\": 6, ").unwrap();
    let code = call(&["verify", path.to_str().unwrap()]).0;
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 2);
}

#[test]
fn koszul_families() {
    let (code, out, _) = call(&["koszul", "A", "--n", "6", "--t", "1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with('A')).collect();
    assert_eq!(lines.len(), 6, "{out}");

    let (code, out, _) = call(&["koszul", "B", "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with('B')).count(), 15, "{out}");
}

#[test]
fn cohomology_reports() {
    let (code, out, _) = call(&["--format", "json", "cohomology", "E(6,2,0)"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let nonzero: Vec<&serde_json::Value> =
        v["entries"].as_array().unwrap().iter().filter(|e| e["j"].as_u64() > Some(0) && e["is_zero"] == false).collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0]["j"], 4);

    let (code, out, _) = call(&["cohomology", "free(6,0,1)"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(none)"), "{out}");
}

#[test]
fn assemble_writes_files_and_is_deterministic() {
    let a = scratch("asm-a");
    let b = scratch("asm-b");
    for dir in [&a, &b] {
        let (code, out, err) = call(&["assemble", &example("example3.json"), "--out", dir.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}{err}");
    }
    for file in ["ideal.json", "g.json", "phi.json", "resolution.json", "minimal_resolution.json", "report.json", "betti.txt"] {
        let x = std::fs::read(a.join(file)).unwrap_or_else(|_| panic!("{file} missing"));
        let y = std::fs::read(b.join(file)).unwrap();
        assert_eq!(x, y, "{file} differs between runs");
    }
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["codim"], 3);
    assert_eq!(report["q_vanishing"], serde_json::json!([true, true, true, false]));
    std::fs::remove_dir_all(&a).ok();
    std::fs::remove_dir_all(&b).ok();
}

#[test]
fn numcheck_example3() {
    let (code, out, _) = call(&[
        "numcheck", "--n", "6", "--t", "0", "--d", "1", "--solve-c", "--a", "10,7,7", "--b", "5,6,6,6,6,8,4,4",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains('2'), "{out}");
    let (code, out, _) = call(&["numcheck", "--n", "6", "--t", "0", "--d", "1", "--c", "2", "--a", "1", "--b", "1"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn manifest_round_trip() {
    for name in ["example1.json", "example2.json", "example3.json"] {
        let m = Manifest::load(std::path::Path::new(&example(name))).unwrap();
        let again = Manifest::from_json(&m.to_json()).unwrap();
        assert_eq!(m.to_json(), again.to_json(), "{name}");
    }
}

#[test]
fn verify_json_report_parses() {
    let (code, out, _) = call(&["--format", "json", "verify", &example("example2.json"), "--nontriviality"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["nontriviality"]["non_trivial"], true);
}
