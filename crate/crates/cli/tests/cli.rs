use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generate(dir: &Path, name: &str, params: &[&str]) -> Vec<PathBuf> {
    let mut args = vec!["examples", name, "--out", dir.to_str().unwrap()];
    for p in params {
        args.extend(["--param", p]);
    }
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).lines().map(PathBuf::from).collect()
}

fn paths(files: &[PathBuf]) -> Vec<&str> {
    files.iter().map(|p| p.to_str().unwrap()).collect()
}

#[test]
fn catalog_lists_the_standard_examples() {
    let o = run(&["examples", "--list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["circle", "tetrahedron", "octahedron", "torus", "rp2", "circle_map", "torus_pair", "torus_projection", "torus_triple"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn torus_homology() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "torus", &[]);
    let o = run(&["homology", files[0].to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in ["H_0 = Z", "H_1 = Z^2", "H_2 = Z"] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn rp2_homology_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "rp2", &[]);
    let o = run(&["homology", "--json", files[0].to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["summary"], "(Z, Z/2, 0)");
    assert_eq!(v[0]["groups"][1]["torsion"][0], 2);
}

#[test]
fn circle_pair_lefschetz() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "circle_pair", &["1", "2"]);
    let mut args = vec!["lefschetz"];
    args.extend(paths(&files));
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("Lef = 1\n"), "{text}");
    assert!(text.contains("thm_lefcpf: pass"));
}

#[test]
fn torus_pair_report() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "torus_pair", &[]);
    let mut args = vec!["coincidence", "--json"];
    args.extend(paths(&files));
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 1);
    assert_eq!(v["components"][0]["type"], "pseudo-manifold");
    for k in ["thm_thlefgen", "thm_thcoincoin", "local_route"] {
        assert_eq!(v["verdicts"][k], true, "{k}");
    }
    assert!(v["verdicts"]["thm_lefcpf"].is_null());
    assert_eq!(v["global_class"]["coordinates"], v["components"][0]["pushforward"]["coordinates"]);
}

#[test]
fn torus_triple() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "torus_triple", &[]);
    let mut args = vec!["multi"];
    args.extend(paths(&files));
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    for k in ["thm_multi_global: pass", "thm_multi_local: pass", "thm_multi_product: pass"] {
        assert!(text.contains(k), "{text}");
    }
}

#[test]
fn conventions_differ_in_odd_middle_degree() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "torus", &[]);
    let f = files[0].to_str().unwrap();
    let a = stdout(&run(&["dualize", f, "--degree", "1", "--class", "1,0", "--json"]));
    let b = stdout(&run(&["dualize", f, "--degree", "1", "--class", "1,0", "--json", "--convention", "primed"]));
    let (a, b): (serde_json::Value, serde_json::Value) = (serde_json::from_str(&a).unwrap(), serde_json::from_str(&b).unwrap());
    let neg: Vec<i64> = a["coordinates"].as_array().unwrap().iter().map(|x| -x.as_i64().unwrap()).collect();
    assert_eq!(b["coordinates"], serde_json::json!(neg));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "octahedron", &[]);
    let out = dir.path().join("h.json");
    let o = run(&["homology", "--json", "--out", out.to_str().unwrap(), files[0].to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v[0]["summary"], "(Z, 0, Z)");
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"name\": ").unwrap();
    assert_eq!(run(&["homology", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["homology", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--convention", "sideways"]).status.code(), Some(2));
}

#[test]
fn precondition_violations_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "circle", &[]);
    let o = run(&["thom", files[0].to_str().unwrap(), "--vertices", "0,1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pseudo-manifold"));
    assert_eq!(run(&["examples", "klein"]).status.code(), Some(3));
    let rp2 = generate(dir.path(), "rp2", &[]);
    assert_eq!(run(&["dualize", rp2[0].to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn thom_class_of_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate(dir.path(), "octahedron", &[]);
    let o = run(&["thom", files[0].to_str().unwrap(), "--vertices", "+z", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pentahedron"]["commutes"], true);
    assert_eq!(v["thom_class"]["k"], 2);
}

#[test]
fn generated_files_are_stable() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for name in ["circle_map", "torus_pair", "sphere_pair"] {
        let fa = generate(a.path(), name, &[]);
        let fb = generate(b.path(), name, &[]);
        for (x, y) in fa.iter().zip(&fb) {
            assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap());
        }
    }
}

#[test]
fn verify_is_deterministic_and_passes() {
    let first = run(&["verify", "--json"]);
    let second = run(&["verify", "--json"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
}
