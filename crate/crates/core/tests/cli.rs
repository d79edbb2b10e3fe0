use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tanglesig")).args(args).output().unwrap()
}

fn f(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn rep_of_sigma1_is_minus_omega() {
    let o = run(&["rep", &f("sigma1_b2.json"), "--omega", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let m = tanglesig::io::matrix_from_json(&v["matrix"]).unwrap();
    assert!((m[(0, 0)] - tanglesig::Complex64::new(0.0, -1.0)).norm() < 1e-12);
    assert!(v["unitarity_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn forbidden_omega_exits_with_3() {
    for omega in ["0", "1", "2.0"] {
        let o = run(&["rep", &f("sigma1_b2.json"), "--omega", omega]);
        assert_eq!(o.status.code(), Some(3), "omega {omega}");
    }
    let o = run(&["signature", &f("hopf_seifert.json"), "--omega", "0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["verify-defect", &f("sigma1_b2.json"), &f("sigma1_b2.json"), "--omega", "0.5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_input_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"mu\": 1, \"colours\": [1, 1], \"word\": [5]}").unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{").unwrap();
    for args in [
        vec!["rep".to_string(), bad.display().to_string(), "--omega".into(), "0.3".into()],
        vec!["rep".to_string(), broken.display().to_string(), "--omega".into(), "0.3".into()],
        vec!["rep".to_string(), "/nonexistent.json".into(), "--omega".into(), "0.3".into()],
        vec!["rep".to_string(), f("sigma1_b2.json"), "--omega".into(), "0.3,0.4".into()],
        vec!["rep".to_string(), f("sigma1_b2.json")],
        vec!["no-such-command".to_string()],
    ] {
        let a: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        assert_eq!(run(&a).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn meyer_and_maslov_of_the_hopf_link() {
    let s = f("sigma1_b2.json");
    let o = run(&["meyer", &s, &s, "--omega", "0.25"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = run(&["maslov", &s, &s, "--omega", "0.25"]);
    assert_eq!(stdout(&o).trim(), "-1");
    let o = run(&["maslov", &f("kinked_sigma1.json"), &s, "--omega", "0.25"]);
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn signature_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let trefoil = dir.path().join("trefoil.json");
    std::fs::write(&trefoil, "{\"mu\": 1, \"colours\": [1, 1], \"word\": [1, 1, 1]}").unwrap();
    let t = trefoil.to_str().unwrap();
    let a = run(&["signature", t, "--grid", "12"]);
    let b = run(&["signature", t, "--grid", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega_1_angle,signature,nullity"));
    let sigs: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(sigs, ["0", "-1", "-2", "-2", "-2", "-2", "-2", "-2", "-2", "-1", "0"]);
}

#[test]
fn svg_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a.svg");
    let out2 = dir.path().join("b.svg");
    for out in [&out1, &out2] {
        let o = run(&["signature", &f("hopf_seifert.json"), "--grid", "24", "--format", "svg", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read_to_string(&out1).unwrap();
    assert_eq!(a, std::fs::read_to_string(&out2).unwrap());
    assert!(a.starts_with("<svg"));
    assert!(a.trim_end().ends_with("</svg>"));
}

#[test]
fn verify_defect_on_a_grid() {
    let s = f("sigma1_b2.json");
    let o = run(&["verify-defect", &s, &s, "--grid", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("omega_1_angle,lhs,rhs,meyer_rhs,admissible,nullity\n"));
    assert_eq!(text.lines().count(), 8);
    // omega = -1 row: inadmissible, reported but not asserted
    assert!(text.contains("0.5,-1,0,0,false,0"));
}

#[test]
fn verify_defect_with_closure_fixtures() {
    let b = f("sigma1_squared_2col.json");
    let closures = format!("{},{},{}", f("hopf_2col_ccomplex.json"), f("hopf_2col.json"), f("hopf_2col.json"));
    let o = run(&["verify-defect", &b, &b, "--closures", &closures, "--grid", "8", "--offset", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 65);
}

#[test]
fn sweep_then_plot() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let svg = dir.path().join("sweep.svg");
    let s = f("sigma1_b2.json");
    let o = run(&["sweep", &s, &s, "--grid", "16", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["plot", csv.to_str().unwrap(), "--column", "rhs", "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<circle"));
    let o = run(&["plot", csv.to_str().unwrap(), "--column", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn functor_reports_a_lagrangian() {
    let o = run(&["functor", &f("kinked_sigma1.json"), "--omega", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["lagrangian"], true);
    let o = run(&["functor", &f("kinked_sigma1.json"), "--omega", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn help_and_version() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn in_process_runner_matches_the_binary() {
    let s = f("sigma1_b2.json");
    let args = ["tanglesig", "meyer", s.as_str(), s.as_str(), "--omega", "0.25"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(tanglesig::cli::run(args, &mut out, &mut err), 0);
    assert_eq!(out, run(&args[1..]).stdout);
}
