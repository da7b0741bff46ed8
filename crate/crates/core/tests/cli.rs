use std::process::{Command, Output};

fn slicecalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicecalc")).args(args).env_remove("SLICECALC_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn vseq_prints_special_forms() {
    let o = slicecalc(&["vseq", "--p", "3", "--n", "3", "--max", "27"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().filter(|l| !l.trim().is_empty()).count() >= 27);
    assert!(text.contains("= 2ρ"));
    assert!(text.contains("9λ + 3λ_1 + λ_2 + 2"));
}

#[test]
fn homology_of_a_single_lambda() {
    let o = slicecalc(&["homology", "--p", "3", "--n", "1", "--rep", "l0", "--coeff", "Z"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("H_0"));
    assert!(text.contains("H_2"));
    assert!(!text.contains("H_1 "));
}

#[test]
fn homology_json_is_deterministic() {
    let args = ["homology", "--rep", "l0+2l1+l2", "--coeff", "B(2,0)", "--format", "json"];
    let (a, b) = (slicecalc(&args), slicecalc(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    serde_json::from_slice::<serde_json::Value>(&a.stdout).unwrap();
}

#[test]
fn bad_input_exits_with_code_two() {
    assert_eq!(slicecalc(&["homology", "--rep", "2x", "--coeff", "Z"]).status.code(), Some(2));
    assert_eq!(slicecalc(&["chart", "--format", "png"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_slicecalc"))
        .args(["vseq", "--max", "3"])
        .env("SLICECALC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let o = slicecalc(&["chart", "--trange", "0:10", "--out", "/nonexistent-dir/chart.svg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn chart_files_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("slicecalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.svg");
    let b = dir.join("b.svg");
    for path in [&a, &b] {
        let o = slicecalc(&["chart", "--target", "inf-lambda", "--trange", "-1:30", "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());

    let json = dir.join("c.json");
    let o = slicecalc(&["chart", "--target", "m-lambda:4", "--trange", "-1:10", "--format", "json", "--out", json.to_str().unwrap()]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["p"], 3);
    assert!(!doc["cells"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_passes_and_detects_a_fault() {
    let o = slicecalc(&["verify", "--p", "3", "--n", "2", "--max-dim", "8"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["mismatched"], 0);

    let o = slicecalc(&["verify", "--p", "3", "--n", "2", "--max-dim", "8", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
}
