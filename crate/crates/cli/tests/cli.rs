use std::path::Path;
use std::process::{Command, Output};

fn qgreen(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgreen"))
        .args(args)
        .current_dir(dir)
        .env_remove("QGREEN_OUT_DIR")
        .output()
        .expect("running qgreen")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn value_after(text: &str, key: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no `{key}` in {text}"));
    line[key.len()..].split_whitespace().next().unwrap().parse().unwrap()
}

fn strip_runtime(json: &str) -> String {
    json.lines().filter(|l| !l.contains("\"runtime_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn green_of_the_zero_matrix_at_j() {
    let dir = tempfile::tempdir().unwrap();
    let o = qgreen(dir.path(), &["green", "--family", "zero", "--n", "10", "--lambda", "0,0", "--eps", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let g = &v["g"];
    assert!(g["a"][0].as_f64().unwrap().abs() < 1e-15 && g["a"][1].as_f64().unwrap().abs() < 1e-15);
    assert!((g["b"][0].as_f64().unwrap() - 1.0).abs() < 1e-14);
    assert!((v["rho_eps"].as_f64().unwrap() - 1.0 / std::f64::consts::PI).abs() < 1e-6);
}

#[test]
fn green_respects_the_resolvent_bound_for_a_file_matrix() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("m.csv"), "row,col,re,im\n0,0,1,0\n0,1,3,0\n1,1,-1,0.5\n").unwrap();
    let o = qgreen(dir.path(), &["green", "--matrix", "m.csv", "--lambda", "1,0", "--eps", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let norm = value_after(&text, "|G| = ");
    assert!(norm.is_finite() && norm <= 2.0 + 1e-8, "{text}");
    assert!(value_after(&text, "rho_eps = ") >= 0.0);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = qgreen(dir.path(), &["green", "--lambda", "0,0", "--eps", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("eps must be positive"));

    let o = qgreen(dir.path(), &["green", "--lambda", "0,0", "--eps", "-1"]);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(dir.path().join("bad.csv"), "row,col,re,im\n0,0,1,0\n1,x,0,0\n").unwrap();
    let o = qgreen(dir.path(), &["green", "--matrix", "bad.csv", "--lambda", "1,0", "--eps", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = qgreen(dir.path(), &["sample", "--mode", "a", "--n", "20", "--tau", "0.5", "--dist", "phase-rademacher"]);
    assert_eq!(o.status.code(), Some(2));

    let o = qgreen(dir.path(), &["sample", "--mode", "nope"]);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(dir.path().join("c.json"), r#"{"n": 300, "bogus": 1}"#).unwrap();
    let o = qgreen(dir.path(), &["verify", "elliptic", "--config", "c.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bogus"));

    let o = qgreen(dir.path(), &["predict", "--rule", "product", "--family", "zero", "--nx", "3", "--ny", "3"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn sample_writes_one_row_per_eigenvalue_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sample", "--mode", "a", "--n", "60", "--tau", "0", "--dist", "complex-gaussian", "--seed", "7"];
    assert_eq!(qgreen(dir.path(), &args).status.code(), Some(0));
    let first = std::fs::read(dir.path().join("sample_a.csv")).unwrap();
    assert_eq!(String::from_utf8_lossy(&first).lines().count(), 61);
    assert_eq!(qgreen(dir.path(), &args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(dir.path().join("sample_a.csv")).unwrap());

    for (mode, extra) in [("ratio", vec![]), ("d+a", vec!["--family", "stephanov", "--mu", "1"]), ("d*a", vec!["--family", "cauchy-diagonal"])] {
        let mut a = vec!["sample", "--mode", mode, "--n", "40", "--out", "e.csv"];
        a.extend(extra);
        let o = qgreen(dir.path(), &a);
        assert_eq!(o.status.code(), Some(0), "{mode}: {}", stderr(&o));
        assert_eq!(std::fs::read_to_string(dir.path().join("e.csv")).unwrap().lines().count(), 41);
    }
}

#[test]
fn out_dir_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qgreen"))
        .args(["sample", "--mode", "ratio", "--n", "10", "--seed", "1"])
        .current_dir(dir.path())
        .env("QGREEN_OUT_DIR", "outputs")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(dir.path().join("outputs/sample_ratio.csv").exists());
}

#[test]
fn predict_writes_a_full_grid_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["predict", "--rule", "sum", "--family", "zero", "--tau", "0.5", "--nx", "21", "--ny", "15"];
    let mut runs = Vec::new();
    for workers in ["1", "2"] {
        let out = format!("grid{workers}.csv");
        let mut args = vec!["--workers", workers];
        args.extend(base);
        args.extend(["--out", out.as_str(), "--svg", "h.svg"]);
        let o = qgreen(dir.path(), &args);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        runs.push(std::fs::read(dir.path().join(&out)).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    let text = String::from_utf8_lossy(&runs[0]);
    assert_eq!(text.lines().count(), 2 + 21 * 15);
    assert!(text.starts_with("# {"));
    assert!(std::fs::read_to_string(dir.path().join("h.svg")).unwrap().contains("<svg"));
}

#[test]
fn predict_marks_failed_cells_and_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // The centre cell sits at lambda = 0, where the Cauchy product density is infinite.
    let o = qgreen(
        dir.path(),
        &["predict", "--rule", "product", "--family", "cauchy-diagonal", "--nx", "5", "--ny", "5", "--out", "p.csv"],
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(dir.path().join("p.csv")).unwrap().lines().count(), 2 + 25);
    let failures = std::fs::read_to_string(dir.path().join("p.failures.csv")).unwrap();
    assert_eq!(failures.lines().count(), 2);
    assert!(failures.lines().nth(1).unwrap().starts_with("0,0,"));
}

#[test]
fn verify_reports_pass_and_fail() {
    let dir = tempfile::tempdir().unwrap();
    let o = qgreen(dir.path(), &["verify", "cauchy-product"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cauchy-product.json")).unwrap()).unwrap();
    assert_eq!(report["version"], 1);
    assert_eq!(report["passed"], true);
    assert_eq!(report["config"]["radii"].as_array().unwrap().len(), 5);

    // Two sizes with few reps: the fitted slope is steeper than the admissible window.
    let o = qgreen(dir.path(), &["verify", "self-averaging", "--sizes", "20,40", "--reps", "20", "--report", "sa.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL log_variance_slope"));
    assert!(stderr(&o).contains("log_variance_slope"));
}

#[test]
fn verify_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "spherical", "--n", "30", "--draws", "10", "--seed", "4"];
    let mut texts = Vec::new();
    for (workers, name) in [("1", "a.json"), ("2", "b.json")] {
        let mut a = vec!["--workers", workers];
        a.extend(args);
        a.extend(["--report", name]);
        let o = qgreen(dir.path(), &a);
        assert!(o.status.code() == Some(0) || o.status.code() == Some(1), "{}", stderr(&o));
        texts.push(strip_runtime(&std::fs::read_to_string(dir.path().join(name)).unwrap()));
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn config_files_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qgreen(dir.path(), &["configs", "--dir", "cfg"]).status.code(), Some(0));
    std::fs::write(dir.path().join("s.json"), r#"{"mode": "ratio", "n": 12, "seed": 3}"#).unwrap();
    let o = qgreen(dir.path(), &["sample", "--config", "s.json", "--n", "8", "--out", "r.csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(dir.path().join("r.csv")).unwrap().lines().count(), 9);
    let template: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cfg/figure1.json")).unwrap()).unwrap();
    assert_eq!(template["n"], 10000);
}
