use std::process::{Command, Output};

fn starq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starq")).args(args).env_remove("STARQ_GRID_M").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = starq(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Value of `column` in the first data row of a CSV document.
fn cell(csv: &str, column: &str) -> String {
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let idx = r.headers().unwrap().iter().position(|h| h == column).unwrap();
    r.records().next().unwrap().unwrap()[idx].to_string()
}

fn num(csv: &str, column: &str) -> f64 {
    cell(csv, column).parse().unwrap()
}

#[test]
fn constants() {
    assert!((num(&stdout(&["constants", "--alpha", "0.5"]), "q_min") - 0.721348).abs() < 1e-6);
    assert_eq!(num(&stdout(&["constants", "--alpha", "0"]), "gamma"), 0.5);
    assert!((num(&stdout(&["constants", "--alpha", "0.666667"]), "q_min") - 0.807887).abs() < 1e-5);
    let seven_ninths = stdout(&["constants", "--alpha", "7/9"]);
    assert!((num(&seven_ninths, "q_min") - 0.869128).abs() < 1e-5);
    assert!((num(&seven_ninths, "exp_threshold") - 0.246646).abs() < 1e-6);
}

#[test]
fn radius_rows() {
    assert!((num(&stdout(&["radius", "--class", "sl", "--alpha", "0"]), "root") - 0.5680).abs() < 1e-4);
    let exp = stdout(&["radius", "--class", "exp", "--alpha", "0.3"]);
    assert_eq!(cell(&exp, "branch"), "BelowThreshold");
    let exp0 = stdout(&["radius", "--class", "exp", "--alpha", "0"]);
    assert_eq!(cell(&exp0, "branch"), "AboveThreshold");
    let order = stdout(&["radius", "--class", "starlike-order", "--alpha", "0.3", "--gamma", "0.9", "--verify"]);
    assert_eq!(cell(&order, "inside_verdict"), "HoldsOnGrid");
}

#[test]
fn radius_errors_exit_with_invalid_parameters() {
    assert_eq!(starq(&["radius", "--class", "cardioid", "--alpha", "0.8"]).status.code(), Some(2));
    assert_eq!(starq(&["radius", "--class", "mbeta", "--alpha", "0.3"]).status.code(), Some(2));
    assert_eq!(starq(&["radius", "--class", "nope", "--alpha", "0.3"]).status.code(), Some(2));
    assert_eq!(starq(&["constants", "--alpha", "1.5"]).status.code(), Some(2));
    assert_eq!(starq(&["constants"]).status.code(), Some(2));
}

#[test]
fn boundary_exports() {
    let csv = stdout(&["boundary", "--alpha", "0", "--samples", "1024", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let mut n = 0;
    for rec in r.records() {
        let rec = rec.unwrap();
        if &rec[3] == "false" {
            let re: f64 = rec[1].parse().unwrap();
            assert!((re - 0.5).abs() < 1e-8, "{re}");
            n += 1;
        }
    }
    assert!(n > 1000);

    let svg = stdout(&["boundary", "--alpha", "0.5", "--format", "svg"]);
    assert!(svg.starts_with("<?xml") && svg.contains(r#"viewBox="0 0 800 800""#));
    assert!(svg.contains("A = 0.721348"));

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["boundary", "--alpha", "0.777778", "--format", "json"])).unwrap();
    assert!((json["a_min"].as_f64().unwrap() - 0.869128).abs() < 1e-5);
}

#[test]
fn bounds() {
    assert_eq!(num(&stdout(&["bound", "fekete", "--alpha", "0", "--t", "1"]), "bound"), 0.5);
    assert_eq!(num(&stdout(&["bound", "a3", "--alpha", "0.75"]), "bound"), 0.125);
    let log = stdout(&["bound", "logcoeff", "--alpha", "0", "--n", "1"]);
    assert_eq!((num(&log, "bound"), cell(&log, "conditional").as_str()), (0.5, "false"));
    assert_eq!(starq(&["bound", "fekete", "--alpha", "0"]).status.code(), Some(2));
}

#[test]
fn membership_runs() {
    let id = stdout(&["membership", "--f", "identity", "--class", "sq", "--alpha", "0.3"]);
    assert_eq!(cell(&id, "verdict"), "HoldsOnGrid");
    assert!((num(&id, "worst_margin") - 0.7).abs() < 1e-12);

    let k = stdout(&["membership", "--f", "koebe", "--class", "sqalpha", "--alpha", "0", "--m", "256"]);
    assert_eq!(cell(&k, "verdict"), "Violated");
    assert!(num(&k, "witness_re") < -0.8);

    let c = stdout(&["membership", "--f", "falpha:0.4", "--class", "convex", "--alpha", "0.4"]);
    assert_eq!(cell(&c, "verdict"), "HoldsOnGrid");
}

#[test]
fn grid_override_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_starq"))
        .args(["membership", "--f", "koebe", "--class", "convex", "--format", "json"])
        .env("STARQ_GRID_M", "96")
        .output()
        .unwrap();
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["grid"]["angular_count"], 96);
}

#[test]
fn scans() {
    let conv = stdout(&["scan", "convexity", "--alpha", "0:0.95:0.05", "--samples", "1024"]);
    let rows: Vec<(f64, f64)> = csv::Reader::from_reader(conv.as_bytes())
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 20);
    assert!(rows[0].1 >= -1e-6);
    assert!(rows.iter().any(|(a, m)| *a > 0.0 && *m < 0.0));

    let sin = stdout(&["scan", "radius-table", "--class", "sin", "--alpha", "0:0.9:0.1"]);
    let roots: Vec<f64> =
        csv::Reader::from_reader(sin.as_bytes()).records().map(|r| r.unwrap()[4].parse().unwrap()).collect();
    assert_eq!(roots.len(), 10);
    assert!(roots.windows(2).all(|w| w[1] < w[0]));

    let gamma = stdout(&["scan", "gamma-table", "--alpha", "0:0.9:0.1"]);
    assert_eq!(num(&gamma, "gamma"), 0.5);
}

#[test]
fn output_files_are_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join(format!("starq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let paths = [dir.join("a.json"), dir.join("b.json")];
    for p in &paths {
        let out = starq(&["radius", "--class", "sg", "--alpha", "0:0.8:0.2", "--format", "json", "--output", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let json: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn io_and_format_errors() {
    let out = starq(&["constants", "--alpha", "0", "--output", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(4));
    let out = starq(&["constants", "--alpha", "0", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(2));
}
