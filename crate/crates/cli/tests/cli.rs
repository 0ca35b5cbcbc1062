use std::process::{Command, Output};

fn lebesgue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lebesgue")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Main CSV block as (header, rows of fields).
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let block = text.split("\n\n").next().unwrap();
    let mut lines = block.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (header, rows) = csv_rows(text);
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn nodes_radau_right_two_points() {
    let o = lebesgue(&["nodes", "--family", "radau-right", "--n", "2"]);
    assert!(o.status.success());
    let tau = column(&stdout(&o), "tau");
    assert_eq!(tau.len(), 2);
    assert!((tau[0] + 1.0 / 3.0).abs() <= 1e-15);
    assert_eq!(tau[1], 1.0);
    let theta = column(&stdout(&o), "theta");
    assert_eq!(theta[1], 0.0);
}

#[test]
fn nodes_single_gauss_point() {
    let o = lebesgue(&["nodes", "--family", "gauss", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(column(&stdout(&o), "tau"), vec![0.0]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["nodes", "--family", "gauss", "--n", "0"][..],
        &["nodes", "--family", "gauss", "--n", "201"],
        &["nodes", "--family", "nope", "--n", "3"],
        &["nodes", "--family", "explicit", "--n", "3"],
        &["sweep", "--family", "gauss", "--from", "5", "--to", "5", "--fit", "sqrt"],
        &["sweep", "--family", "gauss", "--from", "9", "--to", "4"],
        &["sweep", "--family", "gauss", "--from", "1", "--to", "4"],
        &["residual", "--problem", "nope", "--family", "gauss", "--n", "5"],
        &["nodes", "--family", "gauss", "--n", "4", "--format", "svg"],
        &["check", "--max-n", "1"],
        &["check", "--max-n", "201"],
    ] {
        let o = lebesgue(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn sweep_radau_right_plus_left_has_log_fit_and_erdos_gap() {
    let o = lebesgue(&["sweep", "--family", "radau-right-plus-left", "--from", "10", "--to", "40", "--fit", "log"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for gap in column(&text, "gap") {
        assert!((0.65..=0.90).contains(&gap), "{gap}");
    }
    let fit = text.split("\n\n").nth(1).expect("fit block");
    let (header, rows) = csv_rows(fit);
    assert_eq!(header, ["model", "a", "b", "rms_residual", "max_rel_deviation"]);
    assert_eq!(rows[0][0], "log");
    assert!(rows[0][4].parse::<f64>().unwrap() <= 0.05);
}

#[test]
fn sweep_sqrt_fit_for_radau_right() {
    let o = lebesgue(&["sweep", "--family", "radau-right", "--from", "10", "--to", "30", "--fit", "sqrt", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["family"], "radau-right");
    assert_eq!(v["rows"].as_array().unwrap().len(), 21);
    assert_eq!(v["fit"]["model"], "sqrt");
    assert!(v["fit"]["max_rel_deviation"].as_f64().unwrap() <= 0.05);
    for row in v["rows"].as_array().unwrap() {
        assert!(row["lambda"].as_f64().unwrap() > row["erdos_bound"].as_f64().unwrap());
    }
}

#[test]
fn sweep_svg_is_a_chart() {
    let o = lebesgue(&["sweep", "--family", "gauss-plus-left", "--from", "2", "--to", "12", "--fit", "sqrt", "--format", "svg"]);
    assert!(o.status.success());
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn residual_decreases_with_n() {
    let o = lebesgue(&["residual", "--problem", "exp", "--family", "gauss-plus-left", "--n", "5,10,15"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let sup = column(&text, "sup_norm");
    assert!(sup[0] > sup[1] && sup[1] > sup[2], "{sup:?}");
    assert!(column(&text, "r0").iter().all(|&r| r == 0.0));
}

#[test]
fn residual_of_linear_problem_is_roundoff() {
    let o = lebesgue(&["residual", "--problem", "linear", "--family", "radau-right-plus-left", "--n", "3,8,20"]);
    assert!(o.status.success());
    assert!(column(&stdout(&o), "sup_norm").iter().all(|&s| s <= 1e-12));
}

#[test]
fn check_passes_and_tamper_fails() {
    let o = lebesgue(&["check", "--max-n", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = csv_rows(&stdout(&o));
    assert!(rows.len() >= 8);
    assert!(rows.iter().all(|r| r[1] == "true"));

    let o = lebesgue(&["check", "--max-n", "50", "--tamper", "1e-3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("interlacing"));
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--family", "gauss-plus-right", "--from", "2", "--to", "25", "--fit", "sqrt"];
    assert_eq!(lebesgue(&args).stdout, lebesgue(&args).stdout);
    let args = ["nodes", "--family", "radau-left", "--n", "17", "--format", "json"];
    assert_eq!(lebesgue(&args).stdout, lebesgue(&args).stdout);
}

#[test]
fn csv_and_json_agree() {
    let base = ["nodes", "--family", "gauss-plus-right", "--n", "30"];
    let csv = column(&stdout(&lebesgue(&base)), "tau");
    let json: serde_json::Value =
        serde_json::from_slice(&lebesgue(&[&base[..], &["--format", "json"]].concat()).stdout).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), csv.len());
    for (r, &t) in rows.iter().zip(&csv) {
        assert!((r["tau"].as_f64().unwrap() - t).abs() <= 1e-12);
    }
    assert_eq!(json["meta"]["command"], "nodes");
    assert!(json["meta"]["tool_version"].is_string());
}

#[test]
fn writes_to_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nodes.csv");
    let o = lebesgue(&["nodes", "--family", "equidistant", "--n", "4", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(column(&text, "tau"), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
}
