use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rational-susy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(text: &str, col: usize) -> Vec<f64> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').nth(col).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn potential_reference_row() {
    let out = run(&[
        "potential",
        "--family",
        "gpt",
        "--A",
        "1.5",
        "--B",
        "3",
        "--xmin",
        "1",
        "--xmax",
        "1",
        "--n",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text, "x,V\n1.0000000000000000e0,-4.1756401520708337e0\n");
}

#[test]
fn potential_output_is_deterministic() {
    let args = [
        "potential",
        "--family",
        "pt-scarf2-ext-ii",
        "--A",
        "1.5",
        "--B",
        "3",
        "--xmin",
        "-5",
        "--xmax",
        "5",
        "--n",
        "257",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).starts_with("x,re,im\n"));
}

#[test]
fn potential_range_violation_exits_with_validation_code() {
    let out = run(&[
        "potential",
        "--family",
        "scarf1",
        "--A",
        "4",
        "--B",
        "3.5",
        "--xmin",
        "0",
        "--xmax",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("0 < B < A - 1"), "{err}");
}

#[test]
fn spectrum_extension_matches_exact_levels() {
    let out = run(&[
        "spectrum", "--family", "gpt-ext", "--A", "1.5", "--B", "3", "--k", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let numerical = column(&text, 1);
    assert!((numerical[0] + 2.25).abs() < 1e-4);
    assert!((numerical[1] + 0.25).abs() < 1e-4);
}

#[test]
fn spectrum_b_independence() {
    let out = run(&[
        "spectrum", "--family", "gpt", "--A", "1.5", "--B", "4", "--k", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn spectrum_tolerance_failure_exits_one() {
    let out = run(&[
        "spectrum", "--family", "gpt", "--A", "1.5", "--B", "3", "--grid-n", "64", "--tol", "1e-9",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn spectrum_scarf1_cross_comparison() {
    let out = run(&[
        "spectrum",
        "--family",
        "scarf1",
        "--A",
        "4",
        "--B",
        "2",
        "--k",
        "3",
        "--compare",
        "scarf1-ext",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("index,scarf1,scarf1-ext,abs_diff"));
    assert!(!text.contains("exact"));
    assert!(column(&text, 3).iter().all(|d| *d < 1e-4));
}

#[test]
fn spectrum_rejects_pt_family() {
    let out = run(&[
        "spectrum",
        "--family",
        "pt-scarf2",
        "--A",
        "1.5",
        "--B",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("complex-valued"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "--suite", "partner", "--A", "1.5", "--B", "3"],
        vec!["verify", "--suite", "intertwine", "--A", "1.5", "--B", "3"],
        vec![
            "verify", "--suite", "ssusy", "--A", "1.5", "--B", "3", "--path", "lower",
        ],
        vec!["verify", "--suite", "ortho"],
        vec!["verify", "--suite", "pt-polefree"],
        vec!["verify"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["pass"], true);
        assert!(!report["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_report_schema() {
    let out = run(&["verify", "--suite", "ssusy", "--path", "upper"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["suite"], "ssusy");
    assert_eq!(report["params"]["A"], 1.5);
    assert_eq!(report["params"]["B"], 3.0);
    assert_eq!(report["params"]["path"], "upper");
    let check = &report["checks"][0];
    assert!(check["name"].is_string() && check["value"].is_number());
    assert!(check["tol"].is_number() && check["pass"].is_boolean());
}

#[test]
fn verify_unknown_suite_is_a_usage_error() {
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wavefunction_node_counts() {
    let sign_changes = |psi: &[f64]| psi.windows(2).filter(|w| w[0] * w[1] < 0.0).count();

    let out = run(&[
        "wavefunction",
        "--family",
        "gpt-ext",
        "--A",
        "1.5",
        "--B",
        "3",
        "--nu",
        "0",
        "--xmin",
        "0.05",
        "--xmax",
        "15",
        "--n",
        "400",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# energy = "));
    let psi = column(&text, 1);
    assert!(psi.iter().all(|v| *v > 0.0) || psi.iter().all(|v| *v < 0.0));

    let out = run(&[
        "wavefunction",
        "--family",
        "gpt",
        "--A",
        "1.5",
        "--B",
        "3",
        "--nu",
        "1",
        "--xmin",
        "0.05",
        "--xmax",
        "15",
        "--n",
        "400",
    ]);
    assert_eq!(sign_changes(&column(&stdout(&out), 1)), 1);
}

#[test]
fn wavefunction_rejects_nu_above_max() {
    let out = run(&[
        "wavefunction",
        "--family",
        "gpt",
        "--A",
        "1.5",
        "--B",
        "3",
        "--nu",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("nu_max"));
}
