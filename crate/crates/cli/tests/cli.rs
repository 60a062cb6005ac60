use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdm-spectra")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().map(|l| l.split(',').map(String::from).collect()).collect()
}

const MORSE: [&str; 6] = ["--family", "morse", "--b", "-4", "--N", "4"];

#[test]
fn families_lists_all_ten() {
    let o = run(&["families"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("10 families\n"));
    let v = json(&run(&["families", "--json"]));
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["result"].as_array().unwrap().len(), 10);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["families", "--bogus"])), 2);
    assert_eq!(code(&run(&["spectrum", "--family", "nonesuch"])), 2);
    assert_eq!(code(&run(&["validate", "--family", "coulomb", "--precision", "0"])), 2);
    let o = run(&["validate", "--family", "morse", "--b", "2", "--N", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bN must be negative"), "{}", stderr(&o));
}

#[test]
fn complex_family_is_analytic_only() {
    let o = run(&["validate", "--family", "pt-scarf", "--b", "3", "--N", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("complex family: analytic evaluation only"));
    let o = run(&["potential", "--family", "pt-scarf", "--b", "3", "--N", "1", "--samples", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(csv_rows(&o)[0], ["x", "u", "m", "V_re", "V_im", "V_m", "U_m"]);
}

#[test]
fn coulomb_potential_row() {
    let o = run(&["potential", "--family", "coulomb", "--domain", "1", "3", "--samples", "5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[0], ["x", "u", "m", "V", "V_m", "U_m"]);
    assert_eq!(rows[3], ["2", "2", "1", "-0.5", "0", "0"]);
}

#[test]
fn exponential_mass_coordinate_matches_closed_form() {
    let (m0, lambda) = (1.5_f64, 0.4_f64);
    let o = run(&[
        "potential",
        "--family",
        "morse",
        "--b",
        "-4",
        "--N",
        "4",
        "--mass",
        "exponential",
        "--m0",
        "1.5",
        "--lambda",
        "0.4",
        "--domain",
        "-1",
        "2",
        "--samples",
        "7",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    for row in v["result"]["rows"].as_array().unwrap() {
        let x = row["x"].as_f64().unwrap();
        let u = 2.0 * m0.sqrt() / lambda * ((lambda * x / 2.0).exp() - 1.0);
        assert!((row["u"].as_f64().unwrap() - u).abs() <= 1e-10 * u.abs().max(1.0), "x = {x}");
        assert!((row["m"].as_f64().unwrap() - m0 * (lambda * x).exp()).abs() < 1e-10);
    }
}

#[test]
fn validate_coulomb_passes_with_schema() {
    let o = run(&["validate", "--family", "coulomb", "--levels", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "validate");
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["solver"]["domain"], serde_json::json!([0.0, 60.0]));
    assert_eq!(v["result"]["levels"][0]["E_analytic"], -0.5);
}

#[test]
fn validation_csv_columns() {
    let mut args = vec!["validate", "--format", "csv"];
    args.extend(MORSE);
    let o = run(&args);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[0].join(","), "family,ordering,n,E_analytic,E_numeric,abs_err,rel_err,offset,grid_n");
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1][..4], ["morse", "ben-daniel-duke", "0", "-6.125"]);
}

#[test]
fn ordering_sweep_and_control() {
    let mut args = vec!["sweep-ordering", "--mass", "exponential", "--lambda", "0.5"];
    args.extend(MORSE);
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["config"]["sweep"].as_array().unwrap().len(), 4);
    args.push("--suppress-v-m");
    let o = run(&args);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["pass"], false);
}

#[test]
fn explicit_orderings_accept_exponents() {
    let mut args = vec![
        "sweep-ordering",
        "--mass",
        "exponential",
        "--lambda",
        "0.5",
        "--orderings",
        "ben-daniel-duke;-0.3,0.1",
        "--format",
        "csv",
    ];
    args.extend(MORSE);
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(csv_rows(&o).len(), 9);
}

#[test]
fn algebra_checks() {
    let o = run(&["check-algebra", "--family", "coulomb"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let order = json(&o)["result"]["study"]["commutator_order"].as_f64().unwrap();
    assert!((order - 2.0).abs() < 0.2, "{order}");
    let mut args = vec!["check-algebra", "--mass", "soliton", "--lambda", "0.05"];
    args.extend(MORSE);
    assert_eq!(code(&run(&args)), 0);
    assert_eq!(code(&run(&["check-algebra", "--family", "coulomb", "--perturb-g", "0.3"])), 1);
    assert_eq!(code(&run(&["check-algebra", "--family", "coulomb", "--sizes", "401,201"])), 2);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"family": {"family": "coulomb"}, "solver": {"pointz": 10}}"#).unwrap();
    let o = run(&["validate", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("pointz"), "{}", stderr(&o));
}

#[test]
fn echoed_config_reproduces_report() {
    let mut args = vec!["spectrum", "--mass", "rational", "--mass-alpha", "2", "--levels", "3", "--target-tol", "1e-4"];
    args.extend(MORSE);
    let first = run(&args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let v = json(&first);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("echo.json");
    std::fs::write(&cfg, serde_json::to_string(&v["config"]).unwrap()).unwrap();
    let second = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&second), 0, "{}", stderr(&second));
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn output_file_and_precision() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = run(&[
        "validate",
        "--family",
        "coulomb",
        "--levels",
        "3",
        "--format",
        "csv",
        "--precision",
        "4",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], "-0.5");
    assert_eq!(row[4], "-0.5");
}

#[test]
fn constant_mass_sweep_has_no_deviation() {
    let mut args = vec!["sweep-ordering"];
    args.extend(MORSE);
    let o = run(&args);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["result"]["max_deviation"], 0.0);
}
