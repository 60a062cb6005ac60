use pdm_core::mass::{MassKind, OrderingPreset};
use pdm_core::potential::{Family, FamilySpec, PotentialModel};
use pdm_core::report::{potential_table, sweep_table, validation_table, Report, DEFAULT_PRECISION};
use pdm_core::solver::{ordering_sweep, validate_family, SolverConfig};
use pdm_core::Grid;

fn morse(kind: MassKind) -> PotentialModel {
    let spec = FamilySpec::with(Family::Morse, 1.0, -4.0, 4.0, None);
    PotentialModel::with_default_mass(&spec, kind, OrderingPreset::BenDanielDuke.params()).unwrap()
}

#[test]
fn validation_csv_has_fixed_columns() {
    let model = morse(MassKind::Constant { m0: 1.0 });
    let report = validate_family(&model, &SolverConfig::default()).unwrap();
    let csv = validation_table(&report, DEFAULT_PRECISION).unwrap().to_csv().unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("family,ordering,n,E_analytic,E_numeric,abs_err,rel_err,offset,grid_n"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "morse");
    assert_eq!(first[2], "0");
    assert_eq!(first[3], "-6.125");
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn json_report_carries_schema_and_config() {
    let model = morse(MassKind::Exponential { m0: 1.0, lambda: 0.5 });
    let cfg = SolverConfig::default();
    let report = validate_family(&model, &cfg).unwrap();
    let text = Report::new("validate", &cfg, &report).with_pass(report.pass).to_json(DEFAULT_PRECISION).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["points"], 1001);
    assert_eq!(v["result"]["levels"][0]["E_analytic"], -6.125);
    let echoed: SolverConfig = serde_json::from_value(v["config"].clone()).unwrap();
    assert_eq!(echoed, cfg);
}

#[test]
fn sweep_table_lists_every_ordering() {
    let model = morse(MassKind::Exponential { m0: 1.0, lambda: 0.5 });
    let orderings: Vec<_> = OrderingPreset::ALL.iter().map(|o| o.params()).collect();
    let cfg = SolverConfig { target_tol: 1e-4, ..Default::default() };
    let sweep = ordering_sweep(&model, &orderings, &cfg).unwrap();
    assert!(sweep.pass);
    let t = sweep_table(&sweep, DEFAULT_PRECISION).unwrap();
    assert_eq!(t.rows.len(), 16);
}

#[test]
fn potential_rows_for_coulomb() {
    let spec = FamilySpec::coulomb(1.0, 0.0);
    let model =
        PotentialModel::with_default_mass(&spec, MassKind::Constant { m0: 1.0 }, OrderingPreset::ZhuKroemer.params())
            .unwrap();
    let grid = Grid::new(1.0, 3.0, 41).unwrap();
    let rows: Vec<_> = grid.points().map(|x| model.row(x).unwrap()).collect();
    let t = potential_table(&rows, false, DEFAULT_PRECISION).unwrap();
    assert_eq!(t.header, ["x", "u", "m", "V", "V_m", "U_m"]);
    let at2 = t.rows.iter().find(|r| r[0] == "2").unwrap();
    assert_eq!(at2[1..], ["2", "1", "-0.5", "0", "0"]);
}
