use super::*;
use crate::mass::{MassKind, MassProfile, OrderingPreset};
use crate::potential::{Family, FamilySpec};
use std::f64::consts::PI;

fn bdd() -> crate::mass::OrderingParams {
    OrderingPreset::BenDanielDuke.params()
}

fn constant_model(spec: &FamilySpec) -> PotentialModel {
    PotentialModel::with_default_mass(spec, MassKind::Constant { m0: 1.0 }, bdd()).unwrap()
}

#[test]
fn particle_in_a_box_converges_at_second_order() {
    // zero potential: kinetic part only
    let grid = Grid::new(0.0, PI, 65).unwrap();
    let mut diffs = Vec::new();
    let mut g = grid;
    for _ in 0..4 {
        let (t, _) = kinetic(&MassKind::Constant { m0: 1.0 }, &bdd(), &g);
        let e = t.lowest(3, crate::par::Parallelism::Sequential).unwrap().values;
        let err: f64 =
            e.iter().enumerate().map(|(k, v)| (v - ((k + 1) as f64).powi(2) / 2.0).abs()).fold(0.0, f64::max);
        diffs.push(err);
        g = g.refined();
    }
    for w in diffs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!((1.9..=2.1).contains(&order), "{diffs:?}");
    }
}

#[test]
fn coulomb_levels() {
    let model = constant_model(&FamilySpec::coulomb(1.0, 0.0));
    let grid = Grid::new(0.0, 60.0, 501).unwrap();
    let r = refine_until(&model, &grid, 3, 1e-5, Parallelism::default()).unwrap();
    let want = [-0.5, -0.125, -1.0 / 18.0];
    for (e, w) in r.best().iter().zip(want) {
        assert!(((e - w) / w).abs() < 1e-4, "{:?}", r.best());
    }
    let p = r.convergence.as_ref().unwrap().observed_order.unwrap();
    assert!((1.5..2.5).contains(&p), "{p}");
}

#[test]
fn morse_has_four_levels() {
    let model = constant_model(&FamilySpec::with(Family::Morse, 1.0, -4.0, 4.0, None));
    let report = validate_family(&model, &SolverConfig { levels: 6, ..Default::default() }).unwrap();
    assert!(report.pass, "{report:#?}");
    assert_eq!(report.levels.len(), 4);
    assert_eq!(report.offset, 0.0);
}

#[test]
fn oscillator_spacing_and_offset() {
    let model = constant_model(&FamilySpec::oscillator(0.25, -0.25));
    let report = validate_family(&model, &SolverConfig::default()).unwrap();
    assert!(report.pass, "{report:#?}");
    for w in report.levels.windows(2) {
        assert!((w[1].e_numeric - w[0].e_numeric - 0.5).abs() < 1e-4);
    }
    assert!(report.offset.abs() < 1e-4, "{}", report.offset);
}

#[test]
fn nodes_follow_level_index() {
    let model = constant_model(&FamilySpec::coulomb(1.0, 0.0));
    let grid = Grid::new(0.0, 60.0, 2001).unwrap();
    let r = solve(&model, &grid, 3, Parallelism::default()).unwrap();
    for v in &r.eigenvectors {
        let norm: f64 = v.iter().map(|p| p * p).sum::<f64>() * grid.dx();
        assert!((norm - 1.0).abs() < 1e-12);
    }
    let states = eigenvector_transform(&r, &model).unwrap();
    assert_eq!(states.iter().map(|s| s.nodes).collect::<Vec<_>>(), vec![0, 1, 2]);
}

#[test]
fn reports_are_deterministic() {
    let mass = MassProfile::covering(MassKind::Exponential { m0: 1.0, lambda: 0.2 }, (-3.0, 30.0)).unwrap();
    let model = PotentialModel::new(&FamilySpec::with(Family::Morse, 1.0, -4.0, 4.0, None), mass, bdd()).unwrap();
    let cfg = SolverConfig { points: 301, ..Default::default() };
    let a = validate_family(&model, &cfg).unwrap();
    let b = validate_family(&model, &SolverConfig { parallelism: Parallelism::Sequential, ..cfg }).unwrap();
    assert_eq!(a, b);
}

#[test]
fn complex_and_bad_inputs() {
    let pts = constant_model(&FamilySpec::with(Family::PtScarf, 1.0, 1.0, 3.0, None));
    assert_eq!(validate_family(&pts, &SolverConfig::default()).unwrap_err(), Error::ComplexModel);
    let grid = Grid::new(0.0, 1.0, 40).unwrap();
    assert_eq!(discretize(&pts, &grid).unwrap_err(), Error::ComplexModel);
    let coul = constant_model(&FamilySpec::coulomb(1.0, 0.0));
    assert!(matches!(refine_until(&coul, &grid, 1, 1e-9, Parallelism::Sequential), Err(Error::Parameter(_))));
    let one = ordering_sweep(&coul, &[bdd()], &SolverConfig::default());
    assert!(matches!(one, Err(Error::Parameter(_))));
}

#[test]
fn budget_is_enforced() {
    let model = constant_model(&FamilySpec::coulomb(1.0, 0.0));
    let grid = Grid::new(0.0, 60.0, 41).unwrap();
    let err = refine_until(&model, &grid, 3, 1e-8, Parallelism::default()).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { doublings: 6, .. }), "{err:?}");
}
