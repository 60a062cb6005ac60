use approx::assert_relative_eq;
use pdm_core::mass::{u_m, v_m, MassKind, MassProfile, OrderingParams, OrderingPreset};
use pdm_core::potential::{Family, FamilySpec, PotentialModel};
use pdm_core::report::{format_sig, round_sig};
use pdm_core::solver::{SolverConfig, Tridiagonal};
use pdm_core::Parallelism;
use proptest::prelude::*;

fn mass_kind() -> impl Strategy<Value = MassKind> {
    prop_oneof![
        (0.2..5.0f64).prop_map(|m0| MassKind::Constant { m0 }),
        (0.2..5.0f64, 0.2..4.0f64).prop_map(|(m0, alpha)| MassKind::Rational { m0, alpha }),
        (0.2..5.0f64, -1.0..1.0f64).prop_map(|(m0, lambda)| MassKind::Exponential { m0, lambda }),
        (0.2..5.0f64, 0.05..1.0f64).prop_map(|(m0, lambda)| MassKind::Soliton { m0, lambda }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constant_mass_has_no_corrections(m0 in 0.1..10.0f64, eta in -2.0..1.0f64, eps in -2.0..1.0f64, x in -3.0..3.0f64) {
        let p = MassProfile::constant(m0, (-4.0, 4.0)).unwrap();
        let o = OrderingParams::new(eta, eps);
        prop_assert_eq!(v_m(&p, &o, x).unwrap(), 0.0);
        prop_assert_eq!(u_m(&p, &o, x).unwrap(), 0.0);
    }

    #[test]
    fn ordering_exponents_sum_to_minus_one(eta in -3.0..3.0f64, eps in -3.0..3.0f64) {
        let o = OrderingParams::new(eta, eps);
        prop_assert!((o.eta() + o.epsilon() + o.rho() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn mapped_coordinate_is_monotone_and_invertible(kind in mass_kind(), a in -2.9..2.9f64, b in -2.9..2.9f64) {
        let p = MassProfile::new(kind, (-3.0, 3.0)).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (ul, uh) = (p.mapped_coordinate(lo).unwrap(), p.mapped_coordinate(hi).unwrap());
        prop_assert!(ul <= uh);
        prop_assert!((p.inverse_mapped_coordinate(uh).unwrap() - hi).abs() < 1e-9);
    }

    #[test]
    fn sturm_count_matches_sorted_eigenvalues(diag in prop::collection::vec(-5.0..5.0f64, 3..40), seed in 0.1..2.0f64) {
        let off: Vec<f64> = (0..diag.len() - 1).map(|i| seed * ((i as f64) * 1.3).cos()).collect();
        let t = Tridiagonal::new(diag.clone(), off);
        let k = diag.len().min(5);
        let vals = t.lowest(k, Parallelism::Sequential).unwrap().values;
        for w in vals.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        for (i, v) in vals.iter().enumerate() {
            prop_assert!(t.count_below(*v - 1e-9) <= i);
            prop_assert!(t.count_below(*v + 1e-9) > i);
        }
    }

    #[test]
    fn rounding_is_idempotent(x in -1e12..1e12f64, d in 1usize..17) {
        let r = round_sig(x, d);
        prop_assert_eq!(round_sig(r, d), r);
        if x != 0.0 {
            prop_assert!(((r - x) / x).abs() <= 0.5 * 10f64.powi(1 - d as i32) * (1.0 + 1e-12));
        }
        prop_assert_eq!(format_sig(x, d).parse::<f64>().unwrap(), r + 0.0);
    }

    #[test]
    fn morse_levels_do_not_depend_on_alpha_scaling(alpha in 0.5..2.0f64) {
        let spec = FamilySpec::with(Family::Morse, alpha, -4.0, 4.0, None);
        let model = PotentialModel::with_default_mass(&spec, MassKind::Constant { m0: 1.0 }, OrderingPreset::BenDanielDuke.params()).unwrap();
        for (n, e) in [-49.0, -25.0, -9.0, -1.0].iter().enumerate() {
            assert_relative_eq!(model.analytic_energy(n).unwrap(), alpha * alpha * e / 8.0, max_relative = 1e-14);
        }
    }
}

#[test]
fn solver_config_rejects_unknown_keys() {
    let cfg: SolverConfig = serde_json::from_str(r#"{"levels": 3}"#).unwrap();
    assert_eq!(cfg, SolverConfig { levels: 3, ..Default::default() });
    assert!(serde_json::from_str::<SolverConfig>(r#"{"levls": 3}"#).is_err());
    let back: SolverConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn family_spec_round_trips() {
    let spec = FamilySpec::with(Family::Eckart, 0.05, 24.0, 2.0, Some(0.0));
    let text = serde_json::to_string(&spec).unwrap();
    assert_eq!(serde_json::from_str::<FamilySpec>(&text).unwrap(), spec);
    assert!(serde_json::from_str::<FamilySpec>(r#"{"family": "morse", "beta": 1}"#).is_err());
}
