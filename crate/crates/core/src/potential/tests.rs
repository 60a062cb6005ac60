use super::*;
use crate::mass::OrderingPreset;

fn unit(domain: (f64, f64)) -> MassProfile {
    MassProfile::constant(1.0, domain).unwrap()
}

fn bdd() -> OrderingParams {
    OrderingPreset::BenDanielDuke.params()
}

fn morse() -> FamilySpec {
    FamilySpec::with(Family::Morse, 1.0, -4.0, 4.0, None)
}

#[test]
fn master_identity_examples() {
    let m = unit((-1.0, 5.0));
    let spec = AlgebraSpec::new(0.0, 1.0, 0.0, 1.0);
    let v = master_potential(&spec, &CoordinateMap::Identity, &m, &bdd(), 2.0).unwrap();
    assert!((v - 1.0).abs() < 1e-15);
    let spec = AlgebraSpec::new(0.0, 0.0, 0.0, 1.0);
    for x in [0.5, 1.0, 3.7] {
        assert_eq!(master_potential(&spec, &CoordinateMap::Identity, &m, &bdd(), x).unwrap(), 0.0);
    }
    let err = master_potential(&spec, &CoordinateMap::Identity, &m, &bdd(), 0.0).unwrap_err();
    assert!(matches!(err, Error::SingularPoint { .. }));
}

#[test]
fn poschl_teller_against_closed_form() {
    let spec = FamilySpec::with(Family::PoschlTeller, 0.7, 6.3, 2.1, None);
    let model = PotentialModel::new(&spec, unit((0.0, 10.0)), bdd()).unwrap();
    let grid = Grid::new(0.2, 8.0, 1000).unwrap();
    assert!(consistency_check(&model, &grid).unwrap() <= 1e-10);
}

#[test]
fn coulomb_anchor() {
    let model = PotentialModel::new(&FamilySpec::coulomb(1.0, 0.0), unit((0.0, 60.0)), bdd()).unwrap();
    assert!((model.potential(2.0).unwrap() + 0.5).abs() < 1e-15);
    assert_eq!(model.analytic_energy(0).unwrap(), -0.5);
    assert_eq!(model.analytic_energy(1).unwrap(), -0.125);
    assert!((model.analytic_energy(2).unwrap() + 1.0 / 18.0).abs() < 1e-15);
    assert_eq!(model.spectrum().bound_states, None);
    let grid = Grid::new(0.1, 50.0, 1000).unwrap();
    assert!(consistency_check(&model, &grid).unwrap() <= 1e-10);
}

#[test]
fn morse_anchor() {
    let model = PotentialModel::new(&morse(), unit((-3.0, 30.0)), bdd()).unwrap();
    for u in [-1.0f64, 0.3, 2.0] {
        let expected = -16.0 * (-u).exp() + 8.0 * (-2.0 * u).exp();
        assert!((model.potential(u).unwrap() - expected).abs() < 1e-12);
    }
    let energies: Vec<f64> = (0..4).map(|n| model.analytic_energy(n).unwrap()).collect();
    assert_eq!(energies, vec![-49.0 / 8.0, -25.0 / 8.0, -9.0 / 8.0, -1.0 / 8.0]);
    assert_eq!(model.spectrum().bound_states, Some(4));
    assert_eq!(model.analytic_energy(4).unwrap_err(), Error::Index { index: 4, count: 4 });
    let grid = Grid::new(-2.5, 20.0, 1000).unwrap();
    assert!(consistency_check(&model, &grid).unwrap() <= 1e-10);
}

#[test]
fn oscillator_anchor() {
    let model = PotentialModel::new(&FamilySpec::oscillator(0.25, -0.25), unit((0.0, 24.0)), bdd()).unwrap();
    for x in [0.5, 2.0, 7.0] {
        assert!((model.potential(x).unwrap() - x * x / 32.0).abs() < 1e-14);
    }
    for n in 0..6 {
        let gap = model.analytic_energy(n + 1).unwrap() - model.analytic_energy(n).unwrap();
        assert!((gap - 0.5).abs() < 1e-15);
    }
}

#[test]
fn parameter_ranges_are_enforced() {
    let e = PotentialModel::new(&FamilySpec::with(Family::Morse, 1.0, 4.0, 4.0, None), unit((0.0, 1.0)), bdd());
    assert!(matches!(e, Err(Error::Parameter(msg)) if msg.contains("bN")));
    let e = FamilySpec::coulomb(1.0, 0.0).trig().resolve();
    assert!(matches!(e, Err(Error::Parameter(msg)) if msg.contains("trigonometric")));
    let e = FamilySpec::with(Family::RosenMorse, 1.0, 1.0, 1.0, None).resolve();
    assert!(matches!(e, Err(Error::Parameter(msg)) if msg.contains("`j`")));
    let e = FamilySpec::with(Family::Morse, 1.0, -1.0, 0.4, None).resolve();
    assert!(matches!(e, Err(Error::Parameter(msg)) if msg.contains("no bound state")));
    let e = FamilySpec::with(Family::Morse, 1.0, -4.0, 4.0, Some(1.0)).resolve();
    assert!(matches!(e, Err(Error::Parameter(msg)) if msg.contains("not a parameter")));
}

#[test]
fn pt_scarf_is_complex() {
    let spec = FamilySpec::with(Family::PtScarf, 1.0, 1.0, 3.0, None);
    let model = PotentialModel::new(&spec, unit((-5.0, 5.0)), bdd()).unwrap();
    assert!(model.is_complex());
    assert_eq!(model.potential(1.0).unwrap_err(), Error::ComplexModel);
    assert!(model.potential_complex(1.0).unwrap().im.abs() > 0.1);
    let grid = Grid::new(-4.0, 4.0, 1000).unwrap();
    assert!(consistency_check(&model, &grid).unwrap() <= 1e-10);
    assert_eq!(model.analytic_energy(0).unwrap(), -25.0 / 8.0);
}

#[test]
fn lambda_residuals() {
    let samples: Vec<f64> = (1..50).map(|i| 0.1 * i as f64).collect();
    for (spec, alpha) in [
        (FamilySpec::coulomb(1.0, 0.0), 1.0),
        (FamilySpec::oscillator(0.5, 0.0), 1.0),
        (FamilySpec::with(Family::Morse, 1.7, -3.0, 2.0, None), 1.7),
    ] {
        let model = PotentialModel::new(&spec, unit((0.0, 1.0)), bdd()).unwrap();
        let res = lambda_condition_residual(model.selector(), &samples).unwrap();
        assert!(res < 1e-13, "{spec:?}: {res} ({alpha})");
    }
    // stored λ₂ = 1 would leave |α² − 1|
    let sel = FamilySelector {
        family: Family::Morse,
        trig: false,
        map: CoordinateMap::Exponential { alpha: 1.7 },
        route: SelectorRoute::Lambda { lambda: [0.0, 0.0, 1.0] },
    };
    assert!((lambda_condition_residual(&sel, &samples).unwrap() - (1.7f64 * 1.7 - 1.0)).abs() < 1e-12);
    let gpt =
        PotentialModel::new(&FamilySpec::with(Family::GenPoschlTeller, 1.0, 6.0, 2.0, None), unit((0.0, 1.0)), bdd())
            .unwrap();
    assert_eq!(lambda_condition_residual(gpt.selector(), &samples).unwrap_err(), Error::WrongClass);
}

#[test]
fn trig_forms_continue_hyperbolic_forms() {
    let i = Complex64::new(0.0, 1.0);
    let (al, b, n, j) = (0.8, 1.7, 1.1, 0.6);
    let jj = j * (j + 1.0);
    for u in [0.2, 0.5, 1.1, 1.6] {
        for (hyp, trig, b_cont) in [
            (Family::PoschlTeller, Family::PoschlTeller, Complex64::from(b)),
            (Family::GenPoschlTeller, Family::GenPoschlTeller, Complex64::from(b)),
            (Family::PtScarf, Family::Scarf, Complex64::from(b)),
            (Family::Eckart, Family::Eckart, i * b),
            (Family::RosenMorse, Family::RosenMorse, i * b),
        ] {
            let continued = hyperbolic_potential(hyp, i * al, b_cont, n, jj, u);
            let real = trig_potential(trig, al, b, n, jj, u);
            assert!((continued - real).norm() < 1e-12 * (1.0 + real.abs()), "{hyp} u={u}");
        }
    }
}

#[test]
fn scarf_triple_is_isospectral() {
    let mk = |fam, n| FamilySpec::with(fam, 0.9, 3.0, n, None).resolve().unwrap();
    let (scarf, pts, gpt) = (
        mk(Family::Scarf, 2.5),
        mk(Family::PtScarf, 2.5),
        FamilySpec::with(Family::GenPoschlTeller, 0.9, 6.0, 2.0, None).resolve().unwrap(),
    );
    for j in [-0.25f64, 0.0, 0.5, 1.3, 2.0] {
        let e = -0.9f64.powi(2) / 8.0 * (1.0 + 2.0 * j).powi(2);
        for p in [&scarf, &pts, &gpt] {
            assert!((p.energy(p.b, p.n, j) - e).abs() < 1e-15);
        }
    }
}

#[test]
fn analytic_spectra_ignore_the_mass() {
    let kinds = [
        MassKind::Constant { m0: 1.0 },
        MassKind::Exponential { m0: 1.0, lambda: 0.2 },
        MassKind::Soliton { m0: 1.0, lambda: 0.1 },
    ];
    for spec in [FamilySpec::coulomb(1.0, 0.0), morse()] {
        let spectra: Vec<Vec<f64>> = kinds
            .iter()
            .map(|&k| {
                let m = MassProfile::new(k, (-1.0, 1.0)).unwrap();
                let model = PotentialModel::new(&spec, m, bdd()).unwrap();
                model.analytic_levels(4).iter().map(|l| l.energy).collect()
            })
            .collect();
        assert!(spectra.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn bound_spectra_increase() {
    let cases = [
        FamilySpec::coulomb(1.0, 0.0),
        morse(),
        FamilySpec::with(Family::PoschlTeller, 1.0, 6.0, 2.0, None),
        FamilySpec::with(Family::GenPoschlTeller, 1.0, 6.0, 2.0, None),
        FamilySpec::with(Family::Scarf, 1.0, 1.0, 3.0, None),
        FamilySpec::with(Family::Eckart, 0.2, 20.0, 3.0, Some(0.0)),
        FamilySpec::with(Family::Hulthen, 0.5, 20.0, 1.0, Some(0.0)),
        FamilySpec::with(Family::RosenMorse, 1.0, 1.0, 1.0, Some(5.0)),
        FamilySpec::with(Family::PoschlTeller, 1.0, 3.0, 1.0, None).trig(),
        FamilySpec::with(Family::Eckart, 1.0, 2.0, 1.0, Some(0.0)).trig(),
    ];
    for spec in cases {
        let p = spec.resolve().unwrap();
        let levels: Vec<f64> = (0..8).map_while(|n| p.level(n)).map(|l| l.energy).collect();
        assert!(!levels.is_empty(), "{spec:?}");
        assert!(levels.windows(2).all(|w| w[1] > w[0]), "{spec:?}: {levels:?}");
        if let Some(t) = p.continuum_threshold() {
            assert!(levels.iter().all(|&e| e < t), "{spec:?}: {levels:?} vs {t}");
        }
    }
}

/// Window of `u` used for the pointwise checks: the default domain clipped to `|α u| ≤ 6`
/// and pulled in from both ends.
fn check_window(p: &FamilyParams) -> (f64, f64) {
    let (lo, hi) = p.default_u_domain();
    let cap = 6.0 / p.alpha;
    let (lo, hi) = (lo.max(-cap), hi.min(cap));
    let pad = 0.03 * (hi - lo);
    (lo + pad, hi - pad)
}

pub(crate) fn catalog() -> Vec<FamilySpec> {
    vec![
        FamilySpec::coulomb(1.0, 0.5),
        FamilySpec::oscillator(0.6, 0.3),
        FamilySpec::with(Family::Morse, 0.8, -3.0, 2.5, None),
        FamilySpec::with(Family::PoschlTeller, 0.7, 6.3, 2.2, None),
        FamilySpec::with(Family::PoschlTeller, 0.7, 3.3, 0.9, None).trig(),
        FamilySpec::with(Family::GenPoschlTeller, 0.9, 6.2, 2.4, None),
        FamilySpec::with(Family::GenPoschlTeller, 0.9, 3.2, 0.8, None).trig(),
        FamilySpec::with(Family::Scarf, 0.6, 1.4, 2.3, None),
        FamilySpec::with(Family::Scarf, 0.6, 1.4, 1.3, None).trig(),
        FamilySpec::with(Family::Eckart, 0.5, 12.0, 1.1, Some(0.4)),
        FamilySpec::with(Family::Eckart, 0.5, 1.5, 1.1, Some(0.4)).trig(),
        FamilySpec::with(Family::Hulthen, 0.5, 12.0, 1.1, Some(0.4)),
        FamilySpec::with(Family::RosenMorse, 0.7, 1.5, 1.1, Some(3.0)),
        FamilySpec::with(Family::RosenMorse, 0.7, 1.5, 1.1, Some(3.0)).trig(),
    ]
}

#[test]
fn every_family_agrees_with_master_formula() {
    let kinds = [
        (MassKind::Constant { m0: 1.0 }, 1e-10),
        (MassKind::Exponential { m0: 1.0, lambda: 0.2 }, 1e-8),
        (MassKind::Soliton { m0: 1.0, lambda: 0.1 }, 1e-8),
        (MassKind::Rational { m0: 1.0, alpha: 2.0 }, 1e-8),
    ];
    for spec in catalog() {
        let p = spec.resolve().unwrap();
        let (u0, u1) = check_window(&p);
        for (kind, tol) in kinds {
            let mass = MassProfile::covering(kind, (u0, u1)).unwrap();
            let model = PotentialModel::new(&spec, mass, OrderingPreset::ZhuKroemer.params()).unwrap();
            let (x0, x1) = (
                model.mass().inverse_mapped_coordinate(u0).unwrap(),
                model.mass().inverse_mapped_coordinate(u1).unwrap(),
            );
            let grid = Grid::new(x0, x1, 1000).unwrap();
            let dev = consistency_check(&model, &grid).unwrap();
            assert!(dev <= tol, "{spec:?} on {kind}: {dev:e}");
        }
    }
}

#[test]
fn suppressing_v_m_removes_exactly_v_m() {
    let mass = MassProfile::new(MassKind::Exponential { m0: 1.0, lambda: 0.5 }, (-2.0, 10.0)).unwrap();
    let ord = OrderingPreset::GoraWilliams.params();
    let model = PotentialModel::new(&morse(), mass.clone(), ord).unwrap();
    let plain = model.clone().with_v_m_suppressed(true);
    for x in [-1.0, 0.5, 3.0] {
        let d = model.potential(x).unwrap() - plain.potential(x).unwrap();
        assert!((d - crate::mass::v_m(&mass, &ord, x).unwrap()).abs() < 1e-14);
    }
}

#[test]
fn reference_lists_every_family() {
    let r = family_reference();
    assert_eq!(r.len(), 10);
    assert_eq!(r.iter().filter(|f| f.trig.is_some()).count(), 5);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json[2]["family"], "morse");
    assert!(json[2]["hyperbolic"]["energy"].as_str().unwrap().contains("alpha^2/8"));
}

#[test]
fn spec_round_trips_through_json() {
    let s: FamilySpec =
        serde_json::from_str(r#"{"family": "morse", "alpha": 1.0, "b": -4, "N": 4, "j": null, "trig": false}"#)
            .unwrap();
    assert_eq!(s, morse());
    assert!(serde_json::from_str::<FamilySpec>(r#"{"family": "morse", "beta": 1}"#).is_err());
    let back: FamilySpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}
