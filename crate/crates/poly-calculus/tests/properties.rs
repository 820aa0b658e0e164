use hyperspherical_grid::{make_direction_set, RadialGrid, SphericalGrid};
use once_cell::sync::Lazy;
use poly_calculus::*;
use proptest::prelude::*;
use radon_engine::{radon_isotropic, IsoOptions};

static WIN: Lazy<IsotropicWindow> = Lazy::new(|| WindowSpec::new(2).build().unwrap());

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn window_spectrum_is_a_monotone_step(a in 0.0f64..1.2, b in 0.0f64..1.2) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (ka, kb) = (WIN.kappa_hat(lo), WIN.kappa_hat(hi));
        prop_assert!((0.0..=1.0).contains(&ka));
        prop_assert!(kb <= ka);
        prop_assert_eq!(WIN.kappa_hat(-lo), ka);
        if lo <= WIN.flat_radius() {
            prop_assert_eq!(ka, 1.0);
        }
        if hi >= WIN.support_radius() {
            prop_assert_eq!(kb, 0.0);
        }
    }

    #[test]
    fn window_parameters_follow_the_admissible_region(r0 in 0.0f64..1.2, width in -0.1f64..1.2) {
        let spec = WindowSpec { r0, width, cache_extent: 0.5, ..WindowSpec::new(2) };
        let flat = r0 - width / 2.0;
        let ok = width > 0.0 && flat > 0.0 && flat <= 0.5 && r0 + width / 2.0 <= 1.0;
        prop_assert_eq!(spec.build().is_ok(), ok);
    }

    #[test]
    fn dual_basis_parity(x in prop::array::uniform2(-40.0f64..40.0)) {
        let neg = [-x[0], -x[1]];
        for k in multi_indices(2, 2) {
            let sign = if k.iter().sum::<usize>() % 2 == 0 { 1.0 } else { -1.0 };
            let (a, b) = (dual_at(&WIN, &k, &x).unwrap(), dual_at(&WIN, &k, &neg).unwrap());
            prop_assert!((a - sign * b).abs() <= 1e-10);
        }
    }

    #[test]
    fn coefficient_json_is_lossless(values in prop::collection::vec(-1e6f64..1e6, 6)) {
        let p = PolyCoeffs::from_values(2, 2, &values).unwrap();
        let back = PolyCoeffs::from_json(&p.to_json()).unwrap();
        for (a, b) in back.values().iter().zip(&values) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn projector_is_idempotent(
        angle in 0.0f64..std::f64::consts::TAU,
        t in -2.0f64..2.0,
        c in prop::array::uniform3(-2.0f64..2.0),
    ) {
        let xi = [angle.cos(), angle.sin()];
        let f = move |x: &[f64]| 0.5 * (xi[0] * x[0] + xi[1] * x[1] - t).abs() + c[0] + c[1] * x[0] + c[2] * x[1];
        let p = project_poly(f, &WIN, 1).unwrap();
        let pp = project_poly(|x| p.evaluate(x), &WIN, 1).unwrap();
        for (a, b) in p.values().iter().zip(pp.values()) {
            prop_assert!((a - b).abs() <= 1e-8, "{a} {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn isotropic_sinograms_satisfy_the_range_conditions(
        x0 in prop::array::uniform2(-2.0f64..2.0),
        scale in 0.7f64..1.5,
    ) {
        let grid = SphericalGrid::new(RadialGrid::new(12.0, 2401).unwrap(), make_direction_set(2, 90).unwrap());
        let g = radon_isotropic(move |w| (-(scale * w).powi(2) / 2.0).exp(), &x0, IsoOptions::new(2))
            .unwrap()
            .sample(&grid)
            .unwrap();
        let report = range_check(&g, 3, RangeTolerances { evenness: 1e-12, moment: 1e-6 }).unwrap();
        prop_assert!(report.pass, "{}", report.to_json());
    }
}
