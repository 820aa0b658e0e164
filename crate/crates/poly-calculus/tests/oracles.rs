//! Window, dual basis and projector against quadratures written out here.

use std::f64::consts::PI;

use hyperspherical_grid::{make_direction_set, RadialGrid, Sinogram, SinogramKind, SphericalGrid};
use once_cell::sync::Lazy;
use poly_calculus::*;
use radon_engine::{radon_isotropic, IsoOptions};

static WIN: Lazy<IsotropicWindow> = Lazy::new(|| WindowSpec::new(2).build().unwrap());

const BUMP_MASS: f64 = 0.443_993_816_168_079_44;

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(a + k as f64 * h);
    }
    s * h / 3.0
}

fn bump_oracle(u: f64) -> f64 {
    if u.abs() < 1.0 {
        (-1.0 / (1.0 - u * u)).exp()
    } else {
        0.0
    }
}

/// Rectangle of half-width `r0` convolved with the unit-mass bump of width `width`.
fn kappa_hat_oracle(w: f64, r0: f64, width: f64) -> f64 {
    let half = width / 2.0;
    let (a, b) = ((w - half).max(-r0), (w + half).min(r0));
    if a >= b {
        return 0.0;
    }
    simpson(|s| bump_oracle((w - s) / half), a, b, 4000) / (half * BUMP_MASS)
}

/// `J_n(z) = (1/pi) int_0^pi cos(n t - z sin t) dt`, spectrally accurate on a periodic grid.
fn bessel_j(n: i32, z: f64) -> f64 {
    let m = 256;
    (0..m).map(|k| {
        let t = PI * (k as f64 + 0.5) / m as f64;
        (n as f64 * t - z * t.sin()).cos()
    })
    .sum::<f64>()
        / m as f64
}

/// `kappa`, `kappa'` and `kappa''` of the default window at `r > 0` from the 2D
/// inverse Hankel transform.
fn kappa_oracle(r: f64) -> [f64; 3] {
    let n = 2000;
    let h = 1.0 / n as f64;
    let mut out = [0.0; 3];
    for i in 1..=n {
        let w = i as f64 * h;
        let c = if i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let kh = kappa_hat_oracle(w, DEFAULT_R0, DEFAULT_WIDTH);
        let (j0, j1) = (bessel_j(0, w * r), bessel_j(1, w * r));
        out[0] += c * kh * j0 * w;
        out[1] -= c * kh * j1 * w * w;
        out[2] += c * kh * (j1 / (w * r) - j0) * w * w * w;
    }
    out.map(|v| v * h / 3.0 / (2.0 * PI))
}

fn grid2(t_max: f64, n_t: usize, n_dirs: usize) -> SphericalGrid {
    SphericalGrid::new(RadialGrid::new(t_max, n_t).unwrap(), make_direction_set(2, n_dirs).unwrap())
}

#[test]
fn bump_normalization() {
    let oracle = simpson(bump_oracle, -1.0, 1.0, 200_000);
    assert!((oracle - BUMP_MASS).abs() < 1e-13);
    assert!((bump_mass() - BUMP_MASS).abs() < 1e-14);
}

#[test]
fn window_spectrum() {
    let win = &*WIN;
    assert_eq!(win.kappa_hat(0.0), 1.0);
    assert_eq!(win.flat_radius(), 0.5);
    assert_eq!(win.support_radius(), 1.0);
    for w in [0.0, 0.1, 0.25, 0.5] {
        assert_eq!(win.kappa_hat(w), 1.0);
    }
    for w in [1.0, 1.2, 7.0] {
        assert_eq!(win.kappa_hat(w), 0.0);
    }
    for w in [0.52, 0.6, 0.75, 0.81, 0.97] {
        let oracle = kappa_hat_oracle(w, DEFAULT_R0, DEFAULT_WIDTH);
        assert!((win.kappa_hat(w) - oracle).abs() < 1e-12, "w={w}");
    }
    assert!((win.kappa_hat(0.75) - 0.5).abs() < 1e-14);

    let narrow = WindowSpec { r0: 0.5, width: 0.5, cache_extent: 2.0, ..WindowSpec::new(2) }.build().unwrap();
    for w in [0.0, 0.2, 0.25] {
        assert_eq!(narrow.kappa_hat(w), 1.0);
    }
    assert!(narrow.kappa_hat(0.3) < 1.0);
    assert_eq!(narrow.kappa_hat(0.75), 0.0);
    assert!((narrow.kappa_hat(0.4) - kappa_hat_oracle(0.4, 0.5, 0.5)).abs() < 1e-12);
}

#[test]
fn window_parameters_are_validated() {
    for (r0, width) in [(0.9, 0.5), (0.2, 0.5), (0.8, 0.2), (0.5, 0.0), (0.6, -0.1)] {
        let spec = WindowSpec { r0, width, cache_extent: 1.0, ..WindowSpec::new(2) };
        assert!(matches!(spec.build(), Err(PolyError::Parameter(_))), "r0={r0} width={width}");
    }
    assert!(WindowSpec { cache_extent: 1.0, ..WindowSpec::new(4) }.build().is_err());
}

#[test]
fn kappa_profile_matches_inverse_hankel_quadrature() {
    for r in [1e-3, 0.5, 2.3, 3.7, 10.0, 25.3] {
        let [k, dk, d2k] = kappa_oracle(r);
        for rv in [WIN.radial(r).unwrap(), WIN.radial_exact(r)] {
            assert!((rv.kappa - k).abs() < 1e-10, "r={r}: {} vs {k}", rv.kappa);
            assert!((rv.derivative(r) - dk).abs() < 1e-10, "r={r}");
            assert!((rv.second_derivative(r) - d2k).abs() < 1e-10, "r={r}");
        }
    }
    assert!(matches!(WIN.radial(1e4), Err(PolyError::Extent { .. })));
}

#[test]
fn dual_basis_values() {
    let pts = [[0.0, 0.0], [1.5, -0.5], [-3.0, 4.0]];
    let k0 = dual_basis_eval(&WIN, &[0, 0], &pts).unwrap();
    for (p, v) in pts.iter().zip(&k0) {
        assert_eq!(*v, WIN.kappa_iso(p).unwrap());
    }
    // Chain rule on the oracle radial derivatives.
    for p in &pts[1..] {
        let r = p[0].hypot(p[1]);
        let [_, dk, d2k] = kappa_oracle(r);
        let (b, a) = (dk / r, (d2k - dk / r) / (r * r));
        let want = [(vec![1, 0], -b * p[0]), (vec![0, 1], -b * p[1]), (vec![2, 0], a * p[0] * p[0] + b), (vec![1, 1], a * p[0] * p[1]), (vec![0, 2], a * p[1] * p[1] + b)];
        for (k, v) in want {
            assert!((dual_at(&WIN, &k, p).unwrap() - v).abs() < 1e-10, "k={k:?} x={p:?}");
        }
    }
    assert!(matches!(dual_at(&WIN, &[2, 1], &[0.0, 0.0]), Err(PolyError::Order { .. })));
    assert!(matches!(dual_at(&WIN, &[1, 0, 0], &[0.0, 0.0]), Err(PolyError::Dimension { .. })));
}

#[test]
fn biorthogonality() {
    let g1 = biorthogonality_matrix(&WIN, 1).unwrap();
    for (k, row) in g1.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            let target = if k == n { 1.0 } else { 0.0 };
            assert!((v - target).abs() <= 1e-5, "G[{k}][{n}] = {v}");
            if (k == 0) != (n == 0) {
                assert!(v.abs() <= 1e-12, "parity entry G[{k}][{n}] = {v}");
            }
        }
    }
    let g0 = biorthogonality_matrix(&WIN, 0).unwrap();
    assert!((g0[0][0] - 1.0).abs() <= 1e-6);
}

#[test]
fn first_order_pairing_on_a_wide_square() {
    // The flux of x_1 kappa through the edge of the square decays slowly, so
    // this pairing needs twice the default extent to reach 1e-6.
    let wide = WindowSpec { cache_extent: 725.0, ..WindowSpec::new(2) }.build().unwrap();
    let quad = PlaneQuadrature::new(512.0).unwrap();
    let p = pairings(|x| x[0], &wide, 1, &quad).unwrap();
    assert!((p.raw[1] - 1.0).abs() <= 1e-6, "{}", p.raw[1]);
}

#[test]
fn projector_examples() {
    let affine = project_poly(|x| 3.0 + 2.0 * x[0] - x[1], &WIN, 1).unwrap();
    for (got, want) in affine.values().iter().zip([3.0, 2.0, -1.0]) {
        assert!((got - want).abs() <= 1e-5);
    }
    let quadratic = project_poly(|x| x[0] * x[1], &WIN, 1).unwrap();
    assert!(quadratic.max_abs() <= 1e-5);
    let half_abs = project_poly(|x| 0.5 * x[0].abs(), &WIN, 1).unwrap();
    assert!(half_abs.get(&[1, 0]).abs() <= 1e-8);
    assert!(half_abs.get(&[0, 1]).abs() <= 1e-8);
    assert!(project_poly(|_| 1.0, &WIN, 3).is_err());
}

#[test]
fn projection_of_half_abs_matches_the_spectral_value() {
    // <|x_1|/2, kappa_iso> = (1/pi) (1/b - int_b^1 kappa_hat / w^2) with b the flat radius.
    let b = WIN.flat_radius();
    let tail = simpson(|w| kappa_hat_oracle(w, DEFAULT_R0, DEFAULT_WIDTH) / (w * w), b, 1.0, 4000);
    let exact = (1.0 / b - tail) / PI;
    let quad = PlaneQuadrature::aligned([1.0, 0.0], 0.0, DEFAULT_EXTENT).unwrap();
    let p = project_poly_with(|x| 0.5 * x[0].abs(), &WIN, 1, &quad).unwrap();
    assert!((p.raw[0] - exact).abs() <= 2e-5, "{} vs {exact}", p.raw[0]);
    assert!(p.tail_fraction < TAIL_ERROR);
}

#[test]
fn heavy_tails_are_rejected() {
    let quad = PlaneQuadrature::new(24.0).unwrap();
    let err = project_poly_with(|x| x[0] * x[0] * x[1] * x[1], &WIN, 1, &quad).unwrap_err();
    assert!(matches!(err, PolyError::TailMass { .. }), "{err}");
}

#[test]
fn coefficients_round_trip_through_json() {
    let p = PolyCoeffs::from_values(2, 1, &[0.1, -1.0 / 3.0, 2.0f64.sqrt()]).unwrap();
    let json = p.to_json();
    assert!(json.starts_with("{\"n0\":1,\"entries\":[{\"k\":[0,0],\"b\":0.1}"));
    let back = PolyCoeffs::from_json(&json).unwrap();
    assert_eq!(back, p);
    for (a, b) in back.values().iter().zip(p.values()) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
    assert!((p.evaluate(&[2.0, 3.0]) - (0.1 - 2.0 / 3.0 + 3.0 * 2.0f64.sqrt())).abs() < 1e-15);
    assert!((p.norm() - (0.01 + 1.0 / 9.0 + 2.0f64).sqrt()).abs() < 1e-15);
    assert!(PolyCoeffs::from_json("{\"n0\":0,\"entries\":[{\"k\":[1,0],\"b\":1.0}]}").is_err());
}

#[test]
fn moments_of_gaussian_sinograms() {
    let grid = grid2(10.0, 2001, 64);
    let centered = radon_isotropic(|w| (-w * w / 2.0).exp(), &[0.0, 0.0], IsoOptions::new(2)).unwrap().sample(&grid).unwrap();
    for v in moments(&centered, 0) {
        assert!((v - 1.0).abs() <= 1e-9);
    }
    let shifted = radon_isotropic(|w| (-w * w / 2.0).exp(), &[2.0, 2.0], IsoOptions::new(2)).unwrap().sample(&grid).unwrap();
    for (xi, v) in grid.directions.iter().zip(moments(&shifted, 1)) {
        assert!((v - 2.0 * xi[0] - 2.0 * xi[1]).abs() <= 1e-6);
    }
    let odd = Sinogram::from_fn(grid, SinogramKind::Function, |t, _| t * (-t * t).exp());
    for v in moments(&odd, 0) {
        assert!(v.abs() <= 1e-15);
    }
}

#[test]
fn range_conditions() {
    let tol = RangeTolerances { evenness: 1e-12, moment: 1e-6 };
    let grid = grid2(10.0, 2001, 180);
    for x0 in [[0.0, 0.0], [2.0, 2.0]] {
        let g = radon_isotropic(|w| (-w * w / 2.0).exp(), &x0, IsoOptions::new(2)).unwrap().sample(&grid).unwrap();
        let report = range_check(&g, 3, tol).unwrap();
        assert!(report.pass, "{}", report.to_json());
    }

    // Phi_1(theta) = (sqrt(pi)/2) cos(3 theta) is orthogonal to cos and sin.
    let counter = Sinogram::from_fn(grid.clone(), SinogramKind::Function, |t, xi| {
        let theta = xi[1].atan2(xi[0]);
        t * (3.0 * theta).cos() * (-t * t).exp()
    });
    let report = range_check(&counter, 1, tol).unwrap();
    assert!(report.evenness_residual <= 1e-12);
    assert!(report.moments[1].residual > 0.1);
    assert!((report.moments[1].residual - PI.sqrt() / 2.0).abs() < 1e-6);
    assert!(!report.pass);

    let mut spiked = radon_isotropic(|w| (-w * w / 2.0).exp(), &[0.5, -1.0], IsoOptions::new(2)).unwrap().sample(&grid).unwrap();
    let base = spiked.get(700, 17);
    spiked.set(700, 17, base + 3.5e-4);
    let report = range_check(&spiked, 0, tol).unwrap();
    assert!((report.evenness_residual - 3.5e-4).abs() <= 1e-12);
    assert!(!report.evenness_pass);
}
