//! Reference values for the Radon engine, each checked against an
//! independent quadrature or closed form computed here.

use std::f64::consts::PI;

use hyperspherical_grid::{integrate, make_direction_set, RadialGrid, Sinogram, SinogramKind, SphericalGrid};
use radon_engine::*;

const FILTERED_GAUSSIAN_AT_ZERO: f64 = 0.063_493_635_934_240_97;
const FILTERED_PROFILE_AT_ZERO: f64 = 0.025_330_295_910_584_444;
const GAUSSIAN_SLICE_AT_ZERO: f64 = 0.398_942_280_401_432_7;
const GAUSSIAN_SLICE_AT_TWO: f64 = 0.053_990_966_513_188_05;
const DISK_SPECTRUM_AT_ONE: f64 = 2.764_919_374_768_337;

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(a + k as f64 * h);
    }
    s * h / 3.0
}

fn grid2(t_max: f64, n_t: usize, n_dirs: usize) -> SphericalGrid {
    SphericalGrid::new(RadialGrid::new(t_max, n_t).unwrap(), make_direction_set(2, n_dirs).unwrap())
}

fn unit_gaussian(x: &[f64]) -> f64 {
    (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp() / (2.0 * PI)
}

#[test]
fn oracle_values_are_frozen() {
    // (1/2pi) int c_2 |w| sqrt(2 pi) exp(-w^2/2) dw
    let filtered = simpson(|w| w.abs() * (2.0 * PI).sqrt() * (-w * w / 2.0).exp(), -40.0, 40.0, 80_000)
        / (4.0 * PI)
        / (2.0 * PI);
    assert!((filtered - FILTERED_GAUSSIAN_AT_ZERO).abs() < 1e-12);
    // (1/pi) int_0 c_2 w exp(-w^2/2) dw
    let profile = simpson(|w| w * (-w * w / 2.0).exp(), 0.0, 40.0, 40_000) / (4.0 * PI) / PI;
    assert!((profile - FILTERED_PROFILE_AT_ZERO).abs() < 1e-12);
    // Line integrals of the unit Gaussian along x_1 = 0 and x_1 = 2.
    for (shift, expected) in [(0.0, GAUSSIAN_SLICE_AT_ZERO), (2.0, GAUSSIAN_SLICE_AT_TWO)] {
        let v = simpson(|y| unit_gaussian(&[shift, y]), -40.0, 40.0, 40_000);
        assert!((v - expected).abs() < 1e-12);
    }
    // 2 pi J_1(1) / 1 from the power series of J_1.
    let mut j1 = 0.0;
    let mut term = 0.5;
    for m in 0..25 {
        j1 += term;
        term *= -0.25 / ((m + 1) as f64 * (m + 2) as f64);
    }
    assert!((2.0 * PI * j1 - DISK_SPECTRUM_AT_ONE).abs() < 1e-12);
}

#[test]
fn ramp_filter_of_gaussian_at_origin() {
    let grid = grid2(10.0, 2001, 4);
    let g = Sinogram::from_fn(grid.clone(), SinogramKind::Function, |t, _| (-t * t / 2.0).exp());
    let out = radial_filter(&g, &RadialFilterSpec::new(2)).unwrap();
    for j in 0..4 {
        let v = out.get(grid.radial.center(), j);
        assert!((v - FILTERED_GAUSSIAN_AT_ZERO).abs() < 1e-4, "{v}");
    }
    let zero = radial_filter(&Sinogram::zeros(grid, SinogramKind::Function), &RadialFilterSpec::new(2)).unwrap();
    assert_eq!(zero.max_abs(), 0.0);
}

#[test]
fn numeric_projection_of_gaussian() {
    let f = EuclideanField::sampled(8.0, 512, unit_gaussian).unwrap();
    let grid = grid2(6.0, 121, 16);
    let s = radon_numeric(&f, &grid).unwrap();
    let mut worst: f64 = 0.0;
    for j in 0..grid.n_dirs() {
        for i in 0..grid.n_t() {
            let t = grid.radial.t(i);
            worst = worst.max((s.get(i, j) - (-t * t / 2.0).exp() / (2.0 * PI).sqrt()).abs());
        }
    }
    assert!(worst <= 1e-4, "{worst}");
    let zero = radon_numeric(&EuclideanField::zeros(8.0, 64).unwrap(), &grid).unwrap();
    assert_eq!(zero.max_abs(), 0.0);
}

#[test]
fn numeric_projection_of_disk() {
    let f = EuclideanField::sampled(1.5, 512, |x| if x[0] * x[0] + x[1] * x[1] <= 1.0 { 1.0 } else { 0.0 }).unwrap();
    let grid = grid2(1.5, 301, 16);
    let s = radon_numeric(&f, &grid).unwrap();
    let band = 2.0 * f.spacing();
    let mut worst: f64 = 0.0;
    for j in 0..grid.n_dirs() {
        for i in 0..grid.n_t() {
            let t: f64 = grid.radial.t(i);
            if (t.abs() - 1.0).abs() <= band {
                continue;
            }
            let chord = if t.abs() <= 1.0 { 2.0 * (1.0 - t * t).sqrt() } else { 0.0 };
            worst = worst.max((s.get(i, j) - chord).abs());
        }
    }
    assert!(worst <= 2e-2, "{worst}");
}

#[test]
fn rejects_three_dimensional_projection() {
    let grid = SphericalGrid::new(RadialGrid::new(1.0, 11).unwrap(), make_direction_set(3, 10).unwrap());
    let f = EuclideanField::zeros(1.0, 8).unwrap();
    assert!(matches!(radon_numeric(&f, &grid), Err(RadonError::Dimension { .. })));
}

#[test]
fn back_projection_of_constants_and_gaussian() {
    let grid = grid2(5.0, 201, 90);
    let one = Sinogram::from_fn(grid.clone(), SinogramKind::Function, |_, _| 1.0);
    for v in backproject(&one, &[[0.5, 0.5], [-1.0, 2.0]]).unwrap() {
        assert!((v - 2.0 * PI).abs() < 1e-12);
    }
    let g = Sinogram::from_fn(grid, SinogramKind::Function, |t, _| (-t * t / 2.0).exp());
    assert!((backproject(&g, &[[0.0, 0.0]]).unwrap()[0] - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn fbp_recovers_shifted_gaussian_peak() {
    let grid = grid2(10.0, 801, 360);
    let iso = radon_isotropic(|w| (-w * w / 2.0).exp(), &[2.0, 2.0], IsoOptions::new(2)).unwrap();
    let g = iso.sample(&grid).unwrap();
    let n = 64;
    let step = 8.0 / (n - 1) as f64;
    let pts: Vec<[f64; 2]> =
        (0..n * n).map(|k| [-4.0 + (k % n) as f64 * step, -4.0 + (k / n) as f64 * step]).collect();
    let rec = fbp(&g, &pts, &RadialFilterSpec::new(2)).unwrap();
    let best = (0..rec.len()).max_by(|&a, &b| rec[a].total_cmp(&rec[b])).unwrap();
    assert!((pts[best][0] - 2.0).abs() <= step && (pts[best][1] - 2.0).abs() <= step, "{:?}", pts[best]);
    let zero = fbp(&Sinogram::zeros(grid, SinogramKind::Function), &pts[..4], &RadialFilterSpec::new(2)).unwrap();
    assert!(zero.iter().all(|v| *v == 0.0));
}

#[test]
fn fourier_slice_residuals() {
    let gauss = EuclideanField::sampled(8.0, 512, unit_gaussian).unwrap();
    let disk = EuclideanField::sampled(1.5, 512, |x| if x[0] * x[0] + x[1] * x[1] <= 1.0 { 1.0 } else { 0.0 }).unwrap();
    for theta in [0.0, 0.3, 1.1] {
        let xi = [f64::cos(theta), f64::sin(theta)];
        assert!(fourier_slice_check(&gauss, &xi, 6.0).unwrap() <= 1e-3);
        assert!(fourier_slice_check(&disk, &xi, 10.0).unwrap() <= 5e-2);
    }
    assert_eq!(fourier_slice_check(&EuclideanField::zeros(2.0, 32).unwrap(), &[1.0, 0.0], 6.0).unwrap(), 0.0);
}

#[test]
fn isotropic_profiles() {
    let iso = radon_isotropic(|w| (-w * w / 2.0).exp(), &[0.0, 0.0], IsoOptions::new(2)).unwrap();
    assert!((iso.profile(0.0) - GAUSSIAN_SLICE_AT_ZERO).abs() < 1e-9);
    for t in [0.1234, 1.0, 2.5, 4.0] {
        assert!((iso.profile(t) - (-t * t / 2.0).exp() / (2.0 * PI).sqrt()).abs() < 1e-9);
    }
    let shifted = radon_isotropic(|w| (-w * w / 2.0).exp(), &[2.0, 2.0], IsoOptions::new(2)).unwrap();
    assert!((shifted.eval(2.0, &[1.0, 0.0]) - GAUSSIAN_SLICE_AT_ZERO).abs() < 1e-9);
    let filtered = radon_isotropic(|w| (-w * w / 2.0).exp(), &[0.0, 0.0], IsoOptions::new(2).filtered(true)).unwrap();
    assert!((filtered.profile(0.0) - FILTERED_PROFILE_AT_ZERO).abs() < 1e-6);
    assert!(matches!(
        radon_isotropic(|w| (-(w - 0.1) * (w - 0.1)).exp(), &[0.0, 0.0], IsoOptions::new(2)),
        Err(RadonError::NotEven(_))
    ));
}

#[test]
fn hankel_pairs() {
    let r: Vec<f64> = (0..=1200).map(|k| k as f64 * 0.01).collect();
    let rho: Vec<f64> = r.iter().map(|x| (-x * x / 2.0).exp() / (2.0 * PI)).collect();
    let omegas: Vec<f64> = (0..=60).map(|k| k as f64 * 0.1).collect();
    let out = hankel_profile(&r, &rho, 2, &omegas).unwrap();
    for (w, v) in omegas.iter().zip(&out.values) {
        assert!((v - (-w * w / 2.0).exp()).abs() <= 1e-6, "w={w}");
    }
    assert!(out.tail_fraction < 1e-6);

    let zeros = hankel_profile(&r, &vec![0.0; r.len()], 2, &omegas).unwrap();
    assert!(zeros.values.iter().all(|v| *v == 0.0));

    let disk_r: Vec<f64> = (0..=2000).map(|k| k as f64 * 0.0005).collect();
    let disk = hankel_profile(&disk_r, &vec![1.0; disk_r.len()], 2, &[1.0]).unwrap();
    assert!((disk.values[0] - DISK_SPECTRUM_AT_ONE).abs() <= 1e-3);

    // d = 3: the unit Gaussian has spectrum exp(-w^2/2) as well.
    let rho3: Vec<f64> = r.iter().map(|x| (-x * x / 2.0).exp() / (2.0 * PI).powf(1.5)).collect();
    let out3 = hankel_profile(&r, &rho3, 3, &omegas).unwrap();
    for (w, v) in omegas.iter().zip(&out3.values) {
        assert!((v - (-w * w / 2.0).exp()).abs() <= 1e-6, "w={w}");
    }
}

#[test]
fn gaussian_blob_mass_is_preserved() {
    let id = [1.0, 0.0, 0.0, 1.0];
    let grid = grid2(10.0, 2001, 360);
    let half = gaussian_blob_sinogram(0.5, &[0.0, 0.0], &id).unwrap().sample(&grid).unwrap();
    assert!((integrate(&half) - 2.0 * PI).abs() <= 1e-6);

    // sigma reaches 1/eps, so the narrow blobs need a wide t range.
    let wide = grid2(80.0, 1601, 360);
    for eps in [1.0, 0.5, 0.25, 0.125] {
        let s = gaussian_blob_sinogram(eps, &[0.0, 0.0], &id).unwrap().sample(&wide).unwrap();
        assert!((integrate(&s) - 2.0 * PI).abs() <= 1e-6, "eps={eps}");
    }
}

#[test]
fn figure_one_localization() {
    let id = [1.0, 0.0, 0.0, 1.0];
    let grid = grid2(8.0, 401, 360);
    let mut previous = 0.0;
    for eps in [1.0, 0.5, 0.25, 0.125] {
        let s = gaussian_blob_sinogram(eps, &[2.0, 2.0], &id).unwrap().sample(&grid).unwrap();
        let (mut bi, mut bj, mut peak) = (0, 0, f64::NEG_INFINITY);
        for j in 0..grid.n_dirs() {
            for i in 0..grid.n_t() {
                if s.get(i, j) > peak {
                    (bi, bj, peak) = (i, j, s.get(i, j));
                }
            }
        }
        assert_eq!((grid.radial.t(bi), bj), (2.0, 0), "eps={eps}");
        assert!(peak > previous);
        previous = peak;
    }
}

#[test]
fn weak_back_projection_of_atoms() {
    let phi = EuclideanField::sampled(8.0, 512, unit_gaussian).unwrap();
    let one = DiracAtomList::new(vec![DiracAtom::new(1.0, 0.0, &[1.0, 0.0])]).unwrap();
    assert!((backproject_measure_weak(&one, &phi).unwrap() - GAUSSIAN_SLICE_AT_ZERO).abs() <= 1e-4);
    let off = DiracAtomList::new(vec![DiracAtom::new(1.0, 2.0, &[1.0, 0.0])]).unwrap();
    assert!((backproject_measure_weak(&off, &phi).unwrap() - GAUSSIAN_SLICE_AT_TWO).abs() <= 1e-4);
    assert_eq!(backproject_measure_weak(&DiracAtomList::default(), &phi).unwrap(), 0.0);
}

#[test]
fn witness_bounds() {
    let grid = grid2(8.0, 1601, 720);
    let single = DiracAtomList::new(vec![DiracAtom::new(1.0, 0.7, &[0.6, 0.8])]).unwrap();
    for eps in [1.0, 0.5, 0.125] {
        let w = measure_norm_witness(&single, eps, &grid).unwrap();
        assert_eq!(w.lower_bound, 1.0);
    }

    let pair = DiracAtomList::new(vec![
        DiracAtom::new(0.5, 1.0, &[1.0, 0.0]),
        DiracAtom::new(0.5, -1.0, &[-1.0, 0.0]),
    ])
    .unwrap();
    assert_eq!(pair.len(), 1);
    assert_eq!(measure_norm_witness(&pair, 0.25, &grid).unwrap().lower_bound, 1.0);

    let two = DiracAtomList::new(vec![DiracAtom::new(1.0, 0.0, &[1.0, 0.0]), DiracAtom::new(-2.0, 3.0, &[0.0, 1.0])])
        .unwrap();
    let w = measure_norm_witness(&two, 0.125, &grid).unwrap();
    assert!(w.lower_bound >= 2.9, "{w:?}");
    assert!(w.sup_norm <= 1.0 + 1e-6);
    assert!(w.lower_bound <= two.norm());
}
