use std::f64::consts::PI;

use hyperspherical_grid::{Sinogram, SinogramKind, SphericalGrid};
use rustfft::num_complex::Complex64;

use crate::{bessel, quad, ramp_constant, RadonError};

/// Steps between exact resynchronizations of the cosine recurrence.
const RESYNC: usize = 256;

/// Tabulation settings for [`radon_isotropic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoOptions {
    pub d: usize,
    /// Spectrum is treated as zero beyond this frequency.
    pub omega_max: f64,
    /// Apply the ramp symbol `c_d |w|^(d-1)` to the spectrum.
    pub filtered: bool,
    /// Profile is tabulated on `[0, t_extent]` and zero beyond.
    pub t_extent: f64,
    pub step: f64,
}

impl IsoOptions {
    pub fn new(d: usize) -> Self {
        IsoOptions { d, omega_max: 16.0, filtered: false, t_extent: 32.0, step: 1.0 / 400.0 }
    }

    pub fn filtered(mut self, on: bool) -> Self {
        self.filtered = on;
        self
    }
}

/// `(t, xi) -> rho(t - xi^T x0)` for an isotropic function with radial spectrum `rho_hat`.
#[derive(Debug, Clone)]
pub struct IsotropicSinogram {
    d: usize,
    x0: Vec<f64>,
    step: f64,
    table: Vec<f64>,
}

/// Builds the sinogram of `f(x) = rho_iso(x - x0)` from the radial spectrum of `rho_iso`.
///
/// The profile `rho(s) = (1/pi) int_0^W rho_hat(w) cos(w s) dw` is the
/// inverse 1D transform of the spectrum, tabulated once.
pub fn radon_isotropic<F>(rho_hat: F, x0: &[f64], opts: IsoOptions) -> Result<IsotropicSinogram, RadonError>
where
    F: Fn(f64) -> f64,
{
    let d = opts.d;
    if !(2..=3).contains(&d) {
        return Err(RadonError::Parameter(format!("unsupported dimension {d}")));
    }
    if x0.len() != d {
        return Err(RadonError::Dimension { expected: d, got: x0.len() });
    }
    if !(opts.omega_max > 0.0 && opts.t_extent > 0.0 && opts.step > 0.0) {
        return Err(RadonError::Parameter("omega_max, t_extent and step must be positive".into()));
    }
    let n_panels = (opts.omega_max * opts.t_extent / 4.0).ceil() as usize + 8;
    let rule = quad::uniform_panels(0.0, opts.omega_max, n_panels, 16);

    let mut asym: f64 = 0.0;
    let mut amp = Vec::with_capacity(rule.len());
    for (&w, &wt) in rule.nodes.iter().zip(&rule.weights) {
        let (p, m) = (rho_hat(w), rho_hat(-w));
        asym = asym.max((p - m).abs() / p.abs().max(1.0));
        let symbol = if opts.filtered { ramp_constant(d) * w.powi(d as i32 - 1) } else { 1.0 };
        amp.push(wt * p * symbol / PI);
    }
    if asym > 1e-12 {
        return Err(RadonError::NotEven(asym));
    }

    let n = (opts.t_extent / opts.step).ceil() as usize + 4;
    let mut table = vec![0.0; n];
    for (&w, &a) in rule.nodes.iter().zip(&amp) {
        let rot = Complex64::from_polar(1.0, w * opts.step);
        let mut z = Complex64::new(1.0, 0.0);
        for (k, slot) in table.iter_mut().enumerate() {
            if k % RESYNC == 0 {
                z = Complex64::from_polar(1.0, w * opts.step * k as f64);
            }
            *slot += a * z.re;
            z *= rot;
        }
    }
    Ok(IsotropicSinogram { d, x0: x0.to_vec(), step: opts.step, table })
}

impl IsotropicSinogram {
    /// Radial profile `rho(s)`, cubic interpolation of the table.
    pub fn profile(&self, s: f64) -> f64 {
        let u = s.abs() / self.step;
        let i = u.floor() as usize;
        if i + 2 >= self.table.len() {
            return 0.0;
        }
        let f = u - i as f64;
        let at = |k: isize| self.table[k.unsigned_abs()];
        let k = i as isize;
        let (pm, p0, p1, p2) = (at(k - 1), at(k), at(k + 1), at(k + 2));
        // Four-point Lagrange interpolation on nodes -1, 0, 1, 2.
        -f * (f - 1.0) * (f - 2.0) / 6.0 * pm + (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0 * p0
            - (f + 1.0) * f * (f - 2.0) / 2.0 * p1
            + (f + 1.0) * f * (f - 1.0) / 6.0 * p2
    }

    pub fn eval(&self, t: f64, xi: &[f64]) -> f64 {
        let shift: f64 = xi.iter().zip(&self.x0).map(|(a, b)| a * b).sum();
        self.profile(t - shift)
    }

    pub fn sample(&self, grid: &SphericalGrid) -> Result<Sinogram, RadonError> {
        if grid.d() != self.d {
            return Err(RadonError::Dimension { expected: self.d, got: grid.d() });
        }
        Ok(Sinogram::from_fn(grid.clone(), SinogramKind::Function, |t, xi| self.eval(t, xi)))
    }
}

/// Radial spectrum values with the fraction of `|rho|` mass in the outer tenth of the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelProfile {
    pub values: Vec<f64>,
    pub tail_fraction: f64,
}

/// `rho_hat(w) = S_d int rho(r) K_d(w r) r^(d-1) dr` by the trapezoid rule
/// (Simpson on uniform, odd-length samples).
pub fn hankel_profile(r: &[f64], rho: &[f64], d: usize, omegas: &[f64]) -> Result<HankelProfile, RadonError> {
    if !(2..=3).contains(&d) {
        return Err(RadonError::Parameter(format!("unsupported dimension {d}")));
    }
    if r.len() != rho.len() || r.len() < 2 {
        return Err(RadonError::Parameter("radial samples and values must match and have length >= 2".into()));
    }
    if r.windows(2).any(|w| !(w[1] > w[0])) || r[0] < 0.0 {
        return Err(RadonError::Parameter("radial samples must be non-negative and increasing".into()));
    }
    let weights = radial_weights(r);
    let jac: Vec<f64> = r.iter().zip(&weights).zip(rho).map(|((&x, &w), &v)| w * v * x.powi(d as i32 - 1)).collect();

    let total: f64 = jac.iter().map(|v| v.abs()).sum();
    let cut = r[0] + 0.9 * (r[r.len() - 1] - r[0]);
    let tail: f64 = r.iter().zip(&jac).filter(|(&x, _)| x > cut).map(|(_, v)| v.abs()).sum();
    let tail_fraction = if total > 0.0 { tail / total } else { 0.0 };
    if tail_fraction > 1e-6 {
        log::warn!("radial profile has {tail_fraction:.2e} of its mass in the outer tenth of the samples");
    }

    let area = bessel::sphere_area(d);
    let values = omegas
        .iter()
        .map(|&w| area * r.iter().zip(&jac).map(|(&x, &v)| v * bessel::kernel(d, w * x)).sum::<f64>())
        .collect();
    Ok(HankelProfile { values, tail_fraction })
}

fn radial_weights(r: &[f64]) -> Vec<f64> {
    let n = r.len();
    let h = (r[n - 1] - r[0]) / (n - 1) as f64;
    let uniform = r.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h);
    let mut w = vec![0.0; n];
    if uniform && n % 2 == 1 && n >= 3 {
        for (k, wk) in w.iter_mut().enumerate() {
            *wk = h / 3.0
                * if k == 0 || k == n - 1 {
                    1.0
                } else if k % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
        }
    } else {
        for k in 0..n - 1 {
            let dx = r[k + 1] - r[k];
            w[k] += 0.5 * dx;
            w[k + 1] += 0.5 * dx;
        }
    }
    w
}
