use std::f64::consts::PI;

use radon_engine::bessel::{kernel_values, sphere_area};
use radon_engine::quad::{self, Rule};

use crate::PolyError;

/// Half-width of the rectangle that is mollified into the window spectrum.
pub const DEFAULT_R0: f64 = 0.75;
/// Support width of the mollifying bump.
pub const DEFAULT_WIDTH: f64 = 0.5;
/// Radius covered by the radial cache, enough for a `[-256, 256]^2` lattice.
pub const DEFAULT_CACHE_EXTENT: f64 = 366.0;
pub const DEFAULT_CACHE_STEP: f64 = 0.02;

const CDF_CELLS: usize = 4096;
const GL_ORDER: usize = 16;
/// Largest phase change `w r` allowed across one spectral panel.
const PANEL_PHASE: f64 = 8.0;
/// Minimum number of panels on the transition band of the spectrum.
const MIN_TRANSITION_PANELS: usize = 8;
const SERIES_BELOW: f64 = 0.5;

/// The bump `exp(-1 / (1 - u^2))` on `(-1, 1)`, zero elsewhere.
pub fn bump(u: f64) -> f64 {
    if u.abs() < 1.0 {
        (-1.0 / (1.0 - u * u)).exp()
    } else {
        0.0
    }
}

/// Cumulative integral of [`bump`], tabulated on equal cells with Gauss-Legendre
/// partial cells at evaluation time.
#[derive(Debug, Clone)]
struct BumpCdf {
    cum: Vec<f64>,
    base: Vec<(f64, f64)>,
}

impl BumpCdf {
    fn new() -> Self {
        let base = quad::gauss_legendre(8);
        let h = 2.0 / CDF_CELLS as f64;
        let mut cum = vec![0.0; CDF_CELLS + 1];
        let mut cdf = BumpCdf { cum: Vec::new(), base };
        for c in 0..CDF_CELLS {
            let a = -1.0 + c as f64 * h;
            cum[c + 1] = cum[c] + cdf.cell(a, a + h);
        }
        cdf.cum = cum;
        cdf
    }

    fn cell(&self, a: f64, b: f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        self.base.iter().map(|(x, w)| w * bump(mid + half * x)).sum::<f64>() * half
    }

    fn mass(&self) -> f64 {
        self.cum[CDF_CELLS]
    }

    /// Normalized distribution function.
    fn eval(&self, u: f64) -> f64 {
        if u <= -1.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        let h = 2.0 / CDF_CELLS as f64;
        let c = (((u + 1.0) / h).floor() as usize).min(CDF_CELLS - 1);
        let a = -1.0 + c as f64 * h;
        ((self.cum[c] + self.cell(a, u)) / self.mass()).clamp(0.0, 1.0)
    }
}

/// Integral of the unnormalized bump over `[-1, 1]`.
pub fn bump_mass() -> f64 {
    BumpCdf::new().mass()
}

/// Construction parameters for [`IsotropicWindow`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowSpec {
    pub d: usize,
    pub r0: f64,
    pub width: f64,
    pub cache_extent: f64,
    pub cache_step: f64,
}

impl WindowSpec {
    pub fn new(d: usize) -> Self {
        WindowSpec { d, r0: DEFAULT_R0, width: DEFAULT_WIDTH, cache_extent: DEFAULT_CACHE_EXTENT, cache_step: DEFAULT_CACHE_STEP }
    }

    pub fn build(self) -> Result<IsotropicWindow, PolyError> {
        IsotropicWindow::new(self)
    }
}

/// Isotropic function `kappa_iso` whose radial spectrum is the rectangle of
/// half-width `r0` convolved with the normalized bump of support width `width`.
///
/// The spectrum equals 1 up to `r0 - width/2` and vanishes from `r0 + width/2`.
/// Radial samples of `kappa`, `kappa'/r` and `(kappa'' - kappa'/r)/r^2` are
/// cached up to the cache extent and read by four-point Lagrange interpolation.
#[derive(Debug, Clone)]
pub struct IsotropicWindow {
    spec: WindowSpec,
    cdf: BumpCdf,
    kappa: Vec<f64>,
    first: Vec<f64>,
    second: Vec<f64>,
}

/// Radial quantities of `kappa_iso` at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialValues {
    pub kappa: f64,
    /// `kappa'(r) / r`.
    pub first_over_r: f64,
    /// `(kappa''(r) - kappa'(r)/r) / r^2`.
    pub second: f64,
}

impl RadialValues {
    pub fn derivative(&self, r: f64) -> f64 {
        self.first_over_r * r
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        self.second * r * r + self.first_over_r
    }
}

/// Window with the default parameters except `r0` and `width`.
pub fn make_iso_window(d: usize, r0: f64, width: f64) -> Result<IsotropicWindow, PolyError> {
    WindowSpec { r0, width, ..WindowSpec::new(d) }.build()
}

impl IsotropicWindow {
    fn new(spec: WindowSpec) -> Result<Self, PolyError> {
        if !(2..=3).contains(&spec.d) {
            return Err(PolyError::Parameter(format!("unsupported dimension {}", spec.d)));
        }
        let flat = spec.r0 - spec.width / 2.0;
        if !(spec.width > 0.0 && flat > 0.0 && flat <= 0.5 && spec.r0 + spec.width / 2.0 <= 1.0) {
            return Err(PolyError::Parameter(format!(
                "window r0 = {}, width = {} must give a flat part in (0, 1/2] and support within [0, 1]",
                spec.r0, spec.width
            )));
        }
        if !(spec.cache_step > 0.0 && spec.cache_extent > 2.0 * spec.cache_step) {
            return Err(PolyError::Parameter("cache extent and step must be positive".into()));
        }
        let mut win = IsotropicWindow { spec, cdf: BumpCdf::new(), kappa: Vec::new(), first: Vec::new(), second: Vec::new() };
        win.fill_cache();
        Ok(win)
    }

    fn fill_cache(&mut self) {
        let n = (self.spec.cache_extent / self.spec.cache_step).ceil() as usize + 3;
        let step = self.spec.cache_step;
        let mut rules: Vec<((usize, usize), Rule)> = Vec::new();
        for i in 0..n {
            let key = self.panel_counts(i as f64 * step);
            if rules.last().map(|(k, _)| *k) != Some(key) {
                rules.push((key, self.rule_for(key)));
            }
        }
        let mut rows = vec![[0.0; 3]; n];
        let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(16);
        let chunk = n.div_ceil(threads);
        let (this, rules) = (&*self, &rules);
        std::thread::scope(|s| {
            for (c, part) in rows.chunks_mut(chunk).enumerate() {
                s.spawn(move || {
                    for (k, row) in part.iter_mut().enumerate() {
                        let r = (c * chunk + k) as f64 * step;
                        let key = this.panel_counts(r);
                        let rule = &rules.iter().find(|(k, _)| *k == key).expect("rule cached").1;
                        *row = this.radial_with(rule, r);
                    }
                });
            }
        });
        self.kappa = rows.iter().map(|r| r[0]).collect();
        self.first = rows.iter().map(|r| r[1]).collect();
        self.second = rows.iter().map(|r| r[2]).collect();
    }

    /// `kappa`, `kappa'/r` and `(kappa'' - kappa'/r)/r^2` by spectral quadrature.
    fn radial_direct(&self, r: f64) -> [f64; 3] {
        let rule = self.spectral_rule(r);
        self.radial_with(&rule, r)
    }

    fn radial_with(&self, rule: &Rule, r: f64) -> [f64; 3] {
        let d = self.spec.d;
        let c = sphere_area(d) / (2.0 * PI).powi(d as i32);
        let mut out = [0.0; 3];
        for (&w, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let [k, b, a] = radial_kernels(d, w * r);
            let p = wt * w.powi(d as i32 - 1);
            out[0] += p * k;
            out[1] += p * w * w * b;
            out[2] += p * w.powi(4) * a;
        }
        out.map(|v| v * c)
    }

    pub fn d(&self) -> usize {
        self.spec.d
    }

    pub fn spec(&self) -> &WindowSpec {
        &self.spec
    }

    /// Radius up to which the spectrum is exactly 1.
    pub fn flat_radius(&self) -> f64 {
        self.spec.r0 - self.spec.width / 2.0
    }

    /// Radius from which the spectrum is exactly 0.
    pub fn support_radius(&self) -> f64 {
        self.spec.r0 + self.spec.width / 2.0
    }

    /// Largest radius served by the cache.
    pub fn cache_extent(&self) -> f64 {
        (self.kappa.len() - 3) as f64 * self.spec.cache_step
    }

    /// Radial spectrum `kappa_hat(|w|)`.
    pub fn kappa_hat(&self, w: f64) -> f64 {
        let w = w.abs();
        if w <= self.flat_radius() {
            return 1.0;
        }
        if w >= self.support_radius() {
            return 0.0;
        }
        let s = 2.0 / self.spec.width;
        (self.cdf.eval((w + self.spec.r0) * s) - self.cdf.eval((w - self.spec.r0) * s)).clamp(0.0, 1.0)
    }

    /// Gauss-Legendre rule on the spectral support with `kappa_hat` folded
    /// into the weights, fine enough for integrands oscillating like `cos(w reach)`.
    pub fn spectral_rule(&self, reach: f64) -> Rule {
        self.rule_for(self.panel_counts(reach))
    }

    /// Power-of-two panel counts on the flat part and on the transition band.
    fn panel_counts(&self, reach: f64) -> (usize, usize) {
        let (flat, end) = (self.flat_radius(), self.support_radius());
        let count = |len: f64, min: usize| ((reach.abs() * len / PANEL_PHASE).ceil() as usize).max(min).next_power_of_two();
        (count(flat, 1), count(end - flat, MIN_TRANSITION_PANELS))
    }

    fn rule_for(&self, (n_flat, n_band): (usize, usize)) -> Rule {
        let (flat, end) = (self.flat_radius(), self.support_radius());
        let mut rule = quad::uniform_panels(0.0, flat, n_flat, GL_ORDER);
        let band = quad::uniform_panels(flat, end, n_band, GL_ORDER);
        for (w, wt) in band.nodes.into_iter().zip(band.weights) {
            rule.nodes.push(w);
            rule.weights.push(wt * self.kappa_hat(w));
        }
        rule
    }

    /// Cached radial quantities at radius `r`.
    pub fn radial(&self, r: f64) -> Result<RadialValues, PolyError> {
        let step = self.spec.cache_step;
        let u = r.abs() / step;
        let i = u.floor() as usize;
        if i + 2 >= self.kappa.len() || !u.is_finite() {
            return Err(PolyError::Extent { r, r_max: self.cache_extent() });
        }
        let f = u - i as f64;
        let l = [
            -f * (f - 1.0) * (f - 2.0) / 6.0,
            (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0,
            -(f + 1.0) * f * (f - 2.0) / 2.0,
            (f + 1.0) * f * (f - 1.0) / 6.0,
        ];
        // The tabulated quantities are even in r, so index -1 mirrors to 1.
        let idx = [(i as isize - 1).unsigned_abs(), i, i + 1, i + 2];
        let interp = |t: &[f64]| idx.iter().zip(&l).map(|(&k, &c)| c * t[k]).sum::<f64>();
        Ok(RadialValues { kappa: interp(&self.kappa), first_over_r: interp(&self.first), second: interp(&self.second) })
    }

    /// `kappa_iso(x)`.
    pub fn kappa_iso(&self, x: &[f64]) -> Result<f64, PolyError> {
        Ok(self.radial(norm(x))?.kappa)
    }

    /// Direct spectral evaluation of the radial quantities, bypassing the cache.
    pub fn radial_exact(&self, r: f64) -> RadialValues {
        let [kappa, first_over_r, second] = self.radial_direct(r.abs());
        RadialValues { kappa, first_over_r, second }
    }

    /// One-dimensional profile `kappa_rad(t) = (1/pi) int_0^1 kappa_hat(w) cos(w t) dw`.
    pub fn kappa_rad(&self, t: f64) -> f64 {
        self.spectral_rule(t).integrate(|w| (w * t).cos()) / PI
    }
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `K(z)`, `K'(z)/z` and `(K''(z) - K'(z)/z)/z^2`.
fn radial_kernels(d: usize, z: f64) -> [f64; 3] {
    let kv = kernel_values(d, z);
    let second = if z < SERIES_BELOW { second_series(d, z) } else { (kv.d2k - kv.dk_over_z) / (z * z) };
    [kv.k, kv.dk_over_z, second]
}

/// Power series of `J_2(z)/z^2` (d = 2) or `j_2(z)/z^2` (d = 3):
/// `(1/4) sum (-z^2/4)^m / (m! (m+2)!)` and `sum (-z^2/2)^m / (m! (2m+5)!!)`.
fn second_series(d: usize, z: f64) -> f64 {
    let z2 = z * z;
    let (mut term, ratio) = if d == 2 { (0.125, -z2 / 4.0) } else { (1.0 / 15.0, -z2 / 2.0) };
    let mut sum = 0.0;
    for m in 0..8 {
        sum += term;
        let m = m as f64;
        term *= ratio / (m + 1.0) / if d == 2 { m + 3.0 } else { 2.0 * m + 7.0 };
    }
    sum
}
