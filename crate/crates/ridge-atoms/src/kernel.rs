use std::f64::consts::PI;
use std::sync::Mutex;

use poly_calculus::{IsotropicWindow, PlaneQuadrature, PolyError, DEFAULT_EXTENT, TAIL_ERROR, TAIL_WARN};
use radon_engine::quad;

use crate::error::{check_unit, dot};
use crate::RidgeError;

/// Default table reach of [`MollifiedCorrections`].
pub const DEFAULT_CORR_T_MAX: f64 = 200.0;
/// Default table step of [`MollifiedCorrections`].
pub const DEFAULT_CORR_STEP: f64 = 0.005;

/// Tables of `c0 = kappa_rad * |.|/2` and `c1 = kappa_rad * sign/2` on `t >= 0`.
///
/// Both come from bounded spectral integrals,
/// `c1(t) = (1/pi) int kappa_hat(w) sin(w t) / w dw` and
/// `c0(t) = c0(0) + (1/pi) int kappa_hat(w) (1 - cos(w t)) / w^2 dw` with
/// `c0(0) = (1/pi) (1/b - int_b^1 kappa_hat(w) / w^2 dw)` for the flat radius `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct MollifiedCorrections {
    step: f64,
    c0: Vec<f64>,
    c1: Vec<f64>,
}

impl MollifiedCorrections {
    pub fn new(win: &IsotropicWindow) -> Self {
        Self::with_grid(win, DEFAULT_CORR_T_MAX, DEFAULT_CORR_STEP).expect("default correction grid is valid")
    }

    pub fn with_grid(win: &IsotropicWindow, t_max: f64, step: f64) -> Result<Self, RidgeError> {
        if !(step > 0.0 && t_max >= step && t_max.is_finite()) {
            return Err(RidgeError::Parameter(format!("correction grid t_max = {t_max}, step = {step}")));
        }
        let n = (t_max / step).round() as usize + 1;
        let (b, end) = (win.flat_radius(), win.support_radius());
        let band = quad::uniform_panels(b, end, 64, 16);
        let tail: f64 = band.nodes.iter().zip(&band.weights).map(|(&w, &wt)| wt * win.kappa_hat(w) / (w * w)).sum();
        let at_zero = (1.0 / b - tail) / PI;

        let rule = win.spectral_rule(t_max);
        let mut rows = vec![[0.0; 2]; n];
        let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(16);
        let chunk = n.div_ceil(threads);
        let rule = &rule;
        std::thread::scope(|s| {
            for (c, part) in rows.chunks_mut(chunk).enumerate() {
                s.spawn(move || {
                    for (k, row) in part.iter_mut().enumerate() {
                        let t = (c * chunk + k) as f64 * step;
                        let (mut s0, mut s1) = (0.0, 0.0);
                        for (&w, &wt) in rule.nodes.iter().zip(&rule.weights) {
                            let half = (0.5 * w * t).sin();
                            s0 += wt * 2.0 * half * half / (w * w);
                            s1 += wt * (w * t).sin() / w;
                        }
                        *row = [at_zero + s0 / PI, s1 / PI];
                    }
                });
            }
        });
        Ok(MollifiedCorrections { step, c0: rows.iter().map(|r| r[0]).collect(), c1: rows.iter().map(|r| r[1]).collect() })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Largest `|t|` covered by the tables.
    pub fn t_max(&self) -> f64 {
        (self.c0.len() - 1) as f64 * self.step
    }

    /// `c0(t)`, even; `|t|/2` beyond the table.
    pub fn c0(&self, t: f64) -> f64 {
        self.lookup(&self.c0, t.abs()).unwrap_or(0.5 * t.abs())
    }

    /// `c1(t)`, odd; `sign(t)/2` beyond the table.
    pub fn c1(&self, t: f64) -> f64 {
        t.signum() * self.lookup(&self.c1, t.abs()).unwrap_or(0.5)
    }

    fn lookup(&self, table: &[f64], t: f64) -> Option<f64> {
        let u = t / self.step;
        let i = u.floor() as usize;
        if i + 1 >= table.len() {
            return (i + 1 == table.len() && u == i as f64).then(|| table[i]);
        }
        let f = u - i as f64;
        Some(table[i] * (1.0 - f) + table[i + 1] * f)
    }
}

/// `h(x; t, xi) = |t - xi^T x|/2 - c0(t) + (xi^T x) c1(t)`.
pub fn kernel_h(x: &[f64], t: f64, xi: &[f64], corr: &MollifiedCorrections) -> f64 {
    let s = dot(xi, x);
    0.5 * (t - s).abs() - corr.c0(t) + s * corr.c1(t)
}

/// The definitional kernel `|xi^T x - t|/2 - sum_{|k| <= 1} x^k q_k(t, xi)` with
/// `q_k(t, xi) = <|xi^T . - t|/2, m*_k>` by planar quadrature.
///
/// In the frame `x = u xi + v xi_perp` the three integrals
/// `A0 = <g, kappa>`, `A1 = <g, u kappa'/r>`, `A2 = <g, v kappa'/r>` with
/// `g = |u - t|/2` do not depend on `xi`; they are cached per `t`.
pub struct KernelOracle<'a> {
    win: &'a IsotropicWindow,
    extent: f64,
    cache: Mutex<Vec<(u64, [f64; 3])>>,
}

impl<'a> KernelOracle<'a> {
    pub fn new(win: &'a IsotropicWindow) -> Result<Self, RidgeError> {
        Self::with_extent(win, DEFAULT_EXTENT)
    }

    pub fn with_extent(win: &'a IsotropicWindow, extent: f64) -> Result<Self, RidgeError> {
        if win.d() != 2 {
            return Err(RidgeError::Dimension { expected: 2, got: win.d() });
        }
        let reach = extent * std::f64::consts::SQRT_2;
        if reach > win.cache_extent() {
            return Err(PolyError::Extent { r: reach, r_max: win.cache_extent() }.into());
        }
        Ok(KernelOracle { win, extent, cache: Mutex::new(Vec::new()) })
    }

    /// `[A0, A1, A2]` at offset `t`.
    pub fn frame_integrals(&self, t: f64) -> Result<[f64; 3], RidgeError> {
        if let Some((_, a)) = self.cache.lock().unwrap().iter().find(|(k, _)| *k == t.to_bits()) {
            return Ok(*a);
        }
        let quad = PlaneQuadrature::aligned([1.0, 0.0], t, self.extent)?;
        let (mut sum, mut shell, mut mass) = ([0.0; 3], [0.0; 3], [0.0; 3]);
        quad.for_each_frame(|u, v, w, tail| {
            let rv = self.win.radial(u.hypot(v)).expect("reach checked against the cache");
            let g = 0.5 * (u - t).abs() * w;
            let terms = [g * rv.kappa, g * u * rv.first_over_r, g * v * rv.first_over_r];
            for k in 0..3 {
                sum[k] += terms[k];
                mass[k] += terms[k].abs();
                if tail {
                    shell[k] += terms[k];
                }
            }
        });
        let fraction = (0..3).map(|k| if mass[k] > 0.0 { shell[k].abs() / mass[k] } else { 0.0 }).fold(0.0, f64::max);
        if fraction > TAIL_ERROR {
            return Err(PolyError::TailMass { fraction }.into());
        }
        if fraction > TAIL_WARN {
            log::warn!("kernel oracle tail at t = {t} carries {fraction:.2e} of the integrand mass");
        }
        self.cache.lock().unwrap().push((t.to_bits(), sum));
        Ok(sum)
    }

    /// `[q_(0,0), q_(1,0), q_(0,1)]` at `(t, xi)`.
    pub fn q(&self, t: f64, xi: &[f64]) -> Result<[f64; 3], RidgeError> {
        if xi.len() != 2 {
            return Err(RidgeError::Dimension { expected: 2, got: xi.len() });
        }
        check_unit(xi)?;
        let [a0, a1, a2] = self.frame_integrals(t)?;
        let (c, s) = (xi[0], xi[1]);
        Ok([a0, -c * a1 + s * a2, -s * a1 - c * a2])
    }

    pub fn h(&self, x: &[f64], t: f64, xi: &[f64]) -> Result<f64, RidgeError> {
        if x.len() != 2 {
            return Err(RidgeError::Dimension { expected: 2, got: x.len() });
        }
        let q = self.q(t, xi)?;
        Ok(0.5 * (dot(xi, x) - t).abs() - q[0] - x[0] * q[1] - x[1] * q[2])
    }
}

/// One-off evaluation of [`KernelOracle::h`].
pub fn kernel_h_oracle(x: &[f64], t: f64, xi: &[f64], win: &IsotropicWindow) -> Result<f64, RidgeError> {
    KernelOracle::new(win)?.h(x, t, xi)
}
