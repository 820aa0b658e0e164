use std::f64::consts::PI;

use hyperspherical_grid::Sinogram;
use rustfft::{num_complex::Complex64, FftPlanner};

use crate::RadonError;

/// `c_d = 1 / (2 (2 pi)^(d-1))`.
pub fn ramp_constant(d: usize) -> f64 {
    1.0 / (2.0 * (2.0 * PI).powi(d as i32 - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Taper {
    None,
    /// `cos(pi |w| / (2 w_nyquist))`.
    Cosine,
}

/// Radial filter with symbol `c_d |w|^(d-1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialFilterSpec {
    pub d: usize,
    pub pad_factor: usize,
    pub taper: Taper,
}

impl RadialFilterSpec {
    pub fn new(d: usize) -> Self {
        RadialFilterSpec { d, pad_factor: 4, taper: Taper::None }
    }

    pub fn constant(&self) -> f64 {
        ramp_constant(self.d)
    }

    fn symbol(&self, w: f64, nyquist: f64) -> f64 {
        let base = self.constant() * w.abs().powi(self.d as i32 - 1);
        match self.taper {
            Taper::None => base,
            Taper::Cosine => base * (0.5 * PI * w.abs() / nyquist).cos(),
        }
    }
}

/// Applies the ramp filter along `t` on every direction.
pub fn radial_filter(g: &Sinogram, spec: &RadialFilterSpec) -> Result<Sinogram, RadonError> {
    let grid = g.grid();
    if grid.d() != spec.d {
        return Err(RadonError::Dimension { expected: spec.d, got: grid.d() });
    }
    if spec.pad_factor == 0 {
        return Err(RadonError::Parameter("pad_factor must be at least 1".into()));
    }
    let n_t = grid.n_t();
    let len = spec.pad_factor * n_t;
    let h = grid.radial.spacing();
    let nyquist = PI / h;
    let symbol: Vec<f64> = (0..len)
        .map(|k| {
            let signed = if k <= len / 2 { k as f64 } else { k as f64 - len as f64 };
            spec.symbol(2.0 * PI * signed / (len as f64 * h), nyquist) / len as f64
        })
        .collect();

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(len);
    let inverse = planner.plan_fft_inverse(len);
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    let mut out = g.clone();
    for j in 0..grid.n_dirs() {
        for (b, &v) in buf.iter_mut().zip(g.column(j)) {
            *b = Complex64::new(v, 0.0);
        }
        buf[n_t..].iter_mut().for_each(|b| *b = Complex64::new(0.0, 0.0));
        forward.process(&mut buf);
        buf.iter_mut().zip(&symbol).for_each(|(b, &s)| *b *= s);
        inverse.process(&mut buf);
        for (o, b) in out.column_mut(j).iter_mut().zip(&buf) {
            *o = b.re;
        }
    }
    Ok(out)
}

/// `R* g(x) = sum_j w_j g(xi_j^T x, xi_j)` with linear interpolation in `t`.
pub fn backproject<P: AsRef<[f64]>>(g: &Sinogram, pts: &[P]) -> Result<Vec<f64>, RadonError> {
    let grid = g.grid();
    let d = grid.d();
    let t_max = grid.radial.t_max();
    let mut out = Vec::with_capacity(pts.len());
    for p in pts {
        let x = p.as_ref();
        if x.len() != d {
            return Err(RadonError::Dimension { expected: d, got: x.len() });
        }
        let mut acc = 0.0;
        for (j, xi) in grid.directions.iter().enumerate() {
            let t: f64 = xi.iter().zip(x).map(|(a, b)| a * b).sum();
            let v = grid.radial.interp(g.column(j), t).ok_or_else(|| RadonError::OutOfRange {
                point: x.to_vec(),
                t,
                t_max,
                dir: j,
            })?;
            acc += grid.directions.weight(j) * v;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Filtered back-projection `R* K_rad g`.
pub fn fbp<P: AsRef<[f64]>>(g: &Sinogram, pts: &[P], spec: &RadialFilterSpec) -> Result<Vec<f64>, RadonError> {
    backproject(&radial_filter(g, spec)?, pts)
}
