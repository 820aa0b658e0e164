use crate::GridError;

/// Symmetric uniform samples `t_i = (i - (n_t - 1)/2) h` on `[-t_max, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    t_max: f64,
    n_t: usize,
}

impl RadialGrid {
    pub fn new(t_max: f64, n_t: usize) -> Result<Self, GridError> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(GridError::Radial(format!("t_max must be positive, got {t_max}")));
        }
        if n_t < 3 || n_t % 2 == 0 {
            return Err(GridError::Radial(format!("n_t must be odd and >= 3, got {n_t}")));
        }
        Ok(RadialGrid { t_max, n_t })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.n_t
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.t_max / (self.n_t - 1) as f64
    }

    pub fn center(&self) -> usize {
        (self.n_t - 1) / 2
    }

    /// Sample `i`; computed from the signed offset so that `t_i = -t_{n-1-i}` exactly.
    pub fn t(&self, i: usize) -> f64 {
        (i as f64 - self.center() as f64) * self.spacing()
    }

    pub fn mirror(&self, i: usize) -> usize {
        self.n_t - 1 - i
    }

    pub fn samples(&self) -> Vec<f64> {
        (0..self.n_t).map(|i| self.t(i)).collect()
    }

    /// Trapezoid weight of sample `i`.
    pub fn weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        if i == 0 || i + 1 == self.n_t {
            0.5 * h
        } else {
            h
        }
    }

    /// Linear interpolation of `values` at `t`; `None` outside the grid.
    pub fn interp(&self, values: &[f64], t: f64) -> Option<f64> {
        let h = self.spacing();
        let s = (t + self.t_max) / h;
        if !(s >= -1e-9) || s > (self.n_t - 1) as f64 + 1e-9 {
            return None;
        }
        let s = s.clamp(0.0, (self.n_t - 1) as f64);
        let i = (s.floor() as usize).min(self.n_t - 2);
        let f = s - i as f64;
        Some(values[i] * (1.0 - f) + values[i + 1] * f)
    }
}
