use crate::{DirectionSet, GridError, RadialGrid};

/// Product grid `t_i x xi_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalGrid {
    pub radial: RadialGrid,
    pub directions: DirectionSet,
}

impl SphericalGrid {
    pub fn new(radial: RadialGrid, directions: DirectionSet) -> Self {
        SphericalGrid { radial, directions }
    }

    pub fn d(&self) -> usize {
        self.directions.d()
    }

    pub fn n_t(&self) -> usize {
        self.radial.len()
    }

    pub fn n_dirs(&self) -> usize {
        self.directions.len()
    }

    /// Flat index of sample `(i, j)`; `t` is the fastest index.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.radial.len() + i
    }

    /// Quadrature weight of sample `(i, j)`.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.radial.weight(i) * self.directions.weight(j)
    }

    pub fn total_weight(&self) -> f64 {
        2.0 * self.radial.t_max() * self.directions.total_weight()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinogramKind {
    Function,
    MeasureDensity,
}

/// Samples `g(t_i, xi_j)` stored at `j * n_t + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sinogram {
    grid: SphericalGrid,
    values: Vec<f64>,
    kind: SinogramKind,
}

impl Sinogram {
    pub fn new(grid: SphericalGrid, values: Vec<f64>, kind: SinogramKind) -> Result<Self, GridError> {
        let n = grid.n_t() * grid.n_dirs();
        if values.len() != n {
            return Err(GridError::Shape(format!("{} values for a grid of {n} samples", values.len())));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(GridError::Shape(format!("non-finite value at flat index {pos}")));
        }
        Ok(Sinogram { grid, values, kind })
    }

    pub fn zeros(grid: SphericalGrid, kind: SinogramKind) -> Self {
        let n = grid.n_t() * grid.n_dirs();
        Sinogram { grid, values: vec![0.0; n], kind }
    }

    /// Samples `f(t, xi)` on every grid point.
    pub fn from_fn<F>(grid: SphericalGrid, kind: SinogramKind, f: F) -> Self
    where
        F: Fn(f64, &[f64]) -> f64,
    {
        let n_t = grid.n_t();
        let mut values = Vec::with_capacity(n_t * grid.n_dirs());
        for xi in grid.directions.iter() {
            for i in 0..n_t {
                values.push(f(grid.radial.t(i), xi));
            }
        }
        Sinogram { grid, values, kind }
    }

    pub fn grid(&self) -> &SphericalGrid {
        &self.grid
    }

    pub fn kind(&self) -> SinogramKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.grid.index(i, j);
        self.values[k] = v;
    }

    /// Samples along direction `j`.
    pub fn column(&self, j: usize) -> &[f64] {
        let n_t = self.grid.n_t();
        &self.values[j * n_t..(j + 1) * n_t]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [f64] {
        let n_t = self.grid.n_t();
        &mut self.values[j * n_t..(j + 1) * n_t]
    }

    /// Same grid and kind, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self, GridError> {
        Sinogram::new(self.grid.clone(), values, self.kind)
    }

    /// Quadrature inner product `sum w_ij g_ij h_ij`.
    pub fn inner(&self, other: &Sinogram) -> Result<f64, GridError> {
        self.check_same_grid(other)?;
        let mut acc = 0.0;
        for j in 0..self.grid.n_dirs() {
            for i in 0..self.grid.n_t() {
                acc += self.grid.weight(i, j) * self.get(i, j) * other.get(i, j);
            }
        }
        Ok(acc)
    }

    /// `max |g(t, xi) - g(-t, -xi)|` under the grid's antipode map.
    pub fn odd_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.grid.n_dirs() {
            let ja = self.grid.directions.antipode(j);
            for i in 0..self.grid.n_t() {
                let k = self.grid.radial.mirror(i);
                worst = worst.max((self.get(i, j) - self.get(k, ja)).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn check_same_grid(&self, other: &Sinogram) -> Result<(), GridError> {
        if self.grid != other.grid {
            return Err(GridError::Shape("sinograms live on different grids".into()));
        }
        Ok(())
    }
}

/// `1/2 (g(t, xi) + g(-t, -xi))`.
pub fn even_part(g: &Sinogram) -> Sinogram {
    let grid = g.grid();
    let mut out = g.clone();
    for j in 0..grid.n_dirs() {
        let ja = grid.directions.antipode(j);
        for i in 0..grid.n_t() {
            let k = grid.radial.mirror(i);
            out.set(i, j, 0.5 * (g.get(i, j) + g.get(k, ja)));
        }
    }
    out
}

/// Trapezoid rule in `t` times the weighted direction sum.
pub fn integrate(g: &Sinogram) -> f64 {
    let grid = g.grid();
    (0..grid.n_dirs())
        .map(|j| {
            let col = g.column(j);
            let s: f64 = (0..grid.n_t()).map(|i| grid.radial.weight(i) * col[i]).sum();
            grid.directions.weight(j) * s
        })
        .sum()
}
