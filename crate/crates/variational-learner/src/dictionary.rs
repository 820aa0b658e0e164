use hyperspherical_grid::make_direction_set;
use radon_engine::canonicalize;

use crate::{Dataset, LearnError};

/// Candidate ridges `relu(xi_p^T x - tau_p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    atoms: Vec<(Vec<f64>, f64)>,
    /// Direction count requested from the direction set, 0 when built by hand.
    pub n_dirs: usize,
    pub offsets_per_dir: usize,
}

impl Dictionary {
    pub fn from_atoms(atoms: Vec<(Vec<f64>, f64)>) -> Result<Self, LearnError> {
        let mut dict = Dictionary { atoms: Vec::new(), n_dirs: 0, offsets_per_dir: 0 };
        for (xi, tau) in atoms {
            dict.push(&xi, tau)?;
        }
        Ok(dict)
    }

    /// Adds `(xi, tau)` in canonical form unless it is already present.
    pub fn push(&mut self, xi: &[f64], tau: f64) -> Result<bool, LearnError> {
        let norm = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 || !tau.is_finite() {
            return Err(LearnError::Parameter(format!("invalid dictionary atom ({xi:?}, {tau})")));
        }
        if let Some((first, _)) = self.atoms.first() {
            if first.len() != xi.len() {
                return Err(LearnError::Dimension { expected: first.len(), got: xi.len() });
            }
        }
        let (tau, xi) = canonicalize(tau, xi);
        if self.atoms.iter().any(|(x, t)| *t == tau && *x == xi) {
            return Ok(false);
        }
        self.atoms.push((xi, tau));
        Ok(true)
    }

    pub fn atoms(&self) -> &[(Vec<f64>, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Directions of the canonical half-sphere, each with offsets at the
/// `k/(offsets_per_dir - 1)` quantiles of the projected data, linearly
/// interpolated between order statistics.
///
/// Repeated offsets, which occur when several points share a projection, are
/// kept once, so the size is at most `(n_dirs/2) offsets_per_dir`.
pub fn build_dictionary(data: &Dataset, n_dirs: usize, offsets_per_dir: usize) -> Result<Dictionary, LearnError> {
    if offsets_per_dir < 2 {
        return Err(LearnError::Parameter(format!("offsets_per_dir = {offsets_per_dir} must be at least 2")));
    }
    // Two directions in the plane are the pair +-e_1, below the direction-set minimum.
    let dirs: Vec<Vec<f64>> = if data.d() == 2 && n_dirs == 2 {
        vec![vec![1.0, 0.0], vec![-1.0, 0.0]]
    } else {
        make_direction_set(data.d(), n_dirs)?.iter().map(<[f64]>::to_vec).collect()
    };
    let mut dict = Dictionary { atoms: Vec::new(), n_dirs, offsets_per_dir };
    for xi in &dirs {
        if canonicalize(0.0, xi).1 != *xi {
            continue;
        }
        let mut proj: Vec<f64> = data.points().iter().map(|x| xi.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
        proj.sort_by(f64::total_cmp);
        let m = proj.len();
        for k in 0..offsets_per_dir {
            let pos = k as f64 * (m - 1) as f64 / (offsets_per_dir - 1) as f64;
            let i = (pos.floor() as usize).min(m - 1);
            let f = pos - i as f64;
            let tau = if i + 1 < m { proj[i] + f * (proj[i + 1] - proj[i]) } else { proj[i] };
            dict.push(xi, tau)?;
        }
    }
    Ok(dict)
}
