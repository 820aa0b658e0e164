use std::f64::consts::PI;

use crate::GridError;

/// Candidate partners examined per point when pairing antipodes on S^2.
const ANTIPODE_CANDIDATES: usize = 12;

/// Surface area of S^(d-1), `2 pi^(d/2) / Gamma(d/2)`, for d in {2, 3}.
pub fn sphere_area(d: usize) -> f64 {
    match d {
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => f64::NAN,
    }
}

/// Unit directions with quadrature weights and an antipodal index map.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    d: usize,
    dirs: Vec<f64>,
    weights: Vec<f64>,
    antipode: Vec<usize>,
}

impl DirectionSet {
    /// Builds a set from explicit directions (flattened, stride `d`).
    ///
    /// Directions not already of unit length are normalized; the antipode map is found by greedy
    /// matching on `|xi_j + xi_k|`.
    pub fn from_parts(d: usize, dirs: Vec<f64>, weights: Vec<f64>) -> Result<Self, GridError> {
        if !(2..=3).contains(&d) {
            return Err(GridError::Dimension(d));
        }
        if dirs.len() % d != 0 || dirs.len() / d != weights.len() {
            return Err(GridError::Shape(format!(
                "{} direction components and {} weights for d = {d}",
                dirs.len(),
                weights.len()
            )));
        }
        let mut dirs = dirs;
        for v in dirs.chunks_mut(d) {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm > 0.0) || !norm.is_finite() {
                return Err(GridError::Shape("zero or non-finite direction".into()));
            }
            if (norm - 1.0).abs() > 4.0 * f64::EPSILON {
                v.iter_mut().for_each(|x| *x /= norm);
            }
        }
        if weights.iter().any(|w| !(*w > 0.0)) {
            return Err(GridError::Shape("direction weights must be positive".into()));
        }
        let antipode = match_antipodes(d, &dirs);
        Ok(DirectionSet { d, dirs, weights, antipode })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dir(&self, j: usize) -> &[f64] {
        &self.dirs[j * self.d..(j + 1) * self.d]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.dirs.chunks(self.d)
    }

    /// Flattened direction components, stride `d`.
    pub fn components(&self) -> &[f64] {
        &self.dirs
    }

    pub fn weight(&self, j: usize) -> f64 {
        self.weights[j]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn antipode(&self, j: usize) -> usize {
        self.antipode[j]
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `max_j |xi_antipode(j) + xi_j|`.
    pub fn antipode_mismatch(&self) -> f64 {
        (0..self.len())
            .map(|j| pair_distance(self.dir(j), self.dir(self.antipode[j])))
            .fold(0.0, f64::max)
    }

    /// Index of the direction closest to `xi`, with its distance.
    pub fn nearest(&self, xi: &[f64]) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (j, v) in self.iter().enumerate() {
            let dist = v.iter().zip(xi).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            if dist < best.1 {
                best = (j, dist);
            }
        }
        best
    }
}

/// Uniform circle (d = 2) or Fibonacci lattice (d = 3) with equal weights.
///
/// Both constructions are symmetric under `xi -> -xi`, so the antipode map
/// is exact.
pub fn make_direction_set(d: usize, n: usize) -> Result<DirectionSet, GridError> {
    if !(2..=3).contains(&d) {
        return Err(GridError::Dimension(d));
    }
    if n < 4 {
        return Err(GridError::DirectionCount { d, n, reason: "need at least 4 directions" });
    }
    if n % 2 == 1 {
        return Err(GridError::DirectionCount { d, n, reason: "direction count must be even" });
    }
    let w = sphere_area(d) / n as f64;
    match d {
        2 => {
            let half = n / 2;
            let mut dirs = vec![0.0; 2 * n];
            for j in 0..half {
                let theta = 2.0 * PI * j as f64 / n as f64;
                let (s, c) = if j == 0 {
                    (0.0, 1.0)
                } else if 4 * j == n {
                    (1.0, 0.0)
                } else {
                    theta.sin_cos()
                };
                dirs[2 * j] = c;
                dirs[2 * j + 1] = s;
                dirs[2 * (j + half)] = -c;
                dirs[2 * (j + half) + 1] = -s;
            }
            let antipode = (0..n).map(|j| (j + half) % n).collect();
            Ok(DirectionSet { d, dirs, weights: vec![w; n], antipode })
        }
        _ => {
            // Fibonacci spiral on the upper hemisphere, mirrored through the origin.
            let half = n / 2;
            let golden = PI * (3.0 - 5f64.sqrt());
            let mut dirs = vec![0.0; 3 * n];
            for j in 0..half {
                let z = 1.0 - (2 * j + 1) as f64 / n as f64;
                let rho = (1.0 - z * z).sqrt();
                let (s, c) = (golden * j as f64).sin_cos();
                let p = [rho * c, rho * s, z];
                for k in 0..3 {
                    dirs[3 * j + k] = p[k];
                    dirs[3 * (j + half) + k] = -p[k];
                }
            }
            let antipode = (0..n).map(|j| (j + half) % n).collect();
            Ok(DirectionSet { d, dirs, weights: vec![w; n], antipode })
        }
    }
}

fn pair_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x + y) * (x + y)).sum::<f64>().sqrt()
}

/// Greedy minimum-mismatch matching of each point with a near-antipode.
///
/// The result is an involution. An odd leftover maps to itself.
fn match_antipodes(d: usize, dirs: &[f64]) -> Vec<usize> {
    let n = dirs.len() / d;
    let at = |j: usize| &dirs[j * d..(j + 1) * d];
    let k = ANTIPODE_CANDIDATES.min(n.saturating_sub(1));
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * k);
    let mut scratch: Vec<(f64, usize)> = Vec::with_capacity(n);
    for j in 0..n {
        scratch.clear();
        scratch.extend((0..n).filter(|&i| i != j).map(|i| (pair_distance(at(j), at(i)), i)));
        if k > 0 && k < scratch.len() {
            scratch.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0));
            scratch.truncate(k);
        }
        edges.extend(scratch.iter().map(|&(dist, i)| (dist, j.min(i), j.max(i))));
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut partner = vec![usize::MAX; n];
    for &(_, i, j) in &edges {
        if partner[i] == usize::MAX && partner[j] == usize::MAX {
            partner[i] = j;
            partner[j] = i;
        }
    }
    // Points whose candidates were all taken: pair the leftovers among themselves.
    let mut rest: Vec<usize> = (0..n).filter(|&j| partner[j] == usize::MAX).collect();
    while let Some(j) = rest.pop() {
        let best = rest
            .iter()
            .enumerate()
            .min_by(|a, b| pair_distance(at(j), at(*a.1)).total_cmp(&pair_distance(at(j), at(*b.1))))
            .map(|(pos, _)| pos);
        match best {
            Some(pos) => {
                let i = rest.swap_remove(pos);
                partner[i] = j;
                partner[j] = i;
            }
            None => partner[j] = j,
        }
    }
    partner
}
