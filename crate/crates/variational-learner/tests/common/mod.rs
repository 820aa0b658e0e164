#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use variational_learner::*;

pub fn planted(x: &[f64]) -> f64 {
    1.0 + (x[0] - 0.5).max(0.0)
}

/// 20 seeded points in the unit square with targets `1 + relu(x_1 - 1/2)`.
pub fn planted_data() -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts: Vec<Vec<f64>> = (0..20).map(|_| vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)]).collect();
    let y = pts.iter().map(|x| planted(x)).collect();
    Dataset::new(pts, y).unwrap()
}

pub fn planted_dictionary(data: &Dataset) -> Dictionary {
    let mut dict = build_dictionary(data, 32, 9).unwrap();
    dict.push(&[1.0, 0.0], 0.5).unwrap();
    dict
}

/// `m` seeded points in `[-1, 1]^2` with smooth nonlinear targets.
pub fn random_data(seed: u64, m: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..m).map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]).collect();
    let y = pts.iter().map(|x| (2.0 * x[0]).sin() + x[1] * x[1] + 0.1 * rng.random_range(-1.0..1.0)).collect();
    Dataset::new(pts, y).unwrap()
}
