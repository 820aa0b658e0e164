use hyperspherical_grid::SphericalGrid;

use crate::{d_eps, line_integral, rotation_to_e1, EuclideanField, RadonError};

/// Positions closer than this are the same atom.
const MERGE_TOL: f64 = 1e-12;

/// One weighted point mass `a e_(t, xi)` on the Radon domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracAtom {
    pub a: f64,
    pub t: f64,
    pub xi: Vec<f64>,
}

impl DiracAtom {
    pub fn new(a: f64, t: f64, xi: &[f64]) -> Self {
        DiracAtom { a, t, xi: xi.to_vec() }
    }
}

/// Sum of Radon-domain Diracs with `e_z = e_(-z)` applied.
///
/// Every atom is stored with `xi` in the half-space `xi_1 > 0` (ties broken
/// on the following components); atoms at the same position are merged and
/// exact zeros dropped.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiracAtomList {
    atoms: Vec<DiracAtom>,
}

/// Flips `(t, xi)` to `(-t, -xi)` when `xi` is in the lower half-space.
pub fn canonicalize(t: f64, xi: &[f64]) -> (f64, Vec<f64>) {
    let flip = xi.iter().find(|v| **v != 0.0).is_some_and(|v| *v < 0.0);
    if flip {
        (-t, xi.iter().map(|v| -v).collect())
    } else {
        (t, xi.to_vec())
    }
}

impl DiracAtomList {
    pub fn new(atoms: Vec<DiracAtom>) -> Result<Self, RadonError> {
        let mut out: Vec<DiracAtom> = Vec::with_capacity(atoms.len());
        let d = atoms.first().map_or(0, |a| a.xi.len());
        for atom in atoms {
            if atom.xi.len() != d {
                return Err(RadonError::Dimension { expected: d, got: atom.xi.len() });
            }
            let norm = atom.xi.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-12 || !atom.a.is_finite() || !atom.t.is_finite() {
                return Err(RadonError::Parameter(format!("invalid atom {atom:?}")));
            }
            let (t, xi) = canonicalize(atom.t, &atom.xi);
            match out.iter_mut().find(|o| same_position(o, t, &xi)) {
                Some(o) => o.a += atom.a,
                None => out.push(DiracAtom { a: atom.a, t, xi }),
            }
        }
        out.retain(|a| a.a != 0.0);
        Ok(DiracAtomList { atoms: out })
    }

    pub fn atoms(&self) -> &[DiracAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Total variation `sum |a_k|`.
    pub fn norm(&self) -> f64 {
        self.atoms.iter().map(|a| a.a.abs()).sum()
    }
}

fn same_position(o: &DiracAtom, t: f64, xi: &[f64]) -> bool {
    (o.t - t).abs() <= MERGE_TOL && o.xi.iter().zip(xi).all(|(a, b)| (a - b).abs() <= MERGE_TOL)
}

/// `<R* mu, phi> = <mu, R phi> = sum_k a_k R phi(t_k, xi_k)`.
pub fn backproject_measure_weak(atoms: &DiracAtomList, phi: &EuclideanField) -> Result<f64, RadonError> {
    atoms
        .atoms()
        .iter()
        .map(|a| {
            if a.xi.len() != 2 {
                return Err(RadonError::Dimension { expected: 2, got: a.xi.len() });
            }
            Ok(a.a * line_integral(phi, a.t, &a.xi))
        })
        .sum()
}

/// Result of [`measure_norm_witness`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    /// `<mu, f*> / max(1, sup |f*|)`, a lower bound on the total variation.
    pub lower_bound: f64,
    /// `<mu, f*> = sum_k a_k f*(z_k)`.
    pub pairing: f64,
    /// Largest `|f*|` over the grid and the atom positions.
    pub sup_norm: f64,
}

/// Lower bound on `||mu||` from the dual test function
/// `f* = sum_k sign(a_k) d_eps(t - xi^T x_k, U_k xi) / d_eps(0, e_1)`,
/// where `U_k xi_k = e_1` and `x_k = t_k xi_k` put each bump's unit peak on its atom.
pub fn measure_norm_witness(atoms: &DiracAtomList, eps: f64, grid: &SphericalGrid) -> Result<Witness, RadonError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(RadonError::Parameter(format!("eps must lie in (0, 1], got {eps}")));
    }
    let list = atoms.atoms();
    for (k, a) in list.iter().enumerate() {
        if a.xi.len() != grid.d() {
            return Err(RadonError::Dimension { expected: grid.d(), got: a.xi.len() });
        }
        if list[..k].iter().any(|b| same_position(b, a.t, &a.xi)) {
            return Err(RadonError::DuplicateAtom { t: a.t, xi: a.xi.clone() });
        }
    }
    let d = grid.d();
    let mut e1 = vec![0.0; d];
    e1[0] = 1.0;
    let peak = d_eps(0.0, &e1, eps);
    let bumps: Vec<(f64, Vec<f64>, Vec<f64>)> = list
        .iter()
        .map(|a| (a.a.signum(), rotation_to_e1(&a.xi), a.xi.iter().map(|v| v * a.t).collect()))
        .collect();

    let witness = |t: f64, xi: &[f64]| -> f64 {
        let mut rotated = [0.0; 3];
        bumps
            .iter()
            .map(|(sign, u, x)| {
                for r in 0..d {
                    rotated[r] = (0..d).map(|c| u[r * d + c] * xi[c]).sum();
                }
                let shift: f64 = xi.iter().zip(x).map(|(a, b)| a * b).sum();
                sign * d_eps(t - shift, &rotated[..d], eps) / peak
            })
            .sum()
    };

    let pairing: f64 = list.iter().map(|a| a.a * witness(a.t, &a.xi)).sum();
    let mut sup = list.iter().map(|a| witness(a.t, &a.xi).abs()).fold(0.0, f64::max);
    for xi in grid.directions.iter() {
        for i in 0..grid.n_t() {
            sup = sup.max(witness(grid.radial.t(i), xi).abs());
        }
    }
    Ok(Witness { lower_bound: pairing / sup.max(1.0), pairing, sup_norm: sup })
}
