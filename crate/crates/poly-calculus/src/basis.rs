use crate::window::{norm, IsotropicWindow};
use crate::PolyError;

/// Highest total order supported by the dual basis.
pub const MAX_ORDER: usize = 2;

/// Multi-indices of total order at most `n0`, graded, each degree in
/// descending lexicographic order: `(0,0), (1,0), (0,1), (2,0), (1,1), (0,2)`.
pub fn multi_indices(d: usize, n0: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for deg in 0..=n0 {
        let mut level = Vec::new();
        compositions(d, deg, &mut Vec::new(), &mut level);
        out.extend(level);
    }
    out
}

fn compositions(d: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() + 1 == d {
        prefix.push(left);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in (0..=left).rev() {
        prefix.push(k);
        compositions(d, left - k, prefix, out);
        prefix.pop();
    }
}

/// Taylor monomial `m_k(x) = x^k / k!`.
pub fn monomial(k: &[usize], x: &[f64]) -> f64 {
    k.iter().zip(x).map(|(&e, &v)| v.powi(e as i32) / factorial(e)).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// Dual basis element `m*_k = (-1)^|k| d^k kappa_iso` at one point.
pub fn dual_at(win: &IsotropicWindow, k: &[usize], x: &[f64]) -> Result<f64, PolyError> {
    check_index(win, k, x)?;
    let rv = win.radial(norm(x))?;
    Ok(dual_from_radial(k, x, rv.kappa, rv.first_over_r, rv.second))
}

/// `(-1)^|k| d^k` of a radial function from `kappa`, `kappa'/r`, `(kappa'' - kappa'/r)/r^2`.
pub(crate) fn dual_from_radial(k: &[usize], x: &[f64], kappa: f64, b: f64, a: f64) -> f64 {
    let mut nz = k.iter().enumerate().filter(|(_, &e)| e > 0);
    match k.iter().sum::<usize>() {
        0 => kappa,
        1 => {
            let (i, _) = nz.next().unwrap();
            -b * x[i]
        }
        _ => {
            let (i, &e) = nz.next().unwrap();
            if e == 2 {
                a * x[i] * x[i] + b
            } else {
                let (j, _) = nz.next().unwrap();
                a * x[i] * x[j]
            }
        }
    }
}

pub(crate) fn check_index(win: &IsotropicWindow, k: &[usize], x: &[f64]) -> Result<(), PolyError> {
    if k.len() != win.d() {
        return Err(PolyError::Dimension { expected: win.d(), got: k.len() });
    }
    if x.len() != win.d() {
        return Err(PolyError::Dimension { expected: win.d(), got: x.len() });
    }
    let order = k.iter().sum();
    if order > MAX_ORDER {
        return Err(PolyError::Order { order, max: MAX_ORDER });
    }
    Ok(())
}

/// `m*_k` at every point of `pts`.
pub fn dual_basis_eval<P: AsRef<[f64]>>(win: &IsotropicWindow, k: &[usize], pts: &[P]) -> Result<Vec<f64>, PolyError> {
    pts.iter().map(|p| dual_at(win, k, p.as_ref())).collect()
}
