use nalgebra::DMatrix;

use crate::basis::{dual_from_radial, monomial, multi_indices, MAX_ORDER};
use crate::plane::{PlaneQuadrature, DEFAULT_EXTENT};
use crate::window::{norm, IsotropicWindow};
use crate::{PolyCoeffs, PolyError};

/// Tail fraction above which a projection is logged as under-resolved.
pub const TAIL_WARN: f64 = 1e-8;
/// Tail fraction above which a projection is rejected.
pub const TAIL_ERROR: f64 = 1e-4;

/// Dual-basis pairings of a function computed on one quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    /// Coefficients of the projection, reproducing polynomials exactly under the rule.
    pub coeffs: PolyCoeffs,
    /// `<f, m*_n>` by quadrature, in [`multi_indices`] order.
    pub raw: Vec<f64>,
    /// `gram[k][n] = <m_k, m*_n>` on the same rule.
    pub gram: Vec<Vec<f64>>,
    /// Largest `|sum_shell w f m*_n| / sum |w f m*_n|`, the signed contribution of
    /// the outer shell of the rule relative to the absolute mass.
    pub tail_fraction: f64,
}

/// `<m_k, m*_n>` for `|k|, |n| <= n0` on the default rule.
pub fn biorthogonality_matrix(win: &IsotropicWindow, n0: usize) -> Result<Vec<Vec<f64>>, PolyError> {
    let quad = PlaneQuadrature::new(DEFAULT_EXTENT)?;
    Ok(pairings(|_| 0.0, win, n0, &quad)?.gram)
}

/// Coefficients of `Proj_{P_n0} f` on the default rule.
pub fn project_poly<F: Fn(&[f64]) -> f64>(f: F, win: &IsotropicWindow, n0: usize) -> Result<PolyCoeffs, PolyError> {
    let quad = PlaneQuadrature::new(DEFAULT_EXTENT)?;
    Ok(project_poly_with(f, win, n0, &quad)?.coeffs)
}

/// Projection on a caller-supplied rule, rejected when the tail is too heavy.
pub fn project_poly_with<F: Fn(&[f64]) -> f64>(
    f: F,
    win: &IsotropicWindow,
    n0: usize,
    quad: &PlaneQuadrature,
) -> Result<Projection, PolyError> {
    let p = pairings(f, win, n0, quad)?;
    if p.tail_fraction > TAIL_ERROR {
        return Err(PolyError::TailMass { fraction: p.tail_fraction });
    }
    if p.tail_fraction > TAIL_WARN {
        log::warn!("projection tail carries {:.2e} of the integrand mass", p.tail_fraction);
    }
    Ok(p)
}

/// Raw pairings `<f, m*_n>`, the Gram matrix and the projection, without the tail check.
///
/// The coefficients solve `sum_k b_k <m_k, m*_n> = <f, m*_n>` so that the
/// discrete projector is exactly idempotent.
pub fn pairings<F: Fn(&[f64]) -> f64>(
    f: F,
    win: &IsotropicWindow,
    n0: usize,
    quad: &PlaneQuadrature,
) -> Result<Projection, PolyError> {
    if win.d() != 2 {
        return Err(PolyError::Dimension { expected: 2, got: win.d() });
    }
    if n0 > MAX_ORDER {
        return Err(PolyError::Order { order: n0, max: MAX_ORDER });
    }
    let reach = quad.extent() * std::f64::consts::SQRT_2;
    if reach > win.cache_extent() {
        return Err(PolyError::Extent { r: reach, r_max: win.cache_extent() });
    }
    let idx = multi_indices(2, n0);
    let n = idx.len();
    let mut raw = vec![0.0; n];
    let mut gram = vec![vec![0.0; n]; n];
    let mut total = vec![0.0; n];
    let mut tail = vec![0.0; n];
    let mut mono = vec![0.0; n];
    let mut dual = vec![0.0; n];
    let mut failure = None;
    quad.for_each(|x, w, outer| {
        if failure.is_some() {
            return;
        }
        let rv = match win.radial(norm(&x)) {
            Ok(rv) => rv,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        let fx = f(&x);
        for (k, e) in idx.iter().enumerate() {
            mono[k] = monomial(e, &x);
            dual[k] = w * dual_from_radial(e, &x, rv.kappa, rv.first_over_r, rv.second);
        }
        for c in 0..n {
            let term = fx * dual[c];
            raw[c] += term;
            total[c] += term.abs();
            if outer {
                tail[c] += term;
            }
            for (k, row) in gram.iter_mut().enumerate() {
                row[c] += mono[k] * dual[c];
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let tail_fraction = tail.iter().zip(&total).map(|(t, a)| if *a > 0.0 { t.abs() / a } else { 0.0 }).fold(0.0, f64::max);

    let g = DMatrix::from_fn(n, n, |r, c| gram[c][r]);
    let b = g.lu().solve(&nalgebra::DVector::from_column_slice(&raw)).ok_or(PolyError::Singular)?;
    let coeffs = PolyCoeffs::from_values(2, n0, b.as_slice())?;
    Ok(Projection { coeffs, raw, gram, tail_fraction })
}
