use radon_engine::quad::{self, Rule};

use crate::PolyError;

/// Default half-width of the planar quadrature square.
pub const DEFAULT_EXTENT: f64 = 256.0;
const ORDER: usize = 8;
/// Width of the Gauss-Legendre panels, a little over half a period of the
/// fastest oscillation of `kappa_iso`.
const PANEL_WIDTH: f64 = 4.0;
/// Nodes beyond this fraction of the extent count as tail.
pub const TAIL_SHELL: f64 = 0.9;

/// Tensor Gauss-Legendre rule on the square `|u|, |v| <= extent` in the
/// rotated frame `x = u xi + v xi_perp`, with a panel boundary at `u = kink`.
#[derive(Debug, Clone)]
pub struct PlaneQuadrature {
    xi: [f64; 2],
    kink: f64,
    extent: f64,
    u: Rule,
    v: Rule,
}

impl PlaneQuadrature {
    /// Axis-aligned rule with panel boundaries on both coordinate axes.
    pub fn new(extent: f64) -> Result<Self, PolyError> {
        Self::aligned([1.0, 0.0], 0.0, extent)
    }

    /// Rule whose panels have a boundary on the line `xi^T x = kink`.
    pub fn aligned(xi: [f64; 2], kink: f64, extent: f64) -> Result<Self, PolyError> {
        let n = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
        if (n - 1.0).abs() > 1e-12 {
            return Err(PolyError::Parameter(format!("direction norm {n} is not 1")));
        }
        if !(extent > 1.0 && extent.is_finite()) {
            return Err(PolyError::Parameter(format!("quadrature extent {extent} must exceed 1")));
        }
        if kink.abs() >= extent {
            return Err(PolyError::Parameter(format!("kink {kink} lies outside the quadrature square")));
        }
        Ok(PlaneQuadrature { xi, kink, extent, u: axis_rule(extent, kink), v: axis_rule(extent, 0.0) })
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn kink(&self) -> f64 {
        self.kink
    }

    pub fn direction(&self) -> [f64; 2] {
        self.xi
    }

    pub fn len(&self) -> usize {
        self.u.len() * self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Calls `f(x, weight, in_tail)` on every node.
    pub fn for_each<F: FnMut([f64; 2], f64, bool)>(&self, mut f: F) {
        let [c, s] = self.xi;
        self.for_each_frame(|u, v, w, tail| f([u * c - v * s, u * s + v * c], w, tail));
    }

    /// Calls `f(u, v, weight, in_tail)` on every node, in frame coordinates.
    pub fn for_each_frame<F: FnMut(f64, f64, f64, bool)>(&self, mut f: F) {
        let shell = TAIL_SHELL * self.extent;
        for (&v, &wv) in self.v.nodes.iter().zip(&self.v.weights) {
            for (&u, &wu) in self.u.nodes.iter().zip(&self.u.weights) {
                f(u, v, wu * wv, u.abs() > shell || v.abs() > shell);
            }
        }
    }
}

/// Equal panels on `[-extent, extent]`, mirrored exactly about 0, with an
/// extra boundary at `kink`.
fn axis_rule(extent: f64, kink: f64) -> Rule {
    let mut half = vec![0.0];
    let mut x: f64 = 0.0;
    while x < extent - 1e-12 {
        x = (x + PANEL_WIDTH).min(extent);
        half.push(x);
    }
    let mut breaks: Vec<f64> = half.iter().rev().map(|v| -v).chain(half[1..].iter().copied()).collect();
    if !breaks.contains(&kink) {
        breaks.push(kink);
        breaks.sort_by(f64::total_cmp);
    }
    if kink == 0.0 {
        // Build the positive half and negate it so the rule is exactly symmetric.
        let pos = quad::panels(&half, ORDER);
        let mut rule = Rule::default();
        for (n, w) in pos.nodes.iter().zip(&pos.weights).rev() {
            rule.nodes.push(-n);
            rule.weights.push(*w);
        }
        rule.nodes.extend(&pos.nodes);
        rule.weights.extend(&pos.weights);
        rule
    } else {
        quad::panels(&breaks, ORDER)
    }
}
