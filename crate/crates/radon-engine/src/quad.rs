//! Composite Gauss-Legendre rules.

use gauss_quad::legendre::GaussLegendre;

/// Nodes and weights of a 1D quadrature rule.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let order = std::num::NonZeroUsize::new(order.max(1)).unwrap();
    let mut pairs: Vec<(f64, f64)> = GaussLegendre::new(order).as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

/// Gauss-Legendre of `order` on every interval `[breaks[k], breaks[k+1]]`.
pub fn panels(breaks: &[f64], order: usize) -> Rule {
    let base = gauss_legendre(order);
    let mut rule = Rule::default();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for &(x, wt) in &base {
            rule.nodes.push(mid + half * x);
            rule.weights.push(half * wt);
        }
    }
    rule
}

/// `n_panels` equal panels on `[a, b]`.
pub fn uniform_panels(a: f64, b: f64, n_panels: usize, order: usize) -> Rule {
    let breaks: Vec<f64> = (0..=n_panels).map(|k| a + (b - a) * k as f64 / n_panels as f64).collect();
    panels(&breaks, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let r = uniform_panels(-1.0, 2.0, 3, 4);
        let v = r.integrate(|x| x.powi(7) - 2.0 * x.powi(3) + 1.0);
        let exact = (2f64.powi(8) - 1.0) / 8.0 - 2.0 * (16.0 - 1.0) / 4.0 + 3.0;
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn nodes_are_symmetric() {
        let g = gauss_legendre(8);
        for k in 0..8 {
            assert!((g[k].0 + g[7 - k].0).abs() < 1e-15);
            assert!((g[k].1 - g[7 - k].1).abs() < 1e-15);
        }
    }
}
