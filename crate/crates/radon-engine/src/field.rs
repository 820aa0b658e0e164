use std::sync::Arc;

use crate::RadonError;

type Evaluator = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A function on R^2 tied to a symmetric `n x n` lattice on `[-x_max, x_max]^2`.
///
/// The lattice coordinates are `x_k = (k - (n-1)/2) h` with
/// `h = 2 x_max / (n - 1)`. A lattice field stores samples (row-major, `y`
/// outer) and is read by bilinear interpolation, zero outside. An evaluator
/// field is called directly and only borrows the lattice for its spacing
/// and extent.
#[derive(Clone)]
pub struct EuclideanField {
    x_max: f64,
    n: usize,
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Samples(Vec<f64>),
    Evaluator(Evaluator),
}

impl std::fmt::Debug for EuclideanField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.repr {
            Repr::Samples(_) => "samples",
            Repr::Evaluator(_) => "evaluator",
        };
        f.debug_struct("EuclideanField").field("x_max", &self.x_max).field("n", &self.n).field("kind", &kind).finish()
    }
}

impl EuclideanField {
    pub fn from_samples(x_max: f64, n: usize, values: Vec<f64>) -> Result<Self, RadonError> {
        check_lattice(x_max, n)?;
        if values.len() != n * n {
            return Err(RadonError::Parameter(format!("{} samples for a {n}x{n} lattice", values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(RadonError::Parameter("non-finite lattice sample".into()));
        }
        Ok(EuclideanField { x_max, n, repr: Repr::Samples(values) })
    }

    /// Samples `f` on the lattice.
    pub fn sampled<F: Fn(&[f64]) -> f64>(x_max: f64, n: usize, f: F) -> Result<Self, RadonError> {
        check_lattice(x_max, n)?;
        let h = 2.0 * x_max / (n - 1) as f64;
        let c = (n - 1) as f64 / 2.0;
        let mut values = Vec::with_capacity(n * n);
        for iy in 0..n {
            for ix in 0..n {
                values.push(f(&[(ix as f64 - c) * h, (iy as f64 - c) * h]));
            }
        }
        Self::from_samples(x_max, n, values)
    }

    pub fn evaluator<F>(x_max: f64, n: usize, f: F) -> Result<Self, RadonError>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        check_lattice(x_max, n)?;
        Ok(EuclideanField { x_max, n, repr: Repr::Evaluator(Arc::new(f)) })
    }

    pub fn zeros(x_max: f64, n: usize) -> Result<Self, RadonError> {
        Self::from_samples(x_max, n, vec![0.0; n * n])
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.x_max / (self.n - 1) as f64
    }

    /// Lattice coordinate `x_k`.
    pub fn coord(&self, k: usize) -> f64 {
        (k as f64 - (self.n - 1) as f64 / 2.0) * self.spacing()
    }

    /// Value at lattice node `(ix, iy)`.
    pub fn node(&self, ix: usize, iy: usize) -> f64 {
        match &self.repr {
            Repr::Samples(v) => v[iy * self.n + ix],
            Repr::Evaluator(f) => f(&[self.coord(ix), self.coord(iy)]),
        }
    }

    /// Value at an arbitrary point: bilinear for samples, direct for evaluators.
    pub fn value(&self, x: &[f64]) -> f64 {
        match &self.repr {
            Repr::Evaluator(f) => f(x),
            Repr::Samples(v) => {
                let h = self.spacing();
                let u = (x[0] + self.x_max) / h;
                let w = (x[1] + self.x_max) / h;
                let (iu, iw) = (u.floor(), w.floor());
                let (fu, fw) = (u - iu, w - iw);
                let at = |i: f64, j: f64| -> f64 {
                    if i < 0.0 || j < 0.0 || i >= self.n as f64 || j >= self.n as f64 {
                        0.0
                    } else {
                        v[j as usize * self.n + i as usize]
                    }
                };
                (1.0 - fw) * ((1.0 - fu) * at(iu, iw) + fu * at(iu + 1.0, iw))
                    + fw * ((1.0 - fu) * at(iu, iw + 1.0) + fu * at(iu + 1.0, iw + 1.0))
            }
        }
    }
}

fn check_lattice(x_max: f64, n: usize) -> Result<(), RadonError> {
    if !(x_max > 0.0) || !x_max.is_finite() || n < 2 {
        return Err(RadonError::Parameter(format!("invalid lattice x_max = {x_max}, n = {n}")));
    }
    Ok(())
}
