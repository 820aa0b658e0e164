use radon_engine::{DiracAtom, DiracAtomList};
use serde::{Deserialize, Serialize};

use crate::error::{check_unit, dot};
use crate::RidgeError;

/// Atoms closer than this in `(xi, tau)` are merged.
const DEDUP_TOL: f64 = 1e-10;

/// One neuron `a relu(xi^T x - tau)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeAtom {
    pub a: f64,
    pub xi: Vec<f64>,
    pub tau: f64,
}

impl RidgeAtom {
    pub fn new(a: f64, xi: &[f64], tau: f64) -> Self {
        RidgeAtom { a, xi: xi.to_vec(), tau }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.a * (dot(&self.xi, x) - self.tau).max(0.0)
    }
}

/// Shallow network `b + bvec^T x + sum_k a_k relu(xi_k^T x - tau_k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNetwork")]
pub struct ReLUNetwork {
    pub b: f64,
    pub bvec: Vec<f64>,
    atoms: Vec<RidgeAtom>,
}

#[derive(Deserialize)]
struct RawNetwork {
    b: f64,
    bvec: Vec<f64>,
    atoms: Vec<RidgeAtom>,
}

impl TryFrom<RawNetwork> for ReLUNetwork {
    type Error = RidgeError;

    fn try_from(raw: RawNetwork) -> Result<Self, RidgeError> {
        Self::new(raw.b, raw.bvec, raw.atoms)
    }
}

impl ReLUNetwork {
    /// Validates the atoms and merges those at the same `(xi, tau)`; atoms
    /// whose merged weight is exactly zero are dropped.
    pub fn new(b: f64, bvec: Vec<f64>, atoms: Vec<RidgeAtom>) -> Result<Self, RidgeError> {
        let d = bvec.len();
        if d == 0 {
            return Err(RidgeError::Parameter("network needs at least one input".into()));
        }
        if !b.is_finite() || bvec.iter().any(|v| !v.is_finite()) {
            return Err(RidgeError::Parameter("non-finite affine part".into()));
        }
        let mut out: Vec<RidgeAtom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            if atom.xi.len() != d {
                return Err(RidgeError::Dimension { expected: d, got: atom.xi.len() });
            }
            check_unit(&atom.xi)?;
            if !atom.a.is_finite() || !atom.tau.is_finite() {
                return Err(RidgeError::Parameter(format!("non-finite atom {atom:?}")));
            }
            let same = |o: &RidgeAtom| {
                (o.tau - atom.tau).abs() <= DEDUP_TOL && o.xi.iter().zip(&atom.xi).all(|(p, q)| (p - q).abs() <= DEDUP_TOL)
            };
            match out.iter_mut().find(|o| same(o)) {
                Some(o) => o.a += atom.a,
                None => out.push(atom),
            }
        }
        out.retain(|a| a.a != 0.0);
        Ok(ReLUNetwork { b, bvec, atoms: out })
    }

    /// Affine function `b + bvec^T x`.
    pub fn affine(b: f64, bvec: Vec<f64>) -> Result<Self, RidgeError> {
        Self::new(b, bvec, Vec::new())
    }

    pub fn d(&self) -> usize {
        self.bvec.len()
    }

    pub fn atoms(&self) -> &[RidgeAtom] {
        &self.atoms
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.b + dot(&self.bvec, x) + self.atoms.iter().map(|a| a.eval(x)).sum::<f64>()
    }

    /// `sum |a_k|` after antipodal merging.
    pub fn reg_cost(&self) -> f64 {
        network_to_measure(self).norm()
    }

    /// Every weight and the affine part multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self, RidgeError> {
        let atoms = self.atoms.iter().map(|a| RidgeAtom { a: c * a.a, ..a.clone() }).collect();
        Self::new(c * self.b, self.bvec.iter().map(|v| c * v).collect(), atoms)
    }

    /// JSON with shortest round-trip float formatting.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("network serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, RidgeError> {
        serde_json::from_str(s).map_err(|e| RidgeError::Format(e.to_string()))
    }
}

/// `Delta_R f = sum_k a_k e_(tau_k, xi_k)`, with `e_z = e_(-z)` merged.
pub fn network_to_measure(net: &ReLUNetwork) -> DiracAtomList {
    let atoms = net.atoms.iter().map(|a| DiracAtom::new(a.a, a.tau, &a.xi)).collect();
    DiracAtomList::new(atoms).expect("network atoms are validated")
}
