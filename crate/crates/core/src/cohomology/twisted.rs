use std::sync::Arc;

use num_traits::{One, Zero};

use super::cochain::{Cochain, CochainComplex, CohomologyResult};
use super::CohomologyError;
use crate::linalg::SparseMatrix;
use crate::local_system::WeightCocycle;
use crate::scalar::Rational;
use crate::simplicial::complex::remove_vertex;
use crate::simplicial::Complex;
use crate::RationalSparseMatrix;

/// Matrix of the twisted coboundary `δ_w : C^p -> C^{p+1}`.
///
/// A `p`-cochain stores, for every `p`-simplex, a value in the fiber over
/// its least vertex. For `σ = (v0 < ... < v_{p+1})`:
///
/// `(δ_w c)(σ) = w(v0,v1) c(v1..v_{p+1}) + Σ_{i>=1} (-1)^i c(σ without v_i)`
///
/// Only the 0th face changes base vertex, so only it picks up a transport.
/// Rows are `(p+1)`-simplices and columns `p`-simplices, both lexicographic.
pub fn coboundary_matrix(x: &Complex, w: &WeightCocycle, p: usize) -> RationalSparseMatrix {
    let rows = x.simplices(p + 1);
    let mut m = SparseMatrix::new(rows.len(), x.count(p));
    for (r, s) in rows.iter().enumerate() {
        for i in 0..s.len() {
            let col = x.index_of(&remove_vertex(s, i)).expect("face-closed complex");
            let value = if i == 0 {
                w.weight(s[0], s[1]).expect("weight on every edge").clone()
            } else if i % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            m.insert(r, col, value);
        }
    }
    m
}

/// The twisted cochain complex of `(X, w)`, or of the pair `(X, A)` when
/// built with [`TwistedComplex::relative`]: cochains vanishing on `A`.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    complex: Arc<Complex>,
    weights: WeightCocycle,
    /// Per degree, the indices (in `complex`) of the simplices carrying cochains.
    support: Vec<Vec<usize>>,
    cochains: CochainComplex,
}

impl TwistedComplex {
    pub fn new(x: impl Into<Arc<Complex>>, w: &WeightCocycle) -> Result<Self, CohomologyError> {
        let x = x.into();
        let empty = Complex::empty(x.vertex_count());
        Self::build(x, &empty, w)
    }

    pub fn relative(x: impl Into<Arc<Complex>>, a: &Complex, w: &WeightCocycle) -> Result<Self, CohomologyError> {
        let x = x.into();
        if !a.is_subcomplex_of(&x) {
            return Err(CohomologyError::NotASubcomplex);
        }
        Self::build(x, a, w)
    }

    fn build(x: Arc<Complex>, a: &Complex, w: &WeightCocycle) -> Result<Self, CohomologyError> {
        let violations = w.check_cocycle(&x);
        if !violations.is_empty() {
            return Err(CohomologyError::InvalidCocycle(
                violations.iter().map(ToString::to_string).collect(),
            ));
        }
        if w.weights().len() != x.count(1) {
            return Err(CohomologyError::InvalidCocycle(vec![
                "weights are defined on edges outside the complex".into(),
            ]));
        }
        let support: Vec<Vec<usize>> = (0..x.degrees())
            .map(|p| {
                (0..x.count(p))
                    .filter(|&i| !a.contains(&x.simplices(p)[i]))
                    .collect()
            })
            .collect();
        let relative = !a.is_empty();
        let coboundaries = (0..x.degrees().saturating_sub(1))
            .map(|p| {
                let full = coboundary_matrix(&x, w, p);
                if relative {
                    full.submatrix(&support[p + 1], &support[p])
                } else {
                    full
                }
            })
            .collect();
        let dims = support.iter().map(Vec::len).collect();
        let cochains = CochainComplex::new(dims, coboundaries);
        if let Some(p) = cochains.square_zero_failure() {
            return Err(CohomologyError::NotAComplex(p));
        }
        Ok(TwistedComplex {
            complex: x,
            weights: w.clone(),
            support,
            cochains,
        })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn complex_arc(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn weights(&self) -> &WeightCocycle {
        &self.weights
    }

    pub fn cochains(&self) -> &CochainComplex {
        &self.cochains
    }

    /// Indices into `complex().simplices(p)` of the simplices carrying degree-`p` cochains.
    pub fn support(&self, p: usize) -> &[usize] {
        self.support.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.cochains.betti()
    }

    pub fn cohomology(&self) -> CohomologyResult {
        self.cochains.cohomology()
    }

    /// Extends a cochain on the support by zero to all of `complex()`.
    pub fn extend_by_zero(&self, p: usize, c: &[Rational]) -> Cochain {
        let mut out = vec![Rational::zero(); self.complex.count(p)];
        for (v, &i) in c.iter().zip(self.support(p)) {
            out[i] = v.clone();
        }
        out
    }

    /// Reads off the values of a cochain of `complex()` on the support.
    pub fn restrict_to_support(&self, p: usize, c: &[Rational]) -> Cochain {
        self.support(p).iter().map(|&i| c[i].clone()).collect()
    }
}

/// `H_w^*(X)` with representatives.
pub fn cohomology(x: &Complex, w: &WeightCocycle) -> Result<CohomologyResult, CohomologyError> {
    Ok(TwistedComplex::new(x.clone(), w)?.cohomology())
}

/// Twisted Betti numbers only, one entry per degree `0..=dim X`.
pub fn betti(x: &Complex, w: &WeightCocycle) -> Result<Vec<usize>, CohomologyError> {
    Ok(TwistedComplex::new(x.clone(), w)?.betti())
}

/// `H_w^*(X, A)`: cohomology of the cochains vanishing on `A`.
pub fn relative_cohomology(x: &Complex, a: &Complex, w: &WeightCocycle) -> Result<CohomologyResult, CohomologyError> {
    Ok(TwistedComplex::relative(x.clone(), a, w)?.cohomology())
}

/// Number of connected components on which `w` is gauge-trivial.
pub fn h0_criterion(x: &Complex, w: &WeightCocycle) -> usize {
    x.connected_components()
        .into_iter()
        .filter(|vertices| {
            let component = x.induced_subcomplex(&vertices.iter().copied().collect());
            w.restrict(&component).is_exact(&component).is_some()
        })
        .count()
}
