use num_traits::{One, Zero};

use super::cochain::{Cochain, CohomologyResult};
use super::twisted::TwistedComplex;
use super::CohomologyError;
use crate::linalg::SparseMatrix;
use crate::local_system::{GaugeFunction, WeightCocycle};
use crate::scalar::Rational;
use crate::simplicial::{Complex, SimplicialMap};
use crate::RationalSparseMatrix;

/// Sign of the permutation sorting `seq` (distinct entries).
fn sort_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Checks `pullback(f, w_target) == gauge_transform(w_source, u)` and names the first bad edge.
pub fn check_gauge_condition(
    f: &SimplicialMap,
    w_target: &WeightCocycle,
    w_source: &WeightCocycle,
    u: &GaugeFunction,
) -> Result<(), CohomologyError> {
    let pulled = w_target.pullback(f);
    let expected = w_source.gauge_transform(u);
    for (edge, w) in pulled.weights() {
        if expected.weights().get(edge) != Some(w) {
            return Err(CohomologyError::GaugeMismatch(*edge));
        }
    }
    if pulled.weights().len() != expected.weights().len() {
        return Err(CohomologyError::GaugeMismatch((0, 0)));
    }
    Ok(())
}

/// A gauge `u` with `pullback(f, w_target) = gauge_transform(w_source, u)`, if one exists.
pub fn find_gauge(f: &SimplicialMap, w_target: &WeightCocycle, w_source: &WeightCocycle) -> Option<GaugeFunction> {
    let ratio = w_target.pullback(f).tensor(&w_source.inverse()).ok()?;
    ratio.is_exact(f.source())
}

/// Cochain-level pullback `C^p_{w_target}(Y) -> C^p_{w_source}(X)`.
///
/// For `σ = (v0 < ... < vp)` with nondegenerate image `τ`:
/// `(f^# c)(σ) = u(v0) · sign · transport(f(v0) <- min τ) · c(τ)`, where
/// `sign` is the parity of sorting `f(v0), ..., f(vp)`. Degenerate simplices get 0.
pub fn cochain_map(f: &SimplicialMap, w_target: &WeightCocycle, u: &GaugeFunction, p: usize) -> RationalSparseMatrix {
    let source = f.source();
    let target = f.target();
    let mut m = SparseMatrix::new(source.count(p), target.count(p));
    for (r, s) in source.simplices(p).iter().enumerate() {
        let images: Vec<usize> = s.iter().map(|&v| f.apply(v)).collect();
        let tau = f.image_of(s);
        if tau.len() != s.len() {
            continue;
        }
        let col = target.index_of(&tau).expect("simplicial map");
        let transport = w_target
            .transport(images[0], tau[0])
            .expect("both vertices lie in the image simplex");
        let mut value = transport * u.value(s[0]);
        if sort_sign(&images) < 0 {
            value = -value;
        }
        m.insert(r, col, value);
    }
    m
}

/// `f^*: H(target) -> H(source)` written in the chosen bases.
/// `matrices[p]` has one row per source basis vector and one column per target basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMap {
    pub matrices: Vec<Vec<Vec<Rational>>>,
}

impl InducedMap {
    pub fn trace(&self, p: usize) -> Rational {
        let m = &self.matrices[p];
        (0..m.len().min(m.first().map_or(0, Vec::len)))
            .map(|i| m[i][i].clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn rank(&self, p: usize) -> usize {
        let m = &self.matrices[p];
        if m.is_empty() || m[0].is_empty() {
            return 0;
        }
        SparseMatrix::from_dense(m).rank()
    }

    /// Square and invertible in every degree.
    pub fn is_isomorphism(&self) -> bool {
        (0..self.matrices.len()).all(|p| {
            let m = &self.matrices[p];
            m.iter().all(|row| row.len() == m.len()) && self.rank(p) == m.len()
        })
    }

    /// `self ∘ other` degree by degree (apply `other` first).
    pub fn compose(&self, other: &InducedMap) -> InducedMap {
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let inner = b.len();
                let cols = b.first().map_or(0, Vec::len);
                a.iter()
                    .map(|row| {
                        (0..cols)
                            .map(|j| {
                                (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        InducedMap { matrices }
    }
}

/// Cohomology of a twisted complex together with the complex itself, so
/// classes can be converted to coordinates.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub complex: TwistedComplex,
    pub result: CohomologyResult,
}

impl CohomologySpace {
    pub fn new(complex: TwistedComplex) -> Self {
        let result = complex.cohomology();
        CohomologySpace { complex, result }
    }

    pub fn build(x: &Complex, w: &WeightCocycle) -> Result<Self, CohomologyError> {
        Ok(Self::new(TwistedComplex::new(x.clone(), w)?))
    }

    pub fn betti(&self) -> &[usize] {
        &self.result.betti
    }

    pub fn coordinates_many(&self, p: usize, cocycles: &[Cochain]) -> Vec<Vec<Rational>> {
        self.complex
            .cochains()
            .coordinates_many(&self.result, p, cocycles)
            .expect("images of cocycles are cocycles")
    }
}

/// Induced map of `f: X -> Y` from `H_{w_target}(Y)` to `H_{w_source}(X)`.
///
/// Requires `pullback(f, w_target) = gauge_transform(w_source, u)`, with
/// `u = 1` when omitted.
pub fn induced_map(
    f: &SimplicialMap,
    target: &CohomologySpace,
    source: &CohomologySpace,
    u: Option<&GaugeFunction>,
) -> Result<InducedMap, CohomologyError> {
    if f.target() != target.complex.complex() || f.source() != source.complex.complex() {
        return Err(CohomologyError::ComplexMismatch);
    }
    let one = GaugeFunction::one(f.source().vertex_count());
    let u = u.unwrap_or(&one);
    let w_target = target.complex.weights();
    check_gauge_condition(f, w_target, source.complex.weights(), u)?;

    let mut matrices = Vec::new();
    for p in 0..source.result.betti.len() {
        let rows = source.result.betti[p];
        let Some(basis) = target.result.bases.get(p) else {
            matrices.push(vec![Vec::new(); rows]);
            continue;
        };
        let fp = cochain_map(f, w_target, u, p);
        let images: Vec<Cochain> = basis
            .iter()
            .map(|z| fp.mul_vec(z).expect("cochain length"))
            .collect();
        let coords = source.coordinates_many(p, &images);
        let matrix = (0..rows)
            .map(|i| coords.iter().map(|c| c[i].clone()).collect())
            .collect();
        matrices.push(matrix);
    }
    Ok(InducedMap { matrices })
}

/// Twisted Lefschetz number `Σ (-1)^p tr(f^* | H^p)` of a self-map.
pub fn lefschetz_number(
    f: &SimplicialMap,
    space: &CohomologySpace,
    u: Option<&GaugeFunction>,
) -> Result<Rational, CohomologyError> {
    let map = induced_map(f, space, space, u)?;
    Ok((0..map.matrices.len()).fold(Rational::zero(), |acc, p| {
        if p % 2 == 0 {
            acc + map.trace(p)
        } else {
            acc - map.trace(p)
        }
    }))
}

/// Alexander–Whitney cup product with transport:
///
/// `(c1 ∪ c2)(v0..v_{p+q}) = c1(v0..vp) · w2(v0, vp) · c2(vp..v_{p+q})`
///
/// where `c1` is a `p`-cochain over `w1`, `c2` a `q`-cochain over `w2`, and
/// the result is a cochain over `w1 ⊗ w2`. The factor moves the value of
/// `c2`, which lives over `vp`, into the fiber over `v0`.
pub fn cup(
    x: &Complex,
    w2: &WeightCocycle,
    (p, c1): (usize, &[Rational]),
    (q, c2): (usize, &[Rational]),
) -> Result<Cochain, CohomologyError> {
    if c1.len() != x.count(p) || c2.len() != x.count(q) {
        return Err(CohomologyError::ComplexMismatch);
    }
    let simplices = x.simplices(p + q);
    let mut out = vec![Rational::zero(); simplices.len()];
    for (k, s) in simplices.iter().enumerate() {
        let front = &c1[x.index_of(&s[..=p]).expect("front face")];
        if front.is_zero() {
            continue;
        }
        let back = &c2[x.index_of(&s[p..]).expect("back face")];
        if back.is_zero() {
            continue;
        }
        let transport = if p == 0 {
            Rational::one()
        } else {
            w2.weight(s[0], s[p]).ok_or(CohomologyError::ComplexMismatch)?.clone()
        };
        out[k] = front * transport * back;
    }
    Ok(out)
}
