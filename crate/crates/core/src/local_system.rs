//! Rank-one local systems given by multiplicative edge weights.
//!
//! A [`WeightCocycle`] assigns a positive rational to every edge `(i, j)`
//! with `i < j`. The weight is the parallel transport from the fiber over
//! `j` to the fiber over `i`; the reverse direction uses the reciprocal.
//! The triangle condition `w(a,b) w(b,c) = w(a,c)` is the discrete form of
//! closedness of the defining 1-form, and it is exactly what makes the
//! twisted coboundary square to zero.
//!
//! A weight of the form `t^m` for an integral 1-cocycle `m` plays the role
//! of `exp` of a closed 1-form; with the transport direction above, `w`
//! and `inverse(w)` model opposite signs of the form.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use thiserror::Error;

use crate::scalar::{format_rational, is_positive, Rational};
use crate::simplicial::{Complex, Product, Simplex, SimplicialMap};

pub type Edge = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalSystemError {
    #[error("weights missing on edges {missing:?}; weights given on non-edges {extra:?}")]
    EdgeSetMismatch { missing: Vec<Edge>, extra: Vec<Edge> },
    #[error("weight on edge {0:?} is not positive")]
    NonPositive(Edge),
    #[error("({0}, {1}) is not an edge of the complex")]
    NotAnEdge(usize, usize),
    #[error("integral class violates m(a,b) + m(b,c) = m(a,c) on {0:?}")]
    AdditiveViolation(Simplex),
    #[error("base of an integral class must be positive")]
    NonPositiveBase,
    #[error("loop {cycle:?} has holonomy {holonomy}, so the system is not trivial there")]
    NotTrivializable { cycle: Vec<usize>, holonomy: String },
    #[error("region is not connected")]
    NotConnected,
    #[error("region is not a subcomplex")]
    NotSubcomplex,
    #[error("a loop must start and end at the same vertex")]
    NotALoop,
    #[error("weight systems live on different edge sets")]
    ComplexMismatch,
}

/// One failure of the triangle condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleViolation {
    MissingEdge(Edge),
    Triangle { simplex: Simplex, lhs: Rational, rhs: Rational },
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleViolation::MissingEdge(e) => write!(f, "no weight on edge {e:?}"),
            CocycleViolation::Triangle { simplex, lhs, rhs } => write!(
                f,
                "{simplex:?}: w(a,b) w(b,c) = {} but w(a,c) = {}",
                format_rational(lhs),
                format_rational(rhs)
            ),
        }
    }
}

/// Multiplicative rank-one local system on the edges of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCocycle {
    weights: BTreeMap<Edge, Rational>,
}

/// Positive rescaling of the vertex fibers; unlisted labels scale by 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeFunction {
    values: Vec<Rational>,
}

impl GaugeFunction {
    pub fn one(vertex_count: usize) -> Self {
        GaugeFunction {
            values: vec![Rational::one(); vertex_count],
        }
    }

    pub fn from_values(values: Vec<Rational>) -> Result<Self, LocalSystemError> {
        if let Some(v) = values.iter().position(|q| !is_positive(q)) {
            return Err(LocalSystemError::NonPositive((v, v)));
        }
        Ok(GaugeFunction { values })
    }

    pub fn value(&self, v: usize) -> Rational {
        self.values.get(v).cloned().unwrap_or_else(Rational::one)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Random gauge with values `p/q`, `p, q` in `1..=5`.
    pub fn random<R: Rng + ?Sized>(vertex_count: usize, rng: &mut R) -> Self {
        let values = (0..vertex_count)
            .map(|_| {
                Rational::new(
                    BigInt::from(rng.gen_range(1..=5)),
                    BigInt::from(rng.gen_range(1..=5)),
                )
            })
            .collect();
        GaugeFunction { values }
    }
}

impl WeightCocycle {
    /// Weight 1 on every edge.
    pub fn trivial(x: &Complex) -> Self {
        WeightCocycle {
            weights: x.edges().iter().map(|e| ((e[0], e[1]), Rational::one())).collect(),
        }
    }

    /// Weights on exactly the edges of `x`, all positive. The triangle
    /// condition is checked separately by [`WeightCocycle::check_cocycle`].
    pub fn new(x: &Complex, weights: BTreeMap<Edge, Rational>) -> Result<Self, LocalSystemError> {
        let edges: BTreeSet<Edge> = x.edges().iter().map(|e| (e[0], e[1])).collect();
        let missing: Vec<Edge> = edges.iter().filter(|e| !weights.contains_key(e)).copied().collect();
        let extra: Vec<Edge> = weights.keys().filter(|e| !edges.contains(e)).copied().collect();
        if !missing.is_empty() || !extra.is_empty() {
            return Err(LocalSystemError::EdgeSetMismatch { missing, extra });
        }
        if let Some((e, _)) = weights.iter().find(|(_, w)| !is_positive(w)) {
            return Err(LocalSystemError::NonPositive(*e));
        }
        Ok(WeightCocycle { weights })
    }

    /// Builds weights from a function of the increasing edge `(i, j)`.
    pub fn from_fn(x: &Complex, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self, LocalSystemError> {
        let weights = x.edges().iter().map(|e| ((e[0], e[1]), f(e[0], e[1]))).collect();
        WeightCocycle::new(x, weights)
    }

    /// `t^m` for an integral 1-cochain `m`; edges absent from `m` get exponent 0.
    pub fn from_integral_class(
        x: &Complex,
        m: &BTreeMap<Edge, BigInt>,
        t: &Rational,
    ) -> Result<Self, LocalSystemError> {
        if !is_positive(t) {
            return Err(LocalSystemError::NonPositiveBase);
        }
        if let Some(&(i, j)) = m.keys().find(|&&(i, j)| !x.contains(&[i, j])) {
            return Err(LocalSystemError::NotAnEdge(i, j));
        }
        let zero = BigInt::zero();
        let exp = |i: usize, j: usize| m.get(&(i, j)).unwrap_or(&zero);
        for s in x.simplices(2) {
            let (a, b, c) = (s[0], s[1], s[2]);
            if exp(a, b) + exp(b, c) != *exp(a, c) {
                return Err(LocalSystemError::AdditiveViolation(s.clone()));
            }
        }
        WeightCocycle::from_fn(x, |i, j| Pow::pow(t, exp(i, j)))
    }

    pub fn weights(&self) -> &BTreeMap<Edge, Rational> {
        &self.weights
    }

    /// Weight of the increasing edge `(i, j)`.
    pub fn weight(&self, i: usize, j: usize) -> Option<&Rational> {
        self.weights.get(&(i, j))
    }

    /// Carries the fiber over `source` into the fiber over `dest` along the
    /// edge between them (either orientation); 1 when they coincide.
    pub fn transport(&self, dest: usize, source: usize) -> Option<Rational> {
        use std::cmp::Ordering::*;
        match dest.cmp(&source) {
            Equal => Some(Rational::one()),
            Less => self.weights.get(&(dest, source)).cloned(),
            Greater => self.weights.get(&(source, dest)).map(|w| w.recip()),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.values().all(One::is_one)
    }

    /// Every 2-simplex violating `w(a,b) w(b,c) = w(a,c)`, and every edge without a weight.
    pub fn check_cocycle(&self, x: &Complex) -> Vec<CocycleViolation> {
        let mut out: Vec<CocycleViolation> = x
            .edges()
            .iter()
            .filter(|e| !self.weights.contains_key(&(e[0], e[1])))
            .map(|e| CocycleViolation::MissingEdge((e[0], e[1])))
            .collect();
        if !out.is_empty() {
            return out;
        }
        for s in x.simplices(2) {
            let (a, b, c) = (s[0], s[1], s[2]);
            let lhs = &self.weights[&(a, b)] * &self.weights[&(b, c)];
            let rhs = self.weights[&(a, c)].clone();
            if lhs != rhs {
                out.push(CocycleViolation::Triangle {
                    simplex: s.clone(),
                    lhs,
                    rhs,
                });
            }
        }
        out
    }

    /// Ordered product of transports along `cycle` (first vertex repeated at the end).
    pub fn holonomy(&self, cycle: &[usize]) -> Result<Rational, LocalSystemError> {
        if cycle.is_empty() || cycle.first() != cycle.last() {
            return Err(LocalSystemError::NotALoop);
        }
        let mut acc = Rational::one();
        for step in cycle.windows(2) {
            let t = self
                .transport(step[0], step[1])
                .ok_or(LocalSystemError::NotAnEdge(step[0].min(step[1]), step[0].max(step[1])))?;
            acc *= t;
        }
        Ok(acc)
    }

    /// `w'(i,j) = u(i)^-1 w(i,j) u(j)`.
    pub fn gauge_transform(&self, u: &GaugeFunction) -> WeightCocycle {
        WeightCocycle {
            weights: self
                .weights
                .iter()
                .map(|(&(i, j), w)| ((i, j), w * u.value(j) / u.value(i)))
                .collect(),
        }
    }

    /// A gauge `u` with `w(i,j) = u(i)^-1 u(j)` on every edge, normalised to
    /// 1 at the least vertex of each component; `None` if the system is not
    /// a gauge transform of the trivial one.
    pub fn is_exact(&self, x: &Complex) -> Option<GaugeFunction> {
        let forest = SpanningForest::new(x, self);
        forest.obstruction(x, self).is_none().then_some(forest.gauge)
    }

    /// Gauge-transforms so that every edge of the connected, simply
    /// connected subcomplex `region` carries weight 1. Returns the new system
    /// and the gauge `g` with `new = gauge_transform(self, g)`.
    pub fn gauge_normalize_on(
        &self,
        x: &Complex,
        region: &Complex,
    ) -> Result<(WeightCocycle, GaugeFunction), LocalSystemError> {
        if !region.is_subcomplex_of(x) {
            return Err(LocalSystemError::NotSubcomplex);
        }
        if !region.is_connected() {
            return Err(LocalSystemError::NotConnected);
        }
        let local = self.restrict(region);
        let forest = SpanningForest::new(region, &local);
        if let Some((cycle, holonomy)) = forest.obstruction(region, &local) {
            return Err(LocalSystemError::NotTrivializable {
                cycle,
                holonomy: format_rational(&holonomy),
            });
        }
        let mut values = vec![Rational::one(); x.vertex_count()];
        for v in region.vertices() {
            values[v] = forest.gauge.value(v).recip();
        }
        let g = GaugeFunction { values };
        Ok((self.gauge_transform(&g), g))
    }

    /// Pointwise product; both systems must live on the same edges.
    pub fn tensor(&self, other: &WeightCocycle) -> Result<WeightCocycle, LocalSystemError> {
        if self.weights.len() != other.weights.len() || !self.weights.keys().eq(other.weights.keys()) {
            return Err(LocalSystemError::ComplexMismatch);
        }
        Ok(WeightCocycle {
            weights: self
                .weights
                .iter()
                .zip(other.weights.values())
                .map(|((&e, a), b)| (e, a * b))
                .collect(),
        })
    }

    pub fn inverse(&self) -> WeightCocycle {
        WeightCocycle {
            weights: self.weights.iter().map(|(&e, w)| (e, w.recip())).collect(),
        }
    }

    /// `w'(i,j) = transport(f(i), f(j))`, which is 1 on collapsed edges.
    pub fn pullback(&self, f: &SimplicialMap) -> WeightCocycle {
        WeightCocycle {
            weights: f
                .source()
                .edges()
                .iter()
                .map(|e| {
                    let w = self
                        .transport(f.apply(e[0]), f.apply(e[1]))
                        .expect("simplicial map sends edges to edges or vertices");
                    ((e[0], e[1]), w)
                })
                .collect(),
        }
    }

    /// Restriction to a subcomplex.
    pub fn restrict(&self, sub: &Complex) -> WeightCocycle {
        WeightCocycle {
            weights: sub
                .edges()
                .iter()
                .map(|e| ((e[0], e[1]), self.weights[&(e[0], e[1])].clone()))
                .collect(),
        }
    }

    /// `pr1^* wa ⊗ pr2^* wb` on the staircase product.
    pub fn product_system(product: &Product, wa: &WeightCocycle, wb: &WeightCocycle) -> WeightCocycle {
        wa.pullback(&product.first)
            .tensor(&wb.pullback(&product.second))
            .expect("both pullbacks live on the product edges")
    }
}

/// BFS spanning forest rooted at the least vertex of each component, with
/// the gauge obtained by integrating transports along tree edges.
struct SpanningForest {
    parent: Vec<Option<usize>>,
    gauge: GaugeFunction,
}

impl SpanningForest {
    fn new(x: &Complex, w: &WeightCocycle) -> Self {
        let n = x.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for e in x.edges() {
            adjacency[e[0]].push(e[1]);
            adjacency[e[1]].push(e[0]);
        }
        let mut seen = vec![false; n];
        let mut parent = vec![None; n];
        let mut values = vec![Rational::one(); n];
        for root in x.vertices() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                for &b in &adjacency[a] {
                    if !seen[b] {
                        seen[b] = true;
                        parent[b] = Some(a);
                        values[b] = &values[a] * w.transport(a, b).expect("edge");
                        queue.push_back(b);
                    }
                }
            }
        }
        SpanningForest {
            parent,
            gauge: GaugeFunction { values },
        }
    }

    fn path_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut path = vec![v];
        while let Some(p) = self.parent[v] {
            path.push(p);
            v = p;
        }
        path
    }

    /// First off-tree edge (lexicographically) whose fundamental loop has holonomy != 1.
    fn obstruction(&self, x: &Complex, w: &WeightCocycle) -> Option<(Vec<usize>, Rational)> {
        for e in x.edges() {
            let (i, j) = (e[0], e[1]);
            let expected = self.gauge.value(j) / self.gauge.value(i);
            if w.weights[&(i, j)] == expected {
                continue;
            }
            // Loop i -> j -> (tree) -> i.
            let mut up_j = self.path_to_root(j);
            let mut up_i = self.path_to_root(i);
            while up_i.len() > 1 && up_j.len() > 1 && up_i[up_i.len() - 2] == up_j[up_j.len() - 2] {
                up_i.pop();
                up_j.pop();
            }
            let mut cycle = vec![i];
            cycle.extend(up_j.iter().copied());
            cycle.extend(up_i.iter().rev().skip(1).copied());
            let holonomy = w.holonomy(&cycle).expect("loop along edges");
            return Some((cycle, holonomy));
        }
        None
    }
}
