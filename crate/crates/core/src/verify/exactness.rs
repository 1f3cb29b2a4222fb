use num_traits::Zero;

use super::{Engine, Report, VerifyError};
use crate::cohomology::{Cochain, CohomologyError, CohomologySpace, TwistedComplex};
use crate::linalg::SparseMatrix;
use crate::local_system::WeightCocycle;
use crate::scalar::Rational;
use crate::simplicial::Complex;
use crate::RationalSparseMatrix;

/// A finite sequence `0 -> V_0 -> V_1 -> ... -> V_m -> 0` of linear maps
/// between cohomology groups, written in their chosen bases.
#[derive(Clone, Debug, Default)]
pub struct ExactSequence {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    /// `maps[i]` sends `V_i` to `V_{i+1}`: `dims[i+1]` rows, `dims[i]` columns.
    pub maps: Vec<RationalSparseMatrix>,
}

impl ExactSequence {
    fn push_node(&mut self, label: String, dim: usize) {
        self.labels.push(label);
        self.dims.push(dim);
    }

    fn push_map(&mut self, m: RationalSparseMatrix) {
        let i = self.maps.len();
        assert_eq!((m.nrows(), m.ncols()), (self.dims[i + 1], self.dims[i]), "map {i} has the wrong shape");
        self.maps.push(m);
    }

    /// Exactness at every node, including the two zero ends. A node fails
    /// when two consecutive maps do not compose to zero or when
    /// `rank(in) + rank(out) != dim`.
    pub fn failures(&self) -> Vec<String> {
        let ranks: Vec<usize> = self.maps.iter().map(SparseMatrix::rank).collect();
        let mut out = Vec::new();
        for (i, &dim) in self.dims.iter().enumerate() {
            let rank_in = if i == 0 { 0 } else { ranks[i - 1] };
            let rank_out = ranks.get(i).copied().unwrap_or(0);
            if i > 0 && i < self.maps.len() && !self.maps[i].mul(&self.maps[i - 1]).is_zero() {
                out.push(format!("at {}: consecutive maps do not compose to zero", self.labels[i]));
            }
            if rank_in + rank_out != dim {
                out.push(format!(
                    "at {}: dim {dim} but rank in {rank_in} + rank out {rank_out}",
                    self.labels[i]
                ));
            }
        }
        out
    }

    fn report(&self, claim: &str, subject: String) -> Report {
        let ranks: Vec<usize> = self.maps.iter().map(SparseMatrix::rank).collect();
        let nodes: Vec<String> = self.labels.iter().zip(&self.dims).map(|(l, d)| format!("{l}={d}")).collect();
        let mut report = Report::new(claim, subject).sides("dims", &nodes, "map ranks", &ranks);
        for f in self.failures() {
            report.fail(f);
        }
        report
    }
}

fn dim(space: &CohomologySpace, p: usize) -> usize {
    space.betti().get(p).copied().unwrap_or(0)
}

/// Matrix of the map induced on `H^p(from) -> H^q(to)` by a cochain map.
fn class_matrix(
    from: &CohomologySpace,
    p: usize,
    to: &CohomologySpace,
    q: usize,
    cochain: impl Fn(&[Rational]) -> Cochain,
) -> Result<RationalSparseMatrix, String> {
    let (rows, cols) = (dim(to, q), dim(from, p));
    let mut m = SparseMatrix::new(rows, cols);
    if rows == 0 || cols == 0 {
        return Ok(m);
    }
    let images: Vec<Cochain> = from.result.bases[p].iter().map(|z| cochain(z)).collect();
    let coords = to
        .complex
        .cochains()
        .coordinates_many(&to.result, q, &images)
        .ok_or_else(|| format!("image of a degree {p} class is not a cocycle"))?;
    for (j, c) in coords.into_iter().enumerate() {
        for (i, v) in c.into_iter().enumerate() {
            m.insert(i, j, v);
        }
    }
    Ok(m)
}

fn vstack(top: &RationalSparseMatrix, bottom: &RationalSparseMatrix) -> RationalSparseMatrix {
    top.transpose().hstack(&bottom.transpose()).transpose()
}

fn negate(m: &RationalSparseMatrix) -> RationalSparseMatrix {
    m.try_map(|v| Ok::<_, ()>(-v)).expect("infallible")
}

/// Values of a cochain of `big` on the simplices of the subcomplex `small`.
fn restrict(big: &Complex, small: &Complex, p: usize, c: &[Rational]) -> Cochain {
    small
        .simplices(p)
        .iter()
        .map(|s| c[big.index_of(s).expect("subcomplex")].clone())
        .collect()
}

/// A cochain of the subcomplex `small` extended by zero to `big`.
fn extend(small: &Complex, big: &Complex, p: usize, c: &[Rational]) -> Cochain {
    let mut out = vec![Rational::zero(); big.count(p)];
    for (s, v) in small.simplices(p).iter().zip(c) {
        out[big.index_of(s).expect("subcomplex")] = v.clone();
    }
    out
}

fn twisted(x: &Complex, w: &WeightCocycle) -> Result<TwistedComplex, CohomologyError> {
    TwistedComplex::new(x.clone(), &w.restrict(x))
}

/// The long exact sequence of the pair `(X, A)`:
///
/// `... -> H^p(X, A) -> H^p(X) -> H^p(A) -> H^{p+1}(X, A) -> ...`
///
/// The connecting map extends a cocycle of `A` by zero, applies `δ_X` and
/// reads off the result, which vanishes on `A`.
pub fn les_of_pair(engine: &Engine, x: &Complex, a: &Complex, w: &WeightCocycle) -> Result<Report, VerifyError> {
    let rel_complex = TwistedComplex::relative(x.clone(), a, w)?;
    let rel = engine.space("(X, A)", rel_complex);
    let full = engine.space("X", twisted(x, w)?);
    let sub = engine.space("A", twisted(a, w)?);

    let mut seq = ExactSequence::default();
    let top = x.degrees();
    for p in 0..top {
        seq.push_node(format!("H{p}(X,A)"), dim(&rel, p));
        seq.push_node(format!("H{p}(X)"), dim(&full, p));
        seq.push_node(format!("H{p}(A)"), dim(&sub, p));
    }
    let fail = VerifyError::Inconsistent;
    for p in 0..top {
        let j = class_matrix(&rel, p, &full, p, |z| rel.complex.extend_by_zero(p, z)).map_err(fail)?;
        seq.push_map(j);
        let i = class_matrix(&full, p, &sub, p, |z| restrict(x, a, p, z)).map_err(fail)?;
        seq.push_map(i);
        if p + 1 < top {
            let connecting = class_matrix(&sub, p, &rel, p + 1, |z| {
                let image = full.complex.cochains().apply(p, &extend(a, x, p, z));
                rel.complex.restrict_to_support(p + 1, &image)
            })
            .map_err(fail)?;
            seq.push_map(connecting);
        }
    }
    Ok(seq.report(
        "les",
        format!("pair with f-vectors {:?} and {:?}", x.f_vector(), a.f_vector()),
    ))
}

/// The Mayer–Vietoris sequence of `X = U ∪ V` with `W = U ∩ V`:
///
/// `... -> H^p(X) -> H^p(U) ⊕ H^p(V) -> H^p(W) -> H^{p+1}(X) -> ...`
///
/// with restriction, difference of restrictions, and the connecting map
/// that extends a cocycle of `W` by zero to `U`, applies `δ_U`, and
/// extends the result by zero to `X`.
pub fn verify_mayer_vietoris(
    engine: &Engine,
    x: &Complex,
    u: &Complex,
    v: &Complex,
    w: &WeightCocycle,
) -> Result<Report, VerifyError> {
    if !u.is_subcomplex_of(x) || !v.is_subcomplex_of(x) {
        return Err(CohomologyError::NotASubcomplex.into());
    }
    let cover = u.union(v);
    if cover.f_vector() != x.f_vector() {
        return Err(VerifyError::Refused("U and V do not cover X".into()));
    }
    let meet = u.intersection(v);
    let sx = engine.space("X", twisted(x, w)?);
    let su = engine.space("U", twisted(u, w)?);
    let sv = engine.space("V", twisted(v, w)?);
    let sw = engine.space("U and V", twisted(&meet, w)?);

    let mut seq = ExactSequence::default();
    let top = x.degrees();
    for p in 0..top {
        seq.push_node(format!("H{p}(X)"), dim(&sx, p));
        seq.push_node(format!("H{p}(U)+H{p}(V)"), dim(&su, p) + dim(&sv, p));
        seq.push_node(format!("H{p}(U&V)"), dim(&sw, p));
    }
    let fail = VerifyError::Inconsistent;
    for p in 0..top {
        let to_u = class_matrix(&sx, p, &su, p, |z| restrict(x, u, p, z)).map_err(fail)?;
        let to_v = class_matrix(&sx, p, &sv, p, |z| restrict(x, v, p, z)).map_err(fail)?;
        seq.push_map(vstack(&to_u, &to_v));
        let from_u = class_matrix(&su, p, &sw, p, |z| restrict(u, &meet, p, z)).map_err(fail)?;
        let from_v = class_matrix(&sv, p, &sw, p, |z| restrict(v, &meet, p, z)).map_err(fail)?;
        seq.push_map(from_u.hstack(&negate(&from_v)));
        if p + 1 < top {
            let connecting = class_matrix(&sw, p, &sx, p + 1, |z| {
                let on_u = su.complex.cochains().apply(p, &extend(&meet, u, p, z));
                extend(u, x, p + 1, &on_u)
            })
            .map_err(fail)?;
            seq.push_map(connecting);
        }
    }
    let mut report = seq.report(
        "mayer-vietoris",
        format!(
            "cover with f-vectors {:?} and {:?}, intersection {:?}",
            u.f_vector(),
            v.f_vector(),
            meet.f_vector()
        ),
    );
    report.note(format!("betti(X, w) = {:?}", sx.betti()));
    Ok(report)
}
