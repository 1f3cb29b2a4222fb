use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg::{rank_mod_p, LinalgError, SparseMatrix};
use crate::scalar::Rational;
use crate::RationalSparseMatrix;

/// A cochain as its dense coefficient vector in simplex order.
pub type Cochain = Vec<Rational>;

/// Finite cochain complex `C^0 -> C^1 -> ... -> C^n` over the rationals.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    /// `coboundaries[p]` maps `C^p` to `C^{p+1}`; there are `dims.len() - 1` of them.
    coboundaries: Vec<RationalSparseMatrix>,
}

/// Dimensions and representatives of `H^p` in every degree.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyResult {
    pub betti: Vec<usize>,
    pub bases: Vec<Vec<Cochain>>,
    pub euler_twisted: i64,
}

impl CohomologyResult {
    pub fn euler_from_betti(betti: &[usize]) -> i64 {
        betti
            .iter()
            .enumerate()
            .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub fn betti_from_ranks(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len())
        .map(|p| {
            let out = ranks.get(p).copied().unwrap_or(0);
            let incoming = if p == 0 { 0 } else { ranks[p - 1] };
            dims[p] - out - incoming
        })
        .collect()
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, coboundaries: Vec<RationalSparseMatrix>) -> Self {
        assert_eq!(coboundaries.len() + 1, dims.len().max(1));
        for (p, d) in coboundaries.iter().enumerate() {
            assert_eq!((d.nrows(), d.ncols()), (dims[p + 1], dims[p]), "coboundary {p} has wrong shape");
        }
        CochainComplex { dims, coboundaries }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn degrees(&self) -> usize {
        self.dims.len()
    }

    /// `δ^p`, or `None` in the top degree (where it is the zero map).
    pub fn coboundary(&self, p: usize) -> Option<&RationalSparseMatrix> {
        self.coboundaries.get(p)
    }

    pub fn coboundaries(&self) -> &[RationalSparseMatrix] {
        &self.coboundaries
    }

    pub fn apply(&self, p: usize, c: &[Rational]) -> Cochain {
        match self.coboundaries.get(p) {
            Some(d) => d.mul_vec(c).expect("cochain has the right length"),
            None => Vec::new(),
        }
    }

    /// First degree `p` with `δ^{p+1} δ^p != 0`.
    pub fn square_zero_failure(&self) -> Option<usize> {
        self.coboundaries
            .windows(2)
            .position(|pair| !pair[1].mul(&pair[0]).is_zero())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.coboundaries.iter().map(SparseMatrix::rank).collect()
    }

    pub fn ranks_mod_p(&self, p: u64) -> Result<Vec<usize>, LinalgError> {
        self.coboundaries.iter().map(|d| rank_mod_p(d, p)).collect()
    }

    pub fn betti(&self) -> Vec<usize> {
        betti_from_ranks(&self.dims, &self.ranks())
    }

    /// Representatives by completing a basis of `im δ^{p-1}` (columns in
    /// order) with kernel vectors of `δ^p` in the order returned by
    /// [`SparseMatrix::nullspace_basis`].
    pub fn cohomology(&self) -> CohomologyResult {
        self.cohomology_through(self.degrees())
    }

    /// [`CochainComplex::cohomology`] restricted to degrees below `degrees`;
    /// `euler_twisted` then only sums those degrees.
    pub fn cohomology_through(&self, degrees: usize) -> CohomologyResult {
        let degrees = degrees.min(self.degrees());
        let mut betti = Vec::with_capacity(degrees);
        let mut bases = Vec::with_capacity(degrees);
        for p in 0..degrees {
            let n = self.dims[p];
            let kernel: Vec<Cochain> = match self.coboundaries.get(p) {
                Some(d) => d.nullspace_basis(),
                None => (0..n).map(|i| unit(n, i)).collect(),
            };
            let mut echelon = Echelon::default();
            if p > 0 {
                let d = &self.coboundaries[p - 1];
                let mut columns = vec![vec![Rational::zero(); n]; d.ncols()];
                for (r, c, v) in d.entries() {
                    columns[c][r] = v.clone();
                }
                for col in columns {
                    echelon.insert(col);
                }
            }
            let image_rank = echelon.rank();
            let target = kernel.len() - image_rank;
            let mut reps = Vec::with_capacity(target);
            for z in kernel {
                if reps.len() == target {
                    break;
                }
                if echelon.insert(z.clone()) {
                    reps.push(z);
                }
            }
            debug_assert_eq!(reps.len(), target);
            betti.push(reps.len());
            bases.push(reps);
        }
        let euler_twisted = CohomologyResult::euler_from_betti(&betti);
        CohomologyResult {
            betti,
            bases,
            euler_twisted,
        }
    }

    /// Coordinates of the class of the cocycle `z` in the basis of
    /// `result.bases[p]`; `None` if `z` is not a cocycle.
    pub fn coordinates(&self, result: &CohomologyResult, p: usize, z: &[Rational]) -> Option<Vec<Rational>> {
        let mut all = self.coordinates_many(result, p, std::slice::from_ref(&z.to_vec()))?;
        all.pop()
    }

    /// Coordinates of several cocycles at once.
    pub fn coordinates_many(
        &self,
        result: &CohomologyResult,
        p: usize,
        cocycles: &[Cochain],
    ) -> Option<Vec<Vec<Rational>>> {
        let n = self.dims[p];
        let basis = &result.bases[p];
        let mut reps = SparseMatrix::new(n, basis.len());
        for (j, z) in basis.iter().enumerate() {
            for (i, v) in z.iter().enumerate() {
                reps.insert(i, j, v.clone());
            }
        }
        let system = match p.checked_sub(1) {
            Some(q) => self.coboundaries[q].hstack(&reps),
            None => reps,
        };
        let offset = system.ncols() - basis.len();
        cocycles
            .iter()
            .map(|z| {
                assert_eq!(z.len(), n, "cochain length");
                if self.apply(p, z).iter().any(|v| !v.is_zero()) {
                    return None;
                }
                let x = system
                    .solve(z)
                    .expect("lengths checked")
                    .expect("every cocycle is a coboundary plus a combination of representatives");
                Some(x[offset..].to_vec())
            })
            .collect()
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Cochain {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Incremental row-echelon basis keyed by leading index.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: BTreeMap<usize, Cochain>,
}

impl Echelon {
    /// Reduces `v` against the basis; keeps it and returns true if independent.
    pub(crate) fn insert(&mut self, mut v: Cochain) -> bool {
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(row) => {
                    let f = v[lead].clone();
                    for (a, b) in v.iter_mut().zip(row).skip(lead) {
                        if !b.is_zero() {
                            *a -= &f * b;
                        }
                    }
                }
                None => {
                    let inv = v[lead].recip();
                    for a in v.iter_mut().skip(lead) {
                        *a *= &inv;
                    }
                    self.rows.insert(lead, v);
                    return true;
                }
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::integer;

    /// Untwisted circle on three vertices: C^0 = C^1 = Q^3.
    fn circle_complex() -> CochainComplex {
        let d = SparseMatrix::from_dense(&[
            vec![integer(-1), integer(1), integer(0)],
            vec![integer(-1), integer(0), integer(1)],
            vec![integer(0), integer(-1), integer(1)],
        ]);
        CochainComplex::new(vec![3, 3], vec![d])
    }

    #[test]
    fn circle_cohomology() {
        let cc = circle_complex();
        assert_eq!(cc.betti(), vec![1, 1]);
        let h = cc.cohomology();
        assert_eq!(h.betti, vec![1, 1]);
        assert_eq!(h.euler_twisted, 0);
        assert_eq!(h.bases[0], vec![vec![integer(1); 3]]);
        // Every edge indicator is a generator up to sign and coboundaries.
        let coords = cc.coordinates(&h, 1, &unit(3, 1)).unwrap();
        assert_eq!(coords.len(), 1);
        assert!(!coords[0].is_zero());
        assert!(cc.coordinates(&h, 0, &unit(3, 0)).is_none());
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = Echelon::default();
        assert!(e.insert(vec![integer(1), integer(2)]));
        assert!(!e.insert(vec![integer(2), integer(4)]));
        assert!(e.insert(vec![integer(0), integer(3)]));
        assert!(!e.insert(vec![integer(5), integer(-1)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn betti_bookkeeping() {
        assert_eq!(betti_from_ranks(&[3, 3], &[2]), vec![1, 1]);
        assert_eq!(betti_from_ranks(&[1], &[]), vec![1]);
        assert_eq!(CohomologyResult::euler_from_betti(&[1, 2, 1]), 0);
    }
}
