//! Seeded generators for weight systems and small complexes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cohomology::TwistedComplex;
use crate::local_system::{Edge, GaugeFunction, WeightCocycle};
use crate::scalar::{rational, Rational};
use crate::simplicial::{Complex, Simplex};

/// Bases used for random characters.
pub const BASES: [(i64, i64); 5] = [(2, 1), (3, 1), (3, 2), (5, 1), (1, 2)];

/// Integer 1-cocycles (additive triangle condition) whose classes form a
/// basis of untwisted `H^1(X; Q)`.
pub fn integral_h1_basis(x: &Complex) -> Vec<BTreeMap<Edge, BigInt>> {
    let low = x.skeleton(2);
    let w = WeightCocycle::trivial(&low);
    let tc = TwistedComplex::new(low, &w).expect("trivial system is a cocycle");
    let h = tc.cochains().cohomology_through(2);
    let Some(basis) = h.bases.get(1) else {
        return Vec::new();
    };
    basis
        .iter()
        .map(|z| {
            let lcm = z.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            x.edges()
                .iter()
                .zip(z)
                .filter(|(_, v)| !v.is_zero())
                .map(|(e, v)| ((e[0], e[1]), (v * Rational::from_integer(lcm.clone())).to_integer()))
                .collect()
        })
        .collect()
}

/// A random weight system: `t^m` for a random integer combination `m` of
/// the given classes (coefficients in `-2..=2`), then a random gauge.
pub fn random_system<R: Rng + ?Sized>(x: &Complex, classes: &[BTreeMap<Edge, BigInt>], rng: &mut R) -> WeightCocycle {
    let mut m: BTreeMap<Edge, BigInt> = BTreeMap::new();
    for class in classes {
        let c = BigInt::from(rng.gen_range(-2..=2));
        if c.is_zero() {
            continue;
        }
        for (e, v) in class {
            *m.entry(*e).or_insert_with(BigInt::zero) += &c * v;
        }
    }
    let (n, d) = *BASES.choose(rng).expect("nonempty");
    let w = WeightCocycle::from_integral_class(x, &m, &rational(n, d)).expect("sum of cocycles is a cocycle");
    w.gauge_transform(&GaugeFunction::random(x.vertex_count(), rng))
}

/// A random connected complex on `4..=8` vertices: a Hamiltonian path plus
/// random extra edges and triangles, closed under faces.
pub fn random_connected_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    let n = rng.gen_range(4..=8);
    let mut generators: Vec<Simplex> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
    for i in 0..n {
        for j in i + 2..n {
            if rng.gen_bool(0.3) {
                generators.push(vec![i, j]);
            }
        }
    }
    for _ in 0..rng.gen_range(0..=n) {
        let mut t: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(rng, 3).copied().collect();
        t.sort_unstable();
        generators.push(t);
    }
    Complex::from_maximal(n, generators).expect("generators are valid simplices")
}
