use std::sync::Arc;

use novikov::cohomology::{betti, coboundary_matrix, cup, induced_map, lefschetz_number, CohomologySpace};
use novikov::linalg::rank_mod_p;
use novikov::local_system::{GaugeFunction, WeightCocycle};
use novikov::random::{integral_h1_basis, random_connected_complex, random_system};
use novikov::scalar::{integer, rational};
use novikov::simplicial::{builtin, circle, product, Complex, SimplicialMap};
use novikov::verify::convolve;
use novikov::{Rational, RationalSparseMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn system(x: &Complex, rng: &mut ChaCha8Rng) -> WeightCocycle {
    random_system(x, &integral_h1_basis(x), rng)
}

fn cochain(x: &Complex, p: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..x.count(p)).map(|_| integer(rng.gen_range(-3..=3))).collect()
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(s: i64, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| x * integer(s)).collect()
}

fn delta(x: &Complex, w: &WeightCocycle, p: usize, c: &[Rational]) -> Vec<Rational> {
    coboundary_matrix(x, w, p).mul_vec(c).unwrap()
}

fn euler(b: &[usize]) -> i64 {
    b.iter().enumerate().map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn cup_complexes() -> Vec<Complex> {
    let s1 = builtin("s1_3").unwrap();
    let s2 = builtin("s2_4").unwrap();
    vec![builtin("t2_7").unwrap(), product(&s1, &s2).complex.as_ref().clone()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn betti_is_gauge_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_connected_complex(&mut r);
        let w = system(&x, &mut r);
        let u = GaugeFunction::random(x.vertex_count(), &mut r);
        prop_assert_eq!(betti(&x, &w).unwrap(), betti(&x, &w.gauge_transform(&u)).unwrap());
        prop_assert!(WeightCocycle::trivial(&x).gauge_transform(&u).is_exact(&x).is_some());
    }

    #[test]
    fn tensor_algebra(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_connected_complex(&mut r);
        let (a, b, c) = (system(&x, &mut r), system(&x, &mut r), system(&x, &mut r));
        prop_assert_eq!(a.tensor(&b).unwrap(), b.tensor(&a).unwrap());
        prop_assert_eq!(
            a.tensor(&b).unwrap().tensor(&c).unwrap(),
            a.tensor(&b.tensor(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert!(a.tensor(&a.inverse()).unwrap().is_trivial());
        prop_assert!(a.tensor(&b).unwrap().check_cocycle(&x).is_empty());
    }

    #[test]
    fn euler_characteristic_ignores_weights(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_connected_complex(&mut r);
        let w = system(&x, &mut r);
        prop_assert_eq!(euler(&betti(&x, &w).unwrap()), x.euler_characteristic());
    }

    #[test]
    fn cup_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        for x in cup_complexes() {
            let top = x.dim().unwrap();
            let (w2, w3) = (system(&x, &mut r), system(&x, &mut r));
            for (p, q, s) in [(0, 1, 1), (1, 1, 0), (1, 0, 1), (1, 1, 1), (0, 2, 1)] {
                if p + q + s > top {
                    continue;
                }
                let (a, b, c) = (cochain(&x, p, &mut r), cochain(&x, q, &mut r), cochain(&x, s, &mut r));
                let ab = cup(&x, &w2, (p, &a), (q, &b)).unwrap();
                let left = cup(&x, &w3, (p + q, &ab), (s, &c)).unwrap();
                let bc = cup(&x, &w3, (q, &b), (s, &c)).unwrap();
                let right = cup(&x, &w2.tensor(&w3).unwrap(), (p, &a), (q + s, &bc)).unwrap();
                prop_assert_eq!(left, right, "degrees {} {} {}", p, q, s);
            }
        }
    }

    #[test]
    fn cup_satisfies_leibniz(seed in any::<u64>()) {
        let mut r = rng(seed);
        for x in cup_complexes() {
            let top = x.dim().unwrap();
            let (w1, w2) = (system(&x, &mut r), system(&x, &mut r));
            let w12 = w1.tensor(&w2).unwrap();
            for p in 0..top {
                for q in 0..top - p {
                    let (a, b) = (cochain(&x, p, &mut r), cochain(&x, q, &mut r));
                    let left = delta(&x, &w12, p + q, &cup(&x, &w2, (p, &a), (q, &b)).unwrap());
                    let da_b = cup(&x, &w2, (p + 1, &delta(&x, &w1, p, &a)), (q, &b)).unwrap();
                    let a_db = cup(&x, &w2, (p, &a), (q + 1, &delta(&x, &w2, q, &b))).unwrap();
                    let sign = if p % 2 == 0 { 1 } else { -1 };
                    prop_assert_eq!(left, add(&da_b, &scale(sign, &a_db)), "degrees {} {}", p, q);
                }
            }
        }
    }

    #[test]
    fn kunneth_on_random_factors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_connected_complex(&mut r);
        let b = circle(r.gen_range(3..=4)).unwrap();
        let p = product(&a, &b);
        let trivial = |x: &Complex| betti(x, &WeightCocycle::trivial(x)).unwrap();
        prop_assert_eq!(trivial(&p.complex), convolve(&trivial(&a), &trivial(&b)));
    }

    #[test]
    fn identity_lefschetz_is_euler(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = Arc::new(random_connected_complex(&mut r));
        let w = system(&x, &mut r);
        let space = CohomologySpace::build(&x, &w).unwrap();
        let l = lefschetz_number(&SimplicialMap::identity(x.clone()), &space, None).unwrap();
        prop_assert_eq!(l, integer(euler(space.betti())));
    }

    #[test]
    fn rank_nullity(rows in 1usize..7, cols in 1usize..7, seed in any::<u64>()) {
        let mut r = rng(seed);
        let dense: Vec<Vec<Rational>> = (0..rows)
            .map(|_| (0..cols).map(|_| {
                if r.gen_bool(0.4) { rational(r.gen_range(-4..=4), r.gen_range(1..=3)) } else { integer(0) }
            }).collect())
            .collect();
        let m = RationalSparseMatrix::from_dense(&dense);
        let kernel = m.nullspace_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == integer(0)));
        }
        prop_assert!(rank_mod_p(&m, 1_000_000_007).unwrap() <= m.rank());
    }
}

/// Double cover `circle(6) -> circle(3)` followed by a rotation.
fn cover_and_rotation() -> (SimplicialMap, SimplicialMap) {
    let c6 = Arc::new(circle(6).unwrap());
    let c3 = Arc::new(circle(3).unwrap());
    let cover = SimplicialMap::new(c6, c3.clone(), (0..6).map(|v| v % 3).collect()).unwrap();
    let rotation = SimplicialMap::new(c3.clone(), c3, vec![1, 2, 0]).unwrap();
    (cover, rotation)
}

#[test]
fn pullback_respects_composition() {
    let (f, g) = cover_and_rotation();
    let gf = f.then(&g).unwrap();
    for t in [integer(1), integer(2), rational(3, 5)] {
        let (_, w) = novikov::suite::circle_with_holonomy(3, &t);
        assert_eq!(w.pullback(&g).pullback(&f), w.pullback(&gf));
    }
}

#[test]
fn induced_maps_compose() {
    let (f, g) = cover_and_rotation();
    let gf = f.then(&g).unwrap();
    for t in [integer(1), rational(1, 3), integer(2)] {
        let (_, wz) = novikov::suite::circle_with_holonomy(3, &t);
        let wy = wz.pullback(&g);
        let wx = wy.pullback(&f);
        let z = CohomologySpace::build(g.target(), &wz).unwrap();
        let y = CohomologySpace::build(g.source(), &wy).unwrap();
        let x = CohomologySpace::build(f.source(), &wx).unwrap();
        let f_star = induced_map(&f, &y, &x, None).unwrap();
        let g_star = induced_map(&g, &z, &y, None).unwrap();
        let gf_star = induced_map(&gf, &z, &x, None).unwrap();
        assert_eq!(f_star.compose(&g_star), gf_star, "holonomy {t}");
    }
}

#[test]
fn double_cover_squares_holonomy() {
    let (f, _) = cover_and_rotation();
    let (_, w) = novikov::suite::circle_with_holonomy(3, &integer(2));
    let down = w.holonomy(&[0, 1, 2, 0]).unwrap();
    let up = w.pullback(&f).holonomy(&[0, 1, 2, 3, 4, 5, 0]).unwrap();
    assert_eq!(up, &down * &down);
    assert_ne!(down, integer(1));
}
