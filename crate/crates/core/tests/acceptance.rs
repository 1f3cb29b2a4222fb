//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion.
//!
//! The library suite checks each theorem against the library's own other
//! code paths. This target adds oracles written here from scratch: a dense
//! elimination for the circle matrices, a fixed-simplex count for the Hopf
//! trace, and closed-form Betti numbers for the product and blow-up cases.

use std::collections::BTreeMap;
use std::sync::Arc;

use novikov::cohomology::{betti, lefschetz_number, CohomologySpace};
use novikov::local_system::WeightCocycle;
use novikov::scalar::{integer, rational};
use novikov::simplicial::{builtin, circle, product, Complex, SimplicialMap};
use novikov::suite::{run_all, SuiteConfig};
use novikov::verify::{blowup_model, convolve};
use novikov::Rational;
use num_traits::{One, Zero};

/// Rank by textbook dense Gaussian elimination.
fn dense_rank(mut a: Vec<Vec<Rational>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                let pivot = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Criterion 1 oracle: the k x k twisted incidence matrix of the circle
/// with transport `t` on the closing edge, written out by hand.
fn circle_oracle() -> Vec<String> {
    let mut failures = Vec::new();
    for k in 3..=5usize {
        for t in [rational(2, 1), rational(3, 2), rational(5, 1), rational(1, 1)] {
            let mut edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
            edges.push((0, k - 1));
            edges.sort_unstable();
            // (δc)(a, b) = w(a, b) c(b) - c(a)
            let matrix: Vec<Vec<Rational>> = edges
                .iter()
                .map(|&(a, b)| {
                    let mut row = vec![Rational::zero(); k];
                    row[a] = integer(-1);
                    row[b] = if (a, b) == (0, k - 1) { t.clone() } else { Rational::one() };
                    row
                })
                .collect();
            let r = dense_rank(matrix);
            let expected = vec![k - r, k - r];
            let (c, w) = novikov::suite::circle_with_holonomy(k, &t);
            let got = betti(&c, &w).unwrap();
            if got != expected {
                failures.push(format!("circle({k}), t = {t}: library {got:?}, oracle {expected:?}"));
            }
            if (t == Rational::one()) != (expected == vec![1, 1]) {
                failures.push(format!("circle({k}), t = {t}: oracle rank {r}"));
            }
        }
    }
    failures
}

/// Criterion 3 oracle: closed-form Betti numbers of the factors, multiplied
/// as polynomials, against products computed by the library.
fn kunneth_oracle() -> Vec<String> {
    let s1 = builtin("s1_3").unwrap();
    let s2 = builtin("s2_4").unwrap();
    let t2 = builtin("t2_7").unwrap();
    let known: [(&str, &Complex, Vec<usize>); 3] = [
        ("s1_3", &s1, vec![1, 1]),
        ("s2_4", &s2, vec![1, 0, 1]),
        ("t2_7", &t2, vec![1, 2, 1]),
    ];
    let mut failures = Vec::new();
    for (na, a, ba) in &known {
        for (nb, b, bb) in &known {
            let p = product(a, b);
            let got = betti(&p.complex, &WeightCocycle::trivial(&p.complex)).unwrap();
            if got != convolve(ba, bb) {
                failures.push(format!("{na} x {nb}: {got:?}"));
            }
        }
    }
    failures
}

/// Sign of the permutation `perm` of `0..n`.
fn parity(perm: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Hopf trace: simplices mapped onto themselves, counted with the sign of
/// the induced vertex permutation.
fn hopf_trace(f: &SimplicialMap) -> i64 {
    let x = f.source();
    let mut total = 0;
    for p in 0..x.degrees() {
        for s in x.simplices(p) {
            let image: Vec<usize> = s.iter().map(|&v| f.apply(v)).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            if sorted != *s {
                continue;
            }
            let perm: Vec<usize> = image.iter().map(|v| s.iter().position(|u| u == v).unwrap()).collect();
            total += if p % 2 == 0 { parity(&perm) } else { -parity(&perm) };
        }
    }
    total
}

/// Criterion 8 oracle.
fn lefschetz_oracle() -> Vec<String> {
    let mut failures = Vec::new();
    let c = Arc::new(circle(3).unwrap());
    let (_, hol2) = novikov::suite::circle_with_holonomy(3, &rational(2, 1));
    let s1 = builtin("s1_3").unwrap();
    let prod = product(&s1, &s1);
    let swap = SimplicialMap::new(
        prod.complex.clone(),
        prod.complex.clone(),
        (0..9).map(|v| prod.vertex(v % 3, v / 3)).collect(),
    )
    .unwrap();
    let cases = [
        ("identity", SimplicialMap::identity(c.clone()), WeightCocycle::trivial(&c), 0),
        ("identity", SimplicialMap::identity(c.clone()), hol2.clone(), 0),
        ("rotation", SimplicialMap::new(c.clone(), c.clone(), vec![1, 2, 0]).unwrap(), WeightCocycle::trivial(&c), 0),
        ("rotation", SimplicialMap::new(c.clone(), c.clone(), vec![1, 2, 0]).unwrap(), hol2.clone(), 0),
        ("swap", swap.clone(), WeightCocycle::trivial(&prod.complex), 0),
        ("swap", swap, WeightCocycle::product_system(&prod, &hol2, &hol2), 0),
    ];
    for (label, f, w, classical) in cases {
        let trace = hopf_trace(&f);
        if trace != classical {
            failures.push(format!("{label}: Hopf trace {trace}, expected {classical}"));
        }
        let u = novikov::cohomology::find_gauge(&f, &w, &w).unwrap();
        let space = CohomologySpace::build(f.source(), &w).unwrap();
        let twisted = lefschetz_number(&f, &space, Some(&u)).unwrap();
        if twisted != integer(trace) {
            failures.push(format!("{label}: twisted {twisted}, Hopf trace {trace}"));
        }
    }
    failures
}

/// Criterion 9 oracle: Künneth from the circle's Betti numbers gives
/// (1,4,6,4,1) for T^4 and zero when one factor carries a nontrivial
/// character; CP^2 has (1,0,1,0,1). Blowing up adds one class in degree 2.
fn blowup_oracle() -> Vec<String> {
    let circle_betti = [1, 1];
    let t3 = convolve(&convolve(&circle_betti, &circle_betti), &circle_betti);
    let plus_e2 = |b: Vec<usize>| -> Vec<usize> { b.iter().enumerate().map(|(k, &x)| x + usize::from(k == 2)).collect() };
    let cp2 = builtin("cp2_9").unwrap();
    let t4 = product(&novikov::simplicial::torus(3), &circle(3).unwrap());
    let (_, hol2) = novikov::suite::circle_with_holonomy(3, &rational(2, 1));
    let trivial_t3 = WeightCocycle::trivial(&novikov::simplicial::torus(3));
    let cases = [
        ("cp2_9", cp2.clone(), WeightCocycle::trivial(&cp2), plus_e2(vec![1, 0, 1, 0, 1])),
        ("T4", (*t4.complex).clone(), WeightCocycle::trivial(&t4.complex), plus_e2(convolve(&t3, &circle_betti))),
        (
            "T4 twisted",
            (*t4.complex).clone(),
            WeightCocycle::product_system(&t4, &trivial_t3, &hol2),
            plus_e2(convolve(&t3, &[0, 0])),
        ),
    ];
    let mut failures = Vec::new();
    for (label, x, w, expected) in cases {
        let model = blowup_model(&x, &w).unwrap();
        let got = betti(&model.complex, &model.weights).unwrap();
        if got != expected {
            failures.push(format!("{label} blown up: library {got:?}, oracle {expected:?}"));
        }
    }
    failures
}

#[test]
fn acceptance_criteria() {
    let report = run_all(SuiteConfig::default());
    let mut oracles: BTreeMap<u32, Vec<String>> = BTreeMap::new();
    oracles.insert(1, circle_oracle());
    oracles.insert(3, kunneth_oracle());
    oracles.insert(8, lefschetz_oracle());
    oracles.insert(9, blowup_oracle());

    println!("seed {}, audit primes {:?}", report.seed, report.primes);
    println!("{}", report.builtins.summary_line());
    let mut all = report.builtins.pass;
    for c in &report.criteria {
        let oracle = oracles.get(&c.id).cloned().unwrap_or_default();
        let pass = c.pass && oracle.is_empty();
        all &= pass;
        let line = c.summary_line();
        let line = if pass { line } else { line.replacen("PASS", "FAIL", 1) };
        println!("{line}");
        for f in c.failures.iter().chain(&oracle) {
            println!("    {f}");
        }
    }
    assert!(all, "acceptance criteria failed");
}
