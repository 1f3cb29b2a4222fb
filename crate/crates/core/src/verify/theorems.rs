use num_traits::Zero;

use super::{convolve, Engine, Report, VerifyError};
use crate::cohomology::{
    cochain_map, find_gauge, h0_criterion, lefschetz_number, TwistedComplex,
};
use crate::linalg::SparseMatrix;
use crate::local_system::{GaugeFunction, WeightCocycle};
use crate::scalar::{format_rational, Rational};
use crate::simplicial::{barycentric_subdivision, product, Complex, OrientedManifoldCertificate, SimplicialMap};

/// Betti numbers of `A x B` with the product system against the
/// convolution of the factors' Betti numbers.
pub fn verify_kunneth(
    engine: &Engine,
    a: &Complex,
    wa: &WeightCocycle,
    b: &Complex,
    wb: &WeightCocycle,
) -> Result<Report, VerifyError> {
    let ba = engine.betti("first factor", &TwistedComplex::new(a.clone(), wa)?);
    let bb = engine.betti("second factor", &TwistedComplex::new(b.clone(), wb)?);
    let prod = product(a, b);
    let w = WeightCocycle::product_system(&prod, wa, wb);
    let lhs = engine.betti("product", &TwistedComplex::new(prod.complex.clone(), &w)?);
    let rhs = convolve(&ba, &bb);
    let mut report = Report::new("kunneth", format!("factors with betti {ba:?} and {bb:?}")).sides(
        "betti(A x B)",
        &lhs,
        "convolution",
        &rhs,
    );
    report.compare_by_degree();
    report.notes.extend(engine.mode_note());
    Ok(report)
}

/// `betti(X, w)[p] = betti(X, w^-1)[n - p]` on a certified closed orientable manifold.
pub fn verify_poincare(
    engine: &Engine,
    certificate: &OrientedManifoldCertificate,
    w: &WeightCocycle,
) -> Result<Report, VerifyError> {
    let x = &certificate.complex;
    let lhs = engine.betti("X with w", &TwistedComplex::new(x.clone(), w)?);
    let mut rhs = engine.betti("X with inverse w", &TwistedComplex::new(x.clone(), &w.inverse())?);
    rhs.reverse();
    let mut report = Report::new(
        "poincare",
        format!("closed orientable {}-manifold with {} top simplices", certificate.top_dimension, certificate.orientation.len()),
    )
    .sides("betti(X, w)[p]", &lhs, "betti(X, 1/w)[n-p]", &rhs);
    report.compare_by_degree();
    report.notes.extend(engine.mode_note());
    Ok(report)
}

/// Twisted Euler characteristic against the simplex count.
pub fn verify_euler(engine: &Engine, x: &Complex, w: &WeightCocycle) -> Result<Report, VerifyError> {
    let betti = engine.betti("X", &TwistedComplex::new(x.clone(), w)?);
    let twisted = crate::cohomology::CohomologyResult::euler_from_betti(&betti);
    let mut report = Report::new("euler", format!("complex with f-vector {:?}", x.f_vector())).sides(
        "euler(X, w)",
        &[twisted],
        "euler(X)",
        &[x.euler_characteristic()],
    );
    report.compare_by_degree();
    report.note(format!("twisted betti {betti:?}"));
    Ok(report)
}

/// `betti[0]` against the number of components on which `w` is exact.
pub fn verify_h0(engine: &Engine, x: &Complex, w: &WeightCocycle) -> Result<Report, VerifyError> {
    let betti = engine.betti("X", &TwistedComplex::new(x.clone(), w)?);
    let lhs = betti.first().copied().unwrap_or(0);
    let mut report = Report::new(
        "h0",
        format!("complex with {} components", x.connected_components().len()),
    )
    .sides("betti[0]", &[lhs], "exact components", &[h0_criterion(x, w)]);
    report.compare_by_degree();
    Ok(report)
}

/// Classical Lefschetz number by the Hopf trace formula: alternating sum of
/// traces of the untwisted cochain maps, with no cohomology involved.
pub fn classical_lefschetz(f: &SimplicialMap) -> i64 {
    let x = f.source();
    let trivial = WeightCocycle::trivial(f.target());
    let one = GaugeFunction::one(x.vertex_count());
    let mut total = Rational::zero();
    for p in 0..x.degrees() {
        let m = cochain_map(f, &trivial, &one, p);
        let trace = (0..x.count(p))
            .filter_map(|i| m.get(i, i))
            .fold(Rational::zero(), |acc, v| acc + v);
        if p % 2 == 0 {
            total += trace;
        } else {
            total -= trace;
        }
    }
    assert!(total.is_integer(), "trace of an integer matrix");
    total.to_integer().try_into().expect("small trace")
}

/// Twisted Lefschetz number of a self-map against the classical one.
///
/// Without an explicit gauge, one with `f^* w = u^-1 w u` is searched for.
pub fn verify_lefschetz(
    engine: &Engine,
    f: &SimplicialMap,
    w: &WeightCocycle,
    u: Option<&GaugeFunction>,
) -> Result<Report, VerifyError> {
    if f.source() != f.target() {
        return Err(VerifyError::Refused("the Lefschetz number needs a self-map".into()));
    }
    let found;
    let u = match u {
        Some(u) => u,
        None => {
            found = find_gauge(f, w, w).ok_or_else(|| {
                VerifyError::Refused("the pulled-back system is not gauge equivalent to the original".into())
            })?;
            &found
        }
    };
    let space = engine.space("X", TwistedComplex::new(f.source_arc().clone(), w)?);
    let twisted = lefschetz_number(f, &space, Some(u))?;
    let classical = classical_lefschetz(f);
    let mut report = Report::new("lefschetz", format!("self-map {:?}", f.images())).sides(
        "L(f, w)",
        &[format_rational(&twisted)],
        "L(f)",
        &[classical],
    );
    if !twisted.is_integer() {
        report.fail("twisted Lefschetz number is not an integer");
    }
    report.compare_by_degree();
    report.note(format!("twisted betti {:?}", space.betti()));
    Ok(report)
}

/// Betti numbers before and after a gauge transformation.
pub fn verify_gauge_invariance(
    engine: &Engine,
    x: &Complex,
    w: &WeightCocycle,
    u: &GaugeFunction,
) -> Result<Report, VerifyError> {
    let before = engine.betti("X with w", &TwistedComplex::new(x.clone(), w)?);
    let after = engine.betti("X with gauged w", &TwistedComplex::new(x.clone(), &w.gauge_transform(u))?);
    let mut report = Report::new("gauge invariance", format!("complex with f-vector {:?}", x.f_vector()))
        .sides("betti(X, w)", &before, "betti(X, u^-1 w u)", &after);
    report.compare_by_degree();
    Ok(report)
}

/// Betti numbers of the barycentric subdivision with pulled-back weights,
/// and whether the carrier map induces an isomorphism.
///
/// The isomorphism test only needs representatives on the (small) original
/// complex: `f^*` is injective in degree `p` iff appending the images of a
/// basis of `H^p(X)` to `im δ^{p-1}` of the subdivision raises the rank by
/// `betti_p(X)`. Equal dimensions then make it bijective.
pub fn verify_subdivision(engine: &Engine, x: &Complex, w: &WeightCocycle) -> Result<Report, VerifyError> {
    let sd = barycentric_subdivision(x);
    let ws = w.pullback(&sd.carrier);
    let base = engine.space("X", TwistedComplex::new(x.clone(), w)?);
    let fine = TwistedComplex::new(sd.complex.clone(), &ws)?;
    let fine_betti = engine.betti("subdivision", &fine);
    let mut report = Report::new("subdivision invariance", format!("complex with f-vector {:?}", x.f_vector()))
        .sides("betti(X, w)", base.betti(), "betti(sd X, pullback w)", &fine_betti);
    report.compare_by_degree();

    let one = GaugeFunction::one(sd.complex.vertex_count());
    for (p, basis) in base.result.bases.iter().enumerate() {
        if basis.is_empty() {
            continue;
        }
        let fp = cochain_map(&sd.carrier, w, &one, p);
        let mut images = SparseMatrix::new(sd.complex.count(p), basis.len());
        for (j, z) in basis.iter().enumerate() {
            for (i, v) in fp.mul_vec(z).expect("cochain length").into_iter().enumerate() {
                images.insert(i, j, v);
            }
        }
        let injective = match p.checked_sub(1).and_then(|q| fine.cochains().coboundary(q)) {
            Some(d) => d.hstack(&images).rank() == d.rank() + basis.len(),
            None => images.rank() == basis.len(),
        };
        if !injective {
            report.fail(format!("degree {p}: carrier map is not injective on cohomology"));
        }
    }
    report.note("carrier map checked to be an isomorphism on twisted cohomology in every degree");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::integer;
    use crate::simplicial::{builtin, circle, orientable_certificate, point};
    use std::sync::Arc;

    fn holonomy_two(c: &Complex) -> WeightCocycle {
        let last = c.vertex_count() - 1;
        WeightCocycle::from_fn(c, |i, j| if (i, j) == (0, last) { integer(2) } else { integer(1) }).unwrap()
    }

    #[test]
    fn kunneth_examples() {
        let e = Engine::default();
        let c = circle(3).unwrap();
        let s2 = builtin("s2_4").unwrap();
        let r = verify_kunneth(&e, &c, &holonomy_two(&c), &c, &WeightCocycle::trivial(&c)).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, vec!["0", "0", "0"]);
        let r = verify_kunneth(&e, &s2, &WeightCocycle::trivial(&s2), &c, &WeightCocycle::trivial(&c)).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, vec!["1", "1", "1", "1"]);
        let p = point();
        let r = verify_kunneth(&e, &p, &WeightCocycle::trivial(&p), &s2, &WeightCocycle::trivial(&s2)).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn poincare_and_euler() {
        let e = Engine::default();
        let t = builtin("t2_7").unwrap();
        let cert = orientable_certificate(&t).unwrap();
        let r = verify_poincare(&e, &cert, &WeightCocycle::trivial(&t)).unwrap();
        assert!(r.pass, "{r}");
        let c = circle(3).unwrap();
        let r = verify_euler(&e, &c, &holonomy_two(&c)).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, vec!["0"]);
    }

    #[test]
    fn lefschetz_on_circle() {
        let e = Engine::default();
        let c = Arc::new(circle(3).unwrap());
        let id = SimplicialMap::identity(c.clone());
        let rotation = SimplicialMap::new(c.clone(), c.clone(), vec![1, 2, 0]).unwrap();
        let reflection = SimplicialMap::new(c.clone(), c.clone(), vec![0, 2, 1]).unwrap();
        assert_eq!(classical_lefschetz(&id), 0);
        assert_eq!(classical_lefschetz(&rotation), 0);
        assert_eq!(classical_lefschetz(&reflection), 2);
        for w in [WeightCocycle::trivial(&c), holonomy_two(&c)] {
            for f in [&id, &rotation] {
                let r = verify_lefschetz(&e, f, &w, None).unwrap();
                assert!(r.pass, "{r}");
            }
        }
        let r = verify_lefschetz(&e, &reflection, &WeightCocycle::trivial(&c), None).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.rhs, vec!["2"]);
        assert!(matches!(
            verify_lefschetz(&e, &reflection, &holonomy_two(&c), None),
            Err(VerifyError::Refused(_))
        ));
    }

    #[test]
    fn subdivision_of_rp2() {
        let e = Engine::default();
        let rp2 = builtin("rp2_6").unwrap();
        let r = verify_subdivision(&e, &rp2, &WeightCocycle::trivial(&rp2)).unwrap();
        assert!(r.pass, "{r}");
    }
}
