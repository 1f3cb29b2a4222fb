//! The acceptance suite: ten numbered criteria plus an integrity check of
//! the shipped triangulations. Shared by the `acceptance` test target and
//! the `selftest` command.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{betti_from_ranks, h0_criterion, TwistedComplex};
use crate::local_system::{Edge, GaugeFunction, WeightCocycle};
use crate::random::{integral_h1_basis, random_connected_complex, random_system};
use crate::scalar::{integer, random_primes_30bit, rational, Rational};
use crate::simplicial::{
    builtin, builtin_facets, circle, connected_sum, disjoint_union, is_closed_pseudomanifold, mapping_torus,
    orientable_certificate, point, product, simplex, torus, Complex, SimplicialMap,
};
use crate::verify::{
    blowup_model, les_of_pair, verify_blowup_dims, verify_euler, verify_gauge_invariance, verify_kunneth,
    verify_lefschetz, verify_mayer_vietoris, verify_poincare, verify_subdivision, Engine, Progress, RankMode, Report,
    VerifyError,
};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub time_limit_secs: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    fn new(id: u32, title: &str, time_limit_secs: u64) -> Self {
        CriterionResult {
            id,
            title: title.into(),
            pass: true,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            time_limit_secs,
            elapsed: Duration::ZERO,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.pass = false;
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, label: &str, report: Result<Report, VerifyError>) {
        match report {
            Ok(r) => {
                let summary = || format!("{label}: {}", r.failures.join("; "));
                self.check(r.pass, summary);
            }
            Err(e) => self.check(false, || format!("{label}: {e}")),
        }
    }

    /// One line: `criterion N: PASS|FAIL  title  (checks, time / limit)`.
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:>2}: {}  {}  ({} checks, {:.2}s / {}s)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.checks,
            self.elapsed.as_secs_f64(),
            self.time_limit_secs
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub primes: Vec<u64>,
    pub builtins: CriterionResult,
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.builtins.pass && self.criteria.iter().all(|c| c.pass)
    }
}

pub struct SuiteConfig {
    pub seed: u64,
    /// Criterion 9 runs in the three-prime mode and checks only `betti[0]`
    /// and `betti[1]` exactly.
    pub fast_modular: bool,
    pub progress: Option<Progress>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            fast_modular: false,
            progress: None,
        }
    }
}

/// Expected data of a shipped triangulation.
struct BuiltinSpec {
    name: &'static str,
    f_vector: &'static [usize],
    betti: &'static [usize],
    orientable: bool,
}

const BUILTIN_SPECS: [BuiltinSpec; 5] = [
    BuiltinSpec { name: "s1_3", f_vector: &[3, 3], betti: &[1, 1], orientable: true },
    BuiltinSpec { name: "s2_4", f_vector: &[4, 6, 4], betti: &[1, 0, 1], orientable: true },
    BuiltinSpec { name: "t2_7", f_vector: &[7, 21, 14], betti: &[1, 2, 1], orientable: true },
    BuiltinSpec { name: "rp2_6", f_vector: &[6, 15, 10], betti: &[1, 0, 0], orientable: false },
    BuiltinSpec { name: "cp2_9", f_vector: &[9, 36, 84, 90, 36], betti: &[1, 0, 1, 0, 1], orientable: true },
];

/// Checks raw facet data against the expected invariants of the named
/// triangulation. Every failure message starts with the name.
pub fn check_builtin_data(name: &str, vertex_count: usize, facets: &[Vec<usize>]) -> Vec<String> {
    let Some(spec) = BUILTIN_SPECS.iter().find(|s| s.name == name) else {
        return vec![format!("{name}: no expected data")];
    };
    let x = match Complex::from_maximal(vertex_count, facets.iter().cloned()) {
        Ok(x) => x,
        Err(e) => return vec![format!("{name}: {e}")],
    };
    let mut failures = Vec::new();
    if x.f_vector() != spec.f_vector {
        failures.push(format!("{name}: f-vector {:?}, expected {:?}", x.f_vector(), spec.f_vector));
    }
    if !is_closed_pseudomanifold(&x) {
        failures.push(format!("{name}: not a closed pseudomanifold"));
    }
    if orientable_certificate(&x).is_some() != spec.orientable {
        failures.push(format!("{name}: orientability differs from the expected value {}", spec.orientable));
    }
    match TwistedComplex::new(x.clone(), &WeightCocycle::trivial(&x)) {
        Ok(tc) if tc.betti() == spec.betti => {}
        Ok(tc) => failures.push(format!("{name}: betti {:?}, expected {:?}", tc.betti(), spec.betti)),
        Err(e) => failures.push(format!("{name}: {e}")),
    }
    failures
}

fn check_builtins() -> CriterionResult {
    let mut result = CriterionResult::new(0, "shipped triangulations", 10);
    for spec in &BUILTIN_SPECS {
        let (n, facets) = builtin_facets(spec.name).expect("listed builtin");
        let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        let failures = check_builtin_data(spec.name, n, &facets);
        result.check(failures.is_empty(), || failures.join("; "));
    }
    result
}

/// Circle with transport `t` on the closing edge `(0, k-1)` and 1 elsewhere.
pub fn circle_with_holonomy(k: usize, t: &Rational) -> (Complex, WeightCocycle) {
    let c = circle(k).expect("k >= 3");
    let w = WeightCocycle::from_fn(&c, |i, j| if (i, j) == (0, k - 1) { t.clone() } else { integer(1) })
        .expect("positive weights");
    (c, w)
}

/// `t^m` for a single integral class.
fn character(x: &Complex, m: &BTreeMap<Edge, BigInt>, t: Rational) -> WeightCocycle {
    WeightCocycle::from_integral_class(x, m, &t).expect("integral cocycle")
}

/// The complexes every invariance check runs over.
pub fn suite_complexes() -> Vec<(String, Complex)> {
    let s1 = builtin("s1_3").expect("builtin");
    let s2 = builtin("s2_4").expect("builtin");
    let t2 = builtin("t2_7").expect("builtin");
    let c3 = Arc::new(circle(3).expect("circle"));
    let reflection = SimplicialMap::new(c3.clone(), c3, vec![0, 2, 1]).expect("reflection");
    let genus_two = connected_sum(&t2, &t2, &[0, 1, 3], &[0, 1, 3], &[(0, 0), (1, 1), (3, 3)]).expect("genus two");
    vec![
        ("point".into(), point()),
        ("s1_3".into(), s1.clone()),
        ("circle(4)".into(), circle(4).expect("circle")),
        ("circle(5)".into(), circle(5).expect("circle")),
        ("s2_4".into(), s2.clone()),
        ("t2_7".into(), t2),
        ("rp2_6".into(), builtin("rp2_6").expect("builtin")),
        ("klein bottle".into(), mapping_torus(&reflection).expect("klein bottle")),
        ("genus two".into(), genus_two),
        ("s1_3 x s2_4".into(), (*product(&s1, &s2).complex).clone()),
        ("T3".into(), torus(3)),
        ("cp2_9".into(), builtin("cp2_9").expect("builtin")),
    ]
}

struct Context {
    seed: u64,
    engine: Engine,
    primes: Vec<u64>,
    fast_modular: bool,
}

impl Context {
    fn rng(&self, criterion: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (u64::from(criterion) << 32))
    }

    fn betti(&self, label: &str, x: &Complex, w: &WeightCocycle) -> Result<Vec<usize>, VerifyError> {
        Ok(self.engine.betti(label, &TwistedComplex::new(x.clone(), w)?))
    }
}

fn criterion_1(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(1, "circle criterion", 1);
    for k in 3..=5 {
        for (t, expected) in [
            (rational(2, 1), vec![0, 0]),
            (rational(3, 2), vec![0, 0]),
            (rational(5, 1), vec![0, 0]),
            (rational(1, 1), vec![1, 1]),
        ] {
            let (c, w) = circle_with_holonomy(k, &t);
            let label = format!("circle({k}), holonomy {t}");
            match ctx.betti(&label, &c, &w) {
                Ok(b) => r.check(b == expected, || format!("{label}: betti {b:?}, expected {expected:?}")),
                Err(e) => r.check(false, || format!("{label}: {e}")),
            }
        }
    }
    r
}

fn criterion_2(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(2, "H0 criterion", 10);
    let mut rng = ctx.rng(2);
    let mut samples = Vec::new();
    for i in 0..20 {
        let x = random_connected_complex(&mut rng);
        let w = if i % 2 == 0 {
            WeightCocycle::trivial(&x).gauge_transform(&GaugeFunction::random(x.vertex_count(), &mut rng))
        } else {
            random_system(&x, &integral_h1_basis(&x), &mut rng)
        };
        let exact = w.is_exact(&x).is_some();
        let label = format!("random complex {i} with f-vector {:?}", x.f_vector());
        match ctx.betti(&label, &x, &w) {
            Ok(b) => r.check(b[0] == usize::from(exact), || {
                format!("{label}: betti[0] = {} but exactness is {exact}", b[0])
            }),
            Err(e) => r.check(false, || format!("{label}: {e}")),
        }
        samples.push((x, w, exact));
    }
    let exact_count = samples.iter().filter(|s| s.2).count();
    r.notes.push(format!("{exact_count} of 20 random systems are exact"));
    for i in 0..10 {
        let (a, wa, ea) = &samples[2 * i];
        let (b, wb, eb) = &samples[(2 * i + 3) % 20];
        let u = disjoint_union(a, b);
        let shift = a.vertex_count();
        let w = WeightCocycle::from_fn(&u, |i, j| {
            if j < shift {
                wa.weight(i, j).expect("edge of a").clone()
            } else {
                wb.weight(i - shift, j - shift).expect("edge of b").clone()
            }
        })
        .expect("positive");
        let expected = usize::from(*ea) + usize::from(*eb);
        let label = format!("disjoint union {i}");
        match ctx.betti(&label, &u, &w) {
            Ok(bt) => {
                r.check(bt[0] == expected, || format!("{label}: betti[0] = {}, expected {expected}", bt[0]));
                r.check(h0_criterion(&u, &w) == expected, || format!("{label}: h0 criterion disagrees"));
            }
            Err(e) => r.check(false, || format!("{label}: {e}")),
        }
    }
    r
}

fn kunneth_spaces(ctx: &Context) -> Vec<(String, Complex, WeightCocycle)> {
    let mut rng = ctx.rng(3);
    let p = point();
    let s1 = builtin("s1_3").expect("builtin");
    let s2 = builtin("s2_4").expect("builtin");
    let t2 = builtin("t2_7").expect("builtin");
    let (_, s1_twisted) = circle_with_holonomy(3, &rational(2, 1));
    let classes = integral_h1_basis(&t2);
    let first = character(&t2, &classes[0], rational(2, 1));
    let mut mixed: BTreeMap<Edge, BigInt> = classes[0].clone();
    for (e, v) in &classes[1] {
        *mixed.entry(*e).or_default() -= v;
    }
    let second = character(&t2, &mixed, rational(3, 2)).gauge_transform(&GaugeFunction::random(7, &mut rng));
    vec![
        ("point".into(), p.clone(), WeightCocycle::trivial(&p)),
        ("s1_3 (t=1)".into(), s1.clone(), WeightCocycle::trivial(&s1)),
        ("s1_3 (t=2)".into(), s1, s1_twisted),
        ("s2_4".into(), s2.clone(), WeightCocycle::trivial(&s2)),
        ("t2_7 (first class, t=2)".into(), t2.clone(), first),
        ("t2_7 (difference of classes, t=3/2)".into(), t2, second),
    ]
}

fn criterion_3(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(3, "Kunneth formula", 30);
    let spaces = kunneth_spaces(ctx);
    for i in 0..spaces.len() {
        for j in i..spaces.len() {
            let (na, a, wa) = &spaces[i];
            let (nb, b, wb) = &spaces[j];
            r.absorb(&format!("{na} x {nb}"), verify_kunneth(&ctx.engine, a, wa, b, wb));
        }
    }
    r
}

fn criterion_4(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(4, "Euler characteristic invariance", 30);
    let mut rng = ctx.rng(4);
    for (name, x) in suite_complexes() {
        let classes = integral_h1_basis(&x);
        for k in 0..5 {
            let w = random_system(&x, &classes, &mut rng);
            r.absorb(&format!("{name}, system {k}"), verify_euler(&ctx.engine, &x, &w));
        }
    }
    r
}

fn criterion_5(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(5, "Poincare duality", 60);
    let mut rng = ctx.rng(5);
    let s1 = builtin("s1_3").expect("builtin");
    let s2 = builtin("s2_4").expect("builtin");
    let spaces: Vec<(String, Complex)> = vec![
        ("s1_3".into(), s1.clone()),
        ("s2_4".into(), s2.clone()),
        ("t2_7".into(), builtin("t2_7").expect("builtin")),
        ("s1_3 x s2_4".into(), (*product(&s1, &s2).complex).clone()),
        ("cp2_9".into(), builtin("cp2_9").expect("builtin")),
        ("T3".into(), torus(3)),
    ];
    for (name, x) in spaces {
        let Some(cert) = orientable_certificate(&x) else {
            r.check(false, || format!("{name}: no orientation certificate"));
            continue;
        };
        let mut systems = vec![("trivial".to_string(), WeightCocycle::trivial(&x))];
        for (k, m) in integral_h1_basis(&x).iter().enumerate() {
            let t = [rational(2, 1), rational(3, 2), rational(5, 1)][k % 3].clone();
            let w = character(&x, m, t).gauge_transform(&GaugeFunction::random(x.vertex_count(), &mut rng));
            systems.push((format!("class {k}"), w));
        }
        r.notes.push(format!("{name}: {} weight systems", systems.len()));
        for (label, w) in systems {
            r.absorb(&format!("{name}, {label}"), verify_poincare(&ctx.engine, &cert, &w));
        }
    }
    let rp2 = builtin("rp2_6").expect("builtin");
    r.check(orientable_certificate(&rp2).is_none(), || "rp2_6 received an orientation certificate".into());
    r
}

fn criterion_6(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(6, "gauge and subdivision invariance", 120);
    let mut rng = ctx.rng(6);
    for (name, x) in suite_complexes() {
        let classes = integral_h1_basis(&x);
        let w = random_system(&x, &classes, &mut rng);
        for k in 0..10 {
            let u = GaugeFunction::random(x.vertex_count(), &mut rng);
            r.absorb(&format!("{name}, gauge {k}"), verify_gauge_invariance(&ctx.engine, &x, &w, &u));
        }
        r.absorb(&format!("{name}, subdivision"), verify_subdivision(&ctx.engine, &x, &w));
    }
    r
}

fn criterion_7(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(7, "LES and Mayer-Vietoris exactness", 30);
    let e = &ctx.engine;

    let s = simplex(2);
    let boundary = s.subcomplex(&[vec![0, 1], vec![0, 2], vec![1, 2]]).expect("boundary");
    let gauged = WeightCocycle::trivial(&s)
        .gauge_transform(&GaugeFunction::from_values(vec![integer(1), integer(2), integer(1)]).expect("positive"));
    for (label, w) in [("trivial", WeightCocycle::trivial(&s)), ("weight 2 on edge 01", gauged)] {
        r.absorb(&format!("(2-simplex, boundary), {label}"), les_of_pair(e, &s, &boundary, &w));
    }

    let s2 = builtin("s2_4").expect("builtin");
    let cap = s2.subcomplex(&[vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).expect("cap");
    let base = s2.subcomplex(&[vec![0, 1, 2]]).expect("base");
    let gauged = WeightCocycle::trivial(&s2).gauge_transform(
        &GaugeFunction::from_values(vec![integer(1), integer(2), integer(1), rational(1, 3)]).expect("positive"),
    );
    for (label, w) in [("trivial", WeightCocycle::trivial(&s2)), ("gauged", gauged)] {
        r.absorb(&format!("s2_4 hemispheres, {label}"), verify_mayer_vietoris(e, &s2, &cap, &base, &w));
        r.absorb(&format!("(s2_4, hemisphere), {label}"), les_of_pair(e, &s2, &base, &w));
    }

    let t2 = builtin("t2_7").expect("builtin");
    let (u, v) = torus_annuli(&t2);
    let classes = integral_h1_basis(&t2);
    let mut systems = vec![("trivial".to_string(), WeightCocycle::trivial(&t2))];
    for (k, m) in classes.iter().enumerate() {
        systems.push((format!("holonomy 2 on class {k}"), character(&t2, m, rational(2, 1))));
    }
    for (label, w) in &systems {
        r.absorb(&format!("t2_7 annuli, {label}"), verify_mayer_vietoris(e, &t2, &u, &v, w));
        r.absorb(&format!("(t2_7, annulus), {label}"), les_of_pair(e, &t2, &u, w));
        r.absorb(&format!("(t2_7, empty), {label}"), les_of_pair(e, &t2, &Complex::empty(7), w));
        r.absorb(&format!("(t2_7, t2_7), {label}"), les_of_pair(e, &t2, &t2, w));
    }
    r
}

/// Two annuli covering the 7-vertex torus; they meet in two circles.
pub fn torus_annuli(t2: &Complex) -> (Complex, Complex) {
    let u = [[0, 1, 3], [0, 1, 5], [0, 2, 3], [0, 2, 6], [0, 4, 5], [1, 2, 6], [1, 5, 6]];
    let v = [[0, 4, 6], [1, 2, 4], [1, 3, 4], [2, 3, 5], [2, 4, 5], [3, 4, 6], [3, 5, 6]];
    let sub = |ts: &[[usize; 3]]| t2.subcomplex(&ts.iter().map(|t| t.to_vec()).collect::<Vec<_>>()).expect("triangles of t2_7");
    (sub(&u), sub(&v))
}

fn criterion_8(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(8, "Lefschetz numbers", 30);
    let (c, hol2) = circle_with_holonomy(3, &rational(2, 1));
    let c = Arc::new(c);
    let id = SimplicialMap::identity(c.clone());
    let rotation = SimplicialMap::new(c.clone(), c.clone(), vec![1, 2, 0]).expect("rotation");
    for (label, w) in [("trivial", WeightCocycle::trivial(&c)), ("holonomy 2", hol2.clone())] {
        r.absorb(&format!("identity on circle(3), {label}"), verify_lefschetz(&ctx.engine, &id, &w, None));
        r.absorb(&format!("rotation on circle(3), {label}"), verify_lefschetz(&ctx.engine, &rotation, &w, None));
    }
    let s1 = builtin("s1_3").expect("builtin");
    let prod = product(&s1, &s1);
    let n = s1.vertex_count();
    let swap_images = (0..prod.complex.vertex_count()).map(|v| prod.vertex(v % n, v / n)).collect();
    let swap = SimplicialMap::new(prod.complex.clone(), prod.complex.clone(), swap_images).expect("swap");
    let product_hol = WeightCocycle::product_system(&prod, &hol2, &hol2);
    for (label, w) in [("trivial", WeightCocycle::trivial(&prod.complex)), ("holonomy 2 on both factors", product_hol)] {
        r.absorb(&format!("swap on s1_3 x s1_3, {label}"), verify_lefschetz(&ctx.engine, &swap, &w, None));
    }
    r
}

fn criterion_9(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(9, "blow-up dimensions", 900);
    let cp2 = builtin("cp2_9").expect("builtin");
    let t4 = torus(4);
    let c = circle(3).expect("circle");
    let (_, hol2) = circle_with_holonomy(3, &rational(2, 1));
    // T^4 = ((c x c) x c) x c; the character lives on the last factor.
    let inner = torus(3);
    let last = product(&inner, &c);
    let t4_twisted = WeightCocycle::product_system(&last, &WeightCocycle::trivial(&inner), &hol2);

    let cases = [
        ("cp2_9 # cp2_9, trivial", cp2.clone(), WeightCocycle::trivial(&cp2), vec![1, 0, 2, 0, 1]),
        ("T4 # cp2_9, trivial", t4.clone(), WeightCocycle::trivial(&t4), vec![1, 4, 7, 4, 1]),
        ("T4 # cp2_9, holonomy 2 on one circle", (*last.complex).clone(), t4_twisted, vec![0, 0, 1, 0, 0]),
    ];
    let modular = Engine::new(RankMode::Modular(ctx.primes.clone()));
    for (label, x, w, expected) in cases {
        ctx.engine.progress(label);
        let fast = match blowup_model(&x, &w) {
            Ok(model) => modular.betti(label, &TwistedComplex::new(model.complex.clone(), &model.weights).expect("cocycle")),
            Err(e) => {
                r.check(false, || format!("{label}: {e}"));
                continue;
            }
        };
        r.check(fast == expected, || format!("{label}: modular betti {fast:?}, expected {expected:?}"));
        if ctx.fast_modular {
            let model = blowup_model(&x, &w).expect("built above");
            let tc = TwistedComplex::new(model.complex, &model.weights).expect("cocycle");
            let low = &tc.cochains().coboundaries()[..2];
            let ranks: Vec<usize> = low.iter().map(|d| d.rank()).collect();
            let exact_low = betti_from_ranks(&tc.cochains().dims()[..2], &ranks);
            r.check(exact_low == expected[..2], || format!("{label}: exact betti[0..2] {exact_low:?}"));
            r.notes.push(format!("{label}: modular ranks, exact betti[0] and betti[1] only"));
        } else {
            match verify_blowup_dims(&ctx.engine, &x, &w) {
                Ok(report) => {
                    let exact: Vec<usize> = report.lhs.iter().map(|s| s.parse().expect("count")).collect();
                    r.check(report.pass, || format!("{label}: {}", report.failures.join("; ")));
                    r.check(exact == expected, || format!("{label}: exact betti {exact:?}, expected {expected:?}"));
                    r.check(exact == fast, || format!("{label}: exact {exact:?} and modular {fast:?} differ"));
                }
                Err(e) => r.check(false, || format!("{label}: {e}")),
            }
        }
    }
    r
}

fn criterion_10(ctx: &Context) -> CriterionResult {
    let mut r = CriterionResult::new(10, "modular rank oracle", 1);
    let records = ctx.engine.records();
    let audited = records.iter().filter(|rec| rec.exact.is_some()).count();
    r.check(audited > 0, || "no ranks were audited".into());
    for rec in records.iter().filter(|rec| !rec.agrees()) {
        r.check(false, || {
            format!(
                "{} degree {} ({}x{}): exact {:?}, modular {:?}",
                rec.context, rec.degree, rec.rows, rec.cols, rec.exact, rec.modular
            )
        });
    }
    r.notes.push(format!("{audited} coboundary ranks compared modulo {:?}", ctx.primes));
    r
}

/// Numbers of the acceptance criteria, in order.
pub const CRITERIA: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

fn timed(id: u32, ctx: &Context, f: fn(&Context) -> CriterionResult) -> CriterionResult {
    ctx.engine.progress(&format!("criterion {id}"));
    let start = Instant::now();
    let mut result = f(ctx);
    result.elapsed = start.elapsed();
    if result.elapsed > Duration::from_secs(result.time_limit_secs) {
        result.pass = false;
        result.failures.push(format!(
            "took {:.2}s, limit {}s",
            result.elapsed.as_secs_f64(),
            result.time_limit_secs
        ));
    }
    result
}

/// Runs the integrity check and all ten criteria. Criterion 10 audits the
/// ranks computed by the others, so its own time is negligible; its limit
/// only covers the comparison.
pub fn run_all(config: SuiteConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let primes = random_primes_30bit(&mut rng, 3);
    let mut engine = Engine::new(RankMode::Exact).with_audit(primes.clone());
    if let Some(p) = config.progress {
        engine = engine.with_progress(p);
    }
    let ctx = Context {
        seed: config.seed,
        engine,
        primes: primes.clone(),
        fast_modular: config.fast_modular,
    };
    let start = Instant::now();
    let mut builtins = check_builtins();
    builtins.elapsed = start.elapsed();
    let runners: [fn(&Context) -> CriterionResult; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let criteria = CRITERIA.iter().zip(runners).map(|(&id, f)| timed(id, &ctx, f)).collect();
    SuiteReport {
        seed: config.seed,
        primes,
        builtins,
        criteria,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_builtin_is_named() {
        let (n, facets) = builtin_facets("t2_7").unwrap();
        let mut facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        facets.pop();
        let failures = check_builtin_data("t2_7", n, &facets);
        assert!(!failures.is_empty());
        assert!(failures.iter().all(|f| f.starts_with("t2_7:")));
    }

    #[test]
    fn shipped_builtins_are_intact() {
        assert!(check_builtins().pass);
    }

    #[test]
    fn annuli_cover_the_torus() {
        let t2 = builtin("t2_7").unwrap();
        let (u, v) = torus_annuli(&t2);
        assert_eq!(u.union(&v).f_vector(), t2.f_vector());
        let w = WeightCocycle::trivial(&t2);
        assert_eq!(crate::cohomology::betti(&u, &w.restrict(&u)).unwrap(), vec![1, 1, 0]);
        assert_eq!(u.intersection(&v).f_vector(), vec![7, 7]);
    }
}
