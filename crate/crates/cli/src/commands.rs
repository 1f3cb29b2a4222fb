use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::Subcommand;
use novikov::cohomology::{h0_criterion, CohomologyResult, TwistedComplex};
use novikov::local_system::WeightCocycle;
use novikov::random::{integral_h1_basis, random_system};
use novikov::scalar::random_primes_30bit;
use novikov::simplicial::{
    barycentric_subdivision, builtin, cone, connected_sum, disjoint_union, mapping_torus, orientable_certificate,
    product, suspension, Complex, SimplicialMap, BUILTIN_NAMES,
};
use novikov::suite::{run_all, SuiteConfig};
use novikov::verify::{
    les_of_pair, verify_blowup_dims, verify_euler, verify_h0, verify_kunneth, verify_lefschetz,
    verify_mayer_vietoris, verify_poincare, Engine, Progress, RankMode, Report,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::documents::{ComplexDocument, WeightDocument};
use crate::inputs::{load_complex, load_weights, parse_images, write, COMPLEX_HELP, WEIGHTS_HELP};
use crate::CliError;

pub struct Options {
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub fast_modular: bool,
    pub progress: bool,
}

impl Options {
    fn primes(&self) -> Vec<u64> {
        random_primes_30bit(&mut ChaCha8Rng::seed_from_u64(self.seed), 3)
    }

    fn engine(&self) -> Engine {
        let mode = if self.fast_modular {
            RankMode::Modular(self.primes())
        } else {
            RankMode::Exact
        };
        let engine = Engine::new(mode);
        if self.progress {
            engine.with_progress(|m| eprintln!("... {m}"))
        } else {
            engine
        }
    }

    fn emit<T: Serialize>(&self, report: &T) -> Result<(), CliError> {
        if let Some(path) = &self.output {
            let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
            text.push('\n');
            write(path, &text)?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct BettiReport {
    complex: String,
    f_vector: Vec<usize>,
    betti: Vec<usize>,
    euler_twisted: i64,
    euler: i64,
    h0_criterion: usize,
    pass: bool,
    notes: Vec<String>,
}

fn label(arg: &str, name: Option<String>) -> String {
    name.unwrap_or_else(|| arg.to_string())
}

pub fn betti(options: &Options, complex: &str, weights: Option<&str>) -> Result<(), CliError> {
    let (x, name) = load_complex(complex)?;
    let w = load_weights(weights, &x)?;
    let engine = options.engine();
    let betti = engine.betti("X", &TwistedComplex::new(x.clone(), &w)?);
    let h0 = h0_criterion(&x, &w);
    let euler_twisted = CohomologyResult::euler_from_betti(&betti);
    let euler = x.euler_characteristic();
    let report = BettiReport {
        complex: label(complex, name),
        f_vector: x.f_vector(),
        betti,
        euler_twisted,
        euler,
        h0_criterion: h0,
        pass: false,
        notes: engine.mode_note().into_iter().collect(),
    };
    let h0_agrees = report.betti.first().copied().unwrap_or(0) == h0;
    let report = BettiReport {
        pass: h0_agrees && euler_twisted == euler,
        ..report
    };
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    println!("complex: {} (f-vector {})", report.complex, join(&report.f_vector));
    println!("betti: {}", join(&report.betti));
    println!("euler: {euler_twisted} (untwisted {euler})");
    println!(
        "h0 criterion: {h0} exact components ({})",
        if h0_agrees { "agrees" } else { "DISAGREES" }
    );
    for note in &report.notes {
        println!("note: {note}");
    }
    options.emit(&report)?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Failed("cross-checks failed".into()))
    }
}

#[derive(Subcommand)]
pub enum BuildKind {
    /// Staircase product A x B; writes the product weights when either factor has weights.
    Product {
        #[arg(help = COMPLEX_HELP)]
        a: String,
        #[arg(help = COMPLEX_HELP)]
        b: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights_a: Option<String>,
        #[arg(long, help = WEIGHTS_HELP)]
        weights_b: Option<String>,
    },
    /// Connected sum along the first top simplex of each summand.
    ConnectSum {
        #[arg(help = COMPLEX_HELP)]
        a: String,
        #[arg(help = COMPLEX_HELP)]
        b: String,
    },
    /// Mapping torus of a simplicial automorphism.
    MappingTorus {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
        /// Vertex images, comma separated.
        #[arg(long)]
        images: String,
    },
    /// Barycentric subdivision; writes the pulled-back weights when given.
    Subdivide {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights: Option<String>,
    },
    Cone {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
    },
    Suspension {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
    },
    DisjointUnion {
        #[arg(help = COMPLEX_HELP)]
        a: String,
        #[arg(help = COMPLEX_HELP)]
        b: String,
    },
    /// One of the shipped triangulations.
    Builtin { name: String },
}

fn first_top(x: &Complex) -> Result<Vec<usize>, CliError> {
    let d = x.dim().ok_or_else(|| CliError::Input("connected sum of an empty complex".into()))?;
    Ok(x.simplices(d)[0].clone())
}

pub fn build(options: &Options, kind: BuildKind, weights_output: Option<&Path>) -> Result<(), CliError> {
    let (x, name, weights): (Complex, Option<String>, Option<WeightCocycle>) = match kind {
        BuildKind::Product { a, b, weights_a, weights_b } => {
            let (xa, _) = load_complex(&a)?;
            let (xb, _) = load_complex(&b)?;
            let p = product(&xa, &xb);
            let w = if weights_a.is_some() || weights_b.is_some() {
                let wa = load_weights(weights_a.as_deref(), &xa)?;
                let wb = load_weights(weights_b.as_deref(), &xb)?;
                Some(WeightCocycle::product_system(&p, &wa, &wb))
            } else {
                None
            };
            ((*p.complex).clone(), None, w)
        }
        BuildKind::ConnectSum { a, b } => {
            let (xa, _) = load_complex(&a)?;
            let (xb, _) = load_complex(&b)?;
            let (sa, sb) = (first_top(&xa)?, first_top(&xb)?);
            let matching: Vec<(usize, usize)> = sa.iter().copied().zip(sb.iter().copied()).collect();
            (connected_sum(&xa, &xb, &sa, &sb, &matching)?, None, None)
        }
        BuildKind::MappingTorus { complex, images } => {
            let (x, _) = load_complex(&complex)?;
            let x = Arc::new(x);
            let f = SimplicialMap::new(x.clone(), x, parse_images(&images)?)?;
            (mapping_torus(&f)?, None, None)
        }
        BuildKind::Subdivide { complex, weights } => {
            let (x, _) = load_complex(&complex)?;
            let sd = barycentric_subdivision(&x);
            let w = match weights {
                Some(spec) => Some(load_weights(Some(&spec), &x)?.pullback(&sd.carrier)),
                None => None,
            };
            ((*sd.complex).clone(), None, w)
        }
        BuildKind::Cone { complex } => (cone(&load_complex(&complex)?.0), None, None),
        BuildKind::Suspension { complex } => (suspension(&load_complex(&complex)?.0), None, None),
        BuildKind::DisjointUnion { a, b } => (disjoint_union(&load_complex(&a)?.0, &load_complex(&b)?.0), None, None),
        BuildKind::Builtin { name } => {
            if !BUILTIN_NAMES.contains(&name.as_str()) {
                return Err(CliError::Input(format!(
                    "unknown builtin {name:?}; shipped triangulations are {}",
                    BUILTIN_NAMES.join(", ")
                )));
            }
            (builtin(&name)?, Some(name), None)
        }
    };
    if weights.is_some() && weights_output.is_none() {
        return Err(CliError::Input("this construction produces weights; pass --weights-output".into()));
    }
    let doc = ComplexDocument::from_complex(&x, name).to_toml();
    match &options.output {
        Some(path) => {
            write(path, &doc)?;
            eprintln!("wrote {} (f-vector {:?})", path.display(), x.f_vector());
        }
        None => print!("{doc}"),
    }
    if let (Some(w), Some(path)) = (weights, weights_output) {
        write(path, &WeightDocument::from_cocycle(&w).to_toml())?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

#[derive(Subcommand)]
pub enum Suite {
    /// Betti numbers of a product against the convolution of the factors'.
    Kunneth {
        #[arg(help = COMPLEX_HELP)]
        a: String,
        #[arg(help = COMPLEX_HELP)]
        b: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights_a: Option<String>,
        #[arg(long, help = WEIGHTS_HELP)]
        weights_b: Option<String>,
    },
    /// Poincare duality between w and its inverse on an oriented closed manifold.
    Pd {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights: Option<String>,
    },
    /// Twisted Euler characteristic equals the untwisted one. Without
    /// complexes, runs on every shipped triangulation.
    Euler {
        #[arg(help = COMPLEX_HELP)]
        complexes: Vec<String>,
        #[arg(long, help = WEIGHTS_HELP)]
        weights: Option<String>,
        /// Also check this many random weight systems per complex.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Mayer-Vietoris exactness for X = U ∪ V (U and V given on the labels of X).
    Mv {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
        u: String,
        v: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights: Option<String>,
    },
    /// Exactness of the long exact sequence of the pair (X, A).
    Les {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
        subcomplex: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights: Option<String>,
    },
    /// H0 against the number of components where w is exact.
    H0 {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights: Option<String>,
    },
    /// Blowing up a point adds one class in degree 2.
    Blowup {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights: Option<String>,
    },
    /// Twisted against classical Lefschetz number of a self-map.
    Lefschetz {
        #[arg(help = COMPLEX_HELP)]
        complex: String,
        /// Vertex images, comma separated.
        #[arg(long)]
        images: String,
        #[arg(long, help = WEIGHTS_HELP)]
        weights: Option<String>,
    },
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    suite: &'a str,
    seed: u64,
    reports: &'a [Report],
}

fn timed(f: impl FnOnce() -> Result<Report, CliError>) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed = start.elapsed();
    Ok(r)
}

fn run_suite(options: &Options, engine: &Engine, suite: Suite) -> Result<(&'static str, Vec<Report>), CliError> {
    Ok(match suite {
        Suite::Kunneth { a, b, weights_a, weights_b } => {
            let (xa, _) = load_complex(&a)?;
            let (xb, _) = load_complex(&b)?;
            let wa = load_weights(weights_a.as_deref(), &xa)?;
            let wb = load_weights(weights_b.as_deref(), &xb)?;
            ("kunneth", vec![timed(|| Ok(verify_kunneth(engine, &xa, &wa, &xb, &wb)?))?])
        }
        Suite::Pd { complex, weights } => {
            let (x, _) = load_complex(&complex)?;
            let w = load_weights(weights.as_deref(), &x)?;
            let cert = orientable_certificate(&x).ok_or_else(|| {
                CliError::Refused(format!(
                    "{complex}: no orientation certificate (not a closed connected orientable pseudomanifold)"
                ))
            })?;
            ("pd", vec![timed(|| Ok(verify_poincare(engine, &cert, &w)?))?])
        }
        Suite::Euler { complexes, weights, random } => {
            let names: Vec<String> = if complexes.is_empty() {
                BUILTIN_NAMES.iter().map(|n| format!("builtin:{n}")).collect()
            } else {
                complexes
            };
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            let mut reports = Vec::new();
            for name in &names {
                let (x, _) = load_complex(name)?;
                let classes = integral_h1_basis(&x);
                let mut systems = vec![load_weights(weights.as_deref(), &x)?];
                systems.extend((0..random).map(|_| random_system(&x, &classes, &mut rng)));
                for w in &systems {
                    let mut r = timed(|| Ok(verify_euler(engine, &x, w)?))?;
                    r.subject = format!("{name}, {}", r.subject);
                    reports.push(r);
                }
            }
            ("euler", reports)
        }
        Suite::Mv { complex, u, v, weights } => {
            let (x, _) = load_complex(&complex)?;
            let (u, _) = load_complex(&u)?;
            let (v, _) = load_complex(&v)?;
            let w = load_weights(weights.as_deref(), &x)?;
            ("mv", vec![timed(|| Ok(verify_mayer_vietoris(engine, &x, &u, &v, &w)?))?])
        }
        Suite::Les { complex, subcomplex, weights } => {
            let (x, _) = load_complex(&complex)?;
            let (a, _) = load_complex(&subcomplex)?;
            let w = load_weights(weights.as_deref(), &x)?;
            ("les", vec![timed(|| Ok(les_of_pair(engine, &x, &a, &w)?))?])
        }
        Suite::H0 { complex, weights } => {
            let (x, _) = load_complex(&complex)?;
            let w = load_weights(weights.as_deref(), &x)?;
            ("h0", vec![timed(|| Ok(verify_h0(engine, &x, &w)?))?])
        }
        Suite::Blowup { complex, weights } => {
            let (x, _) = load_complex(&complex)?;
            let w = load_weights(weights.as_deref(), &x)?;
            ("blowup", vec![timed(|| Ok(verify_blowup_dims(engine, &x, &w)?))?])
        }
        Suite::Lefschetz { complex, images, weights } => {
            let (x, _) = load_complex(&complex)?;
            let w = load_weights(weights.as_deref(), &x)?;
            let x = Arc::new(x);
            let f = SimplicialMap::new(x.clone(), x, parse_images(&images)?)?;
            ("lefschetz", vec![timed(|| Ok(verify_lefschetz(engine, &f, &w, None)?))?])
        }
    })
}

pub fn verify(options: &Options, suite: Suite) -> Result<(), CliError> {
    let engine = options.engine();
    let (name, reports) = run_suite(options, &engine, suite)?;
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!(
        "verify {name}: {} ({} of {} checks pass)",
        if failed == 0 { "PASS" } else { "FAIL" },
        reports.len() - failed,
        reports.len()
    );
    options.emit(&VerifyReport {
        suite: name,
        seed: options.seed,
        reports: &reports,
    })?;
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{failed} {name} check(s) failed")))
    }
}

pub fn selftest(options: &Options) -> Result<(), CliError> {
    let progress: Option<Progress> = if options.progress {
        Some(Box::new(|m: &str| eprintln!("... {m}")))
    } else {
        None
    };
    let report = run_all(SuiteConfig {
        seed: options.seed,
        fast_modular: options.fast_modular,
        progress,
    });
    println!("seed {}, audit primes {:?}", report.seed, report.primes);
    for c in std::iter::once(&report.builtins).chain(&report.criteria) {
        println!("{}", c.summary_line());
        for f in &c.failures {
            println!("    {f}");
        }
    }
    let pass = report.pass();
    println!("selftest: {}", if pass { "PASS" } else { "FAIL" });
    options.emit(&report)?;
    if pass {
        Ok(())
    } else {
        let failed = report.criteria.iter().filter(|c| !c.pass).count();
        Err(CliError::Failed(format!("{failed} criteria failed")))
    }
}
