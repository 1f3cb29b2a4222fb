//! Checks of the structural theorems on concrete inputs.
//!
//! Every check returns a [`Report`] with both sides of the claimed identity.
//! Ranks go through an [`Engine`], which decides between exact and
//! prime-field elimination and can log a modular cross-check of every rank
//! it computes.

mod blowup;
mod exactness;
mod theorems;

use std::fmt;
use std::sync::Mutex;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{betti_from_ranks, CochainComplex, CohomologyError, CohomologySpace, TwistedComplex};
use crate::linalg::{rank_mod_p, LinalgError};
use crate::local_system::LocalSystemError;
use crate::scalar::is_prime;
use crate::simplicial::{ComplexError, MapError};
use crate::RationalSparseMatrix;

pub use blowup::{blowup_model, verify_blowup_dims, BlowupModel};
pub use exactness::{les_of_pair, verify_mayer_vietoris, ExactSequence};
pub use theorems::{
    classical_lefschetz, verify_euler, verify_gauge_invariance, verify_h0, verify_kunneth, verify_lefschetz,
    verify_poincare, verify_subdivision,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    LocalSystem(#[from] LocalSystemError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("refused: {0}")]
    Refused(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Outcome of one verification.
///
/// Timing is kept out of the serialized form so that reports for fixed
/// inputs are byte-identical.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    pub subject: String,
    pub lhs_label: String,
    pub lhs: Vec<String>,
    pub rhs_label: String,
    pub rhs: Vec<String>,
    pub pass: bool,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(claim: &str, subject: impl Into<String>) -> Self {
        Report {
            claim: claim.into(),
            subject: subject.into(),
            lhs_label: String::new(),
            lhs: Vec::new(),
            rhs_label: String::new(),
            rhs: Vec::new(),
            pass: true,
            failures: Vec::new(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn sides<L: ToString, R: ToString>(mut self, lhs_label: &str, lhs: &[L], rhs_label: &str, rhs: &[R]) -> Self {
        self.lhs_label = lhs_label.into();
        self.lhs = lhs.iter().map(ToString::to_string).collect();
        self.rhs_label = rhs_label.into();
        self.rhs = rhs.iter().map(ToString::to_string).collect();
        self
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        self.pass = false;
        self.failures.push(why.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Marks every index where the two sides differ as a failing degree.
    pub fn compare_by_degree(&mut self) {
        let n = self.lhs.len().max(self.rhs.len());
        for k in 0..n {
            if self.lhs.get(k) != self.rhs.get(k) {
                let (l, r) = (self.lhs.get(k).map_or("-", String::as_str), self.rhs.get(k).map_or("-", String::as_str));
                self.fail(format!("degree {k}: {l} != {r}"));
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        writeln!(f, "[{verdict}] {}: {}", self.claim, self.subject)?;
        if !self.lhs_label.is_empty() {
            writeln!(f, "  {}: {}", self.lhs_label, self.lhs.join(" "))?;
            writeln!(f, "  {}: {}", self.rhs_label, self.rhs.join(" "))?;
        }
        for failure in &self.failures {
            writeln!(f, "  failure: {failure}")?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        write!(f, "  time: {:.3}s", self.elapsed.as_secs_f64())
    }
}

/// How ranks of coboundary matrices are obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    /// Largest rank over the given primes. Never exceeds the rational rank,
    /// and agrees with it unless every prime is unlucky.
    Modular(Vec<u64>),
    /// Exact ranks, with the modular ranks computed alongside and compared.
    Both(Vec<u64>),
}

/// A rank computed during verification together with its modular images.
#[derive(Clone, Debug, Serialize)]
pub struct RankRecord {
    pub context: String,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub exact: Option<usize>,
    pub modular: Vec<(u64, usize)>,
}

impl RankRecord {
    pub fn agrees(&self) -> bool {
        match self.exact {
            Some(r) => self.modular.iter().all(|&(_, m)| m == r),
            None => true,
        }
    }
}

pub type Progress = Box<dyn Fn(&str) + Send + Sync>;

/// Rank back end shared by all checks.
pub struct Engine {
    mode: RankMode,
    audit_primes: Vec<u64>,
    records: Mutex<Vec<RankRecord>>,
    progress: Option<Progress>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(RankMode::Exact)
    }
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("mode", &self.mode)
            .field("audit_primes", &self.audit_primes)
            .finish_non_exhaustive()
    }
}

impl Engine {
    pub fn new(mode: RankMode) -> Self {
        Engine {
            mode,
            audit_primes: Vec::new(),
            records: Mutex::new(Vec::new()),
            progress: None,
        }
    }

    /// Also computes every exact rank modulo these primes and keeps a record.
    pub fn with_audit(mut self, primes: Vec<u64>) -> Self {
        self.audit_primes = primes;
        self
    }

    pub fn with_progress(mut self, progress: impl Fn(&str) + Send + Sync + 'static) -> Self {
        self.progress = Some(Box::new(progress));
        self
    }

    pub fn mode(&self) -> &RankMode {
        &self.mode
    }

    pub fn progress(&self, message: &str) {
        if let Some(p) = &self.progress {
            p(message);
        }
    }

    pub fn records(&self) -> Vec<RankRecord> {
        self.records.lock().expect("rank log").clone()
    }

    /// One line describing the rank mode, for report notes.
    pub fn mode_note(&self) -> Option<String> {
        match &self.mode {
            RankMode::Exact => None,
            RankMode::Modular(primes) => Some(format!(
                "probabilistic: ranks are maxima of ranks modulo the primes {primes:?}, not exact rational ranks"
            )),
            RankMode::Both(primes) => Some(format!("exact ranks, cross-checked modulo the primes {primes:?}")),
        }
    }

    fn modular_ranks(m: &RationalSparseMatrix, primes: &[u64]) -> Vec<(u64, usize)> {
        primes
            .iter()
            .map(|&p| {
                let mut q = p;
                loop {
                    match rank_mod_p(m, q) {
                        Ok(r) => return (q, r),
                        Err(LinalgError::BadPrime(_)) => q = next_prime(q),
                        Err(e) => panic!("modular rank with {q}: {e}"),
                    }
                }
            })
            .collect()
    }

    /// Ranks of all coboundaries of `cochains`.
    pub fn ranks(&self, context: &str, cochains: &CochainComplex) -> Vec<usize> {
        let mut out = Vec::new();
        for (p, d) in cochains.coboundaries().iter().enumerate() {
            self.progress(&format!("{context}: rank of coboundary {p} ({} x {})", d.nrows(), d.ncols()));
            let (exact, modular_primes) = match &self.mode {
                RankMode::Exact => (Some(d.rank()), self.audit_primes.clone()),
                RankMode::Modular(primes) => (None, primes.clone()),
                RankMode::Both(primes) => {
                    let mut all = primes.clone();
                    all.extend(self.audit_primes.iter().filter(|p| !primes.contains(p)));
                    (Some(d.rank()), all)
                }
            };
            let modular = Self::modular_ranks(d, &modular_primes);
            let rank = exact.unwrap_or_else(|| modular.iter().map(|m| m.1).max().unwrap_or(0));
            if !modular.is_empty() {
                self.records.lock().expect("rank log").push(RankRecord {
                    context: context.into(),
                    degree: p,
                    rows: d.nrows(),
                    cols: d.ncols(),
                    exact,
                    modular,
                });
            }
            out.push(rank);
        }
        out
    }

    pub fn betti(&self, context: &str, tc: &TwistedComplex) -> Vec<usize> {
        let cochains = tc.cochains();
        let mut betti = betti_from_ranks(cochains.dims(), &self.ranks(context, cochains));
        betti.resize(tc.complex().degrees(), 0);
        betti
    }

    /// Full cohomology with representatives. Always exact; the ranks are
    /// also routed through [`Engine::ranks`] so they are logged.
    pub fn space(&self, context: &str, tc: TwistedComplex) -> CohomologySpace {
        if !self.audit_primes.is_empty() {
            self.ranks(context, tc.cochains());
        }
        self.progress(&format!("{context}: cohomology representatives"));
        CohomologySpace::new(tc)
    }
}

fn next_prime(p: u64) -> u64 {
    (p + 1..).find(|&q| is_prime(q)).expect("primes are unbounded")
}

/// Betti numbers of a product from those of the factors.
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (p, x) in a.iter().enumerate() {
        for (q, y) in b.iter().enumerate() {
            out[p + q] += x * y;
        }
    }
    out
}
