use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// A simplex as its strictly increasing vertex list.
pub type Simplex = Vec<usize>;

/// One violated invariant of a simplicial complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    VertexOutOfRange { simplex: Simplex, vertex_count: usize },
    NotIncreasing { simplex: Simplex },
    MissingFace { simplex: Simplex, face: Simplex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty vertex list"),
            Violation::VertexOutOfRange {
                simplex,
                vertex_count,
            } => write!(f, "{simplex:?} uses a vertex outside 0..{vertex_count}"),
            Violation::NotIncreasing { simplex } => {
                write!(f, "{simplex:?} is not strictly increasing")
            }
            Violation::MissingFace { simplex, face } => {
                write!(f, "{simplex:?} is present but its face {face:?} is not")
            }
        }
    }
}

/// Result of [`validate_simplices`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub violations: Vec<Violation>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    Invalid(Diagnostics),
    #[error("{0}")]
    Construction(String),
}

/// Checks an explicit list of simplices (not face-closed automatically)
/// against the complex invariants and reports every violation.
pub fn validate_simplices(vertex_count: usize, simplices: &[Simplex]) -> Diagnostics {
    let present: BTreeSet<&[usize]> = simplices.iter().map(Vec::as_slice).collect();
    let mut violations = Vec::new();
    for s in simplices {
        if s.is_empty() {
            violations.push(Violation::Empty);
            continue;
        }
        if s.iter().any(|&v| v >= vertex_count) {
            violations.push(Violation::VertexOutOfRange {
                simplex: s.clone(),
                vertex_count,
            });
        }
        if s.windows(2).any(|w| w[0] >= w[1]) {
            violations.push(Violation::NotIncreasing { simplex: s.clone() });
            continue;
        }
        if s.len() > 1 {
            for i in 0..s.len() {
                let face = remove_vertex(s, i);
                if !present.contains(face.as_slice()) {
                    violations.push(Violation::MissingFace {
                        simplex: s.clone(),
                        face,
                    });
                }
            }
        }
    }
    Diagnostics { violations }
}

pub(crate) fn remove_vertex(s: &[usize], i: usize) -> Simplex {
    let mut face = Vec::with_capacity(s.len() - 1);
    face.extend_from_slice(&s[..i]);
    face.extend_from_slice(&s[i + 1..]);
    face
}

/// A finite ordered simplicial complex on the vertex labels `0..vertex_count`.
///
/// Simplices are stored per dimension in lexicographic order; that order is
/// the row/column order of every cochain matrix. Not every label needs to be
/// a vertex of the complex, so subcomplexes share their parent's labels.
#[derive(Clone)]
pub struct Complex {
    vertex_count: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("vertex_count", &self.vertex_count)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl Complex {
    /// The empty complex on `vertex_count` labels.
    pub fn empty(vertex_count: usize) -> Self {
        Complex {
            vertex_count,
            simplices: Vec::new(),
            index: Vec::new(),
        }
    }

    /// Face closure of the given simplices. Each input must be strictly
    /// increasing and in range.
    pub fn from_maximal<I>(vertex_count: usize, generators: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        let mut bad = Vec::new();
        for s in generators {
            let diag = validate_simplices(vertex_count, std::slice::from_ref(&s));
            let structural: Vec<Violation> = diag
                .violations
                .into_iter()
                .filter(|v| !matches!(v, Violation::MissingFace { .. }))
                .collect();
            if !structural.is_empty() {
                bad.extend(structural);
                continue;
            }
            close_into(&mut by_dim, s);
        }
        if !bad.is_empty() {
            return Err(ComplexError::Invalid(Diagnostics { violations: bad }));
        }
        Ok(Self::from_sets(vertex_count, by_dim))
    }

    /// A complex from an explicit, already face-closed simplex list.
    pub fn from_simplices(vertex_count: usize, simplices: Vec<Simplex>) -> Result<Self, ComplexError> {
        let diag = validate_simplices(vertex_count, &simplices);
        if !diag.is_valid() {
            return Err(ComplexError::Invalid(diag));
        }
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(s);
        }
        Ok(Self::from_sets(vertex_count, by_dim))
    }

    fn from_sets(vertex_count: usize, by_dim: Vec<BTreeSet<Simplex>>) -> Self {
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Complex {
            vertex_count,
            simplices,
            index,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// All simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Complex {
        let by_dim = self.simplices.iter().take(k + 1).map(|l| l.iter().cloned().collect()).collect();
        Self::from_sets(self.vertex_count, by_dim)
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Number of degrees carrying simplices (`dim + 1`).
    pub fn degrees(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// The `p`-simplices in lexicographic order (empty above the dimension).
    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.simplices.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices(p).len()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let p = simplex.len().checked_sub(1)?;
        self.index.get(p)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.simplices(0).iter().map(|s| s[0])
    }

    pub fn edges(&self) -> &[Simplex] {
        self.simplices(1)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(p, s)| if p % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Simplices that are not a face of any other simplex, by dimension then lexicographically.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for p in 0..self.degrees() {
            let mut covered = vec![false; self.count(p)];
            for s in self.simplices(p + 1) {
                for i in 0..s.len() {
                    covered[self.index_of(&remove_vertex(s, i)).expect("face-closed")] = true;
                }
            }
            out.extend(
                self.simplices(p)
                    .iter()
                    .zip(&covered)
                    .filter(|(_, &c)| !c)
                    .map(|(s, _)| s.clone()),
            );
        }
        out
    }

    /// Re-checks the stored simplices against the invariants.
    pub fn validate(&self) -> Diagnostics {
        let all: Vec<Simplex> = self.simplices.iter().flatten().cloned().collect();
        validate_simplices(self.vertex_count, &all)
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.simplices.iter().flatten().all(|s| other.contains(s))
    }

    /// Union of two complexes on the same labels.
    pub fn union(&self, other: &Complex) -> Complex {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in self.simplices.iter().chain(&other.simplices).flatten() {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(s.clone());
        }
        Complex::from_sets(self.vertex_count.max(other.vertex_count), by_dim)
    }

    pub fn intersection(&self, other: &Complex) -> Complex {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in self.simplices.iter().flatten().filter(|s| other.contains(s)) {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(s.clone());
        }
        Complex::from_sets(self.vertex_count, by_dim)
    }

    /// Subcomplex generated by the given simplices of `self`.
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<Complex, ComplexError> {
        if let Some(s) = generators.iter().find(|s| !self.contains(s)) {
            return Err(ComplexError::Construction(format!(
                "{s:?} is not a simplex of the complex"
            )));
        }
        Complex::from_maximal(self.vertex_count, generators.iter().cloned())
    }

    /// The full subcomplex spanned by a vertex set.
    pub fn induced_subcomplex(&self, vertices: &BTreeSet<usize>) -> Complex {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for (d, list) in self.simplices.iter().enumerate() {
            let kept: BTreeSet<Simplex> = list
                .iter()
                .filter(|s| s.iter().all(|v| vertices.contains(v)))
                .cloned()
                .collect();
            if kept.is_empty() {
                break;
            }
            by_dim.push(kept);
            debug_assert_eq!(by_dim.len(), d + 1);
        }
        Complex::from_sets(self.vertex_count, by_dim)
    }

    /// Vertex sets of the connected components, each sorted, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.edges() {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in self.vertices() {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }
}

fn close_into(by_dim: &mut Vec<BTreeSet<Simplex>>, s: Simplex) {
    let d = s.len() - 1;
    if by_dim.len() <= d {
        by_dim.resize(d + 1, BTreeSet::new());
    }
    if by_dim[d].contains(&s) {
        return;
    }
    if d > 0 {
        for i in 0..s.len() {
            close_into(by_dim, remove_vertex(&s, i));
        }
    }
    by_dim[d].insert(s);
}
