//! File formats for complexes and weight systems.
//!
//! Both are TOML. A complex document:
//!
//! ```toml
//! name = "s1_3"                              # optional
//! vertex_count = 3
//! maximal_simplices = [[0, 1], [0, 2], [1, 2]]
//! ```
//!
//! A weight document either lists weights per edge, keyed `"i-j"` with
//! `i < j`, as a string `"p/q"` or an integer:
//!
//! ```toml
//! [weights]
//! "0-2" = "3/2"
//! "1-2" = 2
//! ```
//!
//! or gives an integral 1-cocycle `m` and a base `t`, meaning `w = t^m`:
//!
//! ```toml
//! base = "2"
//! [edges]
//! "0-2" = 1
//! ```
//!
//! Edges not listed get weight 1 (exponent 0).

use std::collections::BTreeMap;

use novikov::local_system::{Edge, WeightCocycle};
use novikov::scalar::{format_rational, parse_rational};
use novikov::simplicial::Complex;
use novikov::Rational;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertex_count: usize,
    pub maximal_simplices: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawComplex {
    name: Option<String>,
    vertex_count: usize,
    maximal_simplices: Vec<Spanned<Vec<usize>>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn toml_error(origin: &str, text: &str, e: &toml::de::Error) -> CliError {
    let message = e.message().trim();
    match e.span() {
        Some(span) => CliError::Input(format!("{origin}, line {}: {message}", line_of(text, span.start))),
        None => CliError::Input(format!("{origin}: {message}")),
    }
}

impl ComplexDocument {
    pub fn from_complex(x: &Complex, name: Option<String>) -> Self {
        ComplexDocument {
            name,
            vertex_count: x.vertex_count(),
            maximal_simplices: x.maximal_simplices(),
        }
    }

    /// Parses and validates a document. `origin` names the source in errors.
    pub fn parse(origin: &str, text: &str) -> Result<Self, CliError> {
        let raw: RawComplex = toml::from_str(text).map_err(|e| toml_error(origin, text, &e))?;
        for s in &raw.maximal_simplices {
            let at = || format!("{origin}, line {}: maximal simplex {:?}", line_of(text, s.span().start), s.get_ref());
            if s.get_ref().is_empty() {
                return Err(CliError::Input(format!("{} is empty", at())));
            }
            if s.get_ref().windows(2).any(|p| p[0] >= p[1]) {
                return Err(CliError::Input(format!("{} is not strictly increasing", at())));
            }
            if let Some(v) = s.get_ref().iter().find(|&&v| v >= raw.vertex_count) {
                return Err(CliError::Input(format!(
                    "{} has vertex {v}, but vertex_count is {}",
                    at(),
                    raw.vertex_count
                )));
            }
        }
        Ok(ComplexDocument {
            name: raw.name,
            vertex_count: raw.vertex_count,
            maximal_simplices: raw.maximal_simplices.into_iter().map(Spanned::into_inner).collect(),
        })
    }

    pub fn to_complex(&self) -> Result<Complex, CliError> {
        Ok(Complex::from_maximal(self.vertex_count, self.maximal_simplices.clone())?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("complex documents serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightDocument {
    Explicit(BTreeMap<Edge, Rational>),
    Integral { base: Rational, edges: BTreeMap<Edge, BigInt> },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Text(String),
    Integer(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeights {
    weights: Option<BTreeMap<Spanned<String>, Spanned<RawRational>>>,
    base: Option<Spanned<RawRational>>,
    edges: Option<BTreeMap<Spanned<String>, Spanned<i64>>>,
}

#[derive(Serialize)]
struct WriteExplicit<'a> {
    weights: BTreeMap<String, &'a str>,
}

#[derive(Serialize)]
struct WriteIntegral<'a> {
    base: &'a str,
    edges: BTreeMap<String, i64>,
}

fn parse_edge(origin: &str, text: &str, key: &Spanned<String>) -> Result<Edge, CliError> {
    let bad = |why: &str| {
        CliError::Input(format!(
            "{origin}, line {}: edge key {:?} {why}",
            line_of(text, key.span().start),
            key.get_ref()
        ))
    };
    let (i, j) = key.get_ref().split_once('-').ok_or_else(|| bad("is not of the form \"i-j\""))?;
    let (i, j): (usize, usize) = match (i.trim().parse(), j.trim().parse()) {
        (Ok(i), Ok(j)) => (i, j),
        _ => return Err(bad("is not of the form \"i-j\"")),
    };
    if i >= j {
        return Err(bad("needs i < j"));
    }
    Ok((i, j))
}

fn parse_value(origin: &str, text: &str, value: &Spanned<RawRational>) -> Result<Rational, CliError> {
    match value.get_ref() {
        RawRational::Integer(n) => Ok(Rational::from_integer((*n).into())),
        RawRational::Text(s) => parse_rational(s).ok_or_else(|| {
            CliError::Input(format!(
                "{origin}, line {}: {s:?} is not a rational literal \"p/q\"",
                line_of(text, value.span().start)
            ))
        }),
    }
}

fn edge_key((i, j): Edge) -> String {
    format!("{i}-{j}")
}

impl WeightDocument {
    pub fn from_cocycle(w: &WeightCocycle) -> Self {
        WeightDocument::Explicit(w.weights().clone())
    }

    pub fn parse(origin: &str, text: &str) -> Result<Self, CliError> {
        let raw: RawWeights = toml::from_str(text).map_err(|e| toml_error(origin, text, &e))?;
        match (raw.weights, raw.base, raw.edges) {
            (Some(weights), None, None) => {
                let mut out = BTreeMap::new();
                for (k, v) in &weights {
                    out.insert(parse_edge(origin, text, k)?, parse_value(origin, text, v)?);
                }
                Ok(WeightDocument::Explicit(out))
            }
            (None, Some(base), edges) => {
                let base = parse_value(origin, text, &base)?;
                let mut out = BTreeMap::new();
                for (k, v) in edges.iter().flatten() {
                    out.insert(parse_edge(origin, text, k)?, BigInt::from(*v.get_ref()));
                }
                Ok(WeightDocument::Integral { base, edges: out })
            }
            (None, None, Some(_)) => Err(CliError::Input(format!("{origin}: [edges] needs a base"))),
            (None, None, None) => Err(CliError::Input(format!("{origin}: expected [weights] or base"))),
            _ => Err(CliError::Input(format!(
                "{origin}: give either [weights] or base with [edges], not both"
            ))),
        }
    }

    /// The weight system on `x`; unlisted edges get weight 1.
    pub fn to_cocycle(&self, x: &Complex) -> Result<WeightCocycle, CliError> {
        let keys: Vec<&Edge> = match self {
            WeightDocument::Explicit(m) => m.keys().collect(),
            WeightDocument::Integral { edges, .. } => edges.keys().collect(),
        };
        if let Some(&&(i, j)) = keys.iter().find(|&&&(i, j)| !x.contains(&[i, j])) {
            return Err(CliError::Input(format!("weight given on {i}-{j}, which is not an edge of the complex")));
        }
        Ok(match self {
            WeightDocument::Explicit(m) => {
                WeightCocycle::from_fn(x, |i, j| m.get(&(i, j)).cloned().unwrap_or_else(Rational::one))?
            }
            WeightDocument::Integral { base, edges } => WeightCocycle::from_integral_class(x, edges, base)?,
        })
    }

    pub fn to_toml(&self) -> String {
        match self {
            WeightDocument::Explicit(m) => {
                let text: BTreeMap<Edge, String> = m.iter().map(|(&e, q)| (e, format_rational(q))).collect();
                let doc = WriteExplicit {
                    weights: text.iter().map(|(&e, q)| (edge_key(e), q.as_str())).collect(),
                };
                toml::to_string(&doc).expect("weight documents serialize")
            }
            WeightDocument::Integral { base, edges } => {
                let base = format_rational(base);
                let doc = WriteIntegral {
                    base: &base,
                    edges: edges
                        .iter()
                        .map(|(&e, m)| (edge_key(e), i64::try_from(m).expect("exponent fits in i64")))
                        .collect(),
                };
                toml::to_string(&doc).expect("weight documents serialize")
            }
        }
    }
}
