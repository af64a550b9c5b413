//! The eight induced-colouring rules and the properness verifier.
//!
//! Every solver, construction and reduction in this crate is checked against
//! [`verify_proper`]; nothing else decides what "proper" means.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Which graph elements carry the labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Vertex,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelingRule {
    /// `c(v)` = sum of labels on edges at `v`.
    EdgeSum,
    /// `c(v)` = sum of labels on neighbours of `v`.
    VertexSum,
    EdgeProduct,
    VertexProduct,
    /// Max minus min of incident edge labels, with the degree 0/1 cases.
    EdgeGap,
    VertexGap,
    /// `c(v) = f(v) * d(v)`.
    VertexDegree,
    /// Largest neighbour label; isolated vertices get 0.
    VertexMaximum,
}

impl LabelingRule {
    pub const ALL: [LabelingRule; 8] = [
        LabelingRule::EdgeSum,
        LabelingRule::VertexSum,
        LabelingRule::EdgeProduct,
        LabelingRule::VertexProduct,
        LabelingRule::EdgeGap,
        LabelingRule::VertexGap,
        LabelingRule::VertexDegree,
        LabelingRule::VertexMaximum,
    ];

    pub fn element_kind(self) -> ElementKind {
        match self {
            LabelingRule::EdgeSum | LabelingRule::EdgeProduct | LabelingRule::EdgeGap => ElementKind::Edge,
            _ => ElementKind::Vertex,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LabelingRule::EdgeSum => "edge-sum",
            LabelingRule::VertexSum => "vertex-sum",
            LabelingRule::EdgeProduct => "edge-product",
            LabelingRule::VertexProduct => "vertex-product",
            LabelingRule::EdgeGap => "edge-gap",
            LabelingRule::VertexGap => "vertex-gap",
            LabelingRule::VertexDegree => "vertex-degree",
            LabelingRule::VertexMaximum => "vertex-maximum",
        }
    }

    /// Elements whose labels determine `c(v)`: incident edge indices for edge
    /// rules, `v` itself for the degree rule, neighbours otherwise.
    pub fn scope(self, g: &Graph, v: usize) -> Vec<usize> {
        match self {
            LabelingRule::EdgeSum | LabelingRule::EdgeProduct | LabelingRule::EdgeGap => g.incident_edges(v).to_vec(),
            LabelingRule::VertexDegree => vec![v],
            _ => g.neighbors(v).to_vec(),
        }
    }
}

impl fmt::Display for LabelingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LabelingRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LabelingRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// An induced colour value. Sums and gaps always fit in `Small`; products of
/// many labels can overflow `u128`, in which case `Big` holds the exact value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Color {
    Small(u128),
    Big(BigUint),
}

impl Color {
    fn from_big(b: BigUint) -> Color {
        match u128::try_from(&b) {
            Ok(x) => Color::Small(x),
            Err(_) => Color::Big(b),
        }
    }
}

impl Ord for Color {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Color::Small(a), Color::Small(b)) => a.cmp(b),
            (Color::Small(_), Color::Big(_)) => Ordering::Less,
            (Color::Big(_), Color::Small(_)) => Ordering::Greater,
            (Color::Big(a), Color::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Color {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Small(x) => write!(f, "{x}"),
            Color::Big(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Color {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Color::Small(x) if *x <= u64::MAX as u128 => s.serialize_u64(*x as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Color::from(x)),
            Raw::Text(t) => t
                .parse::<BigUint>()
                .map(Color::from_big)
                .map_err(serde::de::Error::custom),
        }
    }
}

impl From<u64> for Color {
    fn from(x: u64) -> Self {
        Color::Small(x as u128)
    }
}

/// Colour of `v` under `rule`, with `label(e)` giving the label of element `e`.
pub fn color_at(g: &Graph, rule: LabelingRule, v: usize, label: impl Fn(usize) -> u64) -> Color {
    let d = g.degree(v);
    match rule {
        LabelingRule::EdgeSum | LabelingRule::EdgeProduct | LabelingRule::EdgeGap => {
            combine(rule, d, 0, g.incident_edges(v).iter().map(|&e| label(e)))
        }
        LabelingRule::VertexDegree => combine(rule, d, label(v), std::iter::empty()),
        _ => combine(rule, d, 0, g.neighbors(v).iter().map(|&u| label(u))),
    }
}

/// Applies `rule` to the labels in a vertex's scope. `own` is the vertex's
/// own label and only matters for the degree rule.
pub fn combine(rule: LabelingRule, d: usize, own: u64, values: impl Iterator<Item = u64>) -> Color {
    match rule {
        LabelingRule::EdgeSum | LabelingRule::VertexSum => Color::Small(values.map(u128::from).sum()),
        LabelingRule::EdgeProduct | LabelingRule::VertexProduct => product(values),
        LabelingRule::EdgeGap | LabelingRule::VertexGap => {
            if d == 0 {
                return Color::Small(1);
            }
            let (lo, hi) = values.fold((u64::MAX, 0), |(lo, hi), x| (lo.min(x), hi.max(x)));
            if d == 1 {
                Color::Small(lo as u128)
            } else {
                Color::Small((hi - lo) as u128)
            }
        }
        LabelingRule::VertexDegree => Color::Small(own as u128 * d as u128),
        LabelingRule::VertexMaximum => Color::Small(values.max().unwrap_or(0) as u128),
    }
}

fn product(values: impl Iterator<Item = u64>) -> Color {
    let mut acc: u128 = 1;
    let mut values = values;
    while let Some(x) = values.next() {
        match acc.checked_mul(x as u128) {
            Some(next) => acc = next,
            None => {
                let mut big = BigUint::from(acc) * BigUint::from(x);
                for y in values {
                    big *= y;
                }
                return Color::from_big(big);
            }
        }
    }
    Color::Small(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("label 0 on element {0}; labels are positive integers")]
    ZeroLabel(usize),
    #[error("{rule} labels {expected:?}s but the labeling is on {found:?}s")]
    WrongKind {
        rule: LabelingRule,
        expected: ElementKind,
        found: ElementKind,
    },
    #[error("labeling covers {found} elements but the graph has {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("labeling is empty")]
    Empty,
    #[error("labeling file: {0}")]
    Format(String),
}

/// Positive integer labels on the vertices or the edges of a graph. Edge
/// labels are indexed by edge index (see [`Graph::edges`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    kind: ElementKind,
    values: Vec<u64>,
}

impl Labeling {
    pub fn new(kind: ElementKind, values: Vec<u64>) -> Result<Self, LabelingError> {
        if let Some(i) = values.iter().position(|&x| x == 0) {
            return Err(LabelingError::ZeroLabel(i));
        }
        Ok(Labeling { kind, values })
    }

    pub fn vertices(values: Vec<u64>) -> Result<Self, LabelingError> {
        Self::new(ElementKind::Vertex, values)
    }

    pub fn edges(values: Vec<u64>) -> Result<Self, LabelingError> {
        Self::new(ElementKind::Edge, values)
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, element: usize) -> u64 {
        self.values[element]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks that this labeling fits `rule` on `g`.
    pub fn check_fits(&self, g: &Graph, rule: LabelingRule) -> Result<(), LabelingError> {
        let expected_kind = rule.element_kind();
        if self.kind != expected_kind {
            return Err(LabelingError::WrongKind {
                rule,
                expected: expected_kind,
                found: self.kind,
            });
        }
        let expected = element_count(g, expected_kind);
        if self.values.len() != expected {
            return Err(LabelingError::WrongLength {
                expected,
                found: self.values.len(),
            });
        }
        Ok(())
    }

    /// JSON form with 1-based element ids.
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let labels: Vec<LabelEntry> = match self.kind {
            ElementKind::Vertex => self
                .values
                .iter()
                .enumerate()
                .map(|(v, &f)| LabelEntry { u: None, v: v + 1, f })
                .collect(),
            ElementKind::Edge => g
                .edges()
                .iter()
                .zip(&self.values)
                .map(|(&(u, v), &f)| LabelEntry {
                    u: Some(u + 1),
                    v: v + 1,
                    f,
                })
                .collect(),
        };
        serde_json::to_value(LabelingFile { kind: self.kind, labels }).expect("labeling serializes")
    }

    /// Parses the JSON form against `g`. Every element must be labelled once.
    pub fn from_json(text: &str, g: &Graph) -> Result<Labeling, LabelingError> {
        let file: LabelingFile = serde_json::from_str(text).map_err(|e| LabelingError::Format(e.to_string()))?;
        let count = element_count(g, file.kind);
        let mut values: Vec<Option<u64>> = vec![None; count];
        for entry in &file.labels {
            let idx = match (file.kind, entry.u) {
                (ElementKind::Vertex, None) => entry
                    .v
                    .checked_sub(1)
                    .filter(|&v| v < count)
                    .ok_or_else(|| LabelingError::Format(format!("vertex {} out of range", entry.v)))?,
                (ElementKind::Edge, Some(u)) => {
                    let (a, b) = (u.wrapping_sub(1), entry.v.wrapping_sub(1));
                    g.edge_index(a, b).ok_or_else(|| {
                        LabelingError::Format(format!("{{{}, {}}} is not an edge of the graph", u, entry.v))
                    })?
                }
                (ElementKind::Vertex, Some(_)) => {
                    return Err(LabelingError::Format("vertex labels take only `v` and `f`".into()))
                }
                (ElementKind::Edge, None) => return Err(LabelingError::Format("edge labels need `u`, `v` and `f`".into())),
            };
            if values[idx].replace(entry.f).is_some() {
                return Err(LabelingError::Format(format!("element {} labelled twice", idx + 1)));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| LabelingError::Format(format!("element {} has no label", i + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        Labeling::new(file.kind, values)
    }
}

pub fn element_count(g: &Graph, kind: ElementKind) -> usize {
    match kind {
        ElementKind::Vertex => g.vertex_count(),
        ElementKind::Edge => g.edge_count(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelingFile {
    kind: ElementKind,
    labels: Vec<LabelEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelEntry {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    u: Option<usize>,
    v: usize,
    f: u64,
}

/// `c(v)` for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedColoring {
    pub colors: Vec<Color>,
}

pub fn induced_coloring(g: &Graph, rule: LabelingRule, f: &Labeling) -> Result<InducedColoring, LabelingError> {
    f.check_fits(g, rule)?;
    let colors = (0..g.vertex_count())
        .map(|v| color_at(g, rule, v, |e| f.get(e)))
        .collect();
    Ok(InducedColoring { colors })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    /// Lexicographically smallest edge whose endpoints share colour `color`.
    Violation { edge: (usize, usize), color: Color },
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, Verdict::Proper)
    }
}

pub fn verify_proper(g: &Graph, rule: LabelingRule, f: &Labeling) -> Result<Verdict, LabelingError> {
    let c = induced_coloring(g, rule, f)?;
    Ok(g.edges()
        .iter()
        .find(|&&(u, v)| c.colors[u] == c.colors[v])
        .map_or(Verdict::Proper, |&(u, v)| Verdict::Violation {
            edge: (u, v),
            color: c.colors[u].clone(),
        }))
}

/// Shorthand for `verify_proper(..)` that treats malformed labelings as improper.
pub fn is_proper(g: &Graph, rule: LabelingRule, f: &Labeling) -> bool {
    matches!(verify_proper(g, rule, f), Ok(Verdict::Proper))
}

/// The `k` for which `f` draws from `{1..k}`.
pub fn max_label_used(f: &Labeling) -> Result<u64, LabelingError> {
    f.values().iter().copied().max().ok_or(LabelingError::Empty)
}
