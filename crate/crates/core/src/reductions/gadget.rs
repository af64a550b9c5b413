//! Gadgets with machine-checked properties.
//!
//! A gadget is a small graph whose *port* vertices each carry some number of
//! external attachments (edges for edge rules, neighbours for vertex rules).
//! [`check_gadget`] enumerates every labeling of the internal elements and
//! the external attachments, keeps those under which every internal edge is
//! properly coloured, and tests the declared properties on each.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::semantics::{color_at, element_count, Color, ElementKind, LabelingRule};
use crate::solvers::BudgetExceeded;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Port {
    pub vertex: usize,
    /// Number of external attachments at this port.
    pub external: usize,
}

/// An internal element (vertex or edge index, by rule) or the `slot`-th
/// external attachment of port `port`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ElementRef {
    Internal(usize),
    External { port: usize, slot: usize },
}

/// External labels (ports in order, slots in order) and the resulting port
/// colours.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Observation {
    pub external: Vec<u64>,
    pub colors: Vec<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GadgetProperty {
    /// In every proper labeling these elements share one label.
    EqualLabels(Vec<ElementRef>),
    /// Some proper labeling exists.
    Labelable,
    /// The set of observations over all proper labelings is exactly this.
    Profile(Vec<Observation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSpec {
    pub name: String,
    pub graph: Graph,
    pub ports: Vec<Port>,
    pub properties: Vec<GadgetProperty>,
}

/// One labeling of a gadget: internal elements, then external attachments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetAssignment {
    pub internal: Vec<u64>,
    pub external: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "result")]
pub enum GadgetCheck {
    Pass,
    Fail {
        property: usize,
        reason: String,
        counterexample: Option<GadgetAssignment>,
    },
}

impl GadgetCheck {
    pub fn passed(&self) -> bool {
        matches!(self, GadgetCheck::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("port vertex {0} is not a gadget vertex")]
    BadPort(usize),
    #[error("property refers to a missing element")]
    BadElement,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// On-disk form of a [`GadgetSpec`]: vertices and internal elements are
/// 1-based like every other file the toolkit reads.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GadgetFile {
    name: String,
    vertices: usize,
    edges: Vec<(usize, usize)>,
    ports: Vec<Port>,
    #[serde(default)]
    properties: Vec<GadgetProperty>,
}

impl GadgetSpec {
    pub fn from_json(text: &str) -> Result<GadgetSpec, String> {
        let file: GadgetFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let down = |x: usize| x.checked_sub(1).ok_or_else(|| "ids are 1-based".to_string());
        let edges = file
            .edges
            .iter()
            .map(|&(u, v)| Ok((down(u)?, down(v)?)))
            .collect::<Result<Vec<_>, String>>()?;
        let graph = Graph::new_simple(file.vertices, edges).map_err(|e| e.to_string())?;
        let ports = file
            .ports
            .into_iter()
            .map(|p| Ok(Port { vertex: down(p.vertex)?, external: p.external }))
            .collect::<Result<Vec<_>, String>>()?;
        let properties = file
            .properties
            .into_iter()
            .map(|p| match p {
                GadgetProperty::EqualLabels(refs) => refs
                    .into_iter()
                    .map(|r| match r {
                        ElementRef::Internal(i) => Ok(ElementRef::Internal(down(i)?)),
                        ElementRef::External { port, slot } => Ok(ElementRef::External {
                            port: down(port)?,
                            slot: down(slot)?,
                        }),
                    })
                    .collect::<Result<Vec<_>, String>>()
                    .map(GadgetProperty::EqualLabels),
                other => Ok(other),
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(GadgetSpec {
            name: file.name,
            graph,
            ports,
            properties,
        })
    }

    pub fn to_json(&self) -> String {
        let up = |x: usize| x + 1;
        let file = GadgetFile {
            name: self.name.clone(),
            vertices: self.graph.vertex_count(),
            edges: self.graph.edges().iter().map(|&(u, v)| (up(u), up(v))).collect(),
            ports: self
                .ports
                .iter()
                .map(|p| Port { vertex: up(p.vertex), external: p.external })
                .collect(),
            properties: self
                .properties
                .iter()
                .map(|p| match p {
                    GadgetProperty::EqualLabels(refs) => GadgetProperty::EqualLabels(
                        refs.iter()
                            .map(|r| match *r {
                                ElementRef::Internal(i) => ElementRef::Internal(up(i)),
                                ElementRef::External { port, slot } => ElementRef::External {
                                    port: up(port),
                                    slot: up(slot),
                                },
                            })
                            .collect(),
                    ),
                    other => other.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("gadget serialises")
    }
}

pub const GADGET_BUDGET: u64 = 10_000_000;

impl GadgetSpec {
    pub fn external_count(&self) -> usize {
        self.ports.iter().map(|p| p.external).sum()
    }

    fn validate(&self) -> Result<(), GadgetError> {
        match self.ports.iter().find(|p| p.vertex >= self.graph.vertex_count()) {
            Some(p) => Err(GadgetError::BadPort(p.vertex)),
            None => Ok(()),
        }
    }
}

/// The gadget with one pendant vertex per external slot, and a map from
/// (internal elements ++ external slots) to elements of that graph.
struct Augmented {
    graph: Graph,
    element_of: Vec<usize>,
}

fn augment(spec: &GadgetSpec, kind: ElementKind) -> Augmented {
    let g = &spec.graph;
    let n = g.vertex_count();
    let mut edges = g.edges().to_vec();
    let mut next = n;
    let mut pendants = Vec::new();
    for p in &spec.ports {
        for _ in 0..p.external {
            edges.push((p.vertex, next));
            pendants.push((p.vertex, next));
            next += 1;
        }
    }
    let graph = Graph::new_simple(next, edges).expect("pendants keep the gadget simple");
    let element_of = match kind {
        ElementKind::Vertex => (0..next).collect(),
        ElementKind::Edge => g
            .edges()
            .iter()
            .chain(&pendants)
            .map(|&(u, v)| graph.edge_index(u, v).unwrap())
            .collect(),
    };
    Augmented { graph, element_of }
}

/// Calls `visit` with every proper gadget labeling from `{1..k}`.
fn enumerate(
    spec: &GadgetSpec,
    rule: LabelingRule,
    k: u64,
    budget: u64,
    mut visit: impl FnMut(&GadgetAssignment, &[Color]),
) -> Result<(), GadgetError> {
    spec.validate()?;
    let kind = rule.element_kind();
    let aug = augment(spec, kind);
    let internal = element_count(&spec.graph, kind);
    let total = internal + spec.external_count();
    let n = spec.graph.vertex_count();
    let mut values = vec![1u64; total];
    let mut labels = vec![1u64; element_count(&aug.graph, kind)];
    let mut count = 0u64;
    loop {
        count += 1;
        if count > budget {
            return Err(BudgetExceeded(budget).into());
        }
        for (i, &x) in values.iter().enumerate() {
            labels[aug.element_of[i]] = x;
        }
        let colors: Vec<Color> = (0..n).map(|v| color_at(&aug.graph, rule, v, |e| labels[e])).collect();
        if spec.graph.edges().iter().all(|&(u, v)| colors[u] != colors[v]) {
            let a = GadgetAssignment {
                internal: values[..internal].to_vec(),
                external: values[internal..].to_vec(),
            };
            visit(&a, &colors);
        }
        let Some(i) = (0..total).rev().find(|&i| values[i] < k) else {
            return Ok(());
        };
        values[i] += 1;
        values[i + 1..].fill(1);
    }
}

fn observe(spec: &GadgetSpec, a: &GadgetAssignment, colors: &[Color]) -> Observation {
    Observation {
        external: a.external.clone(),
        colors: spec.ports.iter().map(|p| colors[p.vertex].clone()).collect(),
    }
}

/// Every observation realised by a proper labeling from `{1..k}`.
pub fn gadget_profile(
    spec: &GadgetSpec,
    rule: LabelingRule,
    k: u64,
    budget: u64,
) -> Result<BTreeSet<Observation>, GadgetError> {
    let mut seen = BTreeSet::new();
    enumerate(spec, rule, k, budget, |a, colors| {
        seen.insert(observe(spec, a, colors));
    })?;
    Ok(seen)
}

/// Tests each declared property against all proper labelings from `{1..k}`.
pub fn check_gadget(spec: &GadgetSpec, rule: LabelingRule, k: u64) -> Result<GadgetCheck, GadgetError> {
    check_gadget_with_budget(spec, rule, k, GADGET_BUDGET)
}

pub fn check_gadget_with_budget(
    spec: &GadgetSpec,
    rule: LabelingRule,
    k: u64,
    budget: u64,
) -> Result<GadgetCheck, GadgetError> {
    spec.validate()?;
    let internal = element_count(&spec.graph, rule.element_kind());
    let mut offsets = Vec::new();
    let mut acc = 0;
    for p in &spec.ports {
        offsets.push(acc);
        acc += p.external;
    }
    let resolve = |r: &ElementRef| -> Option<(bool, usize)> {
        match *r {
            ElementRef::Internal(i) => (i < internal).then_some((true, i)),
            ElementRef::External { port, slot } => spec
                .ports
                .get(port)
                .filter(|p| slot < p.external)
                .map(|_| (false, offsets[port] + slot)),
        }
    };
    for prop in &spec.properties {
        if let GadgetProperty::EqualLabels(refs) = prop {
            if refs.iter().any(|r| resolve(r).is_none()) {
                return Err(GadgetError::BadElement);
            }
        }
    }

    let mut first_failure: Option<(usize, String, Option<GadgetAssignment>)> = None;
    let mut any = None;
    let mut seen = BTreeSet::new();
    enumerate(spec, rule, k, budget, |a, colors| {
        if any.is_none() {
            any = Some(a.clone());
        }
        let obs = observe(spec, a, colors);
        for (pi, prop) in spec.properties.iter().enumerate() {
            if first_failure.is_some() {
                return;
            }
            match prop {
                GadgetProperty::EqualLabels(refs) => {
                    let get = |r: &ElementRef| {
                        let (inner, i) = resolve(r).unwrap();
                        if inner {
                            a.internal[i]
                        } else {
                            a.external[i]
                        }
                    };
                    if refs.windows(2).any(|w| get(&w[0]) != get(&w[1])) {
                        first_failure = Some((pi, "labels differ".into(), Some(a.clone())));
                    }
                }
                GadgetProperty::Profile(allowed) => {
                    if !allowed.contains(&obs) {
                        first_failure = Some((pi, format!("unexpected observation {obs:?}"), Some(a.clone())));
                    }
                }
                GadgetProperty::Labelable => {}
            }
        }
        seen.insert(obs);
    })?;
    if let Some((property, reason, counterexample)) = first_failure {
        return Ok(GadgetCheck::Fail {
            property,
            reason,
            counterexample,
        });
    }
    for (pi, prop) in spec.properties.iter().enumerate() {
        match prop {
            GadgetProperty::Labelable if any.is_none() => {
                return Ok(GadgetCheck::Fail {
                    property: pi,
                    reason: "no proper labeling exists".into(),
                    counterexample: None,
                })
            }
            GadgetProperty::Profile(allowed) => {
                if let Some(missing) = allowed.iter().find(|o| !seen.contains(o)) {
                    return Ok(GadgetCheck::Fail {
                        property: pi,
                        reason: format!("observation {missing:?} is never realised"),
                        counterexample: None,
                    });
                }
            }
            _ => {}
        }
    }
    Ok(GadgetCheck::Pass)
}

fn obs(external: &[u64], colors: &[u128]) -> Observation {
    Observation {
        external: external.to_vec(),
        colors: colors.iter().map(|&c| Color::Small(c)).collect(),
    }
}

/// `I(a, b)` for the edge-sum reduction: `K4` minus an edge. Ports 1 and 3
/// each take one external edge. Both external edges always share a label `s`
/// and both ports get colour `s + 3`.
pub fn default_sum_relay() -> GadgetSpec {
    GadgetSpec {
        name: "I(a,b)".into(),
        graph: Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap(),
        ports: vec![Port { vertex: 1, external: 1 }, Port { vertex: 3, external: 1 }],
        properties: vec![
            GadgetProperty::EqualLabels(vec![
                ElementRef::External { port: 0, slot: 0 },
                ElementRef::External { port: 1, slot: 0 },
            ]),
            GadgetProperty::Profile(vec![obs(&[1, 1], &[4, 4]), obs(&[2, 2], &[5, 5])]),
        ],
    }
}

/// `H_x` for the edge-product reduction. The port takes the three clause
/// edges of a variable; they always share a label, and the port colour is
/// 2 when that label is 1 and 16 when it is 2.
pub fn default_variable_gadget() -> GadgetSpec {
    GadgetSpec {
        name: "H_x".into(),
        graph: Graph::new(
            7,
            [(0, 1), (0, 2), (1, 2), (2, 3), (2, 6), (3, 4), (3, 5), (3, 6), (4, 5)],
        )
        .unwrap(),
        ports: vec![Port { vertex: 6, external: 3 }],
        properties: vec![
            GadgetProperty::EqualLabels(vec![
                ElementRef::External { port: 0, slot: 0 },
                ElementRef::External { port: 0, slot: 1 },
                ElementRef::External { port: 0, slot: 2 },
            ]),
            GadgetProperty::Profile(vec![obs(&[1, 1, 1], &[2]), obs(&[2, 2, 2], &[16])]),
        ],
    }
}

/// `I_c` for the edge-product reduction. The port takes the three variable
/// edges of a clause. Exactly two of them labelled 2 is impossible; none,
/// one or three give port colours 2, 4 and 16.
pub fn default_clause_gadget() -> GadgetSpec {
    let mut profile = vec![obs(&[1, 1, 1], &[2]), obs(&[2, 2, 2], &[16])];
    for one in 0..3 {
        let mut ext = [1u64; 3];
        ext[one] = 2;
        profile.push(obs(&ext, &[4]));
    }
    profile.sort();
    GadgetSpec {
        name: "I_c".into(),
        graph: Graph::new(6, [(0, 1), (0, 4), (1, 2), (1, 5), (2, 3), (3, 4)]).unwrap(),
        ports: vec![Port { vertex: 5, external: 3 }],
        properties: vec![GadgetProperty::Profile(profile)],
    }
}
