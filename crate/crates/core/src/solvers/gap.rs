//! Gap labelings from `{1, 2}` on bipartite graphs via NAE formulas.
//!
//! With labels in `{1, 2}` every vertex of degree at least two has colour 0
//! or 1, so on a connected set of such vertices the two sides of the
//! bipartition take the two colours. Which side gets 1 is a NAE condition on
//! the labels of the other side.

use super::{brute_force_decide, checked_yes, solve_nae, Method, SolveError, SolveOutcome};
use crate::formula::{Formula, Lit, Mode};
use crate::graph::{bipartition, components, Bipartition, Graph};
use crate::semantics::{ElementKind, Labeling, LabelingRule};

/// NAE formula with a variable per vertex of `g` and one clause
/// `(⋁_{v∼u} v)` per `u` in `clause_vertices`.
pub fn gap_formula(g: &Graph, clause_vertices: &[usize]) -> Formula {
    let clauses = clause_vertices
        .iter()
        .map(|&u| g.neighbors(u).iter().map(|&v| Lit::pos(v)).collect())
        .collect();
    Formula::new(g.vertex_count(), clauses, Mode::Nae).expect("clause vertices have degree at least 2")
}

/// How Algorithm 1 settled each component, in component order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentRoute {
    Small,
    Star,
    Phi,
    Psi,
    Neither,
    /// The leaf-stripped component was disconnected, so the NAE answer was not
    /// conclusive and brute force decided it.
    Fallback { labelable: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algorithm1Report {
    pub outcome: SolveOutcome,
    pub routes: Vec<ComponentRoute>,
}

/// Vertex labeling by gap from `{1, 2}` on a bipartite graph.
pub fn vertex_gap_algorithm1(g: &Graph) -> Result<SolveOutcome, SolveError> {
    vertex_gap_algorithm1_report(g).map(|r| r.outcome)
}

pub fn vertex_gap_algorithm1_report(g: &Graph) -> Result<Algorithm1Report, SolveError> {
    let bp = bipartition(g).map_err(|e| SolveError::NotApplicable(format!("graph is not bipartite ({e})")))?;
    let mut labels = vec![0u64; g.vertex_count()];
    let mut routes = Vec::new();
    let mut all = true;
    let mut used_brute = false;

    for part in components(g).parts {
        let route = label_component(g, &bp, &part, &mut labels)?;
        match route {
            ComponentRoute::Neither => all = false,
            ComponentRoute::Fallback { labelable } => {
                used_brute = true;
                all &= labelable;
            }
            _ => {}
        }
        routes.push(route);
        if !all {
            break;
        }
    }
    let method = if used_brute { Method::Brute } else { Method::NaeAlgorithm1 };
    let outcome = if all {
        checked_yes(g, LabelingRule::VertexGap, Labeling::vertices(labels)?, method)?
    } else {
        SolveOutcome::no(method)
    };
    Ok(Algorithm1Report { outcome, routes })
}

fn label_component(g: &Graph, bp: &Bipartition, part: &[usize], labels: &mut [u64]) -> Result<ComponentRoute, SolveError> {
    if part.len() <= 2 {
        for (i, &v) in part.iter().enumerate() {
            labels[v] = i as u64 + 1;
        }
        return Ok(ComponentRoute::Small);
    }
    let inner: Vec<usize> = part.iter().copied().filter(|&v| g.degree(v) >= 2).collect();
    let stripped = g.induced(&inner);
    if stripped.edge_count() == 0 {
        // A star: centre 1, leaves 2.
        for &v in part {
            labels[v] = if g.degree(v) >= 2 { 1 } else { 2 };
        }
        return Ok(ComponentRoute::Star);
    }
    if !stripped.is_connected() {
        let sub = g.induced(part);
        let out = brute_force_decide(&sub, LabelingRule::VertexGap, 2)?;
        if let Some(w) = out.witness() {
            for (i, &v) in part.iter().enumerate() {
                labels[v] = w.get(i);
            }
        }
        return Ok(ComponentRoute::Fallback {
            labelable: out.is_yes(),
        });
    }
    let (xs, ys): (Vec<usize>, Vec<usize>) = part.iter().partition(|&&v| bp.is_x(v));
    for (route, vars, others) in [(ComponentRoute::Phi, &xs, &ys), (ComponentRoute::Psi, &ys, &xs)] {
        let clause_vertices: Vec<usize> = others.iter().copied().filter(|&u| g.degree(u) >= 2).collect();
        if let Some(a) = solve_nae(&gap_formula(g, &clause_vertices))? {
            for &v in vars {
                labels[v] = if a[v] { 2 } else { 1 };
            }
            for &u in others.iter() {
                labels[u] = 2;
            }
            return Ok(route);
        }
    }
    Ok(ComponentRoute::Neither)
}

/// Edge labeling by gap from `{1, 2}` for a connected bipartite graph with
/// minimum degree at least 2.
pub fn edge_gap_planar_bipartite(g: &Graph) -> Result<SolveOutcome, SolveError> {
    if !g.is_connected() || g.vertex_count() == 0 {
        return Err(SolveError::NotApplicable("graph must be connected".into()));
    }
    if g.min_degree() < 2 {
        return Err(SolveError::NotApplicable("graph has a vertex of degree less than 2".into()));
    }
    let bp = bipartition(g).map_err(|e| SolveError::NotApplicable(format!("graph is not bipartite ({e})")))?;
    for (vars, others) in [(&bp.side_x, &bp.side_y), (&bp.side_y, &bp.side_x)] {
        if let Some(a) = solve_nae(&gap_formula(g, others))? {
            let mut labels = vec![2u64; g.edge_count()];
            for &v in vars.iter() {
                if !a[v] {
                    for &e in g.incident_edges(v) {
                        labels[e] = 1;
                    }
                }
            }
            let f = Labeling::new(ElementKind::Edge, labels)?;
            return checked_yes(g, LabelingRule::EdgeGap, f, Method::NaeEdgeGap);
        }
    }
    Ok(SolveOutcome::no(Method::NaeEdgeGap))
}
