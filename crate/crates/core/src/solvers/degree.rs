//! Vertex labeling by degree from `{1, 2}` through 2-SAT.

use super::{checked_yes, solve_2sat, SolveError, SolveOutcome, Method};
use crate::formula::{Formula, Lit, Mode};
use crate::graph::Graph;
use crate::semantics::{Labeling, LabelingRule};

/// One variable per vertex, true meaning label 2. Per edge `vw`: equal
/// degrees give `(v ∨ w) ∧ (¬v ∨ ¬w)`; `d(v) = 2d(w)` gives `(v ∨ ¬w)`;
/// `2d(v) = d(w)` gives `(¬v ∨ w)`; any other degree pair can never clash.
pub fn degree_formula(g: &Graph) -> Formula {
    let mut clauses = Vec::new();
    for &(v, w) in g.edges() {
        let (dv, dw) = (g.degree(v), g.degree(w));
        if dv == dw {
            clauses.push(vec![Lit::pos(v), Lit::pos(w)]);
            clauses.push(vec![Lit::neg(v), Lit::neg(w)]);
        } else if dv == 2 * dw {
            clauses.push(vec![Lit::pos(v), Lit::neg(w)]);
        } else if 2 * dv == dw {
            clauses.push(vec![Lit::neg(v), Lit::pos(w)]);
        }
    }
    Formula::new(g.vertex_count(), clauses, Mode::TwoSat).expect("well-formed 2-SAT")
}

pub fn degree_label_from_2(g: &Graph) -> Result<SolveOutcome, SolveError> {
    match solve_2sat(&degree_formula(g))? {
        None => Ok(SolveOutcome::no(Method::Twosat)),
        Some(a) => {
            let f = Labeling::vertices(a.iter().map(|&t| if t { 2 } else { 1 }).collect())?;
            checked_yes(g, LabelingRule::VertexDegree, f, Method::Twosat)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::induced_coloring;

    #[test]
    fn p3_yes() {
        let g = Graph::path(3);
        let out = degree_label_from_2(&g).unwrap();
        assert!(out.is_yes());
        assert_eq!(out.method(), Method::Twosat);
        let f = Labeling::vertices(vec![2, 2, 2]).unwrap();
        let c = induced_coloring(&g, LabelingRule::VertexDegree, &f).unwrap();
        assert_eq!(c.colors, vec![2u64.into(), 4u64.into(), 2u64.into()]);
    }

    #[test]
    fn k2_yes_with_distinct_labels() {
        let out = degree_label_from_2(&Graph::complete(2)).unwrap();
        let w = out.witness().unwrap().values().to_vec();
        assert_ne!(w[0], w[1]);
    }

    #[test]
    fn k3_no() {
        assert!(!degree_label_from_2(&Graph::complete(3)).unwrap().is_yes());
    }
}
