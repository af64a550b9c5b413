//! 2-SAT through strongly connected components of the implication graph.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::formula::{Formula, FormulaError, Lit, Mode};

fn node(l: Lit) -> NodeIndex {
    NodeIndex::new(2 * l.var + usize::from(!l.positive))
}

/// A satisfying assignment, or `None` if the formula is unsatisfiable.
///
/// Variable `x` is set true iff the component of `x` comes after the
/// component of `¬x` in topological order of the implication graph.
pub fn solve_2sat(phi: &Formula) -> Result<Option<Vec<bool>>, FormulaError> {
    phi.expect_mode(Mode::TwoSat)?;
    let n = phi.var_count();
    let mut g = DiGraph::<(), ()>::with_capacity(2 * n, 2 * phi.clauses().len());
    for _ in 0..2 * n {
        g.add_node(());
    }
    for clause in phi.clauses() {
        let (a, b) = (clause[0], clause[1]);
        g.add_edge(node(a.negated()), node(b), ());
        g.add_edge(node(b.negated()), node(a), ());
    }
    // Tarjan emits components in reverse topological order.
    let mut position = vec![0usize; 2 * n];
    for (i, comp) in tarjan_scc(&g).iter().enumerate() {
        for v in comp {
            position[v.index()] = i;
        }
    }
    let mut assignment = Vec::with_capacity(n);
    for x in 0..n {
        let (p, q) = (position[node(Lit::pos(x)).index()], position[node(Lit::neg(x)).index()]);
        if p == q {
            return Ok(None);
        }
        assignment.push(p < q);
    }
    Ok(Some(assignment))
}
