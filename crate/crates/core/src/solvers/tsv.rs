//! Triangular-structured vertex sets.
//!
//! `S` is a TSV set when every vertex of `S` lies on a triangle of `G[S]`
//! and every edge `vu` with `v ∈ S`, `u ∉ S` has a common neighbour `z ∈ S`
//! of `v` and `u`. A graph with a nonempty TSV set has no vertex labeling by
//! maximum.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TsvResult {
    pub found: bool,
    /// Sorted; empty when `found` is false.
    pub set: Vec<usize>,
}

pub fn tsv_find(g: &Graph) -> TsvResult {
    eliminate(g, |candidates| candidates[0])
}

/// Removes offending vertices in a random order. The result is the largest
/// TSV set regardless of order, which is what the tests check.
pub fn tsv_find_with_order<R: Rng>(g: &Graph, rng: &mut R) -> TsvResult {
    eliminate(g, |candidates| *candidates.choose(rng).unwrap())
}

fn eliminate(g: &Graph, mut pick: impl FnMut(&[usize]) -> usize) -> TsvResult {
    let n = g.vertex_count();
    let mut in_s = vec![false; n];
    for t in crate::graph::triangles(g) {
        for v in t {
            in_s[v] = true;
        }
    }
    loop {
        let offenders: Vec<usize> = (0..n).filter(|&v| in_s[v] && offends(g, &in_s, v)).collect();
        if offenders.is_empty() {
            break;
        }
        in_s[pick(&offenders)] = false;
    }
    let set: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
    TsvResult {
        found: !set.is_empty(),
        set,
    }
}

fn offends(g: &Graph, in_s: &[bool], v: usize) -> bool {
    let common_in_s = |a: usize, b: usize| g.neighbors(a).iter().any(|&z| in_s[z] && g.has_edge(z, b));
    let bad_crossing = g.neighbors(v).iter().any(|&u| !in_s[u] && !common_in_s(v, u));
    let on_triangle = g.neighbors(v).iter().any(|&u| in_s[u] && common_in_s(v, u));
    bad_crossing || !on_triangle
}

/// Whether `set` is a nonempty TSV set of `g`.
pub fn is_tsv(g: &Graph, set: &[usize]) -> bool {
    let mut in_s = vec![false; g.vertex_count()];
    for &v in set {
        in_s[v] = true;
    }
    !set.is_empty() && set.iter().all(|&v| !offends(g, &in_s, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_found() {
        assert_eq!(
            tsv_find(&Graph::complete(3)),
            TsvResult {
                found: true,
                set: vec![0, 1, 2]
            }
        );
    }

    #[test]
    fn triangle_free_not_found() {
        assert!(!tsv_find(&Graph::cycle(5)).found);
        assert!(!tsv_find(&Graph::complete_bipartite(3, 3)).found);
    }

    #[test]
    fn triangle_with_pendant_not_found() {
        let g = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(!tsv_find(&g).found);
        for mask in 1u32..16 {
            let set: Vec<usize> = (0..4).filter(|&v| mask >> v & 1 == 1).collect();
            assert!(!is_tsv(&g, &set), "{set:?}");
        }
    }

    #[test]
    fn k4_found() {
        assert_eq!(tsv_find(&Graph::complete(4)).set, vec![0, 1, 2, 3]);
    }
}
