//! Closed-form proper labelings. Every builder runs the verifier on its
//! output before returning it.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{bipartition, components, is_proper_coloring, Bipartition, Graph};
use crate::semantics::{is_proper, Labeling, LabelingRule};
use crate::solvers::{gap_formula, solve_nae_with_budget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("bipartition does not match the graph")]
    BadBipartition,
    #[error("root {0} is not a vertex")]
    BadRoot(usize),
    #[error("complete graph needs n ≥ 3, got {0}")]
    TooSmall(usize),
    #[error("component {{{0}, {1}}} is a K2; a graph has an edge-labeling by gap iff no connected component is isomorphic to K2")]
    K2Component(usize, usize),
    #[error("{0} edges need powers of two beyond 64-bit labels")]
    TooManyEdges(usize),
    #[error("the given vertex colouring is not proper")]
    ImproperColoring,
    #[error("graph must be r-regular bipartite with r ≥ 4: {0}")]
    NotRegularBipartite(String),
    #[error("3-regular bipartite input: whether such graphs have a vertex-labeling by gap from N_2 is the open problem \"Determine the computational complexity of deciding whether a given 3-regular bipartite graph G have a vertex-labeling by gap from N_2\"")]
    OpenProblem,
    #[error("hypergraph 2-colouring search exhausted its budget of {0} nodes")]
    Budget(u64),
    #[error("internal error: constructed labeling is not proper under {0}")]
    NotProper(LabelingRule),
}

fn checked(g: &Graph, rule: LabelingRule, f: Labeling) -> Result<Labeling, ConstructionError> {
    if is_proper(g, rule, &f) {
        Ok(f)
    } else {
        Err(ConstructionError::NotProper(rule))
    }
}

fn vertex_labels(values: Vec<u64>) -> Labeling {
    Labeling::vertices(values).expect("constructions use positive labels")
}

fn edge_labels(values: Vec<u64>) -> Labeling {
    Labeling::edges(values).expect("constructions use positive labels")
}

/// Vertex gap labeling of a tree: 1 at distance ≡ 0 (mod 4) from `root`,
/// 2 elsewhere.
pub fn tree_gap_labeling(g: &Graph, root: usize) -> Result<Labeling, ConstructionError> {
    if !g.is_tree() {
        return Err(ConstructionError::NotATree);
    }
    if root >= g.vertex_count() {
        return Err(ConstructionError::BadRoot(root));
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let f = vertex_labels(dist.iter().map(|d| if d % 4 == 0 { 1 } else { 2 }).collect());
    checked(g, LabelingRule::VertexGap, f)
}

/// The recursive edge gap labeling `f_n` of `K_n`, indexed like
/// `Graph::complete(n).edges()`. Vertex `v_i` is vertex `i - 1`.
pub fn complete_gap_labeling(n: usize) -> Result<Labeling, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::TooSmall(n));
    }
    // f[i][j] for 1-based i < j
    let mut f = vec![vec![0u64; n + 1]; n + 1];
    f[1][2] = 4;
    f[1][3] = 1;
    f[2][3] = 2;
    for m in 4..=n {
        for j in 2..m {
            for i in 1..j {
                f[i][j] += 1;
            }
        }
        for i in 1..m {
            f[i][m] = if i == 2 { 2 } else { 1 };
        }
    }
    let g = Graph::complete(n);
    let values = g.edges().iter().map(|&(u, v)| f[u + 1][v + 1]).collect();
    checked(&g, LabelingRule::EdgeGap, edge_labels(values))
}

/// `X ↦ 1`, `Y ↦ 2, 4, 6, …` in vertex order.
pub fn bipartite_vertex_gap(g: &Graph, bp: &Bipartition) -> Result<Labeling, ConstructionError> {
    if !bp.is_valid_for(g) {
        return Err(ConstructionError::BadBipartition);
    }
    let mut next = 0;
    let values = (0..g.vertex_count())
        .map(|v| {
            if bp.is_x(v) {
                1
            } else {
                next += 2;
                next
            }
        })
        .collect();
    checked(g, LabelingRule::VertexGap, vertex_labels(values))
}

/// Distinct powers of two on the edges.
///
/// Edge `i` first gets `2^i`. That can collide at a degree-1 vertex `v` whose
/// neighbour `u` has incident exponents `{i, i+1}` at the extremes (P3 is the
/// smallest case, and no reordering of `{1, 2}` fixes it). In that case the
/// labels fall back to `4^i`: a difference `2^a - 2^b` is a power of two only
/// when `a = b + 1`, so even exponents never collide.
pub fn powers_of_two_edge_gap(g: &Graph) -> Result<Labeling, ConstructionError> {
    for part in components(g).parts {
        if part.len() == 2 {
            return Err(ConstructionError::K2Component(part[0], part[1]));
        }
    }
    let m = g.edge_count();
    if m <= 64 {
        let f = edge_labels((0..m).map(|i| 1u64 << i).collect());
        if is_proper(g, LabelingRule::EdgeGap, &f) {
            return Ok(f);
        }
    }
    if m > 32 {
        return Err(ConstructionError::TooManyEdges(m));
    }
    let f = edge_labels((0..m).map(|i| 1u64 << (2 * i)).collect());
    checked(g, LabelingRule::EdgeGap, f)
}

/// Primes by trial division; `nth(1) = 2`.
#[derive(Debug, Clone, Default)]
pub struct PrimeTable {
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new() -> Self {
        PrimeTable::default()
    }

    /// The `i`-th prime, 1-based.
    pub fn nth(&mut self, i: usize) -> u64 {
        assert!(i >= 1, "primes are 1-indexed");
        let mut candidate = self.primes.last().map_or(2, |p| p + 1);
        while self.primes.len() < i {
            if self.primes.iter().take_while(|&&p| p * p <= candidate).all(|p| candidate % p != 0) {
                self.primes.push(candidate);
            }
            candidate += 1;
        }
        self.primes[i - 1]
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `n ln n + n ln ln n`, an upper bound on the `n`-th prime for `n ≥ 6`.
    pub fn upper_bound(n: usize) -> f64 {
        let x = n as f64;
        x * x.ln() + x * x.ln().ln()
    }
}

/// Colour class 1 gets label 1, class `i > 1` gets the `(i-1)`-th prime.
/// `coloring` uses colours `1..`.
pub fn prime_product_labeling(g: &Graph, coloring: &[usize]) -> Result<Labeling, ConstructionError> {
    if !is_proper_coloring(g, coloring) || coloring.contains(&0) {
        return Err(ConstructionError::ImproperColoring);
    }
    let mut primes = PrimeTable::new();
    let values = coloring
        .iter()
        .map(|&c| if c == 1 { 1 } else { primes.nth(c - 1) })
        .collect();
    checked(g, LabelingRule::VertexProduct, vertex_labels(values))
}

/// `X ↦ 1`, `Y ↦ 2`.
pub fn bipartite_vertex_maximum(g: &Graph, bp: &Bipartition) -> Result<Labeling, ConstructionError> {
    if !bp.is_valid_for(g) {
        return Err(ConstructionError::BadBipartition);
    }
    let values = (0..g.vertex_count()).map(|v| if bp.is_x(v) { 1 } else { 2 }).collect();
    checked(g, LabelingRule::VertexMaximum, vertex_labels(values))
}

/// Vertex gap labeling from `{1, 2}` of an `r`-regular bipartite graph,
/// `r ≥ 4`: 2-colour the hypergraph on `X` whose edges are the
/// neighbourhoods of `Y`, label `X` by that colouring and `Y` by 2.
pub fn regular_bipartite_vertex_gap(g: &Graph, budget: u64) -> Result<Labeling, ConstructionError> {
    let bp = bipartition(g).map_err(|_| ConstructionError::NotBipartite)?;
    if g.vertex_count() == 0 {
        return Err(ConstructionError::NotRegularBipartite("graph is empty".into()));
    }
    let r = g.degree(0);
    if !g.is_regular(r) {
        return Err(ConstructionError::NotRegularBipartite("graph is not regular".into()));
    }
    if r == 3 {
        return Err(ConstructionError::OpenProblem);
    }
    if r < 4 {
        return Err(ConstructionError::NotRegularBipartite(format!("degree {r}")));
    }
    let phi = gap_formula(g, &bp.side_y);
    let a = solve_nae_with_budget(&phi, budget)
        .expect("NAE mode")
        .map_err(|b| ConstructionError::Budget(b.0))?
        .ok_or(ConstructionError::NotProper(LabelingRule::VertexGap))?;
    let values = (0..g.vertex_count())
        .map(|v| if bp.is_x(v) && !a[v] { 1 } else { 2 })
        .collect();
    checked(g, LabelingRule::VertexGap, vertex_labels(values))
}

pub const GNP_LABELS: [u64; 5] = [2, 3, 5, 7, 11];

/// Splits `0..n` into five consecutive index blocks of sizes `⌈n/5⌉` or
/// `⌊n/5⌋`, larger blocks first. Returns the block of each vertex.
pub fn five_blocks(n: usize) -> Vec<usize> {
    let (q, r) = (n / 5, n % 5);
    (0..5).flat_map(|b| std::iter::repeat_n(b, q + usize::from(b < r))).collect()
}

/// Labels block `i` with the `i`-th of 2, 3, 5, 7, 11 and reports whether
/// the result is a vertex labeling by product.
pub fn gnp_prime_labeling(g: &Graph) -> (Labeling, bool) {
    gnp_prime_labeling_with_blocks(g, &five_blocks(g.vertex_count()))
}

pub fn gnp_prime_labeling_with_blocks(g: &Graph, blocks: &[usize]) -> (Labeling, bool) {
    let f = vertex_labels(blocks.iter().map(|&b| GNP_LABELS[b]).collect());
    let ok = is_proper(g, LabelingRule::VertexProduct, &f);
    (f, ok)
}
