//! Undirected simple graphs on dense vertex ids `0..n`.
//!
//! The on-disk format is the DIMACS-style text format:
//!
//! ```text
//! c comment
//! p graph 3 2
//! e 1 2
//! e 2 3
//! ```
//!
//! Files are 1-based, everything in memory is 0-based.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} has an endpoint outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    Duplicate(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// An undirected simple graph.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. The
/// position of an edge in [`Graph::edges`] is its edge index, which is what
/// edge labelings are keyed by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, collapsing repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_canonical(n, list))
    }

    /// Like [`Graph::new`] but rejects repeated edges instead of merging them.
    /// Reduction builders use this so an accidental multi-edge is an error.
    pub fn new_simple(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let raw: Vec<_> = edges.into_iter().collect();
        let g = Self::new(n, raw.iter().copied())?;
        if g.edge_count() != raw.len() {
            let mut seen = raw.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect::<Vec<_>>();
            seen.sort_unstable();
            let dup = seen.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]).unwrap_or((0, 0));
            return Err(GraphError::Duplicate(dup.0, dup.1));
        }
        Ok(g)
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            incident[u].push(i);
            incident[v].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            incident,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_canonical(n, edges)
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// Cycle `0-1-...-(n-1)-0`; `n` must be at least 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("valid")
    }

    /// Star `K_{1,r}` centred at vertex 0.
    pub fn star(r: usize) -> Self {
        Self::complete_bipartite(1, r)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edge indices incident to `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, r: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == r)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || components(self).parts.len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Induced subgraph on `keep` (sorted or not); vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(keep.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Parses the `p graph <n> <m>` / `e <u> <v>` text format.
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(ParseError::new(line_no, "second header line"));
                    }
                    if fields.len() != 4 || !(fields[1] == "graph" || fields[1] == "edge") {
                        return Err(ParseError::new(line_no, "malformed header, expected `p graph <n> <m>`"));
                    }
                    let n = parse_count(fields[2], line_no)?;
                    let m = parse_count(fields[3], line_no)?;
                    header = Some((n, m));
                }
                "e" => {
                    let (n, _) = header.ok_or_else(|| ParseError::new(line_no, "edge line before header"))?;
                    if fields.len() != 3 {
                        return Err(ParseError::new(line_no, "malformed edge line, expected `e <u> <v>`"));
                    }
                    let u = parse_count(fields[1], line_no)?;
                    let v = parse_count(fields[2], line_no)?;
                    if u == 0 || v == 0 || u > n || v > n {
                        return Err(ParseError::new(
                            line_no,
                            format!("endpoint out of range: e {u} {v} with {n} vertices"),
                        ));
                    }
                    if u == v {
                        return Err(ParseError::new(line_no, format!("self-loop at vertex {u}")));
                    }
                    edges.push((u - 1, v - 1));
                }
                other => {
                    return Err(ParseError::new(line_no, format!("unknown line type `{other}`")));
                }
            }
        }
        let (n, m) = header.ok_or_else(|| ParseError::new(0, "missing `p graph` header"))?;
        if edges.len() != m {
            return Err(ParseError::new(
                0,
                format!("header declares {m} edges but {} edge lines were found", edges.len()),
            ));
        }
        Ok(Graph::new(n, edges).expect("validated above"))
    }

    /// Canonical text form: header then sorted 1-based edges.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p graph {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a String");
        }
        out
    }
}

fn parse_count(field: &str, line: usize) -> Result<usize, ParseError> {
    field
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("expected a non-negative integer, found `{field}`")))
}

/// Two-sided vertex split with every edge crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side_x: Vec<usize>,
    pub side_y: Vec<usize>,
    in_x: Vec<bool>,
}

impl Bipartition {
    pub fn from_sides(n: usize, side_x: Vec<usize>) -> Self {
        let mut in_x = vec![false; n];
        for &v in &side_x {
            in_x[v] = true;
        }
        let side_y = (0..n).filter(|&v| !in_x[v]).collect();
        let mut side_x = side_x;
        side_x.sort_unstable();
        Bipartition { side_x, side_y, in_x }
    }

    pub fn is_x(&self, v: usize) -> bool {
        self.in_x[v]
    }

    /// True if the split covers `g` and every edge crosses it.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.in_x.len() == g.vertex_count() && g.edges().iter().all(|&(u, v)| self.in_x[u] != self.in_x[v])
    }

    /// The same split with the roles of the sides exchanged.
    pub fn swapped(&self) -> Bipartition {
        Bipartition::from_sides(self.in_x.len(), self.side_y.clone())
    }
}

/// Odd cycle certifying that a graph is not bipartite, as a closed vertex walk
/// `cycle[0] - cycle[1] - ... - cycle[len-1] - cycle[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not bipartite (odd cycle of length {})", .cycle.len())]
pub struct OddCycle {
    pub cycle: Vec<usize>,
}

/// BFS 2-colouring. In each component the side holding the lowest-index
/// vertex is `side_x`.
pub fn bipartition(g: &Graph) -> Result<Bipartition, OddCycle> {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(true);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!side[u].unwrap());
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(s) if s == side[u].unwrap() => {
                        return Err(OddCycle {
                            cycle: close_cycle(u, w, &parent, &depth),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let side_x = (0..n).filter(|&v| side[v] == Some(true)).collect();
    Ok(Bipartition::from_sides(n, side_x))
}

fn close_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Connected components, each sorted, ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub parts: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
}

pub fn components(g: &Graph) -> ComponentDecomposition {
    let n = g.vertex_count();
    let mut component_of = vec![usize::MAX; n];
    let mut parts = Vec::new();
    for root in 0..n {
        if component_of[root] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut part = vec![root];
        component_of[root] = id;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if component_of[w] == usize::MAX {
                    component_of[w] = id;
                    part.push(w);
                    stack.push(w);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    ComponentDecomposition { parts, component_of }
}

/// All triangles `[a, b, c]` with `a < b < c`, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for &(a, b) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Greedy proper colouring in vertex order, colours `1..`.
pub fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let mut color = vec![0usize; g.vertex_count()];
    for v in 0..g.vertex_count() {
        let used: Vec<usize> = g.neighbors(v).iter().map(|&u| color[u]).collect();
        color[v] = (1..).find(|c| !used.contains(c)).unwrap();
    }
    color
}

/// A proper colouring with colours `1..=k`, by backtracking. Exponential;
/// intended for small graphs.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, k: usize, v: usize, color: &mut [usize]) -> bool {
        if v == color.len() {
            return true;
        }
        // Symmetry: vertex v may open at most one new colour.
        let open = color[..v].iter().copied().max().unwrap_or(0);
        for c in 1..=k.min(open + 1) {
            if g.neighbors(v).iter().all(|&u| u > v || color[u] != c) {
                color[v] = c;
                if go(g, k, v + 1, color) {
                    return true;
                }
            }
        }
        color[v] = 0;
        false
    }
    let mut color = vec![0; g.vertex_count()];
    go(g, k, 0, &mut color).then_some(color)
}

pub fn chromatic_number(g: &Graph) -> usize {
    (0..=g.vertex_count()).find(|&k| k_coloring(g, k).is_some()).unwrap()
}

pub fn is_proper_coloring(g: &Graph, color: &[usize]) -> bool {
    color.len() == g.vertex_count() && g.edges().iter().all(|&(u, v)| color[u] != color[v])
}

/// A proper edge colouring with colours `1..=k` indexed by edge, by
/// backtracking.
pub fn edge_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, k: usize, e: usize, color: &mut [usize]) -> bool {
        if e == color.len() {
            return true;
        }
        let (a, b) = g.edges()[e];
        for c in 1..=k {
            let clash = g.incident_edges(a).iter().chain(g.incident_edges(b)).any(|&f| f < e && color[f] == c);
            if !clash {
                color[e] = c;
                if go(g, k, e + 1, color) {
                    return true;
                }
            }
        }
        color[e] = 0;
        false
    }
    let mut color = vec![0; g.edge_count()];
    go(g, k, 0, &mut color).then_some(color)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_small_path() {
        let g = Graph::parse("p graph 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_edgeless() {
        let g = Graph::parse("c nothing here\np graph 1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = Graph::parse("p graph 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("self-loop"));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Graph::parse("p graph 2 1\ne 1 3\n").unwrap_err().message.contains("out of range"));
        assert!(Graph::parse("p grph 2 1\n").is_err());
        assert!(Graph::parse("e 1 2\n").is_err());
        assert!(Graph::parse("p graph 2 2\ne 1 2\n").is_err());
        assert!(Graph::parse("p graph 2 1\nx 1 2\n").is_err());
    }

    #[test]
    fn parse_collapses_duplicate_lines() {
        let g = Graph::parse("p graph 3 3\ne 1 2\ne 2 1\ne 2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn new_simple_rejects_duplicates() {
        assert_eq!(
            Graph::new_simple(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::Duplicate(0, 1)
        );
    }

    #[test]
    fn bipartition_of_even_cycle() {
        let bp = bipartition(&Graph::cycle(4)).unwrap();
        assert_eq!(bp.side_x.len(), 2);
        assert_eq!(bp.side_y.len(), 2);
        assert!(bp.is_valid_for(&Graph::cycle(4)));
    }

    #[test]
    fn triangle_is_not_bipartite() {
        let err = bipartition(&Graph::complete(3)).unwrap_err();
        let mut cyc = err.cycle.clone();
        cyc.sort_unstable();
        assert_eq!(cyc, vec![0, 1, 2]);
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6)]).unwrap();
        let cyc = bipartition(&g).unwrap_err().cycle;
        assert_eq!(cyc.len() % 2, 1);
        for i in 0..cyc.len() {
            assert!(g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]));
        }
    }

    #[test]
    fn bipartition_of_path_p3() {
        let bp = bipartition(&Graph::path(3)).unwrap();
        assert_eq!(bp.side_x, vec![0, 2]);
        assert_eq!(bp.side_y, vec![1]);
    }

    #[test]
    fn component_counts() {
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(components(&two_edges).parts.len(), 2);
        assert_eq!(components(&Graph::complete(4)).parts.len(), 1);
        assert_eq!(components(&Graph::empty(3)).parts.len(), 3);
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(triangles(&Graph::complete(4)).len(), 4);
        assert_eq!(triangles(&Graph::cycle(5)).len(), 0);
        assert_eq!(triangles(&Graph::complete(3)), vec![[0, 1, 2]]);
        for n in 3..=8 {
            let expected = n * (n - 1) * (n - 2) / 6;
            assert_eq!(triangles(&Graph::complete(n)).len(), expected);
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let g = Graph::new(5, [(3, 4), (0, 2), (1, 0)]).unwrap();
        assert_eq!(Graph::parse(&g.to_dimacs()).unwrap(), g);
    }

    #[test]
    fn colouring_helpers() {
        assert_eq!(chromatic_number(&Graph::complete(4)), 4);
        assert_eq!(chromatic_number(&Graph::cycle(5)), 3);
        assert_eq!(chromatic_number(&Graph::cycle(6)), 2);
        assert_eq!(chromatic_number(&Graph::empty(3)), 1);
        assert_eq!(chromatic_number(&Graph::empty(0)), 0);
        let g = Graph::cycle(7);
        assert!(is_proper_coloring(&g, &greedy_coloring(&g)));
        assert!(edge_coloring(&Graph::complete(4), 3).is_some());
        assert!(edge_coloring(&Graph::complete(3), 2).is_none());
    }
}
