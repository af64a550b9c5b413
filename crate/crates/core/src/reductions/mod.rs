//! Generators for the NP-hardness reductions.
//!
//! Every generator returns a [`ReductionOutput`]: the constructed graph, a map
//! from source variables (or source vertices) to the target vertices that
//! represent them, a map from clauses to their clause vertex, and metadata.
//! Vertex numbering is fixed per reduction and documented on each function:
//! source-derived vertices first, then gadget vertices in construction order,
//! then padding leaves.

pub mod gadget;

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::formula::{Formula, FormulaError, Lit, Mode};
use crate::graph::Graph;
use crate::semantics::{Color, Labeling, LabelingError, LabelingRule};

pub use gadget::{
    check_gadget, check_gadget_with_budget, default_clause_gadget, default_sum_relay, default_variable_gadget,
    gadget_profile, ElementRef, GadgetAssignment, GadgetCheck, GadgetError, GadgetProperty, GadgetSpec, Observation,
    Port, GADGET_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    /// Source variable (or source vertex) to the target vertices standing for it.
    pub var_map: Vec<Vec<usize>>,
    /// Clause to its clause vertex.
    pub clause_map: Vec<usize>,
    pub meta: Value,
}

impl ReductionOutput {
    /// Sidecar JSON with 1-based ids.
    pub fn sidecar(&self) -> Value {
        json!({
            "varMap": self.var_map.iter().enumerate().map(|(i, vs)| json!({
                "var": i + 1,
                "vertices": vs.iter().map(|v| v + 1).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "clauseMap": self.clause_map.iter().enumerate().map(|(i, v)| json!({
                "clause": i + 1,
                "vertex": v + 1,
            })).collect::<Vec<_>>(),
            "meta": self.meta,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("gadget {name} failed its property check: {check:?}")]
    GadgetRejected { name: String, check: GadgetCheck },
    #[error("gadget {name} does not relay values: {reason}")]
    RelayRejected { name: String, reason: String },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

fn pre(msg: impl Into<String>) -> ReductionError {
    ReductionError::Precondition(msg.into())
}

fn small(c: &Color) -> Option<u128> {
    match c {
        Color::Small(x) => Some(*x),
        Color::Big(_) => None,
    }
}

fn require_width3(phi: &Formula) -> Result<(), ReductionError> {
    match phi.clauses().iter().position(|c| c.len() != 3) {
        Some(i) => Err(pre(format!("clause {} does not have width 3", i + 1))),
        None => Ok(()),
    }
}

fn require_distinct_vars(phi: &Formula) -> Result<(), ReductionError> {
    for (i, c) in phi.clauses().iter().enumerate() {
        let vars: BTreeSet<usize> = c.iter().map(|l| l.var).collect();
        if vars.len() != c.len() {
            return Err(pre(format!("clause {} repeats a variable", i + 1)));
        }
    }
    Ok(())
}

fn require_monotone(phi: &Formula) -> Result<(), ReductionError> {
    if phi.is_monotone() {
        Ok(())
    } else {
        Err(pre("formula contains a negated literal"))
    }
}

fn gate(spec: &GadgetSpec, rule: LabelingRule, k: u64) -> Result<(), ReductionError> {
    match check_gadget(spec, rule, k)? {
        GadgetCheck::Pass => Ok(()),
        check => Err(ReductionError::GadgetRejected {
            name: spec.name.clone(),
            check,
        }),
    }
}

/// Copies `spec.graph` into `edges` at offset `base` and returns the
/// offset port vertices.
fn place(spec: &GadgetSpec, base: usize, edges: &mut Vec<(usize, usize)>) -> Vec<usize> {
    edges.extend(spec.graph.edges().iter().map(|&(u, v)| (base + u, base + v)));
    spec.ports.iter().map(|p| base + p.vertex).collect()
}

// ---------------------------------------------------------------------------
// Monotone NAE-3SAT to edge labeling by sum from {1, 2}

/// Duplicates every clause that contains a variable occurring only once, so
/// that each used variable occurs at least twice. Returns the new formula and
/// the indices of the duplicated clauses.
pub fn duplicate_single_occurrences(phi: &Formula) -> Result<(Formula, Vec<usize>), ReductionError> {
    let mut clauses = phi.clauses().to_vec();
    let mut duplicated = Vec::new();
    for (i, c) in phi.clauses().iter().enumerate() {
        let lonely = c.iter().any(|l| slot_count(phi.clauses(), l.var) == 1);
        if lonely {
            clauses.push(c.clone());
            duplicated.push(i);
        }
    }
    Ok((Formula::new(phi.var_count(), clauses, phi.mode())?, duplicated))
}

fn slot_count(clauses: &[Vec<Lit>], var: usize) -> usize {
    clauses.iter().flatten().filter(|l| l.var == var).count()
}

/// Checks that a two-port relay gadget carries one label around a cycle.
///
/// With `Cp(s)` and `Cq(s)` the colours the two ports can take when the
/// external label is `s`, a cycle vertex between two relays sees labels
/// `s_l, s_r` from them plus `t` from its clause edge. Every combination in
/// which its colour `s_l + s_r + t` avoids both relay ports must have
/// `s_l = s_r = t`. For the converse, each `s` needs an observation whose
/// port colours both avoid `3s`.
fn validate_sum_relay(spec: &GadgetSpec) -> Result<(), ReductionError> {
    let reject = |reason: String| ReductionError::RelayRejected {
        name: spec.name.clone(),
        reason,
    };
    if spec.ports.len() != 2 || spec.ports.iter().any(|p| p.external != 1) {
        return Err(reject("needs exactly two ports with one external edge each".into()));
    }
    let profile = gadget_profile(spec, LabelingRule::EdgeSum, 2, GADGET_BUDGET)?;
    if let Some(o) = profile.iter().find(|o| o.external[0] != o.external[1]) {
        return Err(reject(format!("external labels can differ: {:?}", o.external)));
    }
    let colors = |port: usize, s: u64| -> BTreeSet<u128> {
        profile
            .iter()
            .filter(|o| o.external[0] == s)
            .filter_map(|o| small(&o.colors[port]))
            .collect()
    };
    for sl in 1..=2u64 {
        for sr in 1..=2u64 {
            for t in 1..=2u64 {
                if sl == sr && sr == t {
                    continue;
                }
                let own = (sl + sr + t) as u128;
                for cl in colors(1, sl) {
                    for cr in colors(0, sr) {
                        if own != cl && own != cr {
                            return Err(reject(format!(
                                "labels ({sl}, {sr}) with clause label {t} leave the cycle vertex unconstrained"
                            )));
                        }
                    }
                }
            }
        }
    }
    for s in 1..=2u64 {
        let avoid = Color::Small(3 * s as u128);
        if !profile.iter().any(|o| o.external[0] == s && o.colors.iter().all(|c| *c != avoid)) {
            return Err(reject(format!("no labeling with external label {s} keeps the ports off colour {}", 3 * s)));
        }
    }
    Ok(())
}

/// Monotone NAE-3SAT to edge labeling by sum from `{1, 2}`.
///
/// Each variable `x` with `γ(x)` occurrences gets a cycle `x_0 … x_{γ-1}`
/// (for `γ = 2`, two vertices joined twice); every cycle edge `x_j x_{j+1}`
/// is replaced by a copy of `gadget` with port 0 on `x_j` and port 1 on
/// `x_{j+1}`. Each clause vertex is joined to one cycle vertex per
/// occurrence. Clauses holding a variable that occurs once are duplicated
/// first.
///
/// Numbering: cycle vertices (variables in order, occurrences in clause
/// order), then clause vertices, then gadget copies in cycle order.
pub fn reduce_nae3sat_to_edge_sum(phi: &Formula, gadget: &GadgetSpec) -> Result<ReductionOutput, ReductionError> {
    phi.expect_mode(Mode::Nae)?;
    require_width3(phi)?;
    require_monotone(phi)?;
    gate(gadget, LabelingRule::EdgeSum, 2)?;
    validate_sum_relay(gadget)?;

    let (psi, duplicated) = duplicate_single_occurrences(phi)?;
    let clauses = psi.clauses();
    let mut ring: Vec<Vec<usize>> = vec![Vec::new(); psi.var_count()];
    let mut next = 0;
    let mut slot_vertex = Vec::new();
    for (x, r) in ring.iter_mut().enumerate() {
        for (ci, c) in clauses.iter().enumerate() {
            for (pos, l) in c.iter().enumerate() {
                if l.var == x {
                    r.push(next);
                    slot_vertex.push(((ci, pos), next));
                    next += 1;
                }
            }
        }
    }
    slot_vertex.sort();
    let clause_base = next;
    let mut edges = Vec::new();
    for (i, &((ci, _), v)) in slot_vertex.iter().enumerate() {
        let _ = i;
        edges.push((clause_base + ci, v));
    }
    next += clauses.len();
    let size = gadget.graph.vertex_count();
    for r in &ring {
        let g = r.len();
        for j in 0..g {
            let ports = place(gadget, next, &mut edges);
            edges.push((ports[0], r[j]));
            edges.push((ports[1], r[(j + 1) % g]));
            next += size;
        }
    }
    let graph = Graph::new_simple(next, edges).map_err(|e| pre(e.to_string()))?;
    if !graph.is_regular(3) {
        return Err(pre("gadget does not yield a 3-regular graph"));
    }
    Ok(ReductionOutput {
        graph,
        var_map: ring,
        clause_map: (clause_base..clause_base + clauses.len()).collect(),
        meta: json!({
            "reduction": "nae3sat-edge-sum",
            "gadget": gadget.name,
            "duplicatedClauses": duplicated.iter().map(|c| c + 1).collect::<Vec<_>>(),
        }),
    })
}

// ---------------------------------------------------------------------------
// Cubic monotone 1-in-3 SAT to edge labeling by product from {1, 2}

/// Port colours of the variable gadget for external label `s`.
fn variable_colors(profile: &BTreeSet<Observation>, s: u64) -> BTreeSet<Color> {
    profile
        .iter()
        .filter(|o| o.external.iter().all(|&x| x == s))
        .map(|o| o.colors[0].clone())
        .collect()
}

/// Checks that the pair relays 1-in-3 constraints: the variable gadget fixes
/// one label on its three edges; for any clause pattern that is not one-hot,
/// some variable port is forced onto the clause port's colour; and there are
/// variable colours `h1, h2` that every one-hot pattern can avoid.
fn validate_product_pair(h: &GadgetSpec, i: &GadgetSpec) -> Result<(), ReductionError> {
    for (spec, what) in [(h, "variable"), (i, "clause")] {
        if spec.ports.len() != 1 || spec.ports[0].external != 3 {
            return Err(ReductionError::RelayRejected {
                name: spec.name.clone(),
                reason: format!("the {what} gadget needs one port with three external edges"),
            });
        }
    }
    let reject = |name: &str, reason: String| ReductionError::RelayRejected {
        name: name.to_string(),
        reason,
    };
    let hp = gadget_profile(h, LabelingRule::EdgeProduct, 2, GADGET_BUDGET)?;
    let ip = gadget_profile(i, LabelingRule::EdgeProduct, 2, GADGET_BUDGET)?;
    if let Some(o) = hp.iter().find(|o| o.external.iter().any(|&x| x != o.external[0])) {
        return Err(reject(&h.name, format!("external labels can differ: {:?}", o.external)));
    }
    let t = [variable_colors(&hp, 1), variable_colors(&hp, 2)];
    for o in &ip {
        let twos = o.external.iter().filter(|&&x| x == 2).count();
        if twos == 1 {
            continue;
        }
        let forced = o.external.iter().any(|&x| t[x as usize - 1].iter().all(|c| *c == o.colors[0]));
        if !forced {
            return Err(reject(
                &i.name,
                format!("pattern {:?} with colour {} is not excluded", o.external, o.colors[0]),
            ));
        }
    }
    let one_hot = |j: usize| -> Vec<u64> { (0..3).map(|p| if p == j { 2 } else { 1 }).collect() };
    let works = t[0].iter().any(|h1| {
        t[1].iter().any(|h2| {
            (0..3).all(|j| {
                let ext = one_hot(j);
                ip.iter().any(|o| o.external == ext && o.colors[0] != *h1 && o.colors[0] != *h2)
            })
        })
    });
    if !works {
        return Err(reject(&i.name, "some one-hot pattern cannot avoid the variable colours".into()));
    }
    Ok(())
}

/// Cubic monotone 1-in-3 SAT to edge labeling by product from `{1, 2}`.
///
/// One copy of `h` per variable and one copy of `i` per clause; the clause
/// port is joined to the port of each of its variables. Numbering: variable
/// gadgets in variable order, then clause gadgets in clause order.
pub fn reduce_1in3_to_edge_product(
    phi: &Formula,
    h: &GadgetSpec,
    i: &GadgetSpec,
) -> Result<ReductionOutput, ReductionError> {
    phi.expect_mode(Mode::OneInThree)?;
    require_width3(phi)?;
    require_monotone(phi)?;
    require_distinct_vars(phi)?;
    for x in 0..phi.var_count() {
        if phi.occurrences(x) != 3 {
            return Err(pre(format!("variable {} occurs {} times, not 3", x + 1, phi.occurrences(x))));
        }
    }
    gate(h, LabelingRule::EdgeProduct, 2)?;
    gate(i, LabelingRule::EdgeProduct, 2)?;
    validate_product_pair(h, i)?;

    let mut edges = Vec::new();
    let mut next = 0;
    let mut var_port = Vec::new();
    for _ in 0..phi.var_count() {
        var_port.push(place(h, next, &mut edges)[0]);
        next += h.graph.vertex_count();
    }
    let mut clause_port = Vec::new();
    for c in phi.clauses() {
        let p = place(i, next, &mut edges)[0];
        next += i.graph.vertex_count();
        for l in c {
            edges.push((p, var_port[l.var]));
        }
        clause_port.push(p);
    }
    let graph = Graph::new_simple(next, edges).map_err(|e| pre(e.to_string()))?;
    Ok(ReductionOutput {
        graph,
        var_map: var_port.into_iter().map(|v| vec![v]).collect(),
        clause_map: clause_port,
        meta: json!({"reduction": "1in3-edge-product", "variableGadget": h.name, "clauseGadget": i.name}),
    })
}

// ---------------------------------------------------------------------------
// Monotone 1-in-3 SAT to vertex labeling by product from {1, 2}

/// The gadget `H_i`: a triangle `z_1 z_2 z_3` (vertices 0, 1, 2), then `2i`
/// vertices on `z_1`, `2i` on `z_2` and `2i - 2` on `z_3`, each group joined
/// to its `z` and matched in consecutive pairs. Returns the graph and `z_3`.
pub fn build_h_c_i(i: usize) -> Result<(Graph, usize), ReductionError> {
    if i < 3 {
        return Err(ReductionError::Unsupported(format!("H_i needs i >= 3, got {i}")));
    }
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    let mut next = 3;
    for (z, count) in [(0, 2 * i), (1, 2 * i), (2, 2 * i - 2)] {
        for j in 0..count {
            edges.push((z, next + j));
        }
        for j in (0..count).step_by(2) {
            edges.push((next + j, next + j + 1));
        }
        next += count;
    }
    Ok((Graph::new_simple(next, edges).expect("fresh vertices"), 2))
}

/// Monotone 1-in-3 SAT (width 3, distinct variables) to vertex labeling by
/// product from `{1, 2}`.
///
/// Numbering: variable vertices, clause vertices, then for each clause the
/// gadgets `H_3`, `H_5`, `H_6`, whose `z_3` is joined to the clause vertex.
pub fn reduce_1in3_to_vertex_product(phi: &Formula) -> Result<ReductionOutput, ReductionError> {
    phi.expect_mode(Mode::OneInThree)?;
    require_width3(phi)?;
    require_monotone(phi)?;
    require_distinct_vars(phi)?;
    let n = phi.var_count();
    let m = phi.clauses().len();
    let gadgets: Vec<(Graph, usize)> = [3, 5, 6].iter().map(|&i| build_h_c_i(i)).collect::<Result<_, _>>()?;
    let mut edges = Vec::new();
    let mut next = n + m;
    for (j, c) in phi.clauses().iter().enumerate() {
        let cv = n + j;
        for l in c {
            edges.push((cv, l.var));
        }
        for (h, z3) in &gadgets {
            edges.extend(h.edges().iter().map(|&(u, v)| (next + u, next + v)));
            edges.push((cv, next + z3));
            next += h.vertex_count();
        }
    }
    let graph = Graph::new_simple(next, edges).map_err(|e| pre(e.to_string()))?;
    Ok(ReductionOutput {
        graph,
        var_map: (0..n).map(|x| vec![x]).collect(),
        clause_map: (n..n + m).collect(),
        meta: json!({"reduction": "1in3-vertex-product"}),
    })
}

// ---------------------------------------------------------------------------
// 3-colourability to vertex labeling by product from {1..k}

pub const ALPHA_RANGE: std::ops::RangeInclusive<u64> = 3..=12;

/// `A_k = {mn : m, n ∈ {1..k}}`, ascending.
pub fn products_set(k: u64) -> Vec<u64> {
    let set: BTreeSet<u64> = (1..=k).flat_map(|m| (1..=k).map(move |n| m * n)).collect();
    set.into_iter().collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether `a / b` is a ratio of two members of `{1..k}`.
pub fn ratio_in_b(a: u64, b: u64, k: u64) -> bool {
    let g = gcd(a, b);
    a / g <= k && b / g <= k
}

/// `α(k)`: the largest subset of `A_k` in which no two members have a ratio
/// in `B_k`, with the lexicographically least such set.
pub fn alpha_k(k: u64) -> Result<(usize, Vec<u64>), ReductionError> {
    if !ALPHA_RANGE.contains(&k) {
        return Err(ReductionError::Unsupported(format!("α(k) is supported for k in 3..=12, got {k}")));
    }
    let a = products_set(k);
    let ok: Vec<Vec<bool>> = a
        .iter()
        .map(|&x| a.iter().map(|&y| x != y && !ratio_in_b(x, y, k)).collect())
        .collect();

    fn grow(ok: &[Vec<bool>], cand: &[usize], cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for (idx, &v) in cand.iter().enumerate() {
            if cur.len() + cand.len() - idx <= best.len() {
                return;
            }
            let rest: Vec<usize> = cand[idx + 1..].iter().copied().filter(|&u| ok[v][u]).collect();
            cur.push(v);
            grow(ok, &rest, cur, best);
            cur.pop();
        }
    }
    let all: Vec<usize> = (0..a.len()).collect();
    let mut best = Vec::new();
    grow(&ok, &all, &mut Vec::new(), &mut best);
    Ok((best.len(), best.into_iter().map(|i| a[i]).collect()))
}

/// 3-colourability to vertex labeling by product from `{1..k}`.
///
/// `G*` is `g` joined to a clique on `α(k) - 3` new vertices (numbered after
/// `g`). Super-vertex `i` of `G*` becomes the clique `v_i^0 … v_i^{k-1}`
/// (vertex `i·k + j`), with `v_i^x ∼ v_z^w` whenever `i ∼ z` in `G*`.
/// Finally each super-vertex gets two vertices `kN + 2i`, `kN + 2i + 1`
/// joined to its whole clique.
pub fn reduce_3col_to_vertex_product_k(g: &Graph, k: u64) -> Result<ReductionOutput, ReductionError> {
    if !g.is_connected() || g.vertex_count() == 0 {
        return Err(pre("graph must be connected"));
    }
    let (alpha, _) = alpha_k(k)?;
    let n = g.vertex_count();
    let big_n = n + alpha - 3;
    let mut star_edges: Vec<(usize, usize)> = g.edges().to_vec();
    for a in n..big_n {
        for v in 0..a {
            star_edges.push((v, a));
        }
    }
    let k = k as usize;
    let mut edges = Vec::new();
    for i in 0..big_n {
        for x in 0..k {
            for w in x + 1..k {
                edges.push((i * k + x, i * k + w));
            }
        }
    }
    for &(i, z) in &star_edges {
        for x in 0..k {
            for w in 0..k {
                edges.push((i * k + x, z * k + w));
            }
        }
    }
    let base = k * big_n;
    for i in 0..big_n {
        for p in [base + 2 * i, base + 2 * i + 1] {
            for x in 0..k {
                edges.push((i * k + x, p));
            }
        }
    }
    let graph = Graph::new_simple(base + 2 * big_n, edges).map_err(|e| pre(e.to_string()))?;
    Ok(ReductionOutput {
        graph,
        var_map: (0..n).map(|i| (i * k..(i + 1) * k).collect()).collect(),
        clause_map: Vec::new(),
        meta: json!({"reduction": "3col-vertex-product", "k": k, "alpha": alpha}),
    })
}

// ---------------------------------------------------------------------------
// 3-SAT and NAE-3SAT to gap labelings from {1, 2}

struct Skeleton {
    edges: Vec<(usize, usize)>,
    clause_base: usize,
    var_map: Vec<Vec<usize>>,
}

/// Variable `i` becomes the 4-cycle `x t ¬x t'` at `4i .. 4i+3`. Clause `j`
/// occupies `width` vertices from `4n + width·j`, the first of which is
/// joined to its literal vertices. The 6-cycle follows, with vertex 0 joined
/// to the `x` vertex of variable 0.
fn literal_skeleton(phi: &Formula, width: usize) -> Result<(Skeleton, usize), ReductionError> {
    require_width3(phi)?;
    require_distinct_vars(phi)?;
    let n = phi.var_count();
    if n == 0 {
        return Err(pre("formula has no variables"));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        let b = 4 * i;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, b)]);
    }
    let clause_base = 4 * n;
    for (j, c) in phi.clauses().iter().enumerate() {
        let cv = clause_base + width * j;
        for l in c {
            edges.push((cv, 4 * l.var + if l.positive { 0 } else { 2 }));
        }
        for t in 0..width.saturating_sub(1) {
            edges.push((cv + t, cv + t + 1));
        }
    }
    let ring = clause_base + width * phi.clauses().len();
    for t in 0..6 {
        edges.push((ring + t, ring + (t + 1) % 6));
    }
    edges.push((ring, 0));
    let var_map = (0..n).map(|i| vec![4 * i, 4 * i + 2]).collect();
    Ok((
        Skeleton {
            edges,
            clause_base,
            var_map,
        },
        ring + 6,
    ))
}

fn finish_skeleton(
    phi: &Formula,
    sk: Skeleton,
    total: usize,
    width: usize,
    meta: Value,
) -> Result<ReductionOutput, ReductionError> {
    let graph = Graph::new_simple(total, sk.edges).map_err(|e| pre(e.to_string()))?;
    if !graph.is_connected() {
        return Err(pre("constructed graph is disconnected; every variable must occur in a clause connected to the first variable"));
    }
    Ok(ReductionOutput {
        graph,
        var_map: sk.var_map,
        clause_map: (0..phi.clauses().len()).map(|j| sk.clause_base + width * j).collect(),
        meta,
    })
}

/// 3-SAT (width 3, distinct variables per clause) to edge labeling by gap
/// from `{1, 2}`. Each clause is the path `c c' c'' c'''`. Vertex count
/// `4|X| + 4|C| + 6`.
pub fn reduce_3sat2_to_edge_gap2(phi: &Formula) -> Result<ReductionOutput, ReductionError> {
    phi.expect_mode(Mode::Sat)?;
    let (sk, total) = literal_skeleton(phi, 4)?;
    finish_skeleton(phi, sk, total, 4, json!({"reduction": "3sat2-edge-gap"}))
}

/// NAE-3SAT (width 3, distinct variables per clause) to vertex labeling by
/// gap from `{1, 2}`. Each clause is a single vertex. Vertex count
/// `4|X| + |C| + 6`.
pub fn reduce_nae3sat_to_vertex_gap2(phi: &Formula) -> Result<ReductionOutput, ReductionError> {
    phi.expect_mode(Mode::Nae)?;
    let (sk, total) = literal_skeleton(phi, 1)?;
    finish_skeleton(phi, sk, total, 1, json!({"reduction": "nae3sat-vertex-gap"}))
}

// ---------------------------------------------------------------------------
// k-colourability to edge labeling by gap from {1..k}

/// Each vertex `v` gets the path `v' v'' v'''` with `v' = v`,
/// `v'' = n + 2v`, `v''' = n + 2v + 1`; `v' ∼ u'` iff `v ∼ u`.
pub fn reduce_kcol_to_edge_gap_k(g: &Graph, k: u64) -> Result<ReductionOutput, ReductionError> {
    let n = g.vertex_count();
    if n <= 2 || !g.is_connected() {
        return Err(pre("graph must be connected with more than two vertices"));
    }
    if k < 3 {
        return Err(ReductionError::Unsupported(format!("k must be at least 3, got {k}")));
    }
    let mut edges = g.edges().to_vec();
    for v in 0..n {
        edges.push((v, n + 2 * v));
        edges.push((n + 2 * v, n + 2 * v + 1));
    }
    let graph = Graph::new_simple(3 * n, edges).map_err(|e| pre(e.to_string()))?;
    Ok(ReductionOutput {
        graph,
        var_map: (0..n).map(|v| vec![v, n + 2 * v, n + 2 * v + 1]).collect(),
        clause_map: Vec::new(),
        meta: json!({"reduction": "kcol-edge-gap", "k": k}),
    })
}

/// Edge-gap labeling of the k-colouring reduction from a proper colouring
/// `color` of `g` with colours `1..=k`.
pub fn kcol_edge_gap_certificate(g: &Graph, out: &ReductionOutput, color: &[usize], k: u64) -> Result<Labeling, ReductionError> {
    let n = g.vertex_count();
    let h = &out.graph;
    let mut labels = vec![1u64; h.edge_count()];
    for v in 0..n {
        let c = color[v] as u64;
        labels[h.edge_index(v, n + 2 * v).unwrap()] = c;
        labels[h.edge_index(n + 2 * v, n + 2 * v + 1).unwrap()] = if c != 1 { c } else { k };
    }
    Ok(Labeling::edges(labels)?)
}

// ---------------------------------------------------------------------------
// 3-colourability of 4-regular graphs to vertex labeling by degree from {1..k}

/// For each old vertex `v` and `α ∈ {4..k}`: cliques `K`, `K'` on `k - 1`
/// vertices each joined to `v`, a vertex `v_α` joined to all of `K`, `v_α'`
/// joined to all of `K'`, and the edge `v_α v_α'`. Every gadget vertex `u`
/// is then padded with `α·d_H(v) - d_H(u)` leaves.
///
/// Numbering: old vertices, gadgets by `(v, α)` as `K, K', v_α, v_α'`, then
/// leaves grouped by gadget vertex. With `k = 3` there are no gadgets and
/// the output is `g` itself.
pub fn reduce_3col_to_degree_label_k(g: &Graph, k: u64) -> Result<ReductionOutput, ReductionError> {
    if !g.is_regular(4) || g.vertex_count() == 0 {
        return Err(pre("graph must be 4-regular"));
    }
    if k < 3 {
        return Err(ReductionError::Unsupported(format!("k must be at least 3, got {k}")));
    }
    let n = g.vertex_count();
    let ku = k as usize;
    let mut edges = g.edges().to_vec();
    let mut next = n;
    // (vertex, α, owner) for every gadget vertex
    let mut gadget_vertices = Vec::new();
    for v in 0..n {
        for alpha in 4..=ku {
            let k1 = next;
            let k2 = next + (ku - 1);
            let va = next + 2 * (ku - 1);
            let vb = va + 1;
            for base in [k1, k2] {
                for a in 0..ku - 1 {
                    edges.push((v, base + a));
                    for b in a + 1..ku - 1 {
                        edges.push((base + a, base + b));
                    }
                }
            }
            for a in 0..ku - 1 {
                edges.push((k1 + a, va));
                edges.push((k2 + a, vb));
            }
            edges.push((va, vb));
            for u in next..=vb {
                gadget_vertices.push((u, alpha, v));
            }
            next = vb + 1;
        }
    }
    let h = Graph::new_simple(next, edges.clone()).map_err(|e| pre(e.to_string()))?;
    for &(u, alpha, v) in &gadget_vertices {
        let pad = alpha * h.degree(v) - h.degree(u);
        for _ in 0..pad {
            edges.push((u, next));
            next += 1;
        }
    }
    let graph = Graph::new_simple(next, edges).map_err(|e| pre(e.to_string()))?;
    Ok(ReductionOutput {
        graph,
        var_map: (0..n).map(|v| vec![v]).collect(),
        clause_map: Vec::new(),
        meta: json!({"reduction": "3col-degree", "k": k, "passthrough": k == 3}),
    })
}

// ---------------------------------------------------------------------------
// Class 1 cubic graphs to vertex labeling by maximum from {1, 2, 3}

/// Position of `u` among the sorted neighbours of `v`.
fn slot(g: &Graph, v: usize, u: usize) -> usize {
    let mut nb = g.neighbors(v).to_vec();
    nb.sort_unstable();
    nb.iter().position(|&w| w == u).expect("u is a neighbour of v")
}

/// Each vertex `v` with sorted neighbours `x < y < z` becomes the block
/// `v_x v_y v_z v'_x v'_y v'_z` at `6v`, two triangles. Each edge `e = uv`
/// (edge index `i`) becomes the adjacent pair `e = 6n + 2i`, `e' = 6n + 2i + 1`,
/// with `e ∼ v_u, u_v` and `e' ∼ v'_u, u'_v`.
pub fn reduce_class1_to_vertex_max3(g: &Graph) -> Result<ReductionOutput, ReductionError> {
    if !g.is_regular(3) || g.vertex_count() == 0 {
        return Err(pre("graph must be 3-regular"));
    }
    let n = g.vertex_count();
    let mut edges = Vec::new();
    for v in 0..n {
        let b = 6 * v;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        edges.extend([(b + 3, b + 4), (b + 4, b + 5), (b + 3, b + 5)]);
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let e = 6 * n + 2 * i;
        let vu = 6 * v + slot(g, v, u);
        let uv = 6 * u + slot(g, u, v);
        edges.extend([(e, e + 1), (e, vu), (e, uv), (e + 1, vu + 3), (e + 1, uv + 3)]);
    }
    let total = 6 * n + 2 * g.edge_count();
    let graph = Graph::new_simple(total, edges).map_err(|e| pre(e.to_string()))?;
    Ok(ReductionOutput {
        graph,
        var_map: (0..n).map(|v| (6 * v..6 * v + 6).collect()).collect(),
        clause_map: Vec::new(),
        meta: json!({"reduction": "class1-vertex-max"}),
    })
}

/// The maximum labeling built from a proper 3-edge-colouring `edge_color`
/// (colours `1..=3`, by edge index of `g`): block vertices get 1, `e` gets
/// the colour of its edge and `e'` the next colour cyclically.
pub fn class1_certificate(g: &Graph, edge_color: &[usize]) -> Result<Labeling, ReductionError> {
    if edge_color.len() != g.edge_count() || edge_color.iter().any(|&c| !(1..=3).contains(&c)) {
        return Err(pre("edge colouring must give every edge a colour in 1..=3"));
    }
    let n = g.vertex_count();
    let mut labels = vec![1u64; 6 * n + 2 * g.edge_count()];
    for (i, &c) in edge_color.iter().enumerate() {
        labels[6 * n + 2 * i] = c as u64;
        labels[6 * n + 2 * i + 1] = (c as u64 % 3) + 1;
    }
    Ok(Labeling::vertices(labels)?)
}

// ---------------------------------------------------------------------------

/// Adds a vertex `n` joined to every vertex and a vertex `n + 1` joined to
/// it.
pub fn lift_max_labeling(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let edges = g.edges().iter().copied().chain((0..n).map(|v| (v, n))).chain([(n, n + 1)]);
    Graph::new_simple(n + 2, edges).expect("new vertices keep the graph simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::is_proper;

    fn nae(n: usize, clauses: &[&[i64]]) -> Formula {
        Formula::from_ints(n, clauses, Mode::Nae).unwrap()
    }

    #[test]
    fn figure_two_formula_is_cubic() {
        // c1 = x y w, c2 = x y z, c3 = y w z with x, y, z, w = 1, 2, 3, 4
        let phi = nae(4, &[&[1, 2, 4], &[1, 2, 3], &[2, 4, 3]]);
        let out = reduce_nae3sat_to_edge_sum(&phi, &default_sum_relay()).unwrap();
        assert!(out.graph.is_regular(3));
        assert_eq!(out.graph.vertex_count(), 9 + 3 + 9 * 4);
        assert_eq!(out.var_map.iter().map(Vec::len).collect::<Vec<_>>(), [2, 3, 2, 2]);
    }

    #[test]
    fn single_occurrences_are_duplicated() {
        let phi = nae(3, &[&[1, 2, 3]]);
        let (psi, dup) = duplicate_single_occurrences(&phi).unwrap();
        assert_eq!(dup, vec![0]);
        assert_eq!(psi.clauses().len(), 2);
    }

    #[test]
    fn edge_sum_rejects_negations_and_bad_gadgets() {
        let phi = nae(3, &[&[1, -2, 3], &[1, 2, 3]]);
        assert!(matches!(
            reduce_nae3sat_to_edge_sum(&phi, &default_sum_relay()),
            Err(ReductionError::Precondition(_))
        ));
        let phi = nae(3, &[&[1, 2, 3], &[1, 2, 3]]);
        let mut bad = default_sum_relay();
        bad.graph = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(reduce_nae3sat_to_edge_sum(&phi, &bad).is_err());
    }

    #[test]
    fn h_c_i_sizes() {
        for (i, n) in [(3, 19), (5, 31), (6, 37)] {
            let (h, z3) = build_h_c_i(i).unwrap();
            assert_eq!(h.vertex_count(), n);
            assert_eq!(h.degree(z3), 2 + 2 * i - 2);
        }
        assert!(build_h_c_i(2).is_err());
    }

    #[test]
    fn vertex_product_counts() {
        let phi = Formula::from_ints(4, &[&[1, 2, 3], &[2, 3, 4]], Mode::OneInThree).unwrap();
        let out = reduce_1in3_to_vertex_product(&phi).unwrap();
        assert_eq!(out.graph.vertex_count(), 4 + 2 * 88);
    }

    #[test]
    fn alpha_three() {
        assert_eq!(alpha_k(3).unwrap(), (3, vec![1, 4, 9]));
        assert!(alpha_k(2).is_err());
        assert!(alpha_k(13).is_err());
    }

    #[test]
    fn skeleton_counts() {
        let phi = Formula::from_ints(3, &[&[1, -2, 3]], Mode::Sat).unwrap();
        assert_eq!(reduce_3sat2_to_edge_gap2(&phi).unwrap().graph.vertex_count(), 22);
        let phi = Formula::from_ints(3, &[&[1, 2, 3]], Mode::Nae).unwrap();
        assert_eq!(reduce_nae3sat_to_vertex_gap2(&phi).unwrap().graph.vertex_count(), 12 + 1 + 6);
        let phi = Formula::from_ints(3, &[&[1, 1, 3]], Mode::Sat).unwrap();
        assert!(reduce_3sat2_to_edge_gap2(&phi).is_err());
    }

    #[test]
    fn kcol_certificate_is_proper() {
        let g = Graph::cycle(5);
        let out = reduce_kcol_to_edge_gap_k(&g, 3).unwrap();
        assert_eq!(out.graph.vertex_count(), 15);
        assert_eq!(out.graph.edge_count(), 5 + 10);
        let color = crate::graph::k_coloring(&g, 3).unwrap();
        let f = kcol_edge_gap_certificate(&g, &out, &color, 3).unwrap();
        assert!(is_proper(&out.graph, LabelingRule::EdgeGap, &f));
    }

    #[test]
    fn degree_padding() {
        let g = Graph::complete(5);
        let out = reduce_3col_to_degree_label_k(&g, 4).unwrap();
        let h = &out.graph;
        let dv = 4 + 2 * 3;
        for v in 0..5 {
            assert_eq!(h.degree(v), dv);
        }
        for u in 5..5 + 5 * 8 {
            assert_eq!(h.degree(u), 4 * dv);
        }
        assert_eq!(reduce_3col_to_degree_label_k(&g, 3).unwrap().graph, g);
        assert!(reduce_3col_to_degree_label_k(&Graph::cycle(5), 4).is_err());
    }

    #[test]
    fn class1_on_k4() {
        let g = Graph::complete(4);
        let out = reduce_class1_to_vertex_max3(&g).unwrap();
        assert_eq!(out.graph.vertex_count(), 36);
        assert!(out.graph.is_regular(3));
        let colors = crate::graph::edge_coloring(&g, 3).unwrap();
        let f = class1_certificate(&g, &colors).unwrap();
        assert!(is_proper(&out.graph, LabelingRule::VertexMaximum, &f));
        assert_eq!(f.get(6 * 4 + 2 * colors.iter().position(|&c| c == 3).unwrap() + 1), 1);
    }

    #[test]
    fn lift_sizes() {
        let g = Graph::cycle(4);
        let h = lift_max_labeling(&g);
        assert_eq!((h.vertex_count(), h.edge_count()), (6, 4 + 4 + 1));
    }

    #[test]
    fn sidecar_is_one_based() {
        let out = reduce_kcol_to_edge_gap_k(&Graph::cycle(3), 3).unwrap();
        let s = out.sidecar();
        assert_eq!(s["varMap"][0]["vertices"], json!([1, 4, 5]));
        assert_eq!(s["meta"]["k"], 3);
    }
}
