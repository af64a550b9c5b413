//! Exhaustive search over `{1..k}^elements`.
//!
//! Elements are assigned in index order with labels tried in increasing
//! order, so the first witness found is the lexicographically smallest proper
//! labeling. A colour `c(v)` is fixed as soon as the assigned labels force
//! it, and every edge is checked as soon as both endpoint colours are fixed.
//! Dead ends are handled by conflict-directed backjumping: each failure
//! records which assigned elements caused it, and exhausted levels jump
//! straight back to the latest such element. Backjumping only skips subtrees
//! that contain no solution, so the witness is still the lexicographically
//! first.
//!
//! For vertex rules, twins `u < v` (vertices with `N(u) \ {v} = N(v) \ {u}`)
//! are constrained to `f(u) <= f(v)`. Swapping twins is an automorphism, and
//! the lexicographically least labeling in each orbit meets every such
//! constraint, so this also preserves the first witness.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{checked_yes, SolveError, SolveOutcome, Method};
use crate::graph::Graph;
use crate::semantics::{combine, element_count, Color, Labeling, LabelingRule};

/// Default node budget: one node is one tentative label assignment.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

pub fn brute_force_decide(g: &Graph, rule: LabelingRule, k: u64) -> Result<SolveOutcome, SolveError> {
    brute_force_decide_with_budget(g, rule, k, DEFAULT_BUDGET)
}

pub fn brute_force_decide_with_budget(
    g: &Graph,
    rule: LabelingRule,
    k: u64,
    budget: u64,
) -> Result<SolveOutcome, SolveError> {
    let mut search = BruteForce::new(g, rule, k);
    search.budget = budget;
    search.run()
}

/// The search state. Exposed so callers can read `nodes` after a run.
pub struct BruteForce<'g> {
    g: &'g Graph,
    rule: LabelingRule,
    k: u64,
    pub budget: u64,
    pub nodes: u64,
    scope: Vec<Vec<usize>>,
    last_in_scope: Vec<Option<usize>>,
    watchers: Vec<Vec<usize>>,
    values: Vec<u64>,
    color: Vec<Option<Color>>,
    reason: Vec<FixedBitSet>,
    trail: Vec<Vec<usize>>,
    twins_below: Vec<Vec<usize>>,
}

/// For each vertex, its twins with smaller index.
fn twins_below(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut below = vec![Vec::new(); n];
    for closed in [false, true] {
        let mut groups: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for v in 0..n {
            let mut key = g.neighbors(v).to_vec();
            if closed {
                key.push(v);
            }
            key.sort_unstable();
            groups.entry(key).or_default().push(v);
        }
        for members in groups.values() {
            for (i, &v) in members.iter().enumerate() {
                below[v].extend_from_slice(&members[..i]);
            }
        }
    }
    below
}

impl<'g> BruteForce<'g> {
    pub fn new(g: &'g Graph, rule: LabelingRule, k: u64) -> Self {
        let m = element_count(g, rule.element_kind());
        let n = g.vertex_count();
        let scope: Vec<Vec<usize>> = (0..n).map(|v| rule.scope(g, v)).collect();
        let mut watchers = vec![Vec::new(); m];
        for (v, s) in scope.iter().enumerate() {
            for &e in s {
                watchers[e].push(v);
            }
        }
        BruteForce {
            g,
            rule,
            k,
            budget: DEFAULT_BUDGET,
            nodes: 0,
            last_in_scope: scope.iter().map(|s| s.iter().copied().max()).collect(),
            scope,
            watchers,
            values: vec![0; m],
            color: vec![None; n],
            reason: vec![FixedBitSet::with_capacity(m); n],
            trail: vec![Vec::new(); m],
            twins_below: match rule.element_kind() {
                crate::semantics::ElementKind::Vertex => twins_below(g),
                crate::semantics::ElementKind::Edge => vec![Vec::new(); m],
            },
        }
    }

    pub fn run(&mut self) -> Result<SolveOutcome, SolveError> {
        let m = self.values.len();
        if self.k == 0 {
            return Err(SolveError::NotApplicable("label bound k must be at least 1".into()));
        }
        for v in 0..self.g.vertex_count() {
            if self.scope[v].is_empty() {
                self.color[v] = Some(combine(self.rule, self.g.degree(v), 0, std::iter::empty()));
            }
        }
        for &(u, v) in self.g.edges() {
            if let (Some(a), Some(b)) = (&self.color[u], &self.color[v]) {
                if a == b {
                    return Ok(SolveOutcome::no(Method::Brute));
                }
            }
        }
        if m == 0 {
            return self.finish();
        }

        let mut conflicts = vec![FixedBitSet::with_capacity(m); m];
        let mut level = 0usize;
        loop {
            let mut advanced = false;
            if self.values[level] == 0 {
                for &u in &self.twins_below[level] {
                    if self.values[u] > 1 {
                        conflicts[level].insert(u);
                        self.values[level] = self.values[level].max(self.values[u] - 1);
                    }
                }
            }
            while self.values[level] < self.k {
                self.values[level] += 1;
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(SolveError::Budget(self.budget));
                }
                match self.propagate(level) {
                    None => {
                        advanced = true;
                        break;
                    }
                    Some(culprits) => {
                        conflicts[level].union_with(&culprits);
                        self.undo(level);
                    }
                }
            }
            if advanced {
                if level + 1 == m {
                    return self.finish();
                }
                level += 1;
                conflicts[level].clear();
                continue;
            }
            // Level exhausted: jump back to the latest culprit.
            conflicts[level].set(level, false);
            let Some(target) = conflicts[level].ones().last() else {
                return Ok(SolveOutcome::no(Method::Brute));
            };
            let carried = std::mem::replace(&mut conflicts[level], FixedBitSet::with_capacity(m));
            for j in (target + 1..=level).rev() {
                self.values[j] = 0;
                self.undo(j);
                if j != level {
                    conflicts[j].clear();
                }
            }
            self.undo(target);
            conflicts[target].union_with(&carried);
            conflicts[target].set(target, false);
            level = target;
        }
    }

    fn finish(&self) -> Result<SolveOutcome, SolveError> {
        let f = Labeling::new(self.rule.element_kind(), self.values.clone())?;
        checked_yes(self.g, self.rule, f, Method::Brute)
    }

    fn undo(&mut self, level: usize) {
        for v in std::mem::take(&mut self.trail[level]) {
            self.color[v] = None;
            self.reason[v].clear();
        }
    }

    /// Fixes every colour forced by assigning element `level` and checks the
    /// edges at those vertices. Returns the culprit elements on a clash.
    fn propagate(&mut self, level: usize) -> Option<FixedBitSet> {
        for wi in 0..self.watchers[level].len() {
            let v = self.watchers[level][wi];
            if self.color[v].is_some() {
                continue;
            }
            if !self.try_fix(v, level) {
                continue;
            }
            self.trail[level].push(v);
            let cv = self.color[v].as_ref().unwrap();
            for &u in self.g.neighbors(v) {
                if self.color[u].as_ref() == Some(cv) {
                    let mut culprits = self.reason[v].clone();
                    culprits.union_with(&self.reason[u]);
                    return Some(culprits);
                }
            }
        }
        None
    }

    fn try_fix(&mut self, v: usize, level: usize) -> bool {
        let scope = &self.scope[v];
        if self.last_in_scope[v] == Some(level) {
            let d = self.g.degree(v);
            let values = &self.values;
            let own = if self.rule == LabelingRule::VertexDegree { values[v] } else { 0 };
            self.color[v] = Some(combine(self.rule, d, own, scope.iter().map(|&e| values[e])));
            for &e in scope {
                self.reason[v].insert(e);
            }
            return true;
        }
        // Partial scope: only the maximum and gap rules can be forced early.
        let k = self.k;
        let x = self.values[level];
        match self.rule {
            LabelingRule::VertexMaximum if x == k => {
                self.color[v] = Some(Color::Small(k as u128));
                self.reason[v].insert(level);
                true
            }
            LabelingRule::EdgeGap | LabelingRule::VertexGap if scope.len() >= 2 && k >= 2 && (x == 1 || x == k) => {
                let other = if x == 1 { k } else { 1 };
                let partner = scope
                    .iter()
                    .copied()
                    .find(|&e| e < level && self.values[e] == other);
                match partner {
                    Some(e) => {
                        self.color[v] = Some(Color::Small((k - 1) as u128));
                        self.reason[v].insert(level);
                        self.reason[v].insert(e);
                        true
                    }
                    None => false,
                }
            }
            _ => false,
        }
    }
}
