//! Not-all-equal satisfiability by backtracking with propagation.

use super::BudgetExceeded;
use crate::formula::{Formula, FormulaError, Lit, Mode};

/// A NAE assignment with variable 0 set true, or `None` if there is none.
pub fn solve_nae(phi: &Formula) -> Result<Option<Vec<bool>>, FormulaError> {
    Ok(solve_nae_with_budget(phi, u64::MAX)?.expect("unbounded search"))
}

/// As [`solve_nae`], giving up after `budget` decisions.
pub fn solve_nae_with_budget(
    phi: &Formula,
    budget: u64,
) -> Result<Result<Option<Vec<bool>>, BudgetExceeded>, FormulaError> {
    phi.expect_mode(Mode::Nae)?;
    let n = phi.var_count();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    for clause in phi.clauses() {
        let mut c = clause.clone();
        c.sort();
        c.dedup();
        if c.windows(2).any(|w| w[0].var == w[1].var) {
            // x and ¬x: always one true and one false literal.
            continue;
        }
        if c.len() < 2 {
            return Ok(Ok(None));
        }
        clauses.push(c);
    }
    clauses.sort();
    clauses.dedup();

    let mut solver = Nae {
        occurs: vec![Vec::new(); n],
        value: vec![None; n],
        trail: Vec::new(),
        clauses,
        nodes: 0,
        budget,
    };
    for (i, c) in solver.clauses.iter().enumerate() {
        for l in c {
            solver.occurs[l.var].push(i);
        }
    }
    if n == 0 {
        return Ok(Ok(solver.clauses.is_empty().then(Vec::new)));
    }
    // Complementing a NAE assignment keeps it NAE, so x0 = true loses nothing.
    let result = solver.search(Some(Lit::pos(0)));
    Ok(result.map(|found| {
        found.then(|| solver.value.iter().map(|v| v.unwrap_or(false)).collect())
    }))
}

struct Nae {
    clauses: Vec<Vec<Lit>>,
    occurs: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum ClauseState {
    Done,
    Open,
    Conflict,
    Force(Lit),
}

impl Nae {
    fn search(&mut self, forced: Option<Lit>) -> Result<bool, BudgetExceeded> {
        let mark = self.trail.len();
        if let Some(l) = forced {
            if !self.assign(l) {
                self.backtrack(mark);
                return Ok(false);
            }
        }
        let Some(var) = self.value.iter().position(Option::is_none) else {
            return Ok(true);
        };
        for positive in [false, true] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExceeded(self.budget));
            }
            if self.search(Some(Lit { var, positive }))? {
                return Ok(true);
            }
        }
        self.backtrack(mark);
        Ok(false)
    }

    fn backtrack(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.value[v] = None;
        }
    }

    /// Makes `l` true and propagates; false on conflict. The caller undoes
    /// the trail.
    fn assign(&mut self, l: Lit) -> bool {
        let mut queue = vec![l];
        while let Some(l) = queue.pop() {
            match self.value[l.var] {
                Some(v) if v == l.positive => continue,
                Some(_) => return false,
                None => {
                    self.value[l.var] = Some(l.positive);
                    self.trail.push(l.var);
                }
            }
            for &ci in &self.occurs[l.var] {
                match self.state(ci) {
                    ClauseState::Conflict => return false,
                    ClauseState::Force(f) => queue.push(f),
                    ClauseState::Done | ClauseState::Open => {}
                }
            }
        }
        true
    }

    fn state(&self, ci: usize) -> ClauseState {
        let (mut t, mut f) = (false, false);
        let mut free = None;
        let mut free_count = 0;
        for &l in &self.clauses[ci] {
            match self.value[l.var] {
                Some(v) if v == l.positive => t = true,
                Some(_) => f = true,
                None => {
                    free_count += 1;
                    free = Some(l);
                }
            }
        }
        match (t, f, free_count) {
            (true, true, _) => ClauseState::Done,
            (_, _, 0) => ClauseState::Conflict,
            (true, false, 1) => ClauseState::Force(free.unwrap().negated()),
            (false, true, 1) => ClauseState::Force(free.unwrap()),
            _ => ClauseState::Open,
        }
    }
}

/// Rewrites every clause to width exactly 3, preserving NAE satisfiability.
///
/// `(x ∨ y)` becomes `(x ∨ y ∨ t), (x ∨ y ∨ ¬t)`. A clause `l1 ∨ … ∨ lw` with
/// `w ≥ 4` becomes `(l1 ∨ l2 ∨ t)` and `(¬t ∨ l3 ∨ … ∨ lw)`, recursively,
/// where `t` is fresh.
pub fn wide_nae_to_3nae(phi: &Formula) -> Result<Formula, FormulaError> {
    phi.expect_mode(Mode::Nae)?;
    let mut next = phi.var_count();
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut out = Vec::new();
    for (i, clause) in phi.clauses().iter().enumerate() {
        match clause.len() {
            0 | 1 => {
                return Err(FormulaError::Width {
                    clause: i,
                    width: clause.len(),
                    mode: Mode::Nae,
                    need: "at least 2",
                })
            }
            2 => {
                let t = fresh();
                out.push(vec![clause[0], clause[1], Lit::pos(t)]);
                out.push(vec![clause[0], clause[1], Lit::neg(t)]);
            }
            _ => {
                let mut rest = clause.clone();
                while rest.len() > 3 {
                    let t = fresh();
                    out.push(vec![rest[0], rest[1], Lit::pos(t)]);
                    let mut tail = vec![Lit::neg(t)];
                    tail.extend_from_slice(&rest[2..]);
                    rest = tail;
                }
                out.push(rest);
            }
        }
    }
    Formula::new(next, out, Mode::Nae)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nae(vars: usize, clauses: &[&[i64]]) -> Formula {
        Formula::from_ints(vars, clauses, Mode::Nae).unwrap()
    }

    #[test]
    fn single_clause() {
        let a = solve_nae(&nae(3, &[&[1, 2, 3]])).unwrap().unwrap();
        assert_eq!(&a[..2], &[true, false]);
    }

    #[test]
    fn two_variable_clause() {
        assert_eq!(solve_nae(&nae(2, &[&[1, 2]])).unwrap(), Some(vec![true, false]));
    }

    #[test]
    fn repeated_literal_clause_is_unsat() {
        assert_eq!(solve_nae(&nae(1, &[&[1, 1]])).unwrap(), None);
    }

    #[test]
    fn tautological_clause_dropped() {
        assert!(solve_nae(&nae(2, &[&[1, -1, 2]])).unwrap().is_some());
    }

    #[test]
    fn fano_plane_is_not_two_colourable() {
        let lines: [&[i64]; 7] = [
            &[1, 2, 3],
            &[1, 4, 5],
            &[1, 6, 7],
            &[2, 4, 6],
            &[2, 5, 7],
            &[3, 4, 7],
            &[3, 5, 6],
        ];
        let f = nae(7, &lines);
        assert_eq!(solve_nae(&f).unwrap(), None);
        assert_eq!(f.truth_table_solve(), None);
        // dropping any line makes it colourable
        for skip in 0..7 {
            let some: Vec<&[i64]> = lines.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, c)| *c).collect();
            let g = nae(7, &some);
            assert!(g.is_satisfied_by(&solve_nae(&g).unwrap().unwrap()));
        }
    }

    #[test]
    fn widen_two() {
        let w = wide_nae_to_3nae(&nae(2, &[&[1, 2]])).unwrap();
        assert_eq!(w.var_count(), 3);
        assert_eq!(w.clauses().len(), 2);
        assert!(w.clauses().iter().all(|c| c.len() == 3));
    }

    #[test]
    fn widen_keeps_width_three() {
        let f = nae(3, &[&[1, -2, 3]]);
        assert_eq!(wide_nae_to_3nae(&f).unwrap(), f);
    }

    #[test]
    fn widen_five() {
        let w = wide_nae_to_3nae(&nae(5, &[&[1, 2, 3, 4, 5]])).unwrap();
        assert_eq!(w.var_count(), 7);
        assert_eq!(w.clauses().len(), 3);
    }

    #[test]
    fn widen_rejects_unit() {
        let f = Formula::new(1, vec![vec![Lit::pos(0)]], Mode::Sat).unwrap();
        assert!(wide_nae_to_3nae(&f).is_err());
    }
}
