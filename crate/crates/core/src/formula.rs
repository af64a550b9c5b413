//! CNF formulas with a satisfaction mode, plus DIMACS CNF reading/writing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::ParseError;

/// A literal over a 0-based variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Lit {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    /// 1-based signed integer, as in DIMACS.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Lit> {
        if x == 0 {
            return None;
        }
        let var = (x.unsigned_abs() - 1) as usize;
        Some(Lit { var, positive: x > 0 })
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Sat,
    Nae,
    OneInThree,
    TwoSat,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Sat => "sat",
            Mode::Nae => "nae",
            Mode::OneInThree => "one-in-three",
            Mode::TwoSat => "twosat",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sat" => Ok(Mode::Sat),
            "nae" => Ok(Mode::Nae),
            "one-in-three" | "1in3" => Ok(Mode::OneInThree),
            "twosat" | "2sat" => Ok(Mode::TwoSat),
            _ => Err(format!("unknown formula mode `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("variable {var} out of range (formula has {var_count} variables)")]
    VarOutOfRange { var: usize, var_count: usize },
    #[error("clause {clause} has width {width}; {mode} needs {need}")]
    Width {
        clause: usize,
        width: usize,
        mode: Mode,
        need: &'static str,
    },
    #[error("expected a {expected} formula, got {found}")]
    WrongMode { expected: Mode, found: Mode },
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    var_count: usize,
    clauses: Vec<Vec<Lit>>,
    mode: Mode,
}

impl Formula {
    pub fn new(var_count: usize, clauses: Vec<Vec<Lit>>, mode: Mode) -> Result<Self, FormulaError> {
        for (i, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= var_count) {
                return Err(FormulaError::VarOutOfRange {
                    var: l.var,
                    var_count,
                });
            }
            let bad = match mode {
                Mode::TwoSat => (clause.len() != 2).then_some("exactly 2"),
                Mode::Nae | Mode::OneInThree => (clause.len() < 2).then_some("at least 2"),
                Mode::Sat => clause.is_empty().then_some("at least 1"),
            };
            if let Some(need) = bad {
                return Err(FormulaError::Width {
                    clause: i,
                    width: clause.len(),
                    mode,
                    need,
                });
            }
        }
        Ok(Formula {
            var_count,
            clauses,
            mode,
        })
    }

    /// Builds from DIMACS-style signed 1-based integers.
    pub fn from_ints(var_count: usize, clauses: &[&[i64]], mode: Mode) -> Result<Self, FormulaError> {
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|&x| Lit::from_dimacs(x).expect("nonzero literal")).collect())
            .collect();
        Formula::new(var_count, clauses, mode)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Formula, FormulaError> {
        Formula::new(self.var_count, self.clauses.clone(), mode)
    }

    pub fn expect_mode(&self, mode: Mode) -> Result<(), FormulaError> {
        if self.mode == mode {
            Ok(())
        } else {
            Err(FormulaError::WrongMode {
                expected: mode,
                found: self.mode,
            })
        }
    }

    /// γ(x): number of clauses containing variable `x`.
    pub fn occurrences(&self, var: usize) -> usize {
        self.clauses.iter().filter(|c| c.iter().any(|l| l.var == var)).count()
    }

    pub fn is_monotone(&self) -> bool {
        self.clauses.iter().flatten().all(|l| l.positive)
    }

    pub fn clause_satisfied(&self, clause: &[Lit], assignment: &[bool]) -> bool {
        let trues = clause.iter().filter(|l| l.eval(assignment)).count();
        match self.mode {
            Mode::Sat | Mode::TwoSat => trues > 0,
            Mode::Nae => trues > 0 && trues < clause.len(),
            Mode::OneInThree => trues == 1,
        }
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.var_count && self.clauses.iter().all(|c| self.clause_satisfied(c, assignment))
    }

    /// First satisfying assignment in binary counting order (variable 0 most
    /// significant, false before true). Exponential; meant for tiny formulas.
    pub fn truth_table_solve(&self) -> Option<Vec<bool>> {
        assert!(self.var_count < 31, "truth table over {} variables", self.var_count);
        (0u64..1 << self.var_count)
            .map(|bits| {
                (0..self.var_count)
                    .map(|i| bits >> (self.var_count - 1 - i) & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .find(|a| self.is_satisfied_by(a))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.var_count, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF. The mode is not part of the file format.
    pub fn parse_dimacs(text: &str, mode: Mode) -> Result<Formula, ParseError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(ParseError::new(line_no, "second header"));
                }
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                    return Err(ParseError::new(line_no, "expected `p cnf <vars> <clauses>`"));
                }
                let vars = parts[2]
                    .parse()
                    .map_err(|_| ParseError::new(line_no, "bad variable count"))?;
                let count = parts[3]
                    .parse()
                    .map_err(|_| ParseError::new(line_no, "bad clause count"))?;
                header = Some((vars, count, line_no));
                continue;
            }
            let Some((vars, _, _)) = header else {
                return Err(ParseError::new(line_no, "clause before `p cnf` header"));
            };
            last_line = line_no;
            for tok in line.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| ParseError::new(line_no, format!("bad literal `{tok}`")))?;
                match Lit::from_dimacs(x) {
                    None => clauses.push(std::mem::take(&mut current)),
                    Some(l) if l.var >= vars => {
                        return Err(ParseError::new(line_no, format!("variable {} out of range", l.var + 1)))
                    }
                    Some(l) => current.push(l),
                }
            }
        }
        let Some((vars, count, header_line)) = header else {
            return Err(ParseError::new(1, "missing `p cnf` header"));
        };
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(ParseError::new(
                header_line,
                format!("header declares {count} clauses, found {}", clauses.len()),
            ));
        }
        Formula::new(vars, clauses, mode).map_err(|e| ParseError::new(last_line.max(header_line), e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let f = Formula::from_ints(3, &[&[1, -2, 3], &[-1, 2]], Mode::Sat).unwrap();
        let text = f.to_dimacs();
        assert_eq!(Formula::parse_dimacs(&text, Mode::Sat).unwrap(), f);
    }

    #[test]
    fn parse_multiline_clause_and_comments() {
        let text = "c hi\np cnf 2 1\n1\n-2 0\n";
        let f = Formula::parse_dimacs(text, Mode::Sat).unwrap();
        assert_eq!(f.clauses(), &[vec![Lit::pos(0), Lit::neg(1)]]);
    }

    #[test]
    fn parse_errors() {
        assert!(Formula::parse_dimacs("1 2 0\n", Mode::Sat).is_err());
        assert!(Formula::parse_dimacs("p cnf 1 1\n2 0\n", Mode::Sat).is_err());
        assert!(Formula::parse_dimacs("p cnf 2 2\n1 2 0\n", Mode::Sat).is_err());
        let e = Formula::parse_dimacs("p cnf 2 1\n1 0\n", Mode::TwoSat).unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn width_rules() {
        assert!(Formula::from_ints(2, &[&[1]], Mode::Nae).is_err());
        assert!(Formula::from_ints(2, &[&[1, 2, 1]], Mode::TwoSat).is_err());
        assert!(Formula::from_ints(2, &[&[1, 2]], Mode::TwoSat).is_ok());
        assert!(Formula::from_ints(1, &[&[1, 2]], Mode::Sat).is_err());
    }

    #[test]
    fn clause_semantics() {
        let nae = Formula::from_ints(3, &[&[1, 2, 3]], Mode::Nae).unwrap();
        assert!(!nae.is_satisfied_by(&[true, true, true]));
        assert!(nae.is_satisfied_by(&[true, false, true]));
        let one = nae.with_mode(Mode::OneInThree).unwrap();
        assert!(one.is_satisfied_by(&[false, true, false]));
        assert!(!one.is_satisfied_by(&[true, true, false]));
        assert_eq!(one.truth_table_solve(), Some(vec![false, false, true]));
        assert_eq!(nae.occurrences(1), 1);
    }
}
