//! 3-CNF formulas, their DIMACS form and a truth-table oracle.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// Zero-based variable index; `x1` is variable 0.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn eval(self, truth: &[bool]) -> bool {
        truth[self.var] != self.negated
    }

    /// DIMACS integer: `k` for `x_k`, `-k` for its negation.
    pub fn to_dimacs(self) -> i64 {
        let k = self.var as i64 + 1;
        if self.negated {
            -k
        } else {
            k
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬")?;
        }
        write!(f, "x{}", self.var + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    pub variables: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Formula {
    pub fn new(variables: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if let Some(l) = clauses.iter().flatten().find(|l| l.var >= variables) {
            return Err(Error::Precondition(format!(
                "literal {l} uses a variable beyond x{variables}"
            )));
        }
        Ok(Formula { variables, clauses })
    }

    /// `(x1 ∨ ¬x2 ∨ x3) ∧ (x2 ∨ x3 ∨ x4) ∧ (x1 ∨ ¬x3 ∨ x4)`, the worked
    /// example as printed under its gadget-graph figure.
    pub fn worked_example() -> Formula {
        use Literal as L;
        Formula {
            variables: 4,
            clauses: vec![
                [L::pos(0), L::neg(1), L::pos(2)],
                [L::pos(1), L::pos(2), L::pos(3)],
                [L::pos(0), L::neg(2), L::pos(3)],
            ],
        }
    }

    /// The same example with the third clause as written in the body text,
    /// `x1 ∨ ¬x3 ∨ ¬x4`.
    pub fn worked_example_body() -> Formula {
        let mut f = Self::worked_example();
        f.clauses[2][2] = Literal::neg(3);
        f
    }

    pub fn eval(&self, truth: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(truth)))
    }

    /// First satisfying assignment in binary-counter order (bit `k` is
    /// `x_{k+1}`), by enumerating the whole truth table.
    pub fn truth_table_solve(&self) -> Option<Vec<bool>> {
        assert!(self.variables < 32, "truth table too large");
        (0u64..1 << self.variables)
            .map(|t| (0..self.variables).map(|k| t >> k & 1 == 1).collect::<Vec<_>>())
            .find(|truth| self.eval(truth))
    }

    /// Variables that occur in at least one clause.
    pub fn used_variables(&self) -> Vec<bool> {
        let mut used = vec![false; self.variables];
        for l in self.clauses.iter().flatten() {
            used[l.var] = true;
        }
        used
    }

    /// Variable–clause incidence graph: vertex `k` is `x_{k+1}`, vertex
    /// `variables + i` is clause `i`, one edge per variable occurring in a
    /// clause however often it occurs there.
    pub fn incidence_graph(&self) -> Graph {
        let n = self.variables;
        let mut g = Graph::new(n + self.clauses.len());
        for (i, c) in self.clauses.iter().enumerate() {
            let mut vars: Vec<usize> = c.iter().map(|l| l.var).collect();
            vars.sort_unstable();
            vars.dedup();
            for v in vars {
                g.add_edge(v, n + i);
            }
        }
        g
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variables, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&format!("{} ", l.to_dimacs()));
            }
            out.push_str("0\n");
        }
        out
    }

    /// Reads DIMACS CNF where every clause has exactly three literals.
    /// `c` lines are comments; clauses may span lines and end with `0`.
    pub fn parse_dimacs(text: &str) -> Result<Formula> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
                continue;
            }
            last = line;
            if t.starts_with('p') {
                let toks: Vec<&str> = t.split_whitespace().collect();
                if header.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                if toks.len() != 4 || toks[1] != "cnf" {
                    return Err(parse_err(line, "expected `p cnf <variables> <clauses>`"));
                }
                let v = toks[2].parse().map_err(|_| parse_err(line, "bad variable count"))?;
                let c = toks[3].parse().map_err(|_| parse_err(line, "bad clause count"))?;
                header = Some((v, c));
                continue;
            }
            let (vars, _) = header.ok_or_else(|| parse_err(line, "clause before the problem line"))?;
            for tok in t.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad literal `{tok}`")))?;
                if x == 0 {
                    if current.len() != 3 {
                        return Err(parse_err(
                            line,
                            format!("clause has {} literals, expected 3", current.len()),
                        ));
                    }
                    clauses.push([current[0], current[1], current[2]]);
                    current.clear();
                    continue;
                }
                let var = x.unsigned_abs() as usize;
                if var > vars {
                    return Err(parse_err(line, format!("variable {var} exceeds {vars}")));
                }
                current.push(Literal {
                    var: var - 1,
                    negated: x < 0,
                });
            }
        }
        let (vars, count) = header.ok_or_else(|| parse_err(last, "missing problem line"))?;
        if !current.is_empty() {
            return Err(parse_err(last, "last clause is not terminated by 0"));
        }
        if clauses.len() != count {
            return Err(parse_err(
                last,
                format!("expected {count} clauses, found {}", clauses.len()),
            ));
        }
        Formula::new(vars, clauses)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "({} ∨ {} ∨ {})", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}
