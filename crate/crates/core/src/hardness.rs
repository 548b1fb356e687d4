//! Satisfiability as a stabilizer problem: each clause becomes a diagonal
//! operator that negates exactly the assignments falsifying it, so the joint
//! +1 eigenspace is spanned by the satisfying assignments.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MsfError, Result};
use crate::group::support::support_test;
use crate::group::tree::orbit_bfs;
use crate::op::generators::GeneratorSet;
use crate::op::monomial::{DiagonalFn, MonomialOp};
use crate::space::{BasisVector, SiteSpace};

/// Most literals a clause may carry; keeps every generator 3-local.
pub const MAX_CLAUSE_LEN: usize = 3;

/// A CNF formula over variables `1..=num_vars` with clauses of signed
/// literals. Duplicate clauses are kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<CnfFormula> {
        for (i, c) in clauses.iter().enumerate() {
            check_clause(c, num_vars)
                .map_err(|m| MsfError::InvalidArgument(format!("clause {i}: {m}")))?;
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Truth value on an assignment; `x[i]` is variable `i + 1`.
    pub fn eval(&self, x: &[u32]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| (l > 0) == (x[l.unsigned_abs() as usize - 1] == 1))
        })
    }
}

impl fmt::Display for CnfFormula {
    /// DIMACS text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

fn check_clause(c: &[i32], num_vars: usize) -> std::result::Result<(), String> {
    if c.is_empty() {
        return Err("empty clause".into());
    }
    if c.len() > MAX_CLAUSE_LEN {
        return Err(format!(
            "{} literals; at most {MAX_CLAUSE_LEN} are allowed",
            c.len()
        ));
    }
    if let Some(l) = c
        .iter()
        .find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars)
    {
        return Err(format!("literal {l} outside 1..={num_vars}"));
    }
    Ok(())
}

/// Parse DIMACS CNF. Comment lines (`c …`) are skipped, clauses may span
/// lines and end with `0`, and a trailing `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let err = |line: usize, msg: String| MsfError::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, "second header line".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| {
                err(
                    line_no,
                    format!("malformed header {line:?}; expected \"p cnf <vars> <clauses>\""),
                )
            })?);
            continue;
        }
        let (num_vars, _) =
            header.ok_or_else(|| err(line_no, "clause before the \"p cnf\" header".into()))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| err(line_no, format!("literal {tok:?} is not an integer")))?;
            if lit == 0 {
                let clause = std::mem::take(&mut current);
                check_clause(&clause, num_vars).map_err(|m| err(line_no, m))?;
                clauses.push(clause);
            } else {
                current.push(lit);
            }
        }
    }
    let (num_vars, declared) =
        header.ok_or_else(|| err(last_line.max(1), "missing \"p cnf\" header".into()))?;
    if !current.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != declared {
        return Err(err(
            last_line,
            format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    CnfFormula::new(num_vars, clauses)
}

/// The diagonal operator that is `-1` exactly on assignments falsifying the
/// clause. Checked against an `n`-variable space.
pub fn clause_to_op(clause: &[i32], n: usize) -> Result<MonomialOp> {
    check_clause(clause, n).map_err(MsfError::InvalidArgument)?;
    Ok(MonomialOp::diagonal(DiagonalFn::Clause {
        literals: clause.to_vec(),
    }))
}

/// One diagonal generator per clause, named `C1`, `C2`, ….
pub fn reduce_cnf(f: &CnfFormula) -> Result<GeneratorSet> {
    let mut gens = GeneratorSet::new(SiteSpace::qubits(f.num_vars)?);
    for (i, c) in f.clauses.iter().enumerate() {
        gens.push(format!("C{}", i + 1), clause_to_op(c, f.num_vars)?)?;
    }
    Ok(gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatReport {
    /// Dimension of the joint +1 eigenspace, equal to the number of
    /// satisfying assignments.
    pub dimension: usize,
    pub satisfying: Vec<BasisVector>,
}

impl SatReport {
    /// The unique satisfying assignment, or an error when the unique-SAT
    /// promise is broken.
    pub fn unique(&self) -> Result<&BasisVector> {
        match self.satisfying.as_slice() {
            [x] => Ok(x),
            s => Err(MsfError::InvalidArgument(format!(
                "unique-SAT promise violated: {} satisfying assignments",
                s.len()
            ))),
        }
    }
}

/// Decide the stabilized space of the reduced generators by testing every
/// assignment. All generators are diagonal, so each orbit is a single
/// assignment. Refuses when `2^n` exceeds `cap`.
pub fn solve_small(f: &CnfFormula, cap: u64) -> Result<SatReport> {
    let total = 1u64
        .checked_shl(f.num_vars as u32)
        .filter(|_| f.num_vars < 64);
    if total.is_none_or(|t| t > cap) {
        return Err(MsfError::CapExceeded(format!(
            "2^{} assignments exceed the cap {cap}; deciding whether these diagonal \
             generators share a +1 eigenvector is NP-hard, so only exhaustive search is offered",
            f.num_vars
        )));
    }
    let gens = reduce_cnf(f)?;
    let mut satisfying = Vec::new();
    for x in gens.space().basis() {
        let tree = orbit_bfs(&gens, &x, 1)?;
        if support_test(&tree, &gens)?.in_support {
            satisfying.push(x);
        }
    }
    Ok(SatReport {
        dimension: satisfying.len(),
        satisfying,
    })
}
