//! 3-CNF to defeasible-theory transformation and SAT decision via
//! refutability of the goal literal, with an exhaustive truth-table oracle.
//!
//! Each clause i with literals a_1..a_3 becomes: a generator rule per
//! literal (`ga_i_j: => a_j`), a clause rule per literal
//! (`g_i_j: a_j => _c<i>`), one negative rule (`gn_i: => ~_c<i>`) and one
//! goal rule (`gp_i: ~_c<i> => _goal`). The formula is satisfiable exactly
//! when some superiority relation refutes `_goal`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::engine::{Compiled, Tv};
use crate::theory::{Literal, Rule, RuleKind, Superiority, Theory};

/// A 3-CNF formula. Variables are 1-based; a clause literal is a signed
/// variable index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<[i32; 3]>) -> Result<CnfFormula, CnfError> {
        if variable_count == 0 || clauses.is_empty() {
            return Err(CnfError::Empty);
        }
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > variable_count {
                    return Err(CnfError::VariableOutOfRange(l));
                }
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = assignment[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CnfError {
    MalformedHeader(String),
    WrongClauseWidth { clause: usize, width: usize },
    VariableOutOfRange(i32),
    ClauseCountMismatch { declared: usize, found: usize },
    Empty,
    TooManyVariables(usize),
}

impl fmt::Display for CnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CnfError::MalformedHeader(s) => write!(f, "malformed DIMACS header: {}", s),
            CnfError::WrongClauseWidth { clause, width } => {
                write!(f, "clause {} has {} literals, expected 3", clause, width)
            }
            CnfError::VariableOutOfRange(l) => write!(f, "literal {} out of range", l),
            CnfError::ClauseCountMismatch { declared, found } => {
                write!(f, "header declares {} clauses, found {}", declared, found)
            }
            CnfError::Empty => write!(f, "formula must have at least one variable and clause"),
            CnfError::TooManyVariables(n) => {
                write!(f, "{} variables exceed the truth-table limit of 24", n)
            }
        }
    }
}

impl std::error::Error for CnfError {}

/// Parses DIMACS CNF text; every clause must have exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut ints: Vec<i32> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(CnfError::MalformedHeader("duplicate p line".to_string()));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(CnfError::MalformedHeader(line.to_string()));
            }
            let vars = parts[1]
                .parse::<usize>()
                .map_err(|_| CnfError::MalformedHeader(line.to_string()))?;
            let clauses = parts[2]
                .parse::<usize>()
                .map_err(|_| CnfError::MalformedHeader(line.to_string()))?;
            header = Some((vars, clauses));
            continue;
        }
        if header.is_none() {
            return Err(CnfError::MalformedHeader(format!(
                "clause data before p line: {}",
                line
            )));
        }
        for tok in line.split_whitespace() {
            let v = tok
                .parse::<i32>()
                .map_err(|_| CnfError::MalformedHeader(format!("bad token `{}`", tok)))?;
            ints.push(v);
        }
    }
    let (vars, declared) =
        header.ok_or_else(|| CnfError::MalformedHeader("missing p line".to_string()))?;
    let mut clauses: Vec<[i32; 3]> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for v in ints {
        if v == 0 {
            if current.len() != 3 {
                return Err(CnfError::WrongClauseWidth {
                    clause: clauses.len() + 1,
                    width: current.len(),
                });
            }
            clauses.push([current[0], current[1], current[2]]);
            current.clear();
        } else {
            if current.len() == 3 {
                return Err(CnfError::WrongClauseWidth {
                    clause: clauses.len() + 1,
                    width: 4,
                });
            }
            current.push(v);
        }
    }
    if !current.is_empty() {
        return Err(CnfError::WrongClauseWidth {
            clause: clauses.len() + 1,
            width: current.len(),
        });
    }
    if clauses.len() != declared {
        return Err(CnfError::ClauseCountMismatch {
            declared,
            found: clauses.len(),
        });
    }
    CnfFormula::new(vars, clauses)
}

fn var_atom(v: usize) -> String {
    format!("x{}", v)
}

fn clause_literal(l: i32) -> Literal {
    let atom = var_atom(l.unsigned_abs() as usize);
    if l > 0 {
        Literal::positive(&atom)
    } else {
        Literal::negative(&atom)
    }
}

/// Maps a formula to its defeasible rule set (empty facts, empty
/// superiority). Fresh atoms `_c<i>` and `_goal` never collide with the
/// variable atoms `x<k>`.
pub fn gamma_transform(f: &CnfFormula) -> Theory {
    let mut rules = Vec::new();
    let goal = Literal::positive("_goal");
    for (ci, clause) in f.clauses().iter().enumerate() {
        let i = ci + 1;
        let c_lit = Literal::positive(&format!("_c{}", i));
        for (ji, &l) in clause.iter().enumerate() {
            let j = ji + 1;
            let a = clause_literal(l);
            rules.push(
                Rule::new(
                    &format!("ga_{}_{}", i, j),
                    vec![],
                    RuleKind::Defeasible,
                    a.clone(),
                )
                .expect("generated label"),
            );
            rules.push(
                Rule::new(
                    &format!("g_{}_{}", i, j),
                    vec![a],
                    RuleKind::Defeasible,
                    c_lit.clone(),
                )
                .expect("generated label"),
            );
        }
        rules.push(
            Rule::new(
                &format!("gn_{}", i),
                vec![],
                RuleKind::Defeasible,
                c_lit.complement(),
            )
            .expect("generated label"),
        );
        rules.push(
            Rule::new(
                &format!("gp_{}", i),
                vec![c_lit.complement()],
                RuleKind::Defeasible,
                goal.clone(),
            )
            .expect("generated label"),
        );
    }
    Theory::new(BTreeSet::new(), rules, Superiority::empty()).expect("generated theory is valid")
}

/// The literal whose refutability decides satisfiability.
pub fn goal_literal() -> Literal {
    Literal::positive("_goal")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SatResult {
    Sat(Vec<bool>),
    Unsat,
    ExhaustedBudget { required: u64, budget: u64 },
}

/// Decides satisfiability by refutability of the goal literal over the
/// Γ-transformed theory.
///
/// Mirroring the hardness construction, candidate relations only order
/// generator rules of complementary heads, and those orderings are induced
/// per variable (all positive-occurrence generators against all
/// negative-occurrence ones). A variable therefore contributes one of three
/// block states, giving 3^v candidates.
pub fn sat_via_refutability(f: &CnfFormula, budget: u64) -> SatResult {
    let theory = gamma_transform(f);
    let v = f.variable_count();
    let required = 3u64.saturating_pow(v as u32);
    if required > budget {
        return SatResult::ExhaustedBudget { required, budget };
    }
    let compiled = Compiled::new(&theory);
    let goal_id = compiled.lit_ids[&goal_literal()];

    // generator rule ids per variable and polarity
    let mut pos_gens: Vec<Vec<usize>> = vec![Vec::new(); v];
    let mut neg_gens: Vec<Vec<usize>> = vec![Vec::new(); v];
    for (ci, clause) in f.clauses().iter().enumerate() {
        for (ji, &l) in clause.iter().enumerate() {
            let label = format!("ga_{}_{}", ci + 1, ji + 1);
            let id = compiled.label_ids[&label];
            let var = l.unsigned_abs() as usize - 1;
            if l > 0 {
                pos_gens[var].push(id);
            } else {
                neg_gens[var].push(id);
            }
        }
    }

    // base-3 odometer over per-variable block states:
    // 0 incomparable, 1 positive beats negative, 2 negative beats positive
    let mut state = vec![0u8; v];
    loop {
        let mut beats: HashSet<(usize, usize)> = HashSet::new();
        for var in 0..v {
            match state[var] {
                1 => {
                    for &a in &pos_gens[var] {
                        for &b in &neg_gens[var] {
                            beats.insert((a, b));
                        }
                    }
                }
                2 => {
                    for &a in &neg_gens[var] {
                        for &b in &pos_gens[var] {
                            beats.insert((a, b));
                        }
                    }
                }
                _ => {}
            }
        }
        let partial = compiled.solve_partial(&beats);
        if partial[goal_id] == Tv::Minus {
            // read the witness assignment back from the proved literals
            let assignment: Vec<bool> = (0..v)
                .map(|var| {
                    compiled
                        .lit_ids
                        .get(&Literal::positive(&var_atom(var + 1)))
                        .map(|&id| partial[id] == Tv::Plus)
                        .unwrap_or(false)
                })
                .collect();
            return SatResult::Sat(assignment);
        }
        // increment
        let mut pos = v;
        loop {
            if pos == 0 {
                return SatResult::Unsat;
            }
            pos -= 1;
            state[pos] += 1;
            if state[pos] < 3 {
                break;
            }
            state[pos] = 0;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TruthTableResult {
    Sat(Vec<bool>),
    Unsat,
}

/// Exhaustive truth-table evaluation; at most 24 variables. On sat, returns
/// the lexicographically least satisfying assignment (false before true,
/// first variable most significant).
pub fn truth_table_sat(f: &CnfFormula) -> Result<TruthTableResult, CnfError> {
    let v = f.variable_count();
    if v > 24 {
        return Err(CnfError::TooManyVariables(v));
    }
    for bits in 0u64..(1u64 << v) {
        let assignment: Vec<bool> = (0..v).map(|i| (bits >> (v - 1 - i)) & 1 == 1).collect();
        if f.satisfied_by(&assignment) {
            return Ok(TruthTableResult::Sat(assignment));
        }
    }
    Ok(TruthTableResult::Unsat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_clause() {
        let f = parse_dimacs("p cnf 1 1\n1 1 -1 0\n").unwrap();
        assert_eq!(f.variable_count(), 1);
        assert_eq!(f.clauses(), &[[1, 1, -1]]);
    }

    #[test]
    fn parse_two_clauses() {
        let f = parse_dimacs("p cnf 2 2\n1 2 2 0\n-1 -2 -2 0\n").unwrap();
        assert_eq!(f.clauses().len(), 2);
    }

    #[test]
    fn parse_rejects_wide_clause() {
        let err = parse_dimacs("p cnf 2 1\n1 2 -1 -2 0\n").unwrap_err();
        assert!(matches!(err, CnfError::WrongClauseWidth { width: 4, .. }));
    }

    #[test]
    fn parse_rejects_bad_header() {
        assert!(parse_dimacs("p dnf 1 1\n1 1 1 0\n").is_err());
        assert!(parse_dimacs("1 1 1 0\n").is_err());
    }

    #[test]
    fn gamma_rule_count_per_clause() {
        let f = parse_dimacs("p cnf 1 1\n1 1 -1 0\n").unwrap();
        let t = gamma_transform(&f);
        assert_eq!(t.rules().len(), 8);
        assert!(t.facts().is_empty());
        assert!(t.superiority().is_empty());
    }

    #[test]
    fn gamma_theory_is_decisive_and_goal_initially_proved() {
        let f = parse_dimacs("p cnf 2 2\n1 2 2 0\n-1 -2 -2 0\n").unwrap();
        let t = gamma_transform(&f);
        assert!(crate::analysis::decisiveness(&t).atom_graph_acyclic);
        assert!(crate::analysis::is_decisive(&t));
        let tags = crate::engine::compute_tags(&t);
        assert!(tags.holds(
            crate::tags::ProofTag::plus(crate::tags::TagFamily::Partial),
            &goal_literal()
        ));
    }

    #[test]
    fn tautologous_clause_is_sat() {
        let f = parse_dimacs("p cnf 1 1\n1 1 -1 0\n").unwrap();
        match sat_via_refutability(&f, 1000) {
            SatResult::Sat(a) => assert!(f.satisfied_by(&a)),
            other => panic!("expected sat, got {:?}", other),
        }
    }

    #[test]
    fn padded_contradiction_is_unsat() {
        let f = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n").unwrap();
        assert_eq!(sat_via_refutability(&f, 1000), SatResult::Unsat);
        assert_eq!(truth_table_sat(&f).unwrap(), TruthTableResult::Unsat);
    }

    #[test]
    fn truth_table_least_assignment() {
        // (x | y | y) & (~x | y | y): y=1 satisfies both, least is x=0,y=1
        let f = parse_dimacs("p cnf 2 2\n1 2 2 0\n-1 2 2 0\n").unwrap();
        assert_eq!(
            truth_table_sat(&f).unwrap(),
            TruthTableResult::Sat(vec![false, true])
        );
    }

    #[test]
    fn truth_table_single_positive() {
        let f = parse_dimacs("p cnf 1 1\n1 1 1 0\n").unwrap();
        assert_eq!(
            truth_table_sat(&f).unwrap(),
            TruthTableResult::Sat(vec![true])
        );
    }
}
