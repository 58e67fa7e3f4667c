//! SAT bridge: transformation shape, decisiveness under every relation, and
//! truth-table agreement.

mod common;

use defrev_core::sat::{goal_literal, SatResult, TruthTableResult};
use defrev_core::{
    enumerate_superiorities, gamma_transform, is_decisive, parse_dimacs, sat_via_refutability,
    truth_table_sat, CnfFormula,
};
use rand::Rng;

#[test]
fn gamma_theories_decisive_under_every_relation() {
    for src in ["p cnf 1 1\n1 1 -1 0\n", "p cnf 2 2\n1 -2 2 0\n-1 -1 2 0\n"] {
        let f = parse_dimacs(src).unwrap();
        let t = gamma_transform(&f);
        for sup in enumerate_superiorities(&t, 1_000_000).unwrap() {
            let t2 = t.with_superiority(sup).unwrap();
            assert!(is_decisive(&t2), "indecisive candidate for {}", src);
        }
    }
}

#[test]
fn forced_unsat_goal_is_tautological() {
    // {x}{~x} padded to three literals
    let f = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n").unwrap();
    assert_eq!(sat_via_refutability(&f, 1000), SatResult::Unsat);
    // unsat means the goal literal is proved under every relation; check the
    // full conflicting-pair enumeration agrees
    let t = gamma_transform(&f);
    let report = defrev_core::analysis::classify_refutability(&t, &goal_literal(), 20_000_000);
    assert_eq!(
        report.class,
        defrev_core::RefutabilityClass::Tautological,
        "examined {} candidates",
        report.candidates_examined
    );
}

#[test]
fn tautologous_clause_formula_is_sat() {
    let f = parse_dimacs("p cnf 1 1\n1 1 -1 0\n").unwrap();
    match sat_via_refutability(&f, 1000) {
        SatResult::Sat(a) => assert!(f.satisfied_by(&a)),
        other => panic!("expected sat, got {:?}", other),
    }
    // and the goal literal is refutable on the transformed theory
    let t = gamma_transform(&f);
    let report = defrev_core::analysis::classify_refutability(&t, &goal_literal(), 20_000_000);
    assert_eq!(report.class, defrev_core::RefutabilityClass::Refutable);
}

fn random_formula(rng: &mut impl Rng, max_vars: usize, max_clauses: usize) -> CnfFormula {
    let vars = rng.gen_range(1..=max_vars);
    let n_clauses = rng.gen_range(1..=max_clauses);
    let clauses: Vec<[i32; 3]> = (0..n_clauses)
        .map(|_| {
            [0; 3].map(|_| {
                let v = rng.gen_range(1..=vars) as i32;
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
        })
        .collect();
    CnfFormula::new(vars, clauses).unwrap()
}

#[test]
fn refutability_agrees_with_truth_table_on_random_instances() {
    let mut rng = common::rng(199);
    for i in 0..60 {
        let f = random_formula(&mut rng, 4, 6);
        let expected = truth_table_sat(&f).unwrap();
        let got = sat_via_refutability(&f, 1_000_000);
        match (&expected, &got) {
            (TruthTableResult::Sat(_), SatResult::Sat(a)) => {
                assert!(f.satisfied_by(a), "instance {}: bad witness", i)
            }
            (TruthTableResult::Unsat, SatResult::Unsat) => {}
            other => panic!("instance {} disagreement: {:?}", i, other),
        }
    }
}

#[test]
fn transformation_size_is_linear() {
    for n in [1usize, 3, 6] {
        let clauses = vec![[1, -1, 1]; n];
        let f = CnfFormula::new(1, clauses).unwrap();
        assert_eq!(gamma_transform(&f).rules().len(), 8 * n);
    }
}
