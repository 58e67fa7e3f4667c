//! AGM postulate audit against the designated fixtures: exact belief sets
//! for the contraction/revision examples and the identity counterexamples.

mod common;

use common::{
    lit, theory, EX_CONTR5, EX_CONTR78, EX_CONTRTAUT, EX_IDHARPER, EX_IDLEVI, EX_REV78, EX_TAUT,
    K2_FIXTURE, K5_STRONG, K5_WEAK, TIE,
};
use defrev_core::agm::{
    agm_contract, agm_contract_set, agm_expand, agm_revise, check_expansion_monotony, check_harper,
    check_levi, check_postulate, AgmOp, AuditOptions, PostulateId, VerdictStatus,
};
use defrev_core::{belief_set, Literal, DEFAULT_BUDGET};
use std::collections::BTreeSet;

fn lits(v: &[&str]) -> BTreeSet<Literal> {
    v.iter().map(|s| lit(s)).collect()
}

fn opts(all_minimal: bool) -> AuditOptions {
    AuditOptions {
        all_minimal,
        budget: DEFAULT_BUDGET,
    }
}

fn done(op: AgmOp) -> defrev_core::Theory {
    match op {
        AgmOp::Done { theory, .. } => theory,
        other => panic!("operation did not complete: {:?}", other),
    }
}

#[test]
fn contr78_initial_and_contracted_belief_sets() {
    let t = theory(EX_CONTR78);
    let bs = belief_set(&t);
    assert_eq!(bs.believed, lits(&["a", "b", "c", "d", "~p"]));
    assert_eq!(bs.disbelieved, lits(&["~a", "~b", "~c", "~d", "p"]));

    let da = done(agm_contract(&t, &lit("a"), DEFAULT_BUDGET).unwrap());
    let bs_a = belief_set(&da);
    assert_eq!(bs_a.believed, lits(&["b", "~c", "d", "~p"]));
    assert_eq!(bs_a.disbelieved, lits(&["a", "~a", "~b", "c", "~d", "p"]));

    let db = done(agm_contract(&t, &lit("b"), DEFAULT_BUDGET).unwrap());
    let bs_b = belief_set(&db);
    assert_eq!(bs_b.believed, lits(&["a", "c", "~d", "~p"]));
    assert_eq!(bs_b.disbelieved, lits(&["~a", "b", "~b", "~c", "d", "p"]));

    let dab = done(agm_contract_set(&t, &[lit("a"), lit("b")], DEFAULT_BUDGET).unwrap());
    let bs_ab = belief_set(&dab);
    assert_eq!(bs_ab.believed, lits(&["~c", "~d", "p"]));
    assert_eq!(
        bs_ab.disbelieved,
        lits(&["a", "~a", "b", "~b", "c", "d", "~p"])
    );

    // the intersections witnessing the K-7 failure
    let plus_cap: BTreeSet<Literal> = bs_a
        .believed
        .intersection(&bs_b.believed)
        .cloned()
        .collect();
    assert_eq!(plus_cap, lits(&["~p"]));
    let minus_cap: BTreeSet<Literal> = bs_a
        .disbelieved
        .intersection(&bs_b.disbelieved)
        .cloned()
        .collect();
    assert_eq!(minus_cap, lits(&["~a", "~b", "p"]));
}

#[test]
fn k7_and_k8_violated_on_contr78() {
    let t = theory(EX_CONTR78);
    for id in ["K-7", "K-8"] {
        let v = check_postulate(
            &PostulateId::parse(id).unwrap(),
            &t,
            &lit("a"),
            Some(&lit("b")),
            &opts(false),
        )
        .unwrap();
        assert_eq!(v.status, VerdictStatus::Violated, "{}", id);
        assert!(v.witness.is_some());
    }
}

#[test]
fn k2_violated_by_freed_conclusion() {
    let t = theory(K2_FIXTURE);
    let bs = belief_set(&t);
    assert!(bs.disbelieved.contains(&lit("p")));
    let da = done(agm_contract(&t, &lit("a"), DEFAULT_BUDGET).unwrap());
    assert!(belief_set(&da).believed.contains(&lit("p")));
    let v = check_postulate(
        &PostulateId::parse("K-2").unwrap(),
        &t,
        &lit("a"),
        None,
        &opts(false),
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::Violated);
    // the witness re-verifies: recompute both sides from its own entries
    let w = v.witness.unwrap();
    let d0 = &w.entries[0];
    let d1 = &w.entries[1];
    assert!(!d1.belief.believed.is_subset(&d0.belief.believed));
}

#[test]
fn k3_holds_trivially() {
    let t = theory(TIE);
    // p is already disbelieved
    let v = check_postulate(
        &PostulateId::parse("K-3").unwrap(),
        &t,
        &lit("p"),
        None,
        &opts(false),
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::Holds);
    // and the operation is a no-op
    let d = done(agm_contract(&t, &lit("p"), DEFAULT_BUDGET).unwrap());
    assert_eq!(belief_set(&d), belief_set(&t));
}

#[test]
fn k5_violated_on_contr5_via_minimal_outcomes() {
    let t = theory(EX_CONTR5);
    // deterministic backward step restores the original theory
    let det = check_postulate(
        &PostulateId::parse("K-5").unwrap(),
        &t,
        &lit("p"),
        None,
        &opts(false),
    )
    .unwrap();
    assert_eq!(det.status, VerdictStatus::Holds);
    // but another minimal expansion exists and loses the a brief
    let all = check_postulate(
        &PostulateId::parse("K-5").unwrap(),
        &t,
        &lit("p"),
        None,
        &opts(true),
    )
    .unwrap();
    assert_eq!(all.status, VerdictStatus::Violated);
}

#[test]
fn k44prime_fixtures() {
    // guarded chains: contraction infeasible although -phi p holds
    let v = check_postulate(
        &PostulateId::parse("K-4'").unwrap(),
        &theory(EX_TAUT),
        &lit("p"),
        None,
        &opts(false),
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::InfeasibleOperation);
    // two more guards make it feasible again
    let v = check_postulate(
        &PostulateId::parse("K-4'").unwrap(),
        &theory(EX_CONTRTAUT),
        &lit("p"),
        None,
        &opts(false),
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::Holds);
}

#[test]
fn rev78_belief_sets_and_k7_k8_star_violations() {
    let t = theory(EX_REV78);
    let bs = belief_set(&t);
    assert!(bs.believed.contains(&lit("~p")));
    assert!(bs.disbelieved.contains(&lit("p")));
    assert!(bs.disbelieved.contains(&lit("q")));

    // deterministic D*p goes through a
    let dp = done(agm_revise(&t, &lit("p"), DEFAULT_BUDGET).unwrap());
    let bs_p = belief_set(&dp);
    assert_eq!(bs_p.believed, lits(&["a", "c", "p"]));
    assert_eq!(bs_p.disbelieved, lits(&["~a", "b", "~b", "~p", "q", "~q"]));

    // expanding that by q goes through c
    let dpq_seq = done(agm_expand(&dp, &lit("q"), DEFAULT_BUDGET).unwrap());
    let bs_seq = belief_set(&dpq_seq);
    assert_eq!(bs_seq.believed, lits(&["a", "c", "p", "q"]));
    assert_eq!(bs_seq.disbelieved, lits(&["~a", "b", "~b", "~p", "~q"]));

    // among the minimal joint revisions is the b route and its belief sets
    let joint = defrev_core::revision::all_minimal_outcomes(
        &t,
        &[
            (
                defrev_core::ProofTag::plus(defrev_core::TagFamily::Partial),
                lit("p"),
            ),
            (
                defrev_core::ProofTag::plus(defrev_core::TagFamily::Partial),
                lit("q"),
            ),
        ],
        DEFAULT_BUDGET,
        defrev_core::revision::Metric::TupleCount,
    )
    .unwrap();
    let outcomes = match joint {
        defrev_core::revision::MinimalOutcomes::Found(v) => v,
        other => panic!("joint revision failed: {:?}", other),
    };
    let b_route = outcomes
        .iter()
        .find(|o| {
            let bs = belief_set(&o.theory);
            bs.believed == lits(&["b", "c", "p", "q"])
        })
        .expect("b-route joint outcome among minimal outcomes");
    assert_eq!(
        belief_set(&b_route.theory).disbelieved,
        lits(&["a", "~a", "~b", "~p", "~q"])
    );

    for id in ["K*7", "K*8"] {
        let v = check_postulate(
            &PostulateId::parse(id).unwrap(),
            &t,
            &lit("p"),
            Some(&lit("q")),
            &opts(true),
        )
        .unwrap();
        assert_eq!(v.status, VerdictStatus::Violated, "{}", id);
    }
}

#[test]
fn always_hold_star_postulates_on_feasible_revision() {
    let t = theory(EX_IDLEVI);
    for id in ["K*1", "K*2", "K*5"] {
        let v = check_postulate(
            &PostulateId::parse(id).unwrap(),
            &t,
            &lit("p"),
            None,
            &opts(false),
        )
        .unwrap();
        assert_eq!(v.status, VerdictStatus::Holds, "{}", id);
    }
}

#[test]
fn levi_identity_violated_on_its_example() {
    let t = theory(EX_IDLEVI);
    // deterministic revision goes through a
    let dp = done(agm_revise(&t, &lit("p"), DEFAULT_BUDGET).unwrap());
    assert_eq!(belief_set(&dp).believed, lits(&["a", "p"]));
    assert_eq!(belief_set(&dp).disbelieved, lits(&["~a", "b", "~b", "~p"]));

    // deterministic contract-then-expand matches and the identity holds...
    let det = check_levi(&t, &lit("p"), &opts(false)).unwrap();
    assert_eq!(det.status, VerdictStatus::Holds);
    // ...but the b-branch contraction breaks it
    let all = check_levi(&t, &lit("p"), &opts(true)).unwrap();
    assert_eq!(all.status, VerdictStatus::Violated);
    let w = all.witness.unwrap();
    // the recorded combination carries the {a,p} versus {b,p} belief sets
    let sides: Vec<BTreeSet<Literal>> = w
        .entries
        .iter()
        .map(|e| e.belief.believed.clone())
        .collect();
    assert!(sides.contains(&lits(&["a", "p"])));
    assert!(sides.contains(&lits(&["b", "p"])));
}

#[test]
fn harper_identity_violated_on_its_example() {
    let t = theory(EX_IDHARPER);
    let bs = belief_set(&t);
    assert_eq!(bs.believed, lits(&["p", "q"]));
    assert_eq!(bs.disbelieved, lits(&["~p", "~q"]));

    let dm = done(agm_contract(&t, &lit("p"), DEFAULT_BUDGET).unwrap());
    assert_eq!(belief_set(&dm).believed, lits(&["~q"]));

    let dr = done(agm_revise(&t, &lit("~p"), DEFAULT_BUDGET).unwrap());
    assert_eq!(belief_set(&dr).believed, lits(&["~p", "q"]));
    assert_eq!(belief_set(&dr).disbelieved, lits(&["p", "~q"]));

    let v = check_harper(&t, &lit("p"), &opts(false)).unwrap();
    assert_eq!(v.status, VerdictStatus::Violated);
}

#[test]
fn expansion_monotony_violated_on_theory_pair() {
    let strong = theory(K5_STRONG);
    let weak = theory(K5_WEAK);
    assert_eq!(belief_set(&strong).believed, lits(&["w"]));
    assert_eq!(belief_set(&weak).believed, lits(&["w"]));
    let v = check_expansion_monotony(&strong, &weak, &lit("p"), &opts(false)).unwrap();
    assert_eq!(v.status, VerdictStatus::Violated);
    // and in the other direction it holds
    let v = check_expansion_monotony(&weak, &strong, &lit("p"), &opts(false)).unwrap();
    assert_eq!(v.status, VerdictStatus::Holds);
}

#[test]
fn expand_tie_belief_set() {
    let t = theory(TIE);
    let d = done(agm_expand(&t, &lit("p"), DEFAULT_BUDGET).unwrap());
    assert_eq!(belief_set(&d).believed, lits(&["p"]));
    assert_eq!(belief_set(&d).disbelieved, lits(&["~p"]));
}

#[test]
fn k_plus_6_not_applicable() {
    let v = check_postulate(
        &PostulateId::parse("K+6").unwrap(),
        &theory(TIE),
        &lit("p"),
        None,
        &opts(false),
    )
    .unwrap();
    assert_eq!(v.status, VerdictStatus::NotApplicable);
}

#[test]
fn catalogue_is_complete() {
    assert_eq!(PostulateId::catalogue().len(), 25);
    assert!(PostulateId::parse("K-9").is_none());
    assert!(PostulateId::parse("nonsense").is_none());
}

#[test]
fn levi_holds_on_unique_outcome_theory() {
    let t = theory("r: => p. s: => ~p. r > s.");
    let v = check_levi(&t, &lit("~p"), &opts(true)).unwrap();
    assert_eq!(v.status, VerdictStatus::Holds);
}
