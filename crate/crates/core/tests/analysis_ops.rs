//! Structure-analysis fixtures: dependency, reachability, support trees,
//! conflicting pairs, enumeration, and the inert-tuple soundness property.

mod common;

use common::{lit, random_theory, rng, theory, GenConfig, EXAMPLE1, TEAM};
use defrev_core::{
    conflicting_pairs, depends_on, enumerate_superiorities, extension, is_decisive, is_unreachable,
    support_trees, Superiority, SupportTree,
};
use std::collections::BTreeSet;

#[test]
fn example1_dependency_and_reachability() {
    let t = theory(EXAMPLE1);
    assert!(depends_on(&t, &lit("d"), &lit("a")));
    assert!(depends_on(&t, &lit("d"), &lit("c")));
    assert!(!is_unreachable(&t, &lit("p")));
    assert!(is_decisive(&t));
}

#[test]
fn example1_rules_for() {
    use defrev_core::theory::RuleRestriction;
    let t = theory(EXAMPLE1);
    let for_d: Vec<&str> = t
        .rules_for(&lit("d"), RuleRestriction::All)
        .iter()
        .map(|r| r.label())
        .collect();
    assert_eq!(for_d, vec!["r3"]);
    assert!(t.rules_for(&lit("~p"), RuleRestriction::All).is_empty());
}

#[test]
fn example1_support_trees() {
    let t = theory(EXAMPLE1);
    let trees = support_trees(&t, &lit("d"), 10);
    assert_eq!(trees.len(), 1);
    match &trees[0] {
        SupportTree::Derived {
            rule_label,
            children,
            ..
        } => {
            assert_eq!(rule_label, "r3");
            assert_eq!(children.len(), 1);
            assert_eq!(children[0].rule_label(), Some("r2"));
        }
        other => panic!("unexpected tree {:?}", other),
    }
    assert!(support_trees(&t, &lit("~p"), 10).is_empty());
}

#[test]
fn example1_conflicting_pairs_and_enumeration() {
    let t = theory(EXAMPLE1);
    let pairs = conflicting_pairs(&t);
    let expected: BTreeSet<(String, String)> =
        [("r1", "r4"), ("r3", "r5"), ("r2", "r8"), ("r7", "r9")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
    assert_eq!(pairs, expected);
    // four pairs over disjoint atoms: all 81 assignments acyclic
    let all: Vec<Superiority> = enumerate_superiorities(&t, 100).unwrap().collect();
    assert_eq!(all.len(), 81);
    let distinct: BTreeSet<_> = all.iter().map(|s| s.tuples().clone()).collect();
    assert_eq!(distinct.len(), 81);
}

#[test]
fn team_cross_pairs() {
    let t = theory(TEAM);
    let expected: BTreeSet<(String, String)> =
        [("r1", "r3"), ("r1", "r4"), ("r2", "r3"), ("r2", "r4")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
    assert_eq!(conflicting_pairs(&t), expected);
}

/// Tuples between non-conflicting rules never change the extension; this is
/// what justifies enumerating over conflicting pairs only.
#[test]
fn inert_tuples_do_not_change_extensions() {
    let mut r = rng(811);
    let cfg = GenConfig::default();
    let mut checked = 0;
    for _ in 0..200 {
        let t = random_theory(&mut r, &cfg);
        let pairs = conflicting_pairs(&t);
        let labels: Vec<String> = t.rule_labels().into_iter().collect();
        // find a non-conflicting ordered pair to inject
        let mut injected = None;
        'outer: for a in &labels {
            for b in &labels {
                if a == b {
                    continue;
                }
                let key = if a < b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                if pairs.contains(&key) {
                    continue;
                }
                let mut tuples = t.superiority().tuples().clone();
                if !tuples.insert((a.clone(), b.clone())) {
                    continue;
                }
                let sup = match Superiority::from_tuples(tuples) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                match t.with_superiority(sup) {
                    Ok(t2) => {
                        injected = Some(t2);
                        break 'outer;
                    }
                    Err(_) => continue,
                }
            }
        }
        if let Some(t2) = injected {
            assert_eq!(
                extension(&t),
                extension(&t2),
                "inert tuple changed extension of {}",
                t.serialize()
            );
            checked += 1;
        }
    }
    assert!(
        checked > 50,
        "only {} theories admitted an inert tuple",
        checked
    );
}
