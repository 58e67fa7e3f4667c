//! The three canonical revision operators: contract (+∂p to -∂p), revise
//! (+∂p to +∂~p) and expand (-∂p to +∂p), acting only on the superiority
//! relation.
//!
//! Each operator classifies its instance from the tag assignment, applies
//! the targeted tuple edits for that instance, re-runs inference to verify
//! the goal, and falls back to exhaustive search over the conflicting-pair
//! assignments when the targeted edits do not verify. Search is also the
//! ground truth for feasibility: a goal is infeasible only once every
//! in-budget candidate relation has been examined.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::analysis::{
    conflicting_pairs, has_contradiction_free_support, pow3, support_trees, tuples_of_assignment,
    PairAssignments, SupportTree,
};
use crate::engine::{compute_tags, Compiled, Tv};
use crate::tags::{ProofTag, Sign, TagAssignment, TagFamily, TagValue};
use crate::theory::{Literal, RuleRestriction, Superiority, Theory};

const TREE_LIMIT: usize = 32;

/// A canonical revision goal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RevisionGoal {
    pub kind: RevisionKind,
    pub target: Literal,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RevisionKind {
    /// From +∂p to -∂p.
    Contract,
    /// From +∂p to +∂~p.
    Revise,
    /// From -∂p to +∂p.
    Expand,
}

/// Which leaf of the revision case tree an input falls into, or why the
/// revision cannot be performed at all.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InstanceClass {
    /// Contract with no chain for the complement: attack the premises of
    /// the chains proving the target instead.
    AttackPremises,
    OmegaPlusSigmaMinus,
    OmegaMinusSigmaPlus,
    OmegaMinusSigmaMinus,
    /// Named for the usual argument that +ω~p with +σ~p cannot coexist
    /// with +∂p: the ω-witnessing chains for ~p are all defeated at their
    /// last step. That defeats only those chains, so the leaf is in fact
    /// reachable when a different chain stays σ-supported; the operators
    /// treat it like the ω+σ- case and verify.
    OmegaPlusSigmaPlusImpossible,
    ThirdOmegaPlusSigmaPlus,
    ThirdOmegaMinusSigmaPlus,
    ThirdOmegaMinusSigmaMinus,
    /// +φ on the target: no change of the relation can touch it.
    InfeasiblePhi,
    /// No supporting chain for the literal that must become provable.
    InfeasibleNoChain,
    /// The target only derives from contradictions.
    InfeasibleUnreachable,
    PreconditionNotMet,
}

impl InstanceClass {
    pub fn ascii_name(self) -> &'static str {
        match self {
            InstanceClass::AttackPremises => "attack_premises",
            InstanceClass::OmegaPlusSigmaMinus => "omega_plus_sigma_minus",
            InstanceClass::OmegaMinusSigmaPlus => "omega_minus_sigma_plus",
            InstanceClass::OmegaMinusSigmaMinus => "omega_minus_sigma_minus",
            InstanceClass::OmegaPlusSigmaPlusImpossible => "omega_plus_sigma_plus_impossible",
            InstanceClass::ThirdOmegaPlusSigmaPlus => "third_omega_plus_sigma_plus",
            InstanceClass::ThirdOmegaMinusSigmaPlus => "third_omega_minus_sigma_plus",
            InstanceClass::ThirdOmegaMinusSigmaMinus => "third_omega_minus_sigma_minus",
            InstanceClass::InfeasiblePhi => "infeasible_phi",
            InstanceClass::InfeasibleNoChain => "infeasible_no_chain",
            InstanceClass::InfeasibleUnreachable => "infeasible_unreachable",
            InstanceClass::PreconditionNotMet => "precondition_not_met",
        }
    }

    pub fn is_feasible(self) -> bool {
        !matches!(
            self,
            InstanceClass::InfeasiblePhi
                | InstanceClass::InfeasibleNoChain
                | InstanceClass::InfeasibleUnreachable
                | InstanceClass::PreconditionNotMet
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    SingleWinner,
    TeamDefeater,
    Targeted,
    Search,
}

impl Strategy {
    pub fn ascii_name(self) -> &'static str {
        match self {
            Strategy::SingleWinner => "single_winner",
            Strategy::TeamDefeater => "team_defeater",
            Strategy::Targeted => "targeted",
            Strategy::Search => "search",
        }
    }
}

/// Minimality metric for search: tuple-set symmetric difference, or the
/// number of ∂-conclusions changed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Metric {
    TupleCount,
    ConclusionCount,
}

/// A successful revision: the new relation, the tuple diff, the classified
/// instance and the strategy that produced it. `verified` records that the
/// engine re-proved the goal tag on the outcome theory.
#[derive(Clone, Debug)]
pub struct RevisionOutcome {
    pub theory: Theory,
    pub new_superiority: Superiority,
    pub added: BTreeSet<(String, String)>,
    pub removed: BTreeSet<(String, String)>,
    pub instance: Option<InstanceClass>,
    pub strategy: Strategy,
    pub verified: bool,
}

impl RevisionOutcome {
    pub fn diff_size(&self) -> usize {
        self.added.len() + self.removed.len()
    }

    /// Removal-only outcomes stay acyclic by construction.
    pub fn is_removal_only(&self) -> bool {
        self.added.is_empty()
    }
}

#[derive(Clone, Debug)]
pub enum RevisionResult {
    Success(RevisionOutcome),
    Infeasible {
        instance: Option<InstanceClass>,
        candidates_examined: u64,
    },
    ExhaustedBudget {
        required: u64,
        budget: u64,
    },
}

impl RevisionResult {
    pub fn success(&self) -> Option<&RevisionOutcome> {
        match self {
            RevisionResult::Success(o) => Some(o),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, RevisionResult::Infeasible { .. })
    }
}

/// Revision refuses theories with strict rules or defeaters: the operators
/// are defined for priorities among defeasible rules only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RevisionError {
    NonDefeasibleRules,
}

impl fmt::Display for RevisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RevisionError::NonDefeasibleRules => {
                write!(f, "revision requires a theory of defeasible rules only")
            }
        }
    }
}

impl std::error::Error for RevisionError {}

fn ensure_defeasible(t: &Theory) -> Result<(), RevisionError> {
    if t.has_non_defeasible_rules() {
        Err(RevisionError::NonDefeasibleRules)
    } else {
        Ok(())
    }
}

fn leaf(tags: &TagAssignment, l: &Literal, third: bool) -> InstanceClass {
    let omega_plus = tags.get(TagFamily::Omega, l) == TagValue::ProvenPlus;
    let sigma_plus = tags.get(TagFamily::SigmaSupport, l) == TagValue::ProvenPlus;
    match (omega_plus, sigma_plus, third) {
        (true, true, false) => InstanceClass::OmegaPlusSigmaPlusImpossible,
        (true, _, false) => InstanceClass::OmegaPlusSigmaMinus,
        (false, true, false) => InstanceClass::OmegaMinusSigmaPlus,
        (false, false, false) => InstanceClass::OmegaMinusSigmaMinus,
        (true, _, true) => InstanceClass::ThirdOmegaPlusSigmaPlus,
        (false, true, true) => InstanceClass::ThirdOmegaMinusSigmaPlus,
        (false, false, true) => InstanceClass::ThirdOmegaMinusSigmaMinus,
    }
}

/// Classifies a revision goal into its case-tree leaf or infeasibility code.
pub fn classify_instance(t: &Theory, goal: &RevisionGoal) -> Result<InstanceClass, RevisionError> {
    ensure_defeasible(t)?;
    let tags = compute_tags(t);
    Ok(classify_with(t, &tags, goal))
}

fn classify_with(t: &Theory, tags: &TagAssignment, goal: &RevisionGoal) -> InstanceClass {
    let p = &goal.target;
    let np = p.complement();
    let plus = |f: TagFamily, l: &Literal| tags.get(f, l) == TagValue::ProvenPlus;
    let minus = |f: TagFamily, l: &Literal| tags.get(f, l) == TagValue::ProvenMinus;
    match goal.kind {
        RevisionKind::Contract => {
            if !plus(TagFamily::Partial, p) {
                return InstanceClass::PreconditionNotMet;
            }
            if plus(TagFamily::Phi, p) {
                return InstanceClass::InfeasiblePhi;
            }
            if minus(TagFamily::SigmaChain, &np) {
                return InstanceClass::AttackPremises;
            }
            leaf(tags, &np, false)
        }
        RevisionKind::Revise => {
            if !plus(TagFamily::Partial, p) {
                return InstanceClass::PreconditionNotMet;
            }
            if plus(TagFamily::Phi, p) {
                return InstanceClass::InfeasiblePhi;
            }
            if minus(TagFamily::SigmaChain, &np) {
                return InstanceClass::InfeasibleNoChain;
            }
            leaf(tags, &np, false)
        }
        RevisionKind::Expand => {
            if !minus(TagFamily::Partial, p) || !minus(TagFamily::Partial, &np) {
                return InstanceClass::PreconditionNotMet;
            }
            if minus(TagFamily::SigmaChain, p) {
                return InstanceClass::InfeasibleNoChain;
            }
            if !has_contradiction_free_support(t, p) {
                return InstanceClass::InfeasibleUnreachable;
            }
            leaf(tags, p, true)
        }
    }
}

fn partial_plus(tags: &TagAssignment, l: &Literal) -> bool {
    tags.get(TagFamily::Partial, l) == TagValue::ProvenPlus
}

fn applicable(tags: &TagAssignment, rule: &crate::theory::Rule) -> bool {
    rule.antecedent().iter().all(|a| partial_plus(tags, a))
}

fn goal_holds(tags: &TagAssignment, goals: &[(ProofTag, Literal)]) -> bool {
    goals.iter().all(|(tag, lit)| tags.holds(*tag, lit))
}

type TupleSet = BTreeSet<(String, String)>;

fn diff(orig: &Theory, new_sup: &Superiority) -> (TupleSet, TupleSet) {
    let old = orig.superiority().tuples();
    let new = new_sup.tuples();
    let added = new.difference(old).cloned().collect();
    let removed = old.difference(new).cloned().collect();
    (added, removed)
}

/// Re-runs inference on the candidate relation; `None` when the relation is
/// cyclic or the goal does not verify.
fn verify(
    orig: &Theory,
    tuples: BTreeSet<(String, String)>,
    goals: &[(ProofTag, Literal)],
    instance: InstanceClass,
    strategy: Strategy,
) -> Option<RevisionOutcome> {
    let sup = Superiority::from_tuples(tuples).ok()?;
    let theory = orig.with_superiority(sup.clone()).ok()?;
    let tags = compute_tags(&theory);
    if !goal_holds(&tags, goals) {
        return None;
    }
    let (added, removed) = diff(orig, &sup);
    Some(RevisionOutcome {
        theory,
        new_superiority: sup,
        added,
        removed,
        instance: Some(instance),
        strategy,
        verified: true,
    })
}

// ---------------------------------------------------------------------------
// chain walking
// ---------------------------------------------------------------------------

fn postorder<'a>(tree: &'a SupportTree, out: &mut Vec<(&'a Literal, Option<&'a str>)>) {
    match tree {
        SupportTree::Fact(l) => out.push((l, None)),
        SupportTree::Derived {
            root,
            rule_label,
            children,
        } => {
            for c in children {
                postorder(c, out);
            }
            out.push((root, Some(rule_label)));
        }
    }
}

/// Edits that let `rule_label` stop losing: invert priorities of applicable
/// attackers that beat it, and add priorities over applicable attackers that
/// tie with it (unless some other applicable supporter already wins).
fn win_edits(
    t: &Theory,
    tags: &TagAssignment,
    lit: &Literal,
    rule_label: &str,
) -> (Vec<(String, String)>, Vec<(String, String)>) {
    #![allow(clippy::type_complexity)]
    // (added, removed)
    let mut added = Vec::new();
    let mut removed = Vec::new();
    let supporters = t.rules_for(lit, RuleRestriction::StrictAndDefeasible);
    for s in t.rules_for(&lit.complement(), RuleRestriction::All) {
        if !applicable(tags, s) {
            continue;
        }
        if t.superiority().contains(s.label(), rule_label) {
            removed.push((s.label().to_string(), rule_label.to_string()));
            added.push((rule_label.to_string(), s.label().to_string()));
        } else if !t.superiority().contains(rule_label, s.label())
            && !supporters
                .iter()
                .any(|u| applicable(tags, u) && t.superiority().contains(u.label(), s.label()))
        {
            added.push((rule_label.to_string(), s.label().to_string()));
        }
    }
    (added, removed)
}

fn apply_edits(
    t: &Theory,
    added: &[(String, String)],
    removed: &[(String, String)],
) -> Option<Theory> {
    let mut tuples = t.superiority().tuples().clone();
    for r in removed {
        tuples.remove(r);
    }
    for a in added {
        tuples.insert(a.clone());
    }
    let sup = Superiority::from_tuples(tuples).ok()?;
    t.with_superiority(sup).ok()
}

/// Walks a support tree bottom-up, strengthening each element until the
/// whole chain is defeasibly proved. When `prove_root` is false the root
/// only needs applicability: its losing last-step priorities are erased
/// instead of inverted (the contract case).
fn walk_tree(t0: &Theory, tree: &SupportTree, prove_root: bool) -> Option<Theory> {
    let mut nodes = Vec::new();
    postorder(tree, &mut nodes);
    let root_lit = tree.root().clone();
    let max_rounds = nodes.len() * (t0.rules().len() + 1) + 4;
    let mut cur = t0.clone();
    for _ in 0..max_rounds {
        let tags = compute_tags(&cur);
        let pending = nodes.iter().find(|(lit, label)| {
            if !prove_root && **lit == root_lit && label.is_some() {
                false // root handled after the walk
            } else {
                !partial_plus(&tags, lit)
            }
        });
        let (lit, label) = match pending {
            None => {
                if prove_root {
                    return Some(cur);
                }
                // root: erase the last-step priorities that defeat it
                let root_rule = tree.rule_label()?;
                let removed: Vec<(String, String)> = cur
                    .superiority()
                    .tuples()
                    .iter()
                    .filter(|(w, l)| {
                        l == root_rule
                            && cur
                                .rule(w)
                                .map(|r| *r.consequent() == root_lit.complement())
                                .unwrap_or(false)
                    })
                    .cloned()
                    .collect();
                return apply_edits(&cur, &[], &removed);
            }
            Some((lit, label)) => (*lit, *label),
        };
        let rule_label = label?; // a fact node can only be pending if tags are odd
        let (added, removed) = win_edits(&cur, &tags, lit, rule_label);
        if added.is_empty() && removed.is_empty() {
            return None; // stuck: the blocker is not priority-addressable
        }
        cur = apply_edits(&cur, &added, &removed)?;
    }
    None
}

/// Makes `goal` defeasibly provable by strengthening one of its support
/// trees; tries trees in label-lexicographic order.
fn strengthen_to_prove(t0: &Theory, goal: &Literal) -> Option<Theory> {
    for tree in support_trees(t0, goal, TREE_LIMIT) {
        if let Some(t1) = walk_tree(t0, &tree, true) {
            let tags = compute_tags(&t1);
            if partial_plus(&tags, goal) {
                return Some(t1);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// contract
// ---------------------------------------------------------------------------

/// Erases every last-step priority by which the target's supporters defeat
/// an ω-witnessing chain for the complement.
fn erase_last_step(t: &Theory, tags: &TagAssignment, p: &Literal) -> Option<Theory> {
    let np = p.complement();
    let omega_witnesses: Vec<&str> = t
        .rules_for(&np, RuleRestriction::All)
        .into_iter()
        .filter(|s| applicable(tags, s))
        .map(|s| s.label())
        .collect();
    let supporters: HashSet<&str> = t
        .rules_for(p, RuleRestriction::StrictAndDefeasible)
        .into_iter()
        .map(|r| r.label())
        .collect();
    let removed: Vec<(String, String)> = t
        .superiority()
        .tuples()
        .iter()
        .filter(|(w, l)| supporters.contains(w.as_str()) && omega_witnesses.contains(&l.as_str()))
        .cloned()
        .collect();
    if removed.is_empty() {
        return None;
    }
    apply_edits(t, &[], &removed)
}

/// Premise attack for the -Σ~p contract instance: refute an antecedent of
/// every applicable supporter of `p` by letting (or making) an attacker of
/// that antecedent fire with at least equal strength.
fn attack_premises(t0: &Theory, p: &Literal) -> Option<Theory> {
    let mut cur = t0.clone();
    let rounds = t0.rules().len() + 2;
    'rounds: for _ in 0..rounds {
        let tags = compute_tags(&cur);
        if tags.get(TagFamily::Partial, p) == TagValue::ProvenMinus {
            return Some(cur);
        }
        let target_rule = cur
            .rules_for(p, RuleRestriction::StrictAndDefeasible)
            .into_iter()
            .find(|r| applicable(&tags, r))?
            .label()
            .to_string();
        let target_rule = cur.rule(&target_rule).unwrap().clone();
        for x in target_rule.antecedent() {
            // applicable attackers first: they only need their beats erased
            let mut attackers: Vec<&crate::theory::Rule> =
                cur.rules_for(&x.complement(), RuleRestriction::All);
            attackers.sort_by_key(|s| (!applicable(&tags, s), s.label().to_string()));
            for s in attackers {
                let scratch = if applicable(&tags, s) {
                    Some(cur.clone())
                } else {
                    // enable the attacker by proving its antecedents
                    let mut sc = cur.clone();
                    let mut ok = true;
                    for y in s.antecedent() {
                        match strengthen_to_prove(&sc, y) {
                            Some(next) => sc = next,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        Some(sc)
                    } else {
                        None
                    }
                };
                let Some(sc) = scratch else { continue };
                // erase priorities of x's supporters over the attacker
                let removed: Vec<(String, String)> = sc
                    .superiority()
                    .tuples()
                    .iter()
                    .filter(|(w, l)| {
                        l == s.label() && sc.rule(w).map(|r| r.consequent() == x).unwrap_or(false)
                    })
                    .cloned()
                    .collect();
                if let Some(sc) = apply_edits(&sc, &[], &removed) {
                    let new_tags = compute_tags(&sc);
                    if new_tags.get(TagFamily::Partial, x) == TagValue::ProvenMinus {
                        cur = sc;
                        continue 'rounds;
                    }
                }
            }
        }
        return None;
    }
    None
}

/// Contract: from +∂p to -∂p by editing only the superiority relation.
pub fn contract(
    t: &Theory,
    p: &Literal,
    strategy: Strategy,
    budget: u64,
) -> Result<RevisionResult, RevisionError> {
    ensure_defeasible(t)?;
    let tags = compute_tags(t);
    let goal = RevisionGoal {
        kind: RevisionKind::Contract,
        target: p.clone(),
    };
    let instance = classify_with(t, &tags, &goal);
    if !instance.is_feasible() {
        return Ok(RevisionResult::Infeasible {
            instance: Some(instance),
            candidates_examined: 0,
        });
    }
    let goals = [(ProofTag::minus(TagFamily::Partial), p.clone())];
    if strategy != Strategy::Search {
        let np = p.complement();
        let candidate = match instance {
            InstanceClass::AttackPremises => attack_premises(t, p),
            InstanceClass::OmegaPlusSigmaMinus | InstanceClass::OmegaPlusSigmaPlusImpossible => {
                erase_last_step(t, &tags, p)
            }
            _ => support_trees(t, &np, TREE_LIMIT)
                .iter()
                .find_map(|tree| walk_tree(t, tree, false)),
        };
        if let Some(theory) = candidate {
            if let Some(outcome) = verify(
                t,
                theory.superiority().tuples().clone(),
                &goals,
                instance,
                Strategy::Targeted,
            ) {
                return Ok(RevisionResult::Success(outcome));
            }
        }
    }
    search_with_instance(t, &goals, budget, Metric::TupleCount, Some(instance))
}

// ---------------------------------------------------------------------------
// revise
// ---------------------------------------------------------------------------

fn single_winner(t: &Theory, tags: &TagAssignment, p: &Literal) -> Vec<Theory> {
    let np = p.complement();
    let winners: Vec<&crate::theory::Rule> = t
        .rules_for(&np, RuleRestriction::StrictAndDefeasible)
        .into_iter()
        .filter(|s| applicable(tags, s))
        .collect();
    let opposers: Vec<&crate::theory::Rule> = t
        .rules_for(p, RuleRestriction::All)
        .into_iter()
        .filter(|u| applicable(tags, u))
        .collect();
    let mut out = Vec::new();
    for w in &winners {
        let mut added = Vec::new();
        let mut removed = Vec::new();
        for u in &opposers {
            if t.superiority().contains(u.label(), w.label()) {
                removed.push((u.label().to_string(), w.label().to_string()));
                added.push((w.label().to_string(), u.label().to_string()));
            } else if !t.superiority().contains(w.label(), u.label()) {
                added.push((w.label().to_string(), u.label().to_string()));
            }
        }
        if let Some(theory) = apply_edits(t, &added, &removed) {
            out.push(theory);
        }
    }
    out
}

/// Team defeater: invert the last-step priorities for the chains whose
/// premises hold, then distribute priorities over any supporter of `p`
/// still standing.
fn team_defeater(t: &Theory, tags: &TagAssignment, p: &Literal) -> Option<Theory> {
    let np = p.complement();
    let team: Vec<String> = t
        .rules_for(&np, RuleRestriction::StrictAndDefeasible)
        .into_iter()
        .filter(|s| applicable(tags, s))
        .map(|s| s.label().to_string())
        .collect();
    let opposers: Vec<String> = t
        .rules_for(p, RuleRestriction::All)
        .into_iter()
        .filter(|u| applicable(tags, u))
        .map(|u| u.label().to_string())
        .collect();
    if team.is_empty() {
        return None;
    }
    let last_step_winners: Vec<String> = opposers
        .iter()
        .filter(|u| team.iter().any(|n| t.superiority().contains(u, n)))
        .cloned()
        .collect();
    // with enough last-step winners, invert every team member's defeats;
    // otherwise invert for a team subset of that size and continue from it
    let chosen: Vec<String> = if last_step_winners.len() >= team.len() {
        team.clone()
    } else {
        team.iter()
            .take(last_step_winners.len().max(1))
            .cloned()
            .collect()
    };
    let mut added = Vec::new();
    let mut removed = Vec::new();
    for n in &chosen {
        for u in &opposers {
            if t.superiority().contains(u, n) {
                removed.push((u.clone(), n.clone()));
                added.push((n.clone(), u.clone()));
            }
        }
    }
    // opposers not yet beaten get distributed round-robin over the team
    let beaten: HashSet<String> = added.iter().map(|(_, l)| l.clone()).collect();
    let mut i = 0usize;
    for u in &opposers {
        if beaten.contains(u) {
            continue;
        }
        if chosen.iter().any(|n| t.superiority().contains(n, u)) {
            continue;
        }
        let n = &chosen[i % chosen.len()];
        added.push((n.clone(), u.clone()));
        i += 1;
    }
    if added.is_empty() && removed.is_empty() {
        return None;
    }
    apply_edits(t, &added, &removed)
}

/// Revise: from +∂p to +∂~p by editing only the superiority relation.
pub fn revise(
    t: &Theory,
    p: &Literal,
    strategy: Strategy,
    budget: u64,
) -> Result<RevisionResult, RevisionError> {
    ensure_defeasible(t)?;
    let tags = compute_tags(t);
    let goal = RevisionGoal {
        kind: RevisionKind::Revise,
        target: p.clone(),
    };
    let instance = classify_with(t, &tags, &goal);
    if !instance.is_feasible() {
        return Ok(RevisionResult::Infeasible {
            instance: Some(instance),
            candidates_examined: 0,
        });
    }
    let np = p.complement();
    let goals = [(ProofTag::plus(TagFamily::Partial), np.clone())];
    if strategy != Strategy::Search {
        let (candidates, used) = match instance {
            InstanceClass::OmegaPlusSigmaMinus | InstanceClass::OmegaPlusSigmaPlusImpossible => {
                match strategy {
                    Strategy::TeamDefeater => (
                        team_defeater(t, &tags, p).into_iter().collect::<Vec<_>>(),
                        Strategy::TeamDefeater,
                    ),
                    _ => (single_winner(t, &tags, p), Strategy::SingleWinner),
                }
            }
            _ => (
                support_trees(t, &np, TREE_LIMIT)
                    .iter()
                    .filter_map(|tree| walk_tree(t, tree, true))
                    .collect(),
                Strategy::Targeted,
            ),
        };
        let mut verified: Vec<RevisionOutcome> = candidates
            .into_iter()
            .filter_map(|theory| {
                verify(
                    t,
                    theory.superiority().tuples().clone(),
                    &goals,
                    instance,
                    used,
                )
            })
            .collect();
        verified.sort_by(|a, b| a.new_superiority.tuples().cmp(b.new_superiority.tuples()));
        if let Some(outcome) = verified.into_iter().next() {
            return Ok(RevisionResult::Success(outcome));
        }
    }
    search_with_instance(t, &goals, budget, Metric::TupleCount, Some(instance))
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

/// Expand: from -∂p (with -∂~p) to +∂p by editing only the superiority
/// relation.
pub fn expand(
    t: &Theory,
    p: &Literal,
    strategy: Strategy,
    budget: u64,
) -> Result<RevisionResult, RevisionError> {
    ensure_defeasible(t)?;
    let tags = compute_tags(t);
    let goal = RevisionGoal {
        kind: RevisionKind::Expand,
        target: p.clone(),
    };
    let instance = classify_with(t, &tags, &goal);
    if !instance.is_feasible() {
        return Ok(RevisionResult::Infeasible {
            instance: Some(instance),
            candidates_examined: 0,
        });
    }
    let goals = [(ProofTag::plus(TagFamily::Partial), p.clone())];
    if strategy != Strategy::Search {
        let candidates: Vec<Theory> = match instance {
            InstanceClass::ThirdOmegaPlusSigmaPlus => {
                // pick an already-firing chain and add one priority per
                // ω-witnessing chain for the complement
                let np = p.complement();
                let witnesses: Vec<&crate::theory::Rule> = t
                    .rules_for(p, RuleRestriction::StrictAndDefeasible)
                    .into_iter()
                    .filter(|r| applicable(&tags, r))
                    .collect();
                let opposing: Vec<&crate::theory::Rule> = t
                    .rules_for(&np, RuleRestriction::All)
                    .into_iter()
                    .filter(|s| applicable(&tags, s))
                    .collect();
                witnesses
                    .iter()
                    .filter_map(|w| {
                        let mut added = Vec::new();
                        let mut removed = Vec::new();
                        for n in &opposing {
                            if t.superiority().contains(n.label(), w.label()) {
                                removed.push((n.label().to_string(), w.label().to_string()));
                                added.push((w.label().to_string(), n.label().to_string()));
                            } else if !t.superiority().contains(w.label(), n.label()) {
                                added.push((w.label().to_string(), n.label().to_string()));
                            }
                        }
                        apply_edits(t, &added, &removed)
                    })
                    .collect()
            }
            _ => support_trees(t, p, TREE_LIMIT)
                .iter()
                .filter_map(|tree| walk_tree(t, tree, true))
                .collect(),
        };
        let mut verified: Vec<RevisionOutcome> = candidates
            .into_iter()
            .filter_map(|theory| {
                verify(
                    t,
                    theory.superiority().tuples().clone(),
                    &goals,
                    instance,
                    Strategy::Targeted,
                )
            })
            .collect();
        verified.sort_by(|a, b| a.new_superiority.tuples().cmp(b.new_superiority.tuples()));
        if let Some(outcome) = verified.into_iter().next() {
            return Ok(RevisionResult::Success(outcome));
        }
    }
    search_with_instance(t, &goals, budget, Metric::TupleCount, Some(instance))
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

/// Exhaustively scans the conflicting-pair assignments for a relation whose
/// theory proves every goal tag; returns the minimal verified one (fewest
/// tuples in symmetric difference with the original, ties broken by
/// lexicographically least relation).
pub fn search_revision(
    t: &Theory,
    goal: (ProofTag, Literal),
    budget: u64,
) -> Result<RevisionResult, RevisionError> {
    let goals = [goal];
    let instance = infer_instance(t, &goals);
    search_with_instance(t, &goals, budget, Metric::TupleCount, instance)
}

/// Multi-goal search with a selectable minimality metric.
pub fn search_revision_multi(
    t: &Theory,
    goals: &[(ProofTag, Literal)],
    budget: u64,
    metric: Metric,
) -> Result<RevisionResult, RevisionError> {
    let instance = infer_instance(t, goals);
    search_with_instance(t, goals, budget, metric, instance)
}

fn infer_instance(t: &Theory, goals: &[(ProofTag, Literal)]) -> Option<InstanceClass> {
    if t.has_non_defeasible_rules() {
        return None;
    }
    let (tag, lit) = goals.first()?;
    if tag.family != TagFamily::Partial {
        return None;
    }
    let tags = compute_tags(t);
    let kind = match tag.sign {
        Sign::Minus => RevisionKind::Contract,
        Sign::Plus => {
            if partial_plus(&tags, &lit.complement()) {
                // proving p from +∂~p is the revise case on ~p
                return Some(classify_with(
                    t,
                    &tags,
                    &RevisionGoal {
                        kind: RevisionKind::Revise,
                        target: lit.complement(),
                    },
                ));
            } else {
                RevisionKind::Expand
            }
        }
    };
    Some(classify_with(
        t,
        &tags,
        &RevisionGoal {
            kind,
            target: lit.clone(),
        },
    ))
}

struct SearchSetup {
    pairs: Vec<(String, String)>,
    inert: BTreeSet<(String, String)>,
    orig_pair_tuples: BTreeSet<(String, String)>,
}

fn search_setup(t: &Theory, budget: u64) -> Result<SearchSetup, (u64, u64)> {
    let pairs: Vec<(String, String)> = conflicting_pairs(t).into_iter().collect();
    let required = pow3(pairs.len());
    if required > budget {
        return Err((required, budget));
    }
    let pair_set: HashSet<(String, String)> = pairs
        .iter()
        .flat_map(|(a, b)| [(a.clone(), b.clone()), (b.clone(), a.clone())])
        .collect();
    let mut inert = BTreeSet::new();
    let mut orig_pair_tuples = BTreeSet::new();
    for tup in t.superiority().tuples() {
        if pair_set.contains(tup) {
            orig_pair_tuples.insert(tup.clone());
        } else {
            inert.insert(tup.clone());
        }
    }
    Ok(SearchSetup {
        pairs,
        inert,
        orig_pair_tuples,
    })
}

fn search_with_instance(
    t: &Theory,
    goals: &[(ProofTag, Literal)],
    budget: u64,
    metric: Metric,
    instance: Option<InstanceClass>,
) -> Result<RevisionResult, RevisionError> {
    let outcomes = search_outcomes(t, goals, budget, metric, instance, false)?;
    match outcomes {
        SearchOutcomes::Exhausted { required, budget } => {
            Ok(RevisionResult::ExhaustedBudget { required, budget })
        }
        SearchOutcomes::Found(mut v) => Ok(RevisionResult::Success(v.swap_remove(0))),
        SearchOutcomes::None { examined } => Ok(RevisionResult::Infeasible {
            instance,
            candidates_examined: examined,
        }),
    }
}

#[derive(Clone, Debug)]
pub enum MinimalOutcomes {
    Found(Vec<RevisionOutcome>),
    Infeasible { candidates_examined: u64 },
    ExhaustedBudget { required: u64, budget: u64 },
}

/// Every minimal verified outcome (same minimal diff under `metric`),
/// lexicographically ordered by relation. Used by the postulate audit to
/// quantify over operator nondeterminism.
pub fn all_minimal_outcomes(
    t: &Theory,
    goals: &[(ProofTag, Literal)],
    budget: u64,
    metric: Metric,
) -> Result<MinimalOutcomes, RevisionError> {
    let instance = infer_instance(t, goals);
    Ok(
        match search_outcomes(t, goals, budget, metric, instance, true)? {
            SearchOutcomes::Found(v) => MinimalOutcomes::Found(v),
            SearchOutcomes::None { examined } => MinimalOutcomes::Infeasible {
                candidates_examined: examined,
            },
            SearchOutcomes::Exhausted { required, budget } => {
                MinimalOutcomes::ExhaustedBudget { required, budget }
            }
        },
    )
}

enum SearchOutcomes {
    Found(Vec<RevisionOutcome>),
    None { examined: u64 },
    Exhausted { required: u64, budget: u64 },
}

fn search_outcomes(
    t: &Theory,
    goals: &[(ProofTag, Literal)],
    budget: u64,
    metric: Metric,
    instance: Option<InstanceClass>,
    collect_all: bool,
) -> Result<SearchOutcomes, RevisionError> {
    let setup = match search_setup(t, budget) {
        Ok(s) => s,
        Err((required, budget)) => return Ok(SearchOutcomes::Exhausted { required, budget }),
    };
    let compiled = Compiled::new(t);
    let need_full = goals
        .iter()
        .any(|(g, _)| !matches!(g.family, TagFamily::Partial | TagFamily::Delta));
    let goal_ids: Vec<(ProofTag, Option<usize>, Literal)> = goals
        .iter()
        .map(|(g, l)| (*g, compiled.lit_ids.get(l).copied(), l.clone()))
        .collect();
    let orig_partial = if metric == Metric::ConclusionCount {
        Some(compiled.solve_partial(&compiled.beats(t.superiority())))
    } else {
        None
    };

    let mut examined = 0u64;
    let mut best_cost: Option<usize> = None;
    // relations tied at the current best cost, in enumeration order
    let mut winners: Vec<BTreeSet<(String, String)>> = Vec::new();
    for state in PairAssignments::new(setup.pairs.len()) {
        let mut tuples = tuples_of_assignment(&setup.pairs, &state);
        let assignment_tuples = tuples.clone();
        tuples.extend(setup.inert.iter().cloned());
        let sup = match Superiority::from_tuples(tuples.iter().cloned()) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if crate::theory::check_acyclic(&sup, &t.rule_labels()) != Ok(true) {
            continue;
        }
        examined += 1;
        let beats = compiled.beats(&sup);
        let ok = if need_full {
            let status = compiled.solve_all(&beats);
            let tags = compiled.assignment(status);
            goals.iter().all(|(g, l)| tags.holds(*g, l))
        } else {
            let partial = compiled.solve_partial(&beats);
            goal_ids.iter().all(|(g, id, _)| {
                let v = match id {
                    Some(i) => partial[*i],
                    None => Tv::Minus,
                };
                match (g.family, g.sign) {
                    (TagFamily::Partial, Sign::Plus) => v == Tv::Plus,
                    (TagFamily::Partial, Sign::Minus) => v == Tv::Minus,
                    (TagFamily::Delta, Sign::Plus) => {
                        id.map(|i| compiled.delta[i] == Tv::Plus).unwrap_or(false)
                    }
                    (TagFamily::Delta, Sign::Minus) => {
                        id.map(|i| compiled.delta[i] == Tv::Minus).unwrap_or(true)
                    }
                    _ => unreachable!("need_full covers other families"),
                }
            })
        };
        if !ok {
            continue;
        }
        let cost = match metric {
            Metric::TupleCount => assignment_tuples
                .symmetric_difference(&setup.orig_pair_tuples)
                .count(),
            Metric::ConclusionCount => {
                let orig = orig_partial.as_ref().unwrap();
                let new = compiled.solve_partial(&beats);
                orig.iter().zip(new.iter()).filter(|(a, b)| a != b).count()
            }
        };
        match best_cost {
            Some(c) if cost > c => {}
            Some(c) if cost == c => {
                if collect_all {
                    winners.push(tuples);
                }
            }
            _ => {
                best_cost = Some(cost);
                winners.clear();
                winners.push(tuples);
            }
        }
    }
    if best_cost.is_none() {
        return Ok(SearchOutcomes::None { examined });
    }
    let make = |tuples: BTreeSet<(String, String)>| -> RevisionOutcome {
        let sup = Superiority::from_tuples(tuples).expect("validated during scan");
        let theory = t.with_superiority(sup.clone()).expect("acyclic by scan");
        let (added, removed) = diff(t, &sup);
        RevisionOutcome {
            theory,
            new_superiority: sup,
            added,
            removed,
            instance,
            strategy: Strategy::Search,
            verified: true,
        }
    };
    winners.sort();
    winners.dedup();
    Ok(SearchOutcomes::Found(
        winners.into_iter().map(make).collect(),
    ))
}
