//! AGM postulate audit over the preference-revision operators.
//!
//! Belief contraction maps to the first canonical case, revision (by p,
//! from +∂~p) to the second, and expansion to the third. Each rewritten
//! postulate is checked per instance by actually running the operators and
//! comparing the belief sets of both sides. Because a goal may admit several
//! minimal relations, checks can either use the operators' deterministic
//! tie-break or quantify over every minimal outcome; a postulate stated for
//! "the" revised theory is violated when some choice of minimal outcomes
//! breaks it.

use std::collections::BTreeSet;
use std::fmt;

use crate::engine::{belief_set, compute_tags};
use crate::revision::{
    all_minimal_outcomes, contract, expand, revise, search_revision_multi, Metric, MinimalOutcomes,
    RevisionError, RevisionResult, Strategy,
};
use crate::tags::{BeliefSet, ProofTag, TagFamily};
use crate::theory::{check_acyclic, Literal, Theory};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PostulateFamily {
    Contraction,
    Revision,
    Expansion,
    Identity,
}

/// One postulate of the fixed catalogue: K-1..K-8 and K-4' for contraction,
/// K*1..K*8 for revision, K+1..K+6 for expansion, LI and HI.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PostulateId {
    pub family: PostulateFamily,
    pub index: String,
}

impl PostulateId {
    pub fn parse(s: &str) -> Option<PostulateId> {
        let family = match s {
            "LI" | "HI" => PostulateFamily::Identity,
            _ if s.starts_with("K-") => PostulateFamily::Contraction,
            _ if s.starts_with("K*") => PostulateFamily::Revision,
            _ if s.starts_with("K+") => PostulateFamily::Expansion,
            _ => return None,
        };
        let valid = matches!(
            s,
            "K-1"
                | "K-2"
                | "K-3"
                | "K-4"
                | "K-4'"
                | "K-5"
                | "K-6"
                | "K-7"
                | "K-8"
                | "K*1"
                | "K*2"
                | "K*3"
                | "K*4"
                | "K*5"
                | "K*6"
                | "K*7"
                | "K*8"
                | "K+1"
                | "K+2"
                | "K+3"
                | "K+4"
                | "K+5"
                | "K+6"
                | "LI"
                | "HI"
        );
        if !valid {
            return None;
        }
        Some(PostulateId {
            family,
            index: s.to_string(),
        })
    }

    pub fn catalogue() -> Vec<PostulateId> {
        [
            "K-1", "K-2", "K-3", "K-4", "K-4'", "K-5", "K-6", "K-7", "K-8", "K*1", "K*2", "K*3",
            "K*4", "K*5", "K*6", "K*7", "K*8", "K+1", "K+2", "K+3", "K+4", "K+5", "K+6", "LI",
            "HI",
        ]
        .iter()
        .map(|s| PostulateId::parse(s).unwrap())
        .collect()
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerdictStatus {
    Holds,
    Violated,
    NotApplicable,
    InfeasibleOperation,
}

impl VerdictStatus {
    pub fn ascii_name(self) -> &'static str {
        match self {
            VerdictStatus::Holds => "holds",
            VerdictStatus::Violated => "violated",
            VerdictStatus::NotApplicable => "n/a",
            VerdictStatus::InfeasibleOperation => "infeasible",
        }
    }
}

/// A violation witness carries every theory and belief set needed to
/// recompute both sides of the failed relation.
#[derive(Clone, Debug)]
pub struct Witness {
    pub note: String,
    pub entries: Vec<WitnessEntry>,
}

#[derive(Clone, Debug)]
pub struct WitnessEntry {
    pub name: String,
    pub theory: Theory,
    pub belief: BeliefSet,
}

impl Witness {
    pub fn render(&self) -> String {
        let mut out = format!("# {}\n", self.note);
        for e in &self.entries {
            out.push_str(&format!("## {}\n", e.name));
            out.push_str(&e.theory.serialize());
            let fmt_set = |s: &BTreeSet<Literal>| {
                s.iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            out.push_str(&format!("believed: {}\n", fmt_set(&e.belief.believed)));
            out.push_str(&format!(
                "disbelieved: {}\n",
                fmt_set(&e.belief.disbelieved)
            ));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn holds() -> Verdict {
        Verdict {
            status: VerdictStatus::Holds,
            witness: None,
        }
    }

    fn not_applicable() -> Verdict {
        Verdict {
            status: VerdictStatus::NotApplicable,
            witness: None,
        }
    }

    fn infeasible() -> Verdict {
        Verdict {
            status: VerdictStatus::InfeasibleOperation,
            witness: None,
        }
    }

    fn violated(note: String, entries: Vec<(&str, &Theory)>) -> Verdict {
        Verdict {
            status: VerdictStatus::Violated,
            witness: Some(Witness {
                note,
                entries: entries
                    .into_iter()
                    .map(|(name, t)| WitnessEntry {
                        name: name.to_string(),
                        theory: t.clone(),
                        belief: belief_set(t),
                    })
                    .collect(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AuditOptions {
    /// Quantify over every minimal outcome instead of the operators'
    /// deterministic choice.
    pub all_minimal: bool,
    pub budget: u64,
}

impl Default for AuditOptions {
    fn default() -> AuditOptions {
        AuditOptions {
            all_minimal: false,
            budget: crate::DEFAULT_BUDGET,
        }
    }
}

/// Result of one AGM-level operation.
#[derive(Clone, Debug)]
pub enum AgmOp {
    Done { theory: Theory, belief: BeliefSet },
    InfeasibleOperation,
    ExhaustedBudget,
}

impl AgmOp {
    pub fn theory(&self) -> Option<&Theory> {
        match self {
            AgmOp::Done { theory, .. } => Some(theory),
            _ => None,
        }
    }
}

fn partial_holds(t: &Theory, sign: crate::tags::Sign, p: &Literal) -> bool {
    compute_tags(t).holds(
        ProofTag {
            family: TagFamily::Partial,
            sign,
        },
        p,
    )
}

fn from_result(r: RevisionResult) -> AgmOp {
    match r {
        RevisionResult::Success(o) => AgmOp::Done {
            belief: belief_set(&o.theory),
            theory: o.theory,
        },
        RevisionResult::Infeasible { .. } => AgmOp::InfeasibleOperation,
        RevisionResult::ExhaustedBudget { .. } => AgmOp::ExhaustedBudget,
    }
}

/// Belief contraction D-p: the first canonical case. Contracting an already
/// disbelieved literal is a no-op.
pub fn agm_contract(t: &Theory, p: &Literal, budget: u64) -> Result<AgmOp, RevisionError> {
    if partial_holds(t, crate::tags::Sign::Minus, p) {
        return Ok(AgmOp::Done {
            theory: t.clone(),
            belief: belief_set(t),
        });
    }
    Ok(from_result(contract(t, p, Strategy::Targeted, budget)?))
}

/// Belief revision D*p: make p believed starting from +∂~p (the second
/// canonical case with the roles of p and ~p swapped). Revising towards an
/// already believed literal is a no-op.
pub fn agm_revise(t: &Theory, p: &Literal, budget: u64) -> Result<AgmOp, RevisionError> {
    if partial_holds(t, crate::tags::Sign::Plus, p) {
        return Ok(AgmOp::Done {
            theory: t.clone(),
            belief: belief_set(t),
        });
    }
    Ok(from_result(revise(
        t,
        &p.complement(),
        Strategy::SingleWinner,
        budget,
    )?))
}

/// Belief expansion D+p: the third canonical case. Expanding by an already
/// believed literal is a no-op.
pub fn agm_expand(t: &Theory, p: &Literal, budget: u64) -> Result<AgmOp, RevisionError> {
    if partial_holds(t, crate::tags::Sign::Plus, p) {
        return Ok(AgmOp::Done {
            theory: t.clone(),
            belief: belief_set(t),
        });
    }
    Ok(from_result(expand(t, p, Strategy::Targeted, budget)?))
}

fn set_goals(ps: &[Literal], sign: crate::tags::Sign) -> Vec<(ProofTag, Literal)> {
    ps.iter()
        .map(|p| {
            (
                ProofTag {
                    family: TagFamily::Partial,
                    sign,
                },
                p.clone(),
            )
        })
        .collect()
}

/// Simultaneous contraction D-C, realised as minimal search with the
/// conjunction of -∂ goals.
pub fn agm_contract_set(t: &Theory, ps: &[Literal], budget: u64) -> Result<AgmOp, RevisionError> {
    let goals = set_goals(ps, crate::tags::Sign::Minus);
    Ok(from_result(search_revision_multi(
        t,
        &goals,
        budget,
        Metric::TupleCount,
    )?))
}

/// Simultaneous revision D*C with the conjunction of +∂ goals.
pub fn agm_revise_set(t: &Theory, ps: &[Literal], budget: u64) -> Result<AgmOp, RevisionError> {
    let goals = set_goals(ps, crate::tags::Sign::Plus);
    Ok(from_result(search_revision_multi(
        t,
        &goals,
        budget,
        Metric::TupleCount,
    )?))
}

/// Simultaneous expansion D+C; same goal conjunction as set revision, the
/// two differ only in the preconditions of the single-literal operators.
pub fn agm_expand_set(t: &Theory, ps: &[Literal], budget: u64) -> Result<AgmOp, RevisionError> {
    agm_revise_set(t, ps, budget)
}

/// The outcome theories an operation may produce: one under the
/// deterministic tie-break, or every minimal one under `all_minimal`.
enum Outcomes {
    Ok(Vec<Theory>),
    Infeasible,
    Exhausted,
}

fn op_outcomes(
    t: &Theory,
    goals: &[(ProofTag, Literal)],
    deterministic: Option<AgmOp>,
    opts: &AuditOptions,
) -> Result<Outcomes, RevisionError> {
    if opts.all_minimal {
        return Ok(
            match all_minimal_outcomes(t, goals, opts.budget, Metric::TupleCount)? {
                MinimalOutcomes::Found(v) => {
                    Outcomes::Ok(v.into_iter().map(|o| o.theory).collect())
                }
                MinimalOutcomes::Infeasible { .. } => Outcomes::Infeasible,
                MinimalOutcomes::ExhaustedBudget { .. } => Outcomes::Exhausted,
            },
        );
    }
    Ok(match deterministic {
        Some(AgmOp::Done { theory, .. }) => Outcomes::Ok(vec![theory]),
        Some(AgmOp::InfeasibleOperation) | None => Outcomes::Infeasible,
        Some(AgmOp::ExhaustedBudget) => Outcomes::Exhausted,
    })
}

fn contraction_outcomes(
    t: &Theory,
    p: &Literal,
    opts: &AuditOptions,
) -> Result<Outcomes, RevisionError> {
    let goals = set_goals(std::slice::from_ref(p), crate::tags::Sign::Minus);
    let det = agm_contract(t, p, opts.budget)?;
    op_outcomes(t, &goals, Some(det), opts)
}

fn revision_outcomes(
    t: &Theory,
    p: &Literal,
    opts: &AuditOptions,
) -> Result<Outcomes, RevisionError> {
    let goals = set_goals(std::slice::from_ref(p), crate::tags::Sign::Plus);
    let det = agm_revise(t, p, opts.budget)?;
    op_outcomes(t, &goals, Some(det), opts)
}

fn expansion_outcomes(
    t: &Theory,
    p: &Literal,
    opts: &AuditOptions,
) -> Result<Outcomes, RevisionError> {
    let goals = set_goals(std::slice::from_ref(p), crate::tags::Sign::Plus);
    let det = agm_expand(t, p, opts.budget)?;
    op_outcomes(t, &goals, Some(det), opts)
}

fn set_contraction_outcomes(
    t: &Theory,
    ps: &[Literal],
    opts: &AuditOptions,
) -> Result<Outcomes, RevisionError> {
    let goals = set_goals(ps, crate::tags::Sign::Minus);
    let det = agm_contract_set(t, ps, opts.budget)?;
    op_outcomes(t, &goals, Some(det), opts)
}

fn set_revision_outcomes(
    t: &Theory,
    ps: &[Literal],
    opts: &AuditOptions,
) -> Result<Outcomes, RevisionError> {
    let goals = set_goals(ps, crate::tags::Sign::Plus);
    let det = agm_revise_set(t, ps, opts.budget)?;
    op_outcomes(t, &goals, Some(det), opts)
}

fn subset(a: &BTreeSet<Literal>, b: &BTreeSet<Literal>) -> bool {
    a.is_subset(b)
}

macro_rules! unwrap_outcomes {
    ($e:expr) => {
        match $e {
            Outcomes::Ok(v) => v,
            Outcomes::Infeasible => return Ok(Verdict::infeasible()),
            Outcomes::Exhausted => return Ok(Verdict::infeasible()),
        }
    };
}

/// Checks one postulate on a concrete instance.
///
/// `q` is the second literal for the pair postulates (K-6/7/8, K*6/7/8).
/// K+5 relates two theories and has its own entry point
/// ([`check_expansion_monotony`]); here it reports not-applicable.
pub fn check_postulate(
    id: &PostulateId,
    t: &Theory,
    p: &Literal,
    q: Option<&Literal>,
    opts: &AuditOptions,
) -> Result<Verdict, RevisionError> {
    let bs_t = belief_set(t);
    match id.index.as_str() {
        "K-1" => {
            let outs = unwrap_outcomes!(contraction_outcomes(t, p, opts)?);
            for d in &outs {
                if check_acyclic(d.superiority(), &d.rule_labels()) != Ok(true)
                    || d.facts() != t.facts()
                    || d.rules() != t.rules()
                {
                    return Ok(Verdict::violated(
                        "contraction outcome is not a theory over the same facts and rules"
                            .to_string(),
                        vec![("D", t), ("D-p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K-2" => {
            let outs = unwrap_outcomes!(contraction_outcomes(t, p, opts)?);
            for d in &outs {
                let bs_d = belief_set(d);
                if !subset(&bs_d.believed, &bs_t.believed)
                    || !subset(&bs_t.disbelieved, &bs_d.disbelieved)
                {
                    return Ok(Verdict::violated(
                        format!("contraction by {} grew the believed set", p),
                        vec![("D", t), ("D-p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K-3" => {
            if !bs_t.disbelieved.contains(p) {
                return Ok(Verdict::holds()); // premise false
            }
            let outs = unwrap_outcomes!(contraction_outcomes(t, p, opts)?);
            for d in &outs {
                let bs_d = belief_set(d);
                if bs_d.believed != bs_t.believed || bs_d.disbelieved != bs_t.disbelieved {
                    return Ok(Verdict::violated(
                        format!(
                            "contracting already-disbelieved {} changed the belief set",
                            p
                        ),
                        vec![("D", t), ("D-p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K-4" | "K-4'" => {
            let tag = if id.index == "K-4" {
                TagFamily::Delta
            } else {
                TagFamily::Phi
            };
            let outs = unwrap_outcomes!(contraction_outcomes(t, p, opts)?);
            for d in &outs {
                let still_believed = belief_set(d).believed.contains(p);
                if still_believed && !compute_tags(t).holds(ProofTag::plus(tag), p) {
                    return Ok(Verdict::violated(
                        format!("{} still believed after contraction", p),
                        vec![("D", t), ("D-p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K-5" => {
            if !bs_t.believed.contains(p) {
                return Ok(Verdict::holds());
            }
            let outs = unwrap_outcomes!(contraction_outcomes(t, p, opts)?);
            for d in &outs {
                let exps = match expansion_outcomes(d, p, opts)? {
                    Outcomes::Ok(v) => v,
                    _ => continue, // this backward step is not available
                };
                for x in &exps {
                    let bs_x = belief_set(x);
                    if !subset(&bs_t.believed, &bs_x.believed)
                        || !subset(&bs_t.disbelieved, &bs_x.disbelieved)
                    {
                        return Ok(Verdict::violated(
                            "contract-then-expand lost part of the belief set".to_string(),
                            vec![("D", t), ("D-p", d), ("(D-p)+p", x)],
                        ));
                    }
                }
            }
            Ok(Verdict::holds())
        }
        "K-6" | "K*6" => {
            // literals are equivalent only when identical; with q = p both
            // sides are independent runs of the same deterministic operator
            match q {
                Some(q) if q != p => Ok(Verdict::holds()), // premise false
                _ => {
                    let run = || -> Result<Outcomes, RevisionError> {
                        if id.index == "K-6" {
                            contraction_outcomes(t, p, opts)
                        } else {
                            revision_outcomes(t, p, opts)
                        }
                    };
                    let a = unwrap_outcomes!(run()?);
                    let b = unwrap_outcomes!(run()?);
                    for (x, y) in a.iter().zip(b.iter()) {
                        if belief_set(x) != belief_set(y) {
                            return Ok(Verdict::violated(
                                "same-literal runs diverged".to_string(),
                                vec![("D", t), ("first", x), ("second", y)],
                            ));
                        }
                    }
                    Ok(Verdict::holds())
                }
            }
        }
        "K-7" => {
            let q = match q {
                Some(q) => q,
                None => return Ok(Verdict::not_applicable()),
            };
            let dp = unwrap_outcomes!(contraction_outcomes(t, p, opts)?);
            let dq = unwrap_outcomes!(contraction_outcomes(t, q, opts)?);
            let dpq = unwrap_outcomes!(set_contraction_outcomes(t, &[p.clone(), q.clone()], opts)?);
            for a in &dp {
                for b in &dq {
                    for c in &dpq {
                        let (ba, bb, bc) = (belief_set(a), belief_set(b), belief_set(c));
                        let plus_cap: BTreeSet<Literal> =
                            ba.believed.intersection(&bb.believed).cloned().collect();
                        let minus_cap: BTreeSet<Literal> = ba
                            .disbelieved
                            .intersection(&bb.disbelieved)
                            .cloned()
                            .collect();
                        if !subset(&plus_cap, &bc.believed) || !subset(&bc.disbelieved, &minus_cap)
                        {
                            return Ok(Verdict::violated(
                                "intersection of single contractions not within joint contraction"
                                    .to_string(),
                                vec![("D", t), ("D-p", a), ("D-q", b), ("D-pq", c)],
                            ));
                        }
                    }
                }
            }
            Ok(Verdict::holds())
        }
        "K-8" => {
            let q = match q {
                Some(q) => q,
                None => return Ok(Verdict::not_applicable()),
            };
            let dp = unwrap_outcomes!(contraction_outcomes(t, p, opts)?);
            let dpq = unwrap_outcomes!(set_contraction_outcomes(t, &[p.clone(), q.clone()], opts)?);
            for c in &dpq {
                let bc = belief_set(c);
                if !bc.disbelieved.contains(p) {
                    continue; // premise false for this outcome
                }
                for a in &dp {
                    let ba = belief_set(a);
                    if !subset(&bc.believed, &ba.believed)
                        || !subset(&ba.disbelieved, &bc.disbelieved)
                    {
                        return Ok(Verdict::violated(
                            "joint contraction not within single contraction".to_string(),
                            vec![("D", t), ("D-p", a), ("D-pq", c)],
                        ));
                    }
                }
            }
            Ok(Verdict::holds())
        }
        "K*1" => {
            let outs = unwrap_outcomes!(revision_outcomes(t, p, opts)?);
            for d in &outs {
                if check_acyclic(d.superiority(), &d.rule_labels()) != Ok(true) {
                    return Ok(Verdict::violated(
                        "revision outcome relation is cyclic".to_string(),
                        vec![("D", t), ("D*p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K*2" => {
            let outs = unwrap_outcomes!(revision_outcomes(t, p, opts)?);
            for d in &outs {
                if !belief_set(d).believed.contains(p) {
                    return Ok(Verdict::violated(
                        format!("{} not believed after revision", p),
                        vec![("D", t), ("D*p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K*3" | "K*4" => {
            // proper expansion requires -∂~p while revision requires +∂~p;
            // the two operations never apply to the same instance
            Ok(Verdict::not_applicable())
        }
        "K*5" => {
            let outs = unwrap_outcomes!(revision_outcomes(t, p, opts)?);
            for d in &outs {
                let bs = belief_set(d);
                if bs
                    .believed
                    .iter()
                    .any(|l| bs.believed.contains(&l.complement()))
                {
                    return Ok(Verdict::violated(
                        "revised belief set contains a complementary pair".to_string(),
                        vec![("D", t), ("D*p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K*7" => {
            let q = match q {
                Some(q) => q,
                None => return Ok(Verdict::not_applicable()),
            };
            let dpq = unwrap_outcomes!(set_revision_outcomes(t, &[p.clone(), q.clone()], opts)?);
            let dp = unwrap_outcomes!(revision_outcomes(t, p, opts)?);
            for a in &dp {
                let exps = match expansion_outcomes(a, q, opts)? {
                    Outcomes::Ok(v) => v,
                    _ => continue,
                };
                for x in &exps {
                    for c in &dpq {
                        let (bx, bc) = (belief_set(x), belief_set(c));
                        if !subset(&bc.believed, &bx.believed)
                            || !subset(&bx.disbelieved, &bc.disbelieved)
                        {
                            return Ok(Verdict::violated(
                                "joint revision not within revise-then-expand".to_string(),
                                vec![("D", t), ("D*pq", c), ("D*p", a), ("(D*p)+q", x)],
                            ));
                        }
                    }
                }
            }
            Ok(Verdict::holds())
        }
        "K*8" => {
            let q = match q {
                Some(q) => q,
                None => return Ok(Verdict::not_applicable()),
            };
            let dpq = unwrap_outcomes!(set_revision_outcomes(t, &[p.clone(), q.clone()], opts)?);
            let dp = unwrap_outcomes!(revision_outcomes(t, p, opts)?);
            for a in &dp {
                if !belief_set(a).disbelieved.contains(&q.complement()) {
                    continue; // premise false for this outcome
                }
                let exps = match expansion_outcomes(a, q, opts)? {
                    Outcomes::Ok(v) => v,
                    _ => continue,
                };
                for x in &exps {
                    for c in &dpq {
                        let (bx, bc) = (belief_set(x), belief_set(c));
                        if !subset(&bx.believed, &bc.believed)
                            || !subset(&bc.disbelieved, &bx.disbelieved)
                        {
                            return Ok(Verdict::violated(
                                "revise-then-expand not within joint revision".to_string(),
                                vec![("D", t), ("D*pq", c), ("D*p", a), ("(D*p)+q", x)],
                            ));
                        }
                    }
                }
            }
            Ok(Verdict::holds())
        }
        "K+1" => {
            let outs = unwrap_outcomes!(expansion_outcomes(t, p, opts)?);
            for d in &outs {
                if check_acyclic(d.superiority(), &d.rule_labels()) != Ok(true) {
                    return Ok(Verdict::violated(
                        "expansion outcome relation is cyclic".to_string(),
                        vec![("D", t), ("D+p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K+2" => {
            let outs = unwrap_outcomes!(expansion_outcomes(t, p, opts)?);
            for d in &outs {
                if !belief_set(d).believed.contains(p) {
                    return Ok(Verdict::violated(
                        format!("{} not believed after expansion", p),
                        vec![("D", t), ("D+p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K+3" | "K+4" => {
            // jointly: expanding by an already believed literal changes nothing
            if !bs_t.believed.contains(p) {
                return Ok(Verdict::holds()); // premise of the joint form is false
            }
            let outs = unwrap_outcomes!(expansion_outcomes(t, p, opts)?);
            for d in &outs {
                let bs_d = belief_set(d);
                if bs_d.believed != bs_t.believed || bs_d.disbelieved != bs_t.disbelieved {
                    return Ok(Verdict::violated(
                        format!("expanding by already-believed {} changed the belief set", p),
                        vec![("D", t), ("D+p", d)],
                    ));
                }
            }
            Ok(Verdict::holds())
        }
        "K+5" => Ok(Verdict::not_applicable()),
        "K+6" => Ok(Verdict::not_applicable()),
        "LI" => check_levi(t, p, opts),
        "HI" => check_harper(t, p, opts),
        _ => Ok(Verdict::not_applicable()),
    }
}

/// K+5 relates two theories: if BS+(D) ⊆ BS+(D') then expanding both by the
/// same literal preserves the inclusion.
pub fn check_expansion_monotony(
    t: &Theory,
    t2: &Theory,
    p: &Literal,
    opts: &AuditOptions,
) -> Result<Verdict, RevisionError> {
    let (bs1, bs2) = (belief_set(t), belief_set(t2));
    if !subset(&bs1.believed, &bs2.believed) {
        return Ok(Verdict::holds()); // premise false
    }
    let e1 = unwrap_outcomes!(expansion_outcomes(t, p, opts)?);
    let e2 = unwrap_outcomes!(expansion_outcomes(t2, p, opts)?);
    for a in &e1 {
        for b in &e2 {
            let (ba, bb) = (belief_set(a), belief_set(b));
            if !subset(&ba.believed, &bb.believed) {
                return Ok(Verdict::violated(
                    "expansion broke the belief-set inclusion".to_string(),
                    vec![("D", t), ("D'", t2), ("D+p", a), ("D'+p", b)],
                ));
            }
        }
    }
    Ok(Verdict::holds())
}

/// Levi identity: BS(D*p) = BS((D-~p)+p), compared signed and over every
/// admissible outcome combination.
pub fn check_levi(t: &Theory, p: &Literal, opts: &AuditOptions) -> Result<Verdict, RevisionError> {
    let lhs = unwrap_outcomes!(revision_outcomes(t, p, opts)?);
    let contractions = unwrap_outcomes!(contraction_outcomes(t, &p.complement(), opts)?);
    for l in &lhs {
        for c in &contractions {
            let exps = match expansion_outcomes(c, p, opts)? {
                Outcomes::Ok(v) => v,
                _ => return Ok(Verdict::infeasible()),
            };
            for x in &exps {
                let (bl, bx) = (belief_set(l), belief_set(x));
                if bl.believed != bx.believed || bl.disbelieved != bx.disbelieved {
                    return Ok(Verdict::violated(
                        "revision differs from contract-then-expand".to_string(),
                        vec![("D", t), ("D*p", l), ("D-~p", c), ("(D-~p)+p", x)],
                    ));
                }
            }
        }
    }
    Ok(Verdict::holds())
}

/// Harper identity: BS(D-p) = BS(D*~p) ∩ BS(D), compared signed and over
/// every admissible outcome combination.
pub fn check_harper(
    t: &Theory,
    p: &Literal,
    opts: &AuditOptions,
) -> Result<Verdict, RevisionError> {
    let bs_t = belief_set(t);
    let lhs = unwrap_outcomes!(contraction_outcomes(t, p, opts)?);
    let rhs = unwrap_outcomes!(revision_outcomes(t, &p.complement(), opts)?);
    for l in &lhs {
        for r in &rhs {
            let (bl, br) = (belief_set(l), belief_set(r));
            let plus_cap: BTreeSet<Literal> =
                br.believed.intersection(&bs_t.believed).cloned().collect();
            let minus_cap: BTreeSet<Literal> = br
                .disbelieved
                .intersection(&bs_t.disbelieved)
                .cloned()
                .collect();
            if bl.believed != plus_cap || bl.disbelieved != minus_cap {
                return Ok(Verdict::violated(
                    "contraction differs from revision-intersection".to_string(),
                    vec![("D", t), ("D-p", l), ("D*~p", r)],
                ));
            }
        }
    }
    Ok(Verdict::holds())
}
