//! Bottom-up computation of the proof tags.
//!
//! Each tag family has a positive condition and a negative one obtained by
//! strong negation; both are constructive, so a joint least fixpoint per
//! family is sound. Entries never derived either way stay undecided (this is
//! what happens with self-supporting loops such as `p => p`).
//!
//! Strata are evaluated in dependency order: Δ first, then ∂ (reads Δ and
//! itself), Σ (Δ, itself), ω (Δ, ∂ — a single pass), σ (Δ, ∂, itself) and
//! φ (Δ, Σ, itself). `P(1..n)` in the proof conditions is read as "already
//! in the proven set"; in negative conditions the clause "+Δq not in P" is
//! read constructively as "-Δq in P".
//!
//! Evaluation is worklist-driven with per-literal dependency lists, so the
//! total work stays near-linear in the theory size for sparse conflict
//! structure.

use std::cell::OnceCell;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::tags::{BeliefSet, Extension, ProofTag, TagAssignment, TagValue};
use crate::theory::{Literal, RuleKind, Superiority, Theory};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Tv {
    Undec,
    Plus,
    Minus,
}

impl Tv {
    fn to_tag_value(self) -> TagValue {
        match self {
            Tv::Undec => TagValue::Undecided,
            Tv::Plus => TagValue::ProvenPlus,
            Tv::Minus => TagValue::ProvenMinus,
        }
    }
}

pub(crate) struct CRule {
    pub ants: Vec<usize>,
}

/// Rule-id pairs `(winner, loser)` compiled from a superiority relation.
pub(crate) type Beats = HashSet<(usize, usize)>;

/// A theory compiled to integer literal and rule ids. Δ and Σ do not read
/// the superiority relation, so they are computed once here; the
/// superiority-dependent strata run per relation, which is what makes
/// exhaustive relation enumeration cheap.
pub(crate) struct Compiled {
    pub lits: Vec<Literal>,
    pub lit_ids: HashMap<Literal, usize>,
    pub comp: Vec<usize>,
    pub fact: Vec<bool>,
    pub rules: Vec<CRule>,
    pub rules_for: Vec<Vec<usize>>,    // R[q], all kinds
    pub sd_rules_for: Vec<Vec<usize>>, // R_sd[q]
    pub s_rules_for: Vec<Vec<usize>>,  // R_s[q]
    pub deps: Vec<Vec<usize>>,         // lit -> literals to re-evaluate on change
    pub label_ids: HashMap<String, usize>,
    pub delta: Vec<Tv>,
    sigma_chain: OnceCell<Vec<Tv>>,
}

impl Compiled {
    pub fn new(t: &Theory) -> Compiled {
        let lits: Vec<Literal> = t.universe().into_iter().collect();
        let lit_ids: HashMap<Literal, usize> = lits
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let n = lits.len();
        let comp: Vec<usize> = lits.iter().map(|l| lit_ids[&l.complement()]).collect();
        let fact: Vec<bool> = lits.iter().map(|l| t.facts().contains(l)).collect();

        let mut rules = Vec::with_capacity(t.rules().len());
        let mut rules_for = vec![Vec::new(); n];
        let mut sd_rules_for = vec![Vec::new(); n];
        let mut s_rules_for = vec![Vec::new(); n];
        let mut deps: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut label_ids = HashMap::new();
        for (i, r) in t.rules().iter().enumerate() {
            let head = lit_ids[r.consequent()];
            let ants: Vec<usize> = r.antecedent().iter().map(|a| lit_ids[a]).collect();
            rules_for[head].push(i);
            if r.kind() != RuleKind::Defeater {
                sd_rules_for[head].push(i);
            }
            if r.kind() == RuleKind::Strict {
                s_rules_for[head].push(i);
            }
            for &a in &ants {
                deps[a].insert(head);
                deps[a].insert(comp[head]);
            }
            label_ids.insert(r.label().to_string(), i);
            rules.push(CRule { ants });
        }

        let mut c = Compiled {
            lits,
            lit_ids,
            comp,
            fact,
            rules,
            rules_for,
            sd_rules_for,
            s_rules_for,
            deps: deps.into_iter().map(|s| s.into_iter().collect()).collect(),
            label_ids,
            delta: Vec::new(),
            sigma_chain: OnceCell::new(),
        };
        c.delta = c.solve_delta();
        c
    }

    /// Σ does not read the superiority relation; computed once on demand.
    pub fn sigma_chain(&self) -> &[Tv] {
        self.sigma_chain.get_or_init(|| self.solve_sigma_chain())
    }

    pub fn beats(&self, sup: &Superiority) -> Beats {
        sup.tuples()
            .iter()
            .map(|(w, l)| (self.label_ids[w], self.label_ids[l]))
            .collect()
    }

    fn n(&self) -> usize {
        self.lits.len()
    }

    fn saturate<F>(&self, status: &mut [Tv], eval: F)
    where
        F: Fn(usize, &[Tv]) -> Tv,
    {
        let n = self.n();
        let mut queue: VecDeque<usize> = (0..n).collect();
        let mut inq = vec![true; n];
        while let Some(q) = queue.pop_front() {
            inq[q] = false;
            if status[q] != Tv::Undec {
                continue;
            }
            let v = eval(q, status);
            if v != Tv::Undec {
                status[q] = v;
                for &d in &self.deps[q] {
                    if !inq[d] && status[d] == Tv::Undec {
                        inq[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
    }

    fn solve_delta(&self) -> Vec<Tv> {
        let mut st = vec![Tv::Undec; self.n()];
        self.saturate(&mut st, |q, st| {
            let plus = self.fact[q]
                || self.s_rules_for[q]
                    .iter()
                    .any(|&r| self.rules[r].ants.iter().all(|&a| st[a] == Tv::Plus));
            let minus = !self.fact[q]
                && self.s_rules_for[q]
                    .iter()
                    .all(|&r| self.rules[r].ants.iter().any(|&a| st[a] == Tv::Minus));
            debug_assert!(!(plus && minus), "delta conditions overlap");
            if plus {
                Tv::Plus
            } else if minus {
                Tv::Minus
            } else {
                Tv::Undec
            }
        });
        st
    }

    fn solve_sigma_chain(&self) -> Vec<Tv> {
        let delta = &self.delta;
        let mut st = vec![Tv::Undec; self.n()];
        self.saturate(&mut st, |q, st| {
            if delta[q] == Tv::Plus
                || self.sd_rules_for[q]
                    .iter()
                    .any(|&r| self.rules[r].ants.iter().all(|&a| st[a] == Tv::Plus))
            {
                return Tv::Plus;
            }
            if delta[q] == Tv::Minus
                && self.sd_rules_for[q]
                    .iter()
                    .all(|&r| self.rules[r].ants.iter().any(|&a| st[a] == Tv::Minus))
            {
                return Tv::Minus;
            }
            Tv::Undec
        });
        st
    }

    pub fn solve_partial(&self, beats: &Beats) -> Vec<Tv> {
        let delta = &self.delta;
        let mut st = vec![Tv::Undec; self.n()];
        let applicable =
            |r: usize, st: &[Tv]| self.rules[r].ants.iter().all(|&a| st[a] == Tv::Plus);
        let discarded =
            |r: usize, st: &[Tv]| self.rules[r].ants.iter().any(|&a| st[a] == Tv::Minus);
        self.saturate(&mut st, |q, st| {
            let nq = self.comp[q];
            // +∂: definite proof, or an applicable supporting rule with every
            // attacker discarded or beaten by an applicable supporter
            let plus = delta[q] == Tv::Plus
                || (delta[nq] == Tv::Minus
                    && self.sd_rules_for[q].iter().any(|&r| applicable(r, st))
                    && self.rules_for[nq].iter().all(|&s| {
                        discarded(s, st)
                            || self.sd_rules_for[q]
                                .iter()
                                .any(|&t| applicable(t, st) && beats.contains(&(t, s)))
                    }));
            let minus = delta[q] == Tv::Minus
                && (delta[nq] == Tv::Plus
                    || self.sd_rules_for[q].iter().all(|&r| discarded(r, st))
                    || self.rules_for[nq].iter().any(|&s| {
                        applicable(s, st)
                            && self.sd_rules_for[q]
                                .iter()
                                .all(|&t| discarded(t, st) || !beats.contains(&(t, s)))
                    }));
            debug_assert!(!(plus && minus), "partial conditions overlap");
            if plus {
                Tv::Plus
            } else if minus {
                Tv::Minus
            } else {
                Tv::Undec
            }
        });
        st
    }

    pub fn solve_omega(&self, partial: &[Tv]) -> Vec<Tv> {
        let delta = &self.delta;
        (0..self.n())
            .map(|q| {
                let plus = delta[q] == Tv::Plus
                    || self.sd_rules_for[q]
                        .iter()
                        .any(|&r| self.rules[r].ants.iter().all(|&a| partial[a] == Tv::Plus));
                let minus = delta[q] == Tv::Minus
                    && self.sd_rules_for[q]
                        .iter()
                        .all(|&r| self.rules[r].ants.iter().any(|&a| partial[a] == Tv::Minus));
                debug_assert!(!(plus && minus), "omega conditions overlap");
                if plus {
                    Tv::Plus
                } else if minus {
                    Tv::Minus
                } else {
                    Tv::Undec
                }
            })
            .collect()
    }

    pub fn solve_sigma_support(&self, beats: &Beats, partial: &[Tv]) -> Vec<Tv> {
        let delta = &self.delta;
        let mut st = vec![Tv::Undec; self.n()];
        let p_applicable = |r: usize| self.rules[r].ants.iter().all(|&a| partial[a] == Tv::Plus);
        let p_discarded = |r: usize| self.rules[r].ants.iter().any(|&a| partial[a] == Tv::Minus);
        self.saturate(&mut st, |q, st| {
            let nq = self.comp[q];
            let plus = delta[q] == Tv::Plus
                || self.sd_rules_for[q].iter().any(|&r| {
                    self.rules[r].ants.iter().all(|&a| st[a] == Tv::Plus)
                        && self.rules_for[nq]
                            .iter()
                            .all(|&s| p_discarded(s) || !beats.contains(&(s, r)))
                });
            let minus = delta[q] == Tv::Minus
                && self.sd_rules_for[q].iter().all(|&r| {
                    self.rules[r].ants.iter().any(|&a| st[a] == Tv::Minus)
                        || self.rules_for[nq]
                            .iter()
                            .any(|&s| p_applicable(s) && beats.contains(&(s, r)))
                });
            debug_assert!(!(plus && minus), "sigma-support conditions overlap");
            if plus {
                Tv::Plus
            } else if minus {
                Tv::Minus
            } else {
                Tv::Undec
            }
        });
        st
    }

    pub fn solve_phi(&self) -> Vec<Tv> {
        let delta = &self.delta;
        let sigma = self.sigma_chain();
        let mut st = vec![Tv::Undec; self.n()];
        self.saturate(&mut st, |q, st| {
            let nq = self.comp[q];
            let plus = delta[q] == Tv::Plus
                || self.sd_rules_for[q].iter().any(|&r| {
                    self.rules[r].ants.iter().all(|&a| st[a] == Tv::Plus)
                        && self.rules_for[nq]
                            .iter()
                            .all(|&s| self.rules[s].ants.iter().any(|&a| sigma[a] == Tv::Minus))
                });
            let minus = delta[q] == Tv::Minus
                && self.sd_rules_for[q].iter().all(|&r| {
                    self.rules[r].ants.iter().any(|&a| st[a] == Tv::Minus)
                        || self.rules_for[nq]
                            .iter()
                            .any(|&s| self.rules[s].ants.iter().all(|&a| sigma[a] == Tv::Plus))
                });
            debug_assert!(!(plus && minus), "phi conditions overlap");
            if plus {
                Tv::Plus
            } else if minus {
                Tv::Minus
            } else {
                Tv::Undec
            }
        });
        st
    }

    /// Full six-family solve for one superiority relation.
    pub fn solve_all(&self, beats: &Beats) -> [Vec<Tv>; 6] {
        let partial = self.solve_partial(beats);
        let omega = self.solve_omega(&partial);
        let sigma_support = self.solve_sigma_support(beats, &partial);
        let phi = self.solve_phi();
        [
            self.delta.clone(),
            phi,
            partial,
            omega,
            sigma_support,
            self.sigma_chain().to_vec(),
        ]
    }

    pub fn assignment(&self, status: [Vec<Tv>; 6]) -> TagAssignment {
        let status = status.map(|v| v.iter().map(|t| t.to_tag_value()).collect());
        TagAssignment::new(self.lits.clone(), status)
    }
}

/// Computes the full tag assignment of a theory.
pub fn compute_tags(t: &Theory) -> TagAssignment {
    let c = Compiled::new(t);
    let beats = c.beats(t.superiority());
    let status = c.solve_all(&beats);
    c.assignment(status)
}

/// The defeasible extension E(D): the ∂ projection over the universe.
pub fn extension(t: &Theory) -> Extension {
    let c = Compiled::new(t);
    let beats = c.beats(t.superiority());
    let partial = c.solve_partial(&beats);
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    for (i, l) in c.lits.iter().enumerate() {
        match partial[i] {
            Tv::Plus => {
                plus.insert(l.clone());
            }
            Tv::Minus => {
                minus.insert(l.clone());
            }
            Tv::Undec => {}
        }
    }
    Extension {
        plus_partial: plus,
        minus_partial: minus,
    }
}

/// The belief set: the ∂ projection restricted to appearing literals.
pub fn belief_set(t: &Theory) -> BeliefSet {
    let ext = extension(t);
    let appearing = t.appearing_literals();
    BeliefSet {
        believed: ext.plus_partial.intersection(&appearing).cloned().collect(),
        disbelieved: ext
            .minus_partial
            .intersection(&appearing)
            .cloned()
            .collect(),
    }
}

/// `D ⊢ ±#l`.
pub fn proves(t: &Theory, tag: ProofTag, l: &Literal) -> bool {
    compute_tags(t).holds(tag, l)
}

/// A theory is consistent unless some literal and its complement are both
/// defeasibly proved without both being definitely proved.
pub fn is_consistent(t: &Theory) -> bool {
    let c = Compiled::new(t);
    let beats = c.beats(t.superiority());
    let partial = c.solve_partial(&beats);
    for q in 0..c.lits.len() {
        let nq = c.comp[q];
        if partial[q] == Tv::Plus
            && partial[nq] == Tv::Plus
            && !(c.delta[q] == Tv::Plus && c.delta[nq] == Tv::Plus)
        {
            return false;
        }
    }
    true
}
