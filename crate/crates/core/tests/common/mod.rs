//! Shared fixtures and a seeded random-theory generator for the
//! integration and acceptance suites.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use defrev_core::{parse_theory, Literal, Rule, RuleKind, Superiority, Theory};

pub fn lit(s: &str) -> Literal {
    if let Some(a) = s.strip_prefix('~') {
        Literal::negative(a)
    } else {
        Literal::positive(s)
    }
}

pub fn theory(src: &str) -> Theory {
    parse_theory(src).expect("fixture parses")
}

/// The running eleven-rule example: two chains into a conflict on d, an
/// isolated b/~b tie feeding ~c, and two unopposed rules.
pub const EXAMPLE1: &str = "
    r1: => a.
    r2: a => c.
    r3: c => d.
    r4: => ~a.
    r5: => ~d.
    r6: ~d => p.
    r7: => b.
    r8: b => ~c.
    r9: => ~b.
    r10: => e.
    r11: => f.
    r1 > r4.
    r5 > r3.
";

/// In-vitro-fertilisation case: facts plus six norms, court priority r1>r3.
pub const LEGAL: &str = "
    facts: Embryo, GeneticAnomalies.
    r0: ~CandidateInVitroFertilization => ~Techniques.
    r1: ~Sterility => ~CandidateInVitroFertilization.
    r2: Embryo => ~Sterility.
    r3: ~Sterility, GeneticAnomalies => CandidateInVitroFertilization.
    r4: ~Sterility, GeneticAnomalies => ~Healthy.
    r5: GeneticAnomalies, CandidateInVitroFertilization => Healthy.
    r1 > r3.
";

/// Two rules for p each beating one of two rules for ~p.
pub const TEAM: &str = "
    r1: => p.
    r2: => p.
    r3: => ~p.
    r4: => ~p.
    r1 > r3.
    r2 > r4.
";

/// Four-step chain to p that is ambiguous at its first step and defeated at
/// its third.
pub const CHAIN_AMBIG: &str = "
    r1: => a.
    r2: a => b.
    r3: b => c.
    r4: c => p.
    r5: => ~a.
    r6: => ~c.
    r6 > r3.
";

/// Contraction example: p provable through a (protected by r1>r3) and
/// blocked through b (tied).
pub const EX_CONTR5: &str = "
    r1: => a.
    r2: a => p.
    r3: => ~a.
    r4: => b.
    r5: b => p.
    r6: => ~b.
    r1 > r3.
";

/// Both chains for p are guarded by complementary literals l and ~l, so p
/// cannot be contracted by any priority change.
pub const EX_TAUT: &str = "
    r1: => l.
    r2: l => ~a.
    r3: => a.
    r4: a => p.
    r5: => b.
    r6: b => p.
    r7: => ~l.
    r8: ~l => ~b.
";

/// Three chains for p guarded by three independent ambiguous atoms; p is
/// contractible by enabling one attacker per chain.
pub const EX_CONTRTAUT: &str = "
    r1: => a.
    r2: a => p.
    r3: => b.
    r4: b => p.
    r5: => c.
    r6: c => p.
    r7: => l.
    r8: l => ~a.
    r9: => ~l.
    r10: ~l => ~b.
    r11: => m.
    r12: m => ~b.
    r13: => ~m.
    r14: ~m => ~c.
    r15: => n.
    r16: n => ~c.
    r17: => ~n.
    r18: ~n => ~a.
";

/// EX_CONTRTAUT extended with two more chains whose guards reuse n and ~m,
/// making p uncontractible again.
pub const EX_CONTRCONTRTAUT: &str = "
    r1: => a.
    r2: a => p.
    r3: => b.
    r4: b => p.
    r5: => c.
    r6: c => p.
    r7: => l.
    r8: l => ~a.
    r9: => ~l.
    r10: ~l => ~b.
    r11: => m.
    r12: m => ~b.
    r13: => ~m.
    r14: ~m => ~c.
    r15: => n.
    r16: n => ~c.
    r17: => ~n.
    r18: ~n => ~a.
    r19: => e.
    r20: e => p.
    r21: => f.
    r22: f => p.
    r23: n => ~e.
    r24: ~n => ~f.
    r25: ~m => ~f.
";

/// The K-7/K-8 contraction example: five guarded conclusions feeding a
/// final conflict on p.
pub const EX_CONTR78: &str = "
    r1: => a.
    r2: a => c.
    r3: => ~a.
    r4: ~c, ~d => p.
    r5: => ~d.
    r6: => ~p.
    r7: => b.
    r8: b => d.
    r9: => ~b.
    r10: => ~c.
    r1 > r3.
    r2 > r10.
    r8 > r5.
    r4 > r6.
    r7 > r9.
";

/// The K*7/K*8 revision example.
pub const EX_REV78: &str = "
    r1: => ~a.
    r2: => a.
    r3: a => p.
    r4: => ~p.
    r5: => b.
    r6: => ~b.
    r7: b => p.
    r8: b => q.
    r9: => ~q.
    r10: => c.
    r11: c => q.
";

/// Levi-identity example: p reachable through a or through b.
pub const EX_IDLEVI: &str = "
    r1: => a.
    r2: a => p.
    r3: => ~a.
    r4: => ~p.
    r5: => b.
    r6: b => p.
    r7: => ~b.
";

/// Harper-identity example: q supported from p and from ~p.
pub const EX_IDHARPER: &str = "
    r1: => p.
    r2: p => q.
    r3: => ~q.
    r4: => ~p.
    r5: ~p => q.
    r1 > r4.
    r2 > r3.
    r5 > r3.
";

/// Third-canonical-case example: p expandable through a (which also
/// disables the chain for ~p) or through b.
pub const EX_3CAN1: &str = "
    r1: => a.
    r2: a => p.
    r3: => ~a.
    r4: ~a => ~p.
    r5: => b.
    r6: b => p.
    r7: => ~b.
";

/// Variant with a defeated (rather than ambiguous) chain for ~p.
pub const EX_3CAN1_1: &str = "
    r1: => a.
    r2: a => p.
    r3: => ~a.
    r4: ~a => b.
    r5: b => ~p.
    r6: => ~b.
    r7: => c.
    r8: c => p.
    r9: => ~c.
    r6 > r4.
";

/// Minimality-contrast example: one inversion flips five conclusions, two
/// additions flip three.
pub const EX_CONCL: &str = "
    r1: => a.
    r2: a => b.
    r3: b => p.
    r4: => ~a.
    r5: ~a => ~b.
    r6: => c.
    r7: c => d.
    r8: d => e.
    r9: e => p.
    r10: => ~c.
    r10 > r6.
";

/// Knowing a defeasibly (t over u) with rules => p and a => ~p: contracting
/// a frees p.
pub const K2_FIXTURE: &str = "
    r: => p.
    s: a => ~p.
    t: => a.
    u: => ~a.
    t > u.
";

/// Pair of theories over the same rules for the expansion-monotony check:
/// expanding by p enables the attacker of w in exactly one of them.
pub const K5_STRONG: &str = "
    rp: => p.
    rnp: => ~p.
    rw: => w.
    rx: p => ~w.
    rw > rx.
";

pub const K5_WEAK: &str = "
    rp: => p.
    rnp: => ~p.
    rw: => w.
    rx: p => ~w.
";

/// p derivable only from a contradiction.
pub const UNREACHABLE_P: &str = "
    r1: => a.
    r2: => ~a.
    r3: a, ~a => p.
";

/// Smallest sceptical tie.
pub const TIE: &str = "
    r: => p.
    s: => ~p.
";

// ---------------------------------------------------------------------------
// seeded random theories
// ---------------------------------------------------------------------------

pub struct GenConfig {
    pub max_rules: usize,
    pub max_atoms: usize,
    pub max_antecedent: usize,
    /// Probability that a conflicting pair receives a priority.
    pub priority_density: f64,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig {
            max_rules: 12,
            max_atoms: 4,
            max_antecedent: 2,
            priority_density: 0.4,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random fact-free defeasible theory. Deterministic per rng state.
pub fn random_theory(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Theory {
    const ATOMS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
    let atoms = &ATOMS[..cfg.max_atoms.min(ATOMS.len())];
    let n_rules = rng.gen_range(1..=cfg.max_rules);
    let random_lit = |rng: &mut ChaCha8Rng| {
        let atom = atoms[rng.gen_range(0..atoms.len())];
        if rng.gen_bool(0.5) {
            Literal::positive(atom)
        } else {
            Literal::negative(atom)
        }
    };
    let mut rules = Vec::with_capacity(n_rules);
    for i in 0..n_rules {
        let n_ants = rng.gen_range(0..=cfg.max_antecedent);
        let head = random_lit(rng);
        let mut ants = Vec::new();
        for _ in 0..n_ants {
            let a = random_lit(rng);
            if a != head {
                ants.push(a);
            }
        }
        rules.push(Rule::new(&format!("r{:02}", i + 1), ants, RuleKind::Defeasible, head).unwrap());
    }
    let skeleton = Theory::new(BTreeSet::new(), rules.clone(), Superiority::empty()).unwrap();
    let mut tuples: BTreeSet<(String, String)> = BTreeSet::new();
    for (a, b) in defrev_core::conflicting_pairs(&skeleton) {
        if !rng.gen_bool(cfg.priority_density) {
            continue;
        }
        let (w, l) = if rng.gen_bool(0.5) {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        let mut candidate = tuples.clone();
        candidate.insert((w, l));
        let sup = Superiority::from_tuples(candidate.iter().cloned()).unwrap();
        if defrev_core::check_acyclic(&sup, &skeleton.rule_labels()) == Ok(true) {
            tuples = candidate;
        }
    }
    let sup = Superiority::from_tuples(tuples).unwrap();
    Theory::new(BTreeSet::new(), rules, sup).unwrap()
}

/// A synthetic chain theory r1: => a1, r2: a1 => a2, ... of `n` rules.
pub fn chain_theory(n: usize) -> Theory {
    let mut rules = Vec::with_capacity(n);
    let mut prev: Option<Literal> = None;
    for i in 1..=n {
        let head = Literal::positive(&format!("a{:05}", i));
        let ants = prev.iter().cloned().collect();
        rules.push(
            Rule::new(
                &format!("r{:05}", i),
                ants,
                RuleKind::Defeasible,
                head.clone(),
            )
            .unwrap(),
        );
        prev = Some(head);
    }
    Theory::new(BTreeSet::new(), rules, Superiority::empty()).unwrap()
}

/// Richer generator for engine cross-checks: optional facts, strict rules
/// and defeaters.
pub fn random_mixed_theory(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Theory {
    const ATOMS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
    let atoms = &ATOMS[..cfg.max_atoms.min(ATOMS.len())];
    let random_lit = |rng: &mut ChaCha8Rng| {
        let atom = atoms[rng.gen_range(0..atoms.len())];
        if rng.gen_bool(0.5) {
            Literal::positive(atom)
        } else {
            Literal::negative(atom)
        }
    };
    // consistent random facts
    let mut facts: BTreeSet<Literal> = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=2) {
        let l = random_lit(rng);
        if !facts.contains(&l.complement()) {
            facts.insert(l);
        }
    }
    let n_rules = rng.gen_range(1..=cfg.max_rules);
    let mut rules = Vec::with_capacity(n_rules);
    for i in 0..n_rules {
        let n_ants = rng.gen_range(0..=cfg.max_antecedent);
        let head = random_lit(rng);
        let mut ants = Vec::new();
        for _ in 0..n_ants {
            let a = random_lit(rng);
            if a != head {
                ants.push(a);
            }
        }
        let kind = match rng.gen_range(0..10) {
            0 => RuleKind::Strict,
            1 => RuleKind::Defeater,
            _ => RuleKind::Defeasible,
        };
        rules.push(Rule::new(&format!("r{:02}", i + 1), ants, kind, head).unwrap());
    }
    let skeleton = Theory::new(facts.clone(), rules.clone(), Superiority::empty()).unwrap();
    let mut tuples: BTreeSet<(String, String)> = BTreeSet::new();
    for (a, b) in defrev_core::conflicting_pairs(&skeleton) {
        if !rng.gen_bool(cfg.priority_density) {
            continue;
        }
        let (w, l) = if rng.gen_bool(0.5) {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        let mut candidate = tuples.clone();
        candidate.insert((w, l));
        let sup = Superiority::from_tuples(candidate.iter().cloned()).unwrap();
        if defrev_core::check_acyclic(&sup, &skeleton.rule_labels()) == Ok(true) {
            tuples = candidate;
        }
    }
    let sup = Superiority::from_tuples(tuples).unwrap();
    Theory::new(facts, rules, sup).unwrap()
}
