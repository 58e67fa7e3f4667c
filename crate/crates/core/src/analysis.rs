//! Structural analysis: literal dependency, ∂-unreachability, decisiveness,
//! support-chain extraction, conflicting pairs and exhaustive enumeration of
//! superiority relations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::engine::{Compiled, Tv};
use crate::theory::{Literal, RuleRestriction, Superiority, Theory};

/// `a` depends on `b` iff `b = a`, or every rule for `a` mentions `b` in its
/// antecedent or carries an antecedent that depends on `b`.
///
/// The definition quantifies over all rules for `a`; a rule-less literal
/// other than a fact therefore depends on everything vacuously. Cycles are
/// resolved by least-fixpoint iteration, matching the degree-based inductive
/// reading.
pub fn depends_on(t: &Theory, a: &Literal, b: &Literal) -> bool {
    dependency_closure(t)
        .get(a)
        .map(|s| s.contains(b))
        .unwrap_or(a == b)
}

/// For every universe literal, the set of literals it depends on.
pub fn dependency_closure(t: &Theory) -> BTreeMap<Literal, BTreeSet<Literal>> {
    let universe: Vec<Literal> = t.universe().into_iter().collect();
    let mut dep: BTreeMap<Literal, BTreeSet<Literal>> = universe
        .iter()
        .map(|a| (a.clone(), BTreeSet::from([a.clone()])))
        .collect();
    let rules_for: BTreeMap<&Literal, Vec<&crate::theory::Rule>> = universe
        .iter()
        .map(|a| (a, t.rules_for(a, RuleRestriction::All)))
        .collect();
    loop {
        let mut changed = false;
        for a in &universe {
            let rules = &rules_for[a];
            for b in &universe {
                if dep[a].contains(b) {
                    continue;
                }
                let holds = rules.iter().all(|r| {
                    r.antecedent().contains(b) || r.antecedent().iter().any(|c| dep[c].contains(b))
                });
                if holds {
                    dep.get_mut(a).unwrap().insert(b.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            return dep;
        }
    }
}

/// A literal is ∂-unreachable when every rule for it is contradiction-based
/// (its antecedents together with its consequent depend on some literal and
/// its complement) or carries an unreachable antecedent. Facts are
/// reachable; a rule-less non-fact literal is vacuously unreachable.
///
/// The contradiction scan includes the consequent: a derivation of p whose
/// premises depend on ~p would prove p and ~p together, which only an
/// inconsistent theory can do. Scanning antecedent pairs alone misses this
/// (e.g. `=> d` with `d => ~d` leaves ~d supported but unprovable under
/// every relation, since letting the second rule win takes away its own
/// premise).
pub fn is_unreachable(t: &Theory, p: &Literal) -> bool {
    unreachable_set(t).contains(p)
}

pub fn unreachable_set(t: &Theory) -> BTreeSet<Literal> {
    let dep = dependency_closure(t);
    let universe: Vec<Literal> = t.universe().into_iter().collect();
    // per rule: some l with antecedents (or the consequent) depending on
    // both l and ~l
    let contradiction_based: Vec<bool> = t
        .rules()
        .iter()
        .map(|r| {
            let mut reach: BTreeSet<&Literal> = BTreeSet::new();
            for a in r.antecedent() {
                reach.extend(dep[a].iter());
            }
            reach.extend(dep[r.consequent()].iter());
            reach.iter().any(|l| reach.contains(&l.complement()))
        })
        .collect();
    let mut unreachable: BTreeSet<Literal> = BTreeSet::new();
    loop {
        let mut changed = false;
        for p in &universe {
            if unreachable.contains(p) || t.facts().contains(p) {
                continue;
            }
            let all = t.rules().iter().enumerate().all(|(i, r)| {
                if r.consequent() != p {
                    return true;
                }
                contradiction_based[i] || r.antecedent().iter().any(|d| unreachable.contains(d))
            });
            if all {
                unreachable.insert(p.clone());
                changed = true;
            }
        }
        if !changed {
            return unreachable;
        }
    }
}

/// True iff `p` has a support tree whose literal set contains no
/// complementary pair: a non-contradictory support.
///
/// This is exactly when some superiority relation defeasibly proves `p` on
/// a fact-free defeasible theory. Given such a tree, letting every tree
/// rule beat every rule for the complement of its head is acyclic (the tree
/// is contradiction-free, so no tree rule heads a complement of another)
/// and proves the whole tree bottom-up. Conversely a defeasible proof of
/// `p` unfolds into such a tree, since two complementary proved literals
/// would make the theory inconsistent. The dependency-based unreachability
/// of [`is_unreachable`] over-approximates this: its universal
/// quantification over rules dilutes dependencies as soon as a literal has
/// alternative rules, missing e.g. `rc: => c. rb: c => b. r: b => ~c.`
/// where every tree for ~c runs through c.
pub fn has_contradiction_free_support(t: &Theory, p: &Literal) -> bool {
    fn solve(
        t: &Theory,
        q: &Literal,
        chosen: &mut BTreeSet<Literal>,
        path: &mut Vec<Literal>,
    ) -> bool {
        if chosen.contains(&q.complement()) {
            return false;
        }
        if t.facts().contains(q) {
            chosen.insert(q.clone());
            return true;
        }
        if path.contains(q) {
            return false; // no well-founded derivation through a loop
        }
        path.push(q.clone());
        for r in t.rules_for(q, RuleRestriction::StrictAndDefeasible) {
            let snapshot = chosen.clone();
            chosen.insert(q.clone());
            if r.antecedent().iter().all(|a| solve(t, a, chosen, path)) {
                path.pop();
                return true;
            }
            *chosen = snapshot;
        }
        path.pop();
        false
    }
    let mut chosen = BTreeSet::new();
    let mut path = Vec::new();
    solve(t, p, &mut chosen, &mut path)
}

/// Decisiveness record: whether every universe literal is ∂-decided, plus
/// the acyclic-atom-dependency-graph shortcut that suffices for it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Decisiveness {
    pub decisive: bool,
    pub atom_graph_acyclic: bool,
}

pub fn decisiveness(t: &Theory) -> Decisiveness {
    let c = Compiled::new(t);
    let beats = c.beats(t.superiority());
    let partial = c.solve_partial(&beats);
    let decisive = partial.iter().all(|&v| v != Tv::Undec);
    Decisiveness {
        decisive,
        atom_graph_acyclic: atom_dependency_graph(t).is_acyclic(),
    }
}

/// True iff every universe literal is either defeasibly proved or refuted.
pub fn is_decisive(t: &Theory) -> bool {
    decisiveness(t).decisive
}

/// Atom-level dependency graph: an edge from each antecedent atom to the
/// consequent atom of every rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AtomDependencyGraph {
    pub atoms: BTreeSet<String>,
    pub edges: BTreeSet<(String, String)>,
}

impl AtomDependencyGraph {
    pub fn is_acyclic(&self) -> bool {
        let mut adj: HashMap<&str, Vec<&str>> = HashMap::new();
        for (a, b) in &self.edges {
            adj.entry(a.as_str()).or_default().push(b.as_str());
        }
        let mut colour: HashMap<&str, u8> = HashMap::new();
        for start in self.atoms.iter() {
            if colour.get(start.as_str()).copied().unwrap_or(0) != 0 {
                continue;
            }
            let mut stack: Vec<(&str, usize)> = vec![(start.as_str(), 0)];
            colour.insert(start.as_str(), 1);
            while let Some((node, idx)) = stack.pop() {
                match adj.get(node).and_then(|v| v.get(idx)).copied() {
                    Some(child) => {
                        stack.push((node, idx + 1));
                        match colour.get(child).copied().unwrap_or(0) {
                            0 => {
                                colour.insert(child, 1);
                                stack.push((child, 0));
                            }
                            1 => return false,
                            _ => {}
                        }
                    }
                    None => {
                        colour.insert(node, 2);
                    }
                }
            }
        }
        true
    }
}

pub fn atom_dependency_graph(t: &Theory) -> AtomDependencyGraph {
    let atoms: BTreeSet<String> = t.universe().iter().map(|l| l.atom().to_string()).collect();
    let mut edges = BTreeSet::new();
    for r in t.rules() {
        for a in r.antecedent() {
            edges.insert((a.atom().to_string(), r.consequent().atom().to_string()));
        }
    }
    AtomDependencyGraph { atoms, edges }
}

/// A support chain for a literal: its rule plus one subtree per antecedent.
/// Facts support themselves as leaves. Defeaters never appear.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SupportTree {
    Fact(Literal),
    Derived {
        root: Literal,
        rule_label: String,
        children: Vec<SupportTree>,
    },
}

impl SupportTree {
    pub fn root(&self) -> &Literal {
        match self {
            SupportTree::Fact(l) => l,
            SupportTree::Derived { root, .. } => root,
        }
    }

    /// The rule used at the root, if any.
    pub fn rule_label(&self) -> Option<&str> {
        match self {
            SupportTree::Fact(_) => None,
            SupportTree::Derived { rule_label, .. } => Some(rule_label),
        }
    }
}

impl fmt::Display for SupportTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportTree::Fact(l) => write!(f, "fact({})", l),
            SupportTree::Derived {
                root,
                rule_label,
                children,
            } => {
                write!(f, "{}[{}]", root, rule_label)?;
                if !children.is_empty() {
                    write!(f, "(")?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", c)?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

/// Enumerates distinct support trees for `q`, label-lexicographically, up to
/// `limit`. Nonempty exactly when +Σq holds.
pub fn support_trees(t: &Theory, q: &Literal, limit: usize) -> Vec<SupportTree> {
    assert!(limit >= 1, "limit must be at least 1");
    let mut path: Vec<Literal> = Vec::new();
    trees_rec(t, q, &mut path, limit)
}

fn trees_rec(t: &Theory, q: &Literal, path: &mut Vec<Literal>, limit: usize) -> Vec<SupportTree> {
    if path.contains(q) {
        return Vec::new();
    }
    let mut out = Vec::new();
    if t.facts().contains(q) {
        out.push(SupportTree::Fact(q.clone()));
    }
    path.push(q.clone());
    for r in t.rules_for(q, RuleRestriction::StrictAndDefeasible) {
        if out.len() >= limit {
            break;
        }
        let mut child_options: Vec<Vec<SupportTree>> = Vec::new();
        let mut feasible = true;
        for a in r.antecedent() {
            let opts = trees_rec(t, a, path, limit);
            if opts.is_empty() {
                feasible = false;
                break;
            }
            child_options.push(opts);
        }
        if !feasible {
            continue;
        }
        // cartesian product over antecedent subtrees, first antecedent major
        let mut idx = vec![0usize; child_options.len()];
        'prod: loop {
            let children: Vec<SupportTree> = idx
                .iter()
                .zip(&child_options)
                .map(|(&i, opts)| opts[i].clone())
                .collect();
            out.push(SupportTree::Derived {
                root: q.clone(),
                rule_label: r.label().to_string(),
                children,
            });
            if out.len() >= limit {
                break;
            }
            // odometer, last position fastest
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    break 'prod;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < child_options[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    path.pop();
    out.truncate(limit);
    out
}

/// All unordered pairs of rules with complementary heads, as (min, max)
/// label pairs.
pub fn conflicting_pairs(t: &Theory) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for r in t.rules() {
        for s in t.rules_for(&r.consequent().complement(), RuleRestriction::All) {
            let (a, b) = if r.label() < s.label() {
                (r.label().to_string(), s.label().to_string())
            } else {
                (s.label().to_string(), r.label().to_string())
            };
            out.insert((a, b));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub required: u64,
    pub budget: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enumeration needs {} candidates, budget is {}",
            self.required, self.budget
        )
    }
}

impl std::error::Error for BudgetExceeded {}

pub(crate) fn pow3(k: usize) -> u64 {
    3u64.saturating_pow(k as u32)
}

/// Base-3 odometer over pair states. State per pair: 0 incomparable,
/// 1 first-beats-second, 2 second-beats-first.
pub(crate) struct PairAssignments {
    k: usize,
    state: Vec<u8>,
    done: bool,
}

impl PairAssignments {
    pub fn new(k: usize) -> PairAssignments {
        PairAssignments {
            k,
            state: vec![0; k],
            done: false,
        }
    }
}

impl Iterator for PairAssignments {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let current = self.state.clone();
        // increment, last pair fastest
        let mut pos = self.k;
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.state[pos] += 1;
            if self.state[pos] < 3 {
                break;
            }
            self.state[pos] = 0;
        }
        Some(current)
    }
}

pub(crate) fn tuples_of_assignment(
    pairs: &[(String, String)],
    state: &[u8],
) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for (i, (a, b)) in pairs.iter().enumerate() {
        match state[i] {
            1 => {
                out.insert((a.clone(), b.clone()));
            }
            2 => {
                out.insert((b.clone(), a.clone()));
            }
            _ => {}
        }
    }
    out
}

/// Cycle check over rule-id edges; `n` bounds the id space.
pub(crate) fn edges_acyclic(edges: &[(usize, usize)], n: usize) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    let mut colour = vec![0u8; n];
    for start in 0..n {
        if colour[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        colour[start] = 1;
        while let Some((node, idx)) = stack.pop() {
            match adj[node].get(idx).copied() {
                Some(child) => {
                    stack.push((node, idx + 1));
                    match colour[child] {
                        0 => {
                            colour[child] = 1;
                            stack.push((child, 0));
                        }
                        1 => return false,
                        _ => {}
                    }
                }
                None => colour[node] = 2,
            }
        }
    }
    true
}

fn tuples_acyclic(tuples: &BTreeSet<(String, String)>) -> bool {
    let labels: BTreeSet<String> = tuples
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    let sup = Superiority::from_tuples(tuples.iter().cloned()).expect("pairs are irreflexive");
    crate::theory::check_acyclic(&sup, &labels).expect("labels cover tuples")
}

/// Iterator over every acyclic assignment where each conflicting pair is in
/// one of its three states. Deterministic order, no duplicates.
pub struct SuperiorityEnumerator {
    pairs: Vec<(String, String)>,
    inner: PairAssignments,
}

impl Iterator for SuperiorityEnumerator {
    type Item = Superiority;

    fn next(&mut self) -> Option<Superiority> {
        loop {
            let state = self.inner.next()?;
            let tuples = tuples_of_assignment(&self.pairs, &state);
            if tuples_acyclic(&tuples) {
                return Some(
                    Superiority::from_tuples(tuples).expect("conflicting pairs are irreflexive"),
                );
            }
        }
    }
}

/// Enumerates superiority relations over the conflicting pairs of `t`.
///
/// Tuples between non-conflicting rules never influence conclusions (the
/// proof conditions consult the relation only when comparing rules with
/// complementary heads), so the 3^k pair assignments cover all distinct
/// behaviours.
pub fn enumerate_superiorities(
    t: &Theory,
    budget: u64,
) -> Result<SuperiorityEnumerator, BudgetExceeded> {
    let pairs: Vec<(String, String)> = conflicting_pairs(t).into_iter().collect();
    let required = pow3(pairs.len());
    if required > budget {
        return Err(BudgetExceeded { required, budget });
    }
    Ok(SuperiorityEnumerator {
        inner: PairAssignments::new(pairs.len()),
        pairs,
    })
}

/// Outcome of classifying a literal against all theories based on the rule
/// set: proved under every relation, refuted under some, neither, or not
/// decided within budget.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RefutabilityClass {
    Tautological,
    Refutable,
    Neither,
    ExhaustedBudget,
}

impl RefutabilityClass {
    pub fn ascii_name(self) -> &'static str {
        match self {
            RefutabilityClass::Tautological => "tautological",
            RefutabilityClass::Refutable => "refutable",
            RefutabilityClass::Neither => "neither",
            RefutabilityClass::ExhaustedBudget => "exhausted_budget",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RefutabilityReport {
    pub class: RefutabilityClass,
    /// A relation under which the literal is refuted, when refutable.
    pub witness: Option<Superiority>,
    pub candidates_examined: u64,
    /// Candidates the full enumeration would need, when budget-exhausted.
    pub required: Option<u64>,
    pub proved_count: u64,
    pub refuted_count: u64,
    pub undecided_count: u64,
}

/// Classifies `p` against every theory based on the rule set of `t` (facts
/// forced empty, superiority ranging over the conflicting pairs).
pub fn classify_refutability(t: &Theory, p: &Literal, budget: u64) -> RefutabilityReport {
    let based = Theory::new(BTreeSet::new(), t.rules().to_vec(), Superiority::empty())
        .expect("rule set was already valid");
    let pairs: Vec<(String, String)> = conflicting_pairs(&based).into_iter().collect();
    let required = pow3(pairs.len());
    if required > budget {
        return RefutabilityReport {
            class: RefutabilityClass::ExhaustedBudget,
            witness: None,
            candidates_examined: 0,
            required: Some(required),
            proved_count: 0,
            refuted_count: 0,
            undecided_count: 0,
        };
    }
    let c = Compiled::new(&based);
    let pair_ids: Vec<(usize, usize)> = pairs
        .iter()
        .map(|(a, b)| (c.label_ids[a], c.label_ids[b]))
        .collect();
    let pid = c.lit_ids.get(p).copied();
    let n_rules = based.rules().len();

    let mut examined = 0u64;
    let mut proved = 0u64;
    let mut refuted = 0u64;
    let mut undecided = 0u64;
    let mut witness: Option<Superiority> = None;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
    for state in PairAssignments::new(pairs.len()) {
        edges.clear();
        for (i, &(a, b)) in pair_ids.iter().enumerate() {
            match state[i] {
                1 => edges.push((a, b)),
                2 => edges.push((b, a)),
                _ => {}
            }
        }
        if !edges_acyclic(&edges, n_rules) {
            continue;
        }
        examined += 1;
        let beats: crate::engine::Beats = edges.iter().copied().collect();
        let partial = c.solve_partial(&beats);
        let v = match pid {
            Some(id) => partial[id],
            None => Tv::Minus, // out of universe: vacuously refuted
        };
        match v {
            Tv::Plus => proved += 1,
            Tv::Minus => {
                refuted += 1;
                if witness.is_none() {
                    witness = Some(
                        Superiority::from_tuples(tuples_of_assignment(&pairs, &state))
                            .expect("pairs are irreflexive"),
                    );
                }
            }
            Tv::Undec => undecided += 1,
        }
    }
    let class = if refuted > 0 {
        RefutabilityClass::Refutable
    } else if proved == examined && examined > 0 {
        RefutabilityClass::Tautological
    } else {
        RefutabilityClass::Neither
    };
    RefutabilityReport {
        class,
        witness,
        candidates_examined: examined,
        required: None,
        proved_count: proved,
        refuted_count: refuted,
        undecided_count: undecided,
    }
}
