//! Domain types: literals, rules, superiority relations and theories.
//!
//! A theory is a triple of facts, rules and an acyclic superiority relation
//! over rule labels. All values are immutable once constructed; every
//! constructor enforces the structural invariants, so downstream code never
//! has to re-validate.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A propositional literal: an atom with a polarity.
///
/// Ordering is atom-lexicographic with the positive literal before its
/// negation, which is the ordering used for every serialized listing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    atom: String,
    positive: bool,
}

impl Literal {
    /// Builds a literal, validating the atom against
    /// `[a-zA-Z_][a-zA-Z0-9_]*`.
    pub fn new(atom: &str, positive: bool) -> Result<Literal, TheoryError> {
        if !is_identifier(atom) {
            return Err(TheoryError::BadIdentifier(atom.to_string()));
        }
        Ok(Literal {
            atom: atom.to_string(),
            positive,
        })
    }

    pub fn positive(atom: &str) -> Literal {
        Literal::new(atom, true).expect("invalid atom")
    }

    pub fn negative(atom: &str) -> Literal {
        Literal::new(atom, false).expect("invalid atom")
    }

    pub fn atom(&self) -> &str {
        &self.atom
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// The complementary literal: flips the polarity and nothing else.
    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        // positive sorts before negative for the same atom
        (&self.atom, !self.positive).cmp(&(&other.atom, !other.positive))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "~{}", self.atom)
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Rule kinds: strict (`->`), defeasible (`=>`) and defeater (`~>`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RuleKind {
    Strict,
    Defeasible,
    Defeater,
}

impl RuleKind {
    pub fn arrow(self) -> &'static str {
        match self {
            RuleKind::Strict => "->",
            RuleKind::Defeasible => "=>",
            RuleKind::Defeater => "~>",
        }
    }
}

/// A labelled rule with a finite antecedent set and a single consequent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule {
    label: String,
    antecedent: Vec<Literal>, // sorted, duplicate-free
    kind: RuleKind,
    consequent: Literal,
}

impl Rule {
    pub fn new(
        label: &str,
        antecedent: Vec<Literal>,
        kind: RuleKind,
        consequent: Literal,
    ) -> Result<Rule, TheoryError> {
        if !is_identifier(label) {
            return Err(TheoryError::BadIdentifier(label.to_string()));
        }
        let mut ants: Vec<Literal> = antecedent;
        ants.sort();
        ants.dedup();
        Ok(Rule {
            label: label.to_string(),
            antecedent: ants,
            kind,
            consequent,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn antecedent(&self) -> &[Literal] {
        &self.antecedent
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn consequent(&self) -> &Literal {
        &self.consequent
    }

    /// Strict and defeasible rules support conclusions; defeaters only block.
    pub fn supports(&self) -> bool {
        self.kind != RuleKind::Defeater
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.label)?;
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", a)?;
        }
        if !self.antecedent.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "{} {}.", self.kind.arrow(), self.consequent)
    }
}

/// An acyclic, irreflexive relation over rule labels: `(winner, loser)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Superiority {
    tuples: BTreeSet<(String, String)>,
}

impl Superiority {
    pub fn empty() -> Superiority {
        Superiority::default()
    }

    /// Builds a relation from tuples, deduplicating (set semantics) and
    /// rejecting reflexive pairs. Acyclicity and label existence are checked
    /// against a concrete rule set by [`Theory::new`] / [`check_acyclic`].
    pub fn from_tuples<I>(tuples: I) -> Result<Superiority, TheoryError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut set = BTreeSet::new();
        for (w, l) in tuples {
            if w == l {
                return Err(TheoryError::ReflexiveSuperiority(w));
            }
            set.insert((w, l));
        }
        Ok(Superiority { tuples: set })
    }

    pub fn tuples(&self) -> &BTreeSet<(String, String)> {
        &self.tuples
    }

    pub fn contains(&self, winner: &str, loser: &str) -> bool {
        self.tuples
            .contains(&(winner.to_string(), loser.to_string()))
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

/// True iff the digraph induced by `s` over `labels` is cycle-free.
///
/// Errors if a tuple names a label outside `labels`.
pub fn check_acyclic(s: &Superiority, labels: &BTreeSet<String>) -> Result<bool, TheoryError> {
    let mut adj: HashMap<&str, Vec<&str>> = HashMap::new();
    for (w, l) in s.tuples() {
        if !labels.contains(w) {
            return Err(TheoryError::UnknownRuleLabel(w.clone()));
        }
        if !labels.contains(l) {
            return Err(TheoryError::UnknownRuleLabel(l.clone()));
        }
        adj.entry(w.as_str()).or_default().push(l.as_str());
    }
    // iterative DFS with colouring
    let mut colour: HashMap<&str, u8> = HashMap::new(); // 1 = on stack, 2 = done
    for start in adj.keys().copied().collect::<Vec<_>>() {
        if colour.get(start).copied().unwrap_or(0) != 0 {
            continue;
        }
        let mut stack: Vec<(&str, usize)> = vec![(start, 0)];
        colour.insert(start, 1);
        while let Some((node, idx)) = stack.pop() {
            let next = adj.get(node).and_then(|v| v.get(idx)).copied();
            match next {
                Some(child) => {
                    stack.push((node, idx + 1));
                    match colour.get(child).copied().unwrap_or(0) {
                        0 => {
                            colour.insert(child, 1);
                            stack.push((child, 0));
                        }
                        1 => return Ok(false),
                        _ => {}
                    }
                }
                None => {
                    colour.insert(node, 2);
                }
            }
        }
    }
    Ok(true)
}

/// Errors raised while constructing theories or their parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoryError {
    BadIdentifier(String),
    DuplicateRuleLabel(String),
    InconsistentFacts(String),
    ReflexiveSuperiority(String),
    CyclicSuperiority,
    UnknownRuleLabel(String),
}

impl fmt::Display for TheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryError::BadIdentifier(s) => write!(f, "invalid identifier `{}`", s),
            TheoryError::DuplicateRuleLabel(l) => write!(f, "duplicate rule label `{}`", l),
            TheoryError::InconsistentFacts(a) => {
                write!(f, "inconsistent facts: both `{}` and `~{}`", a, a)
            }
            TheoryError::ReflexiveSuperiority(l) => {
                write!(f, "superiority tuple `{} > {}` is reflexive", l, l)
            }
            TheoryError::CyclicSuperiority => write!(f, "superiority relation has a cycle"),
            TheoryError::UnknownRuleLabel(l) => {
                write!(f, "superiority names unknown rule label `{}`", l)
            }
        }
    }
}

impl std::error::Error for TheoryError {}

/// A defeasible theory: facts, rules and an acyclic superiority relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Theory {
    facts: BTreeSet<Literal>,
    rules: Vec<Rule>, // sorted by label
    superiority: Superiority,
}

impl Theory {
    pub fn new(
        facts: BTreeSet<Literal>,
        mut rules: Vec<Rule>,
        superiority: Superiority,
    ) -> Result<Theory, TheoryError> {
        for l in &facts {
            if facts.contains(&l.complement()) {
                return Err(TheoryError::InconsistentFacts(l.atom().to_string()));
            }
        }
        rules.sort_by(|a, b| a.label.cmp(&b.label));
        let mut labels = BTreeSet::new();
        for r in &rules {
            if !labels.insert(r.label.clone()) {
                return Err(TheoryError::DuplicateRuleLabel(r.label.clone()));
            }
        }
        if !check_acyclic(&superiority, &labels)? {
            return Err(TheoryError::CyclicSuperiority);
        }
        Ok(Theory {
            facts,
            rules,
            superiority,
        })
    }

    pub fn empty() -> Theory {
        Theory {
            facts: BTreeSet::new(),
            rules: Vec::new(),
            superiority: Superiority::empty(),
        }
    }

    pub fn facts(&self) -> &BTreeSet<Literal> {
        &self.facts
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn superiority(&self) -> &Superiority {
        &self.superiority
    }

    pub fn rule(&self, label: &str) -> Option<&Rule> {
        self.rules
            .binary_search_by(|r| r.label.as_str().cmp(label))
            .ok()
            .map(|i| &self.rules[i])
    }

    pub fn rule_labels(&self) -> BTreeSet<String> {
        self.rules.iter().map(|r| r.label.clone()).collect()
    }

    /// Same facts and rules with a different superiority relation.
    pub fn with_superiority(&self, superiority: Superiority) -> Result<Theory, TheoryError> {
        if !check_acyclic(&superiority, &self.rule_labels())? {
            return Err(TheoryError::CyclicSuperiority);
        }
        Ok(Theory {
            facts: self.facts.clone(),
            rules: self.rules.clone(),
            superiority,
        })
    }

    /// Rules with head `q`, optionally restricted by kind class:
    /// all of them, the strict ones, or the strict and defeasible ones.
    pub fn rules_for(&self, q: &Literal, restrict: RuleRestriction) -> Vec<&Rule> {
        self.rules
            .iter()
            .filter(|r| r.consequent == *q)
            .filter(|r| match restrict {
                RuleRestriction::All => true,
                RuleRestriction::Strict => r.kind == RuleKind::Strict,
                RuleRestriction::StrictAndDefeasible => r.kind != RuleKind::Defeater,
            })
            .collect()
    }

    /// Literals literally occurring in the theory: facts, antecedents and
    /// consequents. Belief sets are restricted to this set.
    pub fn appearing_literals(&self) -> BTreeSet<Literal> {
        let mut out = self.facts.clone();
        for r in &self.rules {
            out.extend(r.antecedent.iter().cloned());
            out.insert(r.consequent.clone());
        }
        out
    }

    /// The literal universe: every appearing literal together with its
    /// complement. All tag computation ranges over this set; closing under
    /// complement is what makes negative tags for unopposed heads evaluable.
    pub fn universe(&self) -> BTreeSet<Literal> {
        let mut out = self.appearing_literals();
        let comps: Vec<Literal> = out.iter().map(|l| l.complement()).collect();
        out.extend(comps);
        out
    }

    pub fn has_non_defeasible_rules(&self) -> bool {
        self.rules.iter().any(|r| r.kind != RuleKind::Defeasible)
    }

    /// Canonical text form: facts line, rules sorted by label, then
    /// superiority tuples sorted lexicographically. Parsing the output
    /// yields back an equal theory.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("facts:");
        for (i, l) in self.facts.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push(' ');
            out.push_str(&l.to_string());
        }
        out.push_str(".\n");
        for r in &self.rules {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        for (w, l) in self.superiority.tuples() {
            out.push_str(&format!("{} > {}.\n", w, l));
        }
        out
    }
}

/// Kind-class filter for [`Theory::rules_for`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleRestriction {
    All,
    Strict,
    StrictAndDefeasible,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Literal {
        if let Some(a) = s.strip_prefix('~') {
            Literal::negative(a)
        } else {
            Literal::positive(s)
        }
    }

    #[test]
    fn complement_is_involutive() {
        let l = lit("~a");
        assert_eq!(l.complement(), lit("a"));
        assert_eq!(l.complement().complement(), l);
    }

    #[test]
    fn literal_ordering_positive_first() {
        let mut v = vec![lit("~a"), lit("b"), lit("a"), lit("~b")];
        v.sort();
        assert_eq!(v, vec![lit("a"), lit("~a"), lit("b"), lit("~b")]);
    }

    #[test]
    fn inconsistent_facts_rejected() {
        let facts: BTreeSet<Literal> = [lit("a"), lit("~a")].into_iter().collect();
        let err = Theory::new(facts, vec![], Superiority::empty()).unwrap_err();
        assert_eq!(err, TheoryError::InconsistentFacts("a".to_string()));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r1 = Rule::new("r", vec![], RuleKind::Defeasible, lit("a")).unwrap();
        let r2 = Rule::new("r", vec![], RuleKind::Defeasible, lit("b")).unwrap();
        let err = Theory::new(BTreeSet::new(), vec![r1, r2], Superiority::empty()).unwrap_err();
        assert_eq!(err, TheoryError::DuplicateRuleLabel("r".to_string()));
    }

    #[test]
    fn acyclicity_checks() {
        let labels: BTreeSet<String> = ["r1", "r2", "r3"].iter().map(|s| s.to_string()).collect();
        let empty = Superiority::empty();
        assert!(check_acyclic(&empty, &labels).unwrap());

        let two = Superiority::from_tuples([
            ("r1".to_string(), "r2".to_string()),
            ("r2".to_string(), "r1".to_string()),
        ])
        .unwrap();
        assert!(!check_acyclic(&two, &labels).unwrap());

        let three = Superiority::from_tuples([
            ("r1".to_string(), "r2".to_string()),
            ("r2".to_string(), "r3".to_string()),
            ("r3".to_string(), "r1".to_string()),
        ])
        .unwrap();
        assert!(!check_acyclic(&three, &labels).unwrap());

        let chain = Superiority::from_tuples([
            ("r1".to_string(), "r2".to_string()),
            ("r2".to_string(), "r3".to_string()),
        ])
        .unwrap();
        assert!(check_acyclic(&chain, &labels).unwrap());

        let unknown = Superiority::from_tuples([("r1".to_string(), "rX".to_string())]).unwrap();
        assert_eq!(
            check_acyclic(&unknown, &labels).unwrap_err(),
            TheoryError::UnknownRuleLabel("rX".to_string())
        );
    }

    #[test]
    fn rules_for_filters_by_kind() {
        let r1 = Rule::new("r1", vec![], RuleKind::Strict, lit("a")).unwrap();
        let r2 = Rule::new("r2", vec![], RuleKind::Defeasible, lit("a")).unwrap();
        let r3 = Rule::new("r3", vec![], RuleKind::Defeater, lit("a")).unwrap();
        let t = Theory::new(BTreeSet::new(), vec![r1, r2, r3], Superiority::empty()).unwrap();
        assert_eq!(t.rules_for(&lit("a"), RuleRestriction::All).len(), 3);
        assert_eq!(t.rules_for(&lit("a"), RuleRestriction::Strict).len(), 1);
        assert_eq!(
            t.rules_for(&lit("a"), RuleRestriction::StrictAndDefeasible)
                .len(),
            2
        );
        assert!(t.rules_for(&lit("b"), RuleRestriction::All).is_empty());
    }

    #[test]
    fn universe_closes_under_complement() {
        let r = Rule::new("r", vec![lit("a")], RuleKind::Defeasible, lit("~b")).unwrap();
        let t = Theory::new(BTreeSet::new(), vec![r], Superiority::empty()).unwrap();
        let u = t.universe();
        for l in ["a", "~a", "b", "~b"] {
            assert!(u.contains(&lit(l)), "universe missing {}", l);
        }
        assert_eq!(u.len(), 4);
    }
}
