//! Proof tags and tag assignments.
//!
//! Six tag families, each signed: Δ (definite provability), φ (unopposable
//! chains), ∂ (defeasible provability), ω (chains with defeasibly proved
//! antecedents), σ (undefeated chains), Σ (bare chains). A
//! [`TagAssignment`] records, for every literal in a theory's universe and
//! every family, whether the positive condition was derived, the negative
//! one, or neither.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt;

use crate::theory::Literal;

/// Tag family, in the fixed report order Δ, φ, ∂, ω, σ, Σ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TagFamily {
    /// Δ: definite (strict) provability.
    Delta,
    /// φ: a chain none of whose elements has any opposing rule.
    Phi,
    /// ∂: defeasible provability.
    Partial,
    /// ω: a chain whose antecedents are all defeasibly proved.
    Omega,
    /// σ: a chain not defeated by any applicable attacking chain.
    SigmaSupport,
    /// Σ: a supporting reasoning chain exists.
    SigmaChain,
}

pub const FAMILIES: [TagFamily; 6] = [
    TagFamily::Delta,
    TagFamily::Phi,
    TagFamily::Partial,
    TagFamily::Omega,
    TagFamily::SigmaSupport,
    TagFamily::SigmaChain,
];

impl TagFamily {
    pub fn index(self) -> usize {
        match self {
            TagFamily::Delta => 0,
            TagFamily::Phi => 1,
            TagFamily::Partial => 2,
            TagFamily::Omega => 3,
            TagFamily::SigmaSupport => 4,
            TagFamily::SigmaChain => 5,
        }
    }

    /// ASCII name used by reports and the command line.
    pub fn ascii_name(self) -> &'static str {
        match self {
            TagFamily::Delta => "delta",
            TagFamily::Phi => "phi",
            TagFamily::Partial => "partial",
            TagFamily::Omega => "omega",
            TagFamily::SigmaSupport => "support",
            TagFamily::SigmaChain => "chain",
        }
    }

    pub fn from_ascii(s: &str) -> Option<TagFamily> {
        match s {
            "delta" => Some(TagFamily::Delta),
            "phi" => Some(TagFamily::Phi),
            "partial" => Some(TagFamily::Partial),
            "omega" => Some(TagFamily::Omega),
            "support" => Some(TagFamily::SigmaSupport),
            "chain" => Some(TagFamily::SigmaChain),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// A signed proof tag, e.g. `+∂` or `-Σ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ProofTag {
    pub family: TagFamily,
    pub sign: Sign,
}

impl ProofTag {
    pub fn plus(family: TagFamily) -> ProofTag {
        ProofTag {
            family,
            sign: Sign::Plus,
        }
    }

    pub fn minus(family: TagFamily) -> ProofTag {
        ProofTag {
            family,
            sign: Sign::Minus,
        }
    }

    /// Parses the command-line spelling, e.g. `+partial`, `-chain`.
    pub fn from_ascii(s: &str) -> Option<ProofTag> {
        let (sign, rest) = if let Some(r) = s.strip_prefix('+') {
            (Sign::Plus, r)
        } else {
            (Sign::Minus, s.strip_prefix('-')?)
        };
        TagFamily::from_ascii(rest).map(|family| ProofTag { family, sign })
    }
}

impl fmt::Display for ProofTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{}{}", s, self.family.ascii_name())
    }
}

/// Status of one (family, literal) cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TagValue {
    ProvenPlus,
    ProvenMinus,
    Undecided,
}

/// The full tag assignment of a theory over its literal universe.
///
/// Literals outside the universe answer as vacuously refuted: every negative
/// condition holds for a literal with no rules that is not a fact.
#[derive(Clone, Debug)]
pub struct TagAssignment {
    literals: Vec<Literal>, // sorted
    index: HashMap<Literal, usize>,
    status: [Vec<TagValue>; 6],
}

impl TagAssignment {
    pub(crate) fn new(literals: Vec<Literal>, status: [Vec<TagValue>; 6]) -> TagAssignment {
        let index = literals
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        TagAssignment {
            literals,
            index,
            status,
        }
    }

    /// Universe literals in report order.
    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn get(&self, family: TagFamily, lit: &Literal) -> TagValue {
        match self.index.get(lit) {
            Some(&i) => self.status[family.index()][i],
            None => TagValue::ProvenMinus,
        }
    }

    pub fn holds(&self, tag: ProofTag, lit: &Literal) -> bool {
        matches!(
            (tag.sign, self.get(tag.family, lit)),
            (Sign::Plus, TagValue::ProvenPlus) | (Sign::Minus, TagValue::ProvenMinus)
        )
    }

    /// Minimal provable tag on each side, over the five defeasible-tag
    /// families (Δ is omitted, matching the conclusion-table convention).
    ///
    /// "Minimal" means strongest: the earliest family in the implication
    /// chain whose condition was derived. Where ω and σ are incomparable the
    /// σ cell wins the tie on the positive side.
    pub fn minimal_cells(&self, lit: &Literal) -> (Option<TagFamily>, Option<TagFamily>) {
        const POS: [TagFamily; 5] = [
            TagFamily::Phi,
            TagFamily::Partial,
            TagFamily::SigmaSupport,
            TagFamily::Omega,
            TagFamily::SigmaChain,
        ];
        const NEG: [TagFamily; 5] = [
            TagFamily::SigmaChain,
            TagFamily::SigmaSupport,
            TagFamily::Omega,
            TagFamily::Partial,
            TagFamily::Phi,
        ];
        let pos = POS
            .iter()
            .copied()
            .find(|&f| self.get(f, lit) == TagValue::ProvenPlus);
        let neg = NEG
            .iter()
            .copied()
            .find(|&f| self.get(f, lit) == TagValue::ProvenMinus);
        (pos, neg)
    }

    /// Checks mutual exclusivity and both implication-chain closures,
    /// returning the first offending (literal, description) if any.
    ///
    /// The closures are guaranteed for theories whose strict part never
    /// proves the complement of a defeasibly supported literal; in
    /// particular for every theory with empty facts.
    pub fn validate(&self) -> Result<(), (Literal, String)> {
        use TagFamily::*;
        use TagValue::*;
        let positive_edges: [(TagFamily, TagFamily); 6] = [
            (Delta, Phi),
            (Phi, Partial),
            (Partial, Omega),
            (Partial, SigmaSupport),
            (Omega, SigmaChain),
            (SigmaSupport, SigmaChain),
        ];
        let negative_edges: [(TagFamily, TagFamily); 6] = [
            (SigmaChain, Omega),
            (SigmaChain, SigmaSupport),
            (Omega, Partial),
            (SigmaSupport, Partial),
            (Partial, Phi),
            (Phi, Delta),
        ];
        for (i, lit) in self.literals.iter().enumerate() {
            for &(a, b) in &positive_edges {
                if self.status[a.index()][i] == ProvenPlus
                    && self.status[b.index()][i] != ProvenPlus
                {
                    return Err((
                        lit.clone(),
                        format!("+{} does not imply +{}", a.ascii_name(), b.ascii_name()),
                    ));
                }
            }
            for &(a, b) in &negative_edges {
                if self.status[a.index()][i] == ProvenMinus
                    && self.status[b.index()][i] != ProvenMinus
                {
                    return Err((
                        lit.clone(),
                        format!("-{} does not imply -{}", a.ascii_name(), b.ascii_name()),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Report: one line per literal, `lit<TAB>+tags<TAB>-tags`, in the fixed
    /// family order Δ, φ, ∂, ω, σ, Σ; `-` stands for an empty tag list.
    pub fn report<'a, I>(&self, literals: I) -> String
    where
        I: IntoIterator<Item = &'a Literal>,
    {
        let mut out = String::new();
        for lit in literals {
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for fam in FAMILIES {
                match self.get(fam, lit) {
                    TagValue::ProvenPlus => plus.push(format!("+{}", fam.ascii_name())),
                    TagValue::ProvenMinus => minus.push(format!("-{}", fam.ascii_name())),
                    TagValue::Undecided => {}
                }
            }
            let plus = if plus.is_empty() {
                "-".to_string()
            } else {
                plus.join(",")
            };
            let minus = if minus.is_empty() {
                "-".to_string()
            } else {
                minus.join(",")
            };
            out.push_str(&format!("{}\t{}\t{}\n", lit, plus, minus));
        }
        out
    }
}

/// The defeasible extension: the +∂ and -∂ literal sets over the universe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Extension {
    pub plus_partial: BTreeSet<Literal>,
    pub minus_partial: BTreeSet<Literal>,
}

/// Belief set: the ∂ projection restricted to literals appearing in the
/// theory. A literal may belong to neither side when ∂ is undecided for it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BeliefSet {
    pub believed: BTreeSet<Literal>,
    pub disbelieved: BTreeSet<Literal>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prooftag_ascii_round_trip() {
        for fam in FAMILIES {
            for sign in [Sign::Plus, Sign::Minus] {
                let t = ProofTag { family: fam, sign };
                assert_eq!(ProofTag::from_ascii(&t.to_string()), Some(t));
            }
        }
        assert_eq!(ProofTag::from_ascii("partial"), None);
        assert_eq!(ProofTag::from_ascii("+nope"), None);
    }
}
