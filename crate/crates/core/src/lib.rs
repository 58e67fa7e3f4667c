//! Defeasible logic with an eight-tag proof theory and a toolkit for
//! changing a theory's conclusions by editing only its superiority relation.
//!
//! The crate is organised around a small set of layers:
//!
//! - [`theory`]: literals, rules, superiority relations and theories, plus a
//!   line-oriented text format ([`parse`]).
//! - [`engine`]: bottom-up fixpoint computation of the proof tags
//!   Δ, φ, ∂, ω, σ, Σ (each signed), extensions and belief sets.
//! - [`analysis`]: dependency/reachability analysis, support-chain
//!   extraction, and exhaustive enumeration of superiority relations.
//! - [`revision`]: the three canonical revision operators (contract, revise,
//!   expand) with instance classification and a verified search fallback.
//! - [`sat`]: the 3-CNF-to-theory transformation and a SAT decision routed
//!   through refutability search, with a truth-table oracle.
//! - [`agm`]: the AGM postulate audit harness over the revision operators.

pub mod agm;
pub mod analysis;
pub mod engine;
pub mod parse;
pub mod revision;
pub mod sat;
pub mod tags;
pub mod theory;

pub use analysis::{
    atom_dependency_graph, classify_refutability, conflicting_pairs, decisiveness,
    dependency_closure, depends_on, enumerate_superiorities, has_contradiction_free_support,
    is_decisive, is_unreachable, support_trees, unreachable_set, AtomDependencyGraph, Decisiveness,
    RefutabilityClass, RefutabilityReport, SupportTree,
};
pub use engine::{belief_set, compute_tags, extension, is_consistent, proves};
pub use parse::{parse_theory, ParseError};
pub use revision::{
    classify_instance, contract, expand, revise, search_revision, InstanceClass, RevisionError,
    RevisionGoal, RevisionOutcome, RevisionResult, Strategy,
};
pub use sat::{gamma_transform, parse_dimacs, sat_via_refutability, truth_table_sat, CnfFormula};
pub use tags::{BeliefSet, Extension, ProofTag, Sign, TagAssignment, TagFamily, TagValue};
pub use theory::{check_acyclic, Literal, Rule, RuleKind, Superiority, Theory, TheoryError};

/// Default candidate budget for exhaustive superiority-relation search: 3^12.
pub const DEFAULT_BUDGET: u64 = 531_441;
