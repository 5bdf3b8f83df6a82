//! Symbolic equational reasoning about monoid identities: combinatorics of
//! words (level decompositions, letter depth), direct deduction and bounded
//! proof search, generators for parametric identity families, finite-monoid
//! model checking, decidable word problems for two concrete varieties, and
//! named verification suites with machine-readable reports.

pub mod decomp;
pub mod families;
pub mod identity;
pub mod monoid;
pub mod paperlab;
pub mod variety;
pub mod words;

pub use decomp::{
    canonical_form, decompose, depth, dividers, h, max_level, strictly_infinite, subword_depth,
    well_balanced, Decomposition, Depth, DividerRef, FormDecomposition,
};
pub use identity::{
    derive, directly_deducible, first_witness, replay, Derivation, DeriveBudget, DeriveOutcome,
    DeductionWitness, Identity, Substitution,
};
pub use words::{is_balanced, Letter, LetterSet, OccRef, Word};
