//! Stackable group structures as bounded complete prefix-rewriting systems.
//!
//! A [`rewriting::StackingStructure`] packages a set of normal forms together
//! with a stacking map `φ(u, z)`; normalization then runs as prefix
//! rewriting. The [`groups`] module ships concrete instances (BS(1,2), the
//! Baumslag–Gersten group, and the groups `G_p`) along with algebraic
//! oracles that certify the rewriting systems independently.

pub mod automata;
pub mod diagrams;
pub mod groups;
pub mod hnn;
pub mod laurent;
pub mod rewriting;
pub mod words;

pub use words::{free_reduce, invert, parse_word, Alphabet, Letter, Word, WordError};
