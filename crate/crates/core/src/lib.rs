//! Ambiguity of finite automata presenting sofic shifts.
//!
//! An automaton in shift-space mode (every state initial and final)
//! presents the set of infinite sequences labelling its infinite runs. This
//! crate decides whether such an automaton is unambiguous in three
//! independent ways and cross-checks them:
//!
//! * combinatorially, by a flagged search of the pair graph
//!   ([`unambiguity`]);
//! * spectrally, by comparing the spectral radius of the adjacency matrix
//!   with the entropy of the shift ([`spectral`]);
//! * measure-theoretically, by deciding exactly whether the set of
//!   sequences with two runs from a state has measure zero under a rational
//!   measure ([`bifuture`], built on [`pair_graph`]), with Monte-Carlo
//!   estimates as a sanity check ([`simulation`]).
//!
//! All measure arithmetic is exact ([`rational`]).
//!
//! ```
//! use sofic::{catalog, unambiguity::check_unambiguous};
//!
//! let verdict = check_unambiguous(&catalog::fig3());
//! assert!(!verdict.unambiguous);
//! let w = verdict.witness.unwrap();
//! assert_eq!(w.describe(&catalog::fig3()), "word 00, runs 2→1→1 and 2→2→1");
//! ```

pub mod automaton;
pub mod bifuture;
pub mod catalog;
pub mod error;
pub mod format;
pub mod measure;
pub mod pair_graph;
pub mod random;
pub mod rational;
mod scc;
pub mod simulation;
pub mod spectral;
mod subset;
pub mod subshift;
pub mod unambiguity;
pub mod witness;

pub use automaton::{Alphabet, Automaton, Word};
pub use error::{Error, Result};
pub use measure::RationalMeasure;
pub use rational::Rational;
pub use subshift::DeterministicCover;
