//! Verification of finite commutative Krasner (m,n)-hyperrings.
//!
//! A [`HyperStructure`] stores an m-ary hyperoperation `f` and an n-ary
//! operation `g` as multiset-keyed tables. On top of it:
//!
//! - [`axioms`] checks the Krasner axioms with replayable witnesses,
//! - [`ideals`] recognises and enumerates hyperideals, colons and radicals,
//! - [`predicates`] decides prime, primary, S-prime and the weakly S-prime
//!   variants with certificates,
//! - [`constructions`] builds fixtures, products, homomorphisms,
//! - [`harness`] runs the theorem properties over a corpus,
//! - [`document`] reads and writes the JSON table format.

pub mod axioms;
pub mod budget;
pub mod constructions;
pub mod document;
pub mod element;
pub mod error;
pub mod harness;
pub mod ideals;
pub mod multiset;
pub mod predicates;
pub mod structure;

pub use budget::Budget;
pub use element::{set_of, Element, ElementSet, MAX_CARRIER};
pub use error::{Error, Result};
pub use ideals::IdealLattice;
pub use predicates::{Counterexample, Verdict};
pub use structure::HyperStructure;
