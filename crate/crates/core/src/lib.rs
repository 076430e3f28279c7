//! Decision procedures for the monoids
//! `S_n(H) = ⟨a_1,…,a_n | a_1⋯a_n = a_σ(1)⋯a_σ(n), σ ∈ H⟩`
//! and the ideals and algebras built from them.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod growth;
pub mod ideals;
pub mod permgroup;
pub mod presentation;
pub mod rewrite;
pub mod theorems;
pub mod word;

pub use error::{Error, Result};
pub use growth::GrowthSeries;
pub use ideals::{IdealAtom, IdealSpec, PrimeVerdict, PrimeWitness, WitnessCase};
pub use permgroup::{Permutation, PermutationGroup};
pub use presentation::{BoundaryPairs, Presentation};
pub use rewrite::{CongruenceClass, Monoid, RewriteStep};
pub use theorems::{CancelWitness, CancellativityReport, Side, Status, SuiteConfig, SuiteEntry, SuiteReport, SweepReport, Violation, CHECKS};
pub use word::{Letter, Span, Word};
