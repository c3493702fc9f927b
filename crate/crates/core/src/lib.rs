//! Truth values of experimental propositions about finite-dimensional
//! quantum systems.
//!
//! A proposition is a projector `P` on `C^n`; a pure state is a unit vector.
//! The state makes the proposition true when it lies in the range of `P`,
//! false when it lies in the kernel, and otherwise leaves a truth-value gap
//! (or reads as false under the total quantum-logic semantics).
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod clinalg;
pub mod error;
pub mod logic;
pub mod sampling;
pub mod spin;
pub mod subspace;
pub mod valuation;

pub use clinalg::{ComplexMatrix, Tolerance};
pub use error::{Error, Result};
pub use logic::Formula;
pub use subspace::{Projector, Subspace};
pub use valuation::{Membership, MembershipMethod, Semantics, StateVector, TruthValue};

pub use num_complex::Complex64;
