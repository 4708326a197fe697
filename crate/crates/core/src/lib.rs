//! Finitary incidence algebras over finite posets.
//!
//! The crate covers arithmetic in `FI(P)` over small indecomposable
//! coefficient rings, the three canonical automorphism families and the
//! decomposition of an arbitrary automorphism into them, exhaustive and
//! probe-based detection of (n-)local automorphisms, the cartesian product
//! `R^P` with its induced endomorphisms, and the algebra of eventually
//! constant sequences carrying a non-surjective n-local automorphism.
//!
//! Everything here is pure computation on owned values; file formats,
//! reports and the command line live in the `incalg` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod autgroup;
pub mod cartprod;
mod error;
pub mod fialg;
mod linalg;
pub mod localcheck;
pub mod poset;
pub mod ring;
pub mod sample;
pub mod tailalg;

pub use crate::autgroup::{AutDecomposition, SchurCoeffs};
pub use crate::cartprod::{DisjointFamily, PiElement, PiMap, SetMap};
pub use crate::error::{Error, Result};
pub use crate::fialg::{FiElement, IncidenceAlgebra, LinearMap};
pub use crate::localcheck::{LocalCheckReport, ProbeOutcome};
pub use crate::poset::{OrderMap, Poset};
pub use crate::ring::{Ring, RingElem, RingSpec};
pub use crate::tailalg::{EventualMap, EventualPermutation, TailVector};
