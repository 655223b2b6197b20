//! Exact rectification of small subsets of prime fields.
//!
//! Given a small set `A ⊆ F_p`, this crate builds a finite algebraic extension
//! `K` of `Q` (as an explicit tower of simple extensions), points
//! `b_1, ..., b_n ∈ K` and a ring homomorphism `Z[b_1, ..., b_n] → F_p` sending
//! `b_i ↦ a_i`, such that every `k`-bounded integer polynomial vanishes at `A`
//! exactly when it vanishes at the lifted points.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: big
//! integers, rationals, prime fields and number-field towers.
//!
//! Module map:
//!
//! * [`poly`]: sparse multivariate integer polynomials, norms, bounded
//!   enumeration and the textual syntax.
//! * [`linalg`]: fraction-free determinants, ranks over `Q` and `F_p`, and the
//!   linear rectification.
//! * [`resultant`]: Sylvester matrices, resultants, subresultants and the
//!   multi-polynomial resultant.
//! * [`tower`]: number-field towers with an anchor homomorphism into `F_p`.
//! * [`rectify`]: forward elimination, back substitution and verification.
//! * [`chain`]: constructibility chains and adversarial sets.
//! * [`demos`]: incidence counting and transfer reports.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod arith;
pub mod chain;
pub mod demos;
pub mod domain;
mod error;
pub mod factor;
pub mod linalg;
pub mod poly;
pub mod rectify;
pub mod resultant;
pub mod text;
pub mod tower;
pub mod upoly;

pub use error::{Error, Result};
