//! Algebra of noncommutative complex tori at roots of unity.
//!
//! Everything in this crate is pure computation over `alloc`; file formats,
//! randomness and the command line live in the `nctorus` crate.
//!
//! - [`phase`]: exact roots of unity as elements of `Q/Z`.
//! - [`cocycle`]: 2-cocycles on `Z^g` with values in `mu_N`, coboundaries and
//!   the antisymmetrization invariant.
//! - [`qweyl`]: normal-form arithmetic in q-Weyl algebras and the toy
//!   Poincare bimodule.
//! - [`laurent`]: the cocycle-twisted star product on Laurent polynomials.
//! - [`lattice`]: radical, finite quotient and dual-pair data of an
//!   alternating form at a root of unity.
//! - [`equivariant`]: twisted equivariant objects over finite abelian groups.
//! - [`fm`]: finite models of the deformed Fourier-Mukai transform.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cocycle;
pub mod equivariant;
pub mod error;
pub mod fm;
pub mod group;
pub mod laurent;
pub mod lattice;
pub mod linalg;
pub mod phase;
pub mod qweyl;
pub mod snf;

pub use error::{Error, Result};
pub use phase::Phase;

/// Default entrywise tolerance for floating-point comparisons.
pub const TOLERANCE: f64 = 1e-9;
