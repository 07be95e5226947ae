//! Exact Albert algebras: Tits constructions, U-operators, structure-group
//! words and their factorizations, fixed points, and the Moufang hexagon
//! root group U₊.

#![allow(clippy::needless_range_loop)]

pub mod albert;
pub mod assoc3;
pub mod composition;
pub mod exactfield;
pub mod fixpoint;
pub mod hexagon;
pub mod innerfact;
pub mod linalg;
pub mod random;
pub mod strmaps;
pub mod suites;
pub mod workspace;

/// Exact rationals, the base field of every Albert algebra here.
pub type Q = num_rational::BigRational;
