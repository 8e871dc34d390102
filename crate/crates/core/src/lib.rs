//! Local normal zeta functions of class-2 nilpotent groups whose Pfaffian
//! curve is a plane curve with at most ordinary double points.
//!
//! The crate has two independent halves that must agree:
//!
//! * the closed form ([`formulas`], [`cones`]) assembled from per-prime
//!   geometric invariants of the Pfaffian curve ([`geometry`]), and
//! * a brute-force oracle ([`oracle`]) that computes the same Dirichlet
//!   coefficients by enumerating sublattices and solving the centraliser
//!   congruences with exact integer linear algebra.
//!
//! Presentations live in [`presentations`], exact polynomial and rational
//! function arithmetic in [`polynomial`] and [`ratfun`].

pub mod cones;
pub mod error;
pub mod formulas;
pub mod fp;
pub mod geometry;
pub mod oracle;
pub mod polynomial;
pub mod presentations;
pub mod ratfun;

pub use error::{Result, ZetaError};
pub use formulas::{assemble_zeta, SymbolicZeta};
pub use geometry::{invariants, PrimeInvariants};
pub use oracle::{oracle_zeta, LatticeHNF, OracleOptions};
pub use polynomial::MultiPoly;
pub use presentations::{builtin, GroupPresentation, LinearForm, StructureTensor};
pub use ratfun::{BiRat, LaurentMonomial, TriRat, ZetaSeries};
