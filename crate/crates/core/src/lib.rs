//! Exact-arithmetic computations with finite commutative differential
//! graded algebras.
//!
//! The crate revolves around explicit, degreewise-finite CDGAs over the
//! rationals ([`dga::TableDga`]), built either from raw tables or from free
//! graded-commutative presentations ([`sullivan`]). On top of that sit:
//!
//! - cohomology rings, partial equivalences and Massey triple products
//!   ([`cohomology`], [`morphism`]);
//! - Hirsch extensions, their elementary long exact sequence, and the
//!   transgression-class invariance isomorphism ([`hirsch`]);
//! - regular-sequence testing and the quotient-model formality certificate
//!   ([`regularity`]);
//! - holonomy Lie algebra presentations and lower-central-series
//!   dimensions via Lyndon bases ([`lie`], [`holonomy`]);
//! - flat connections with values in small matrix Lie algebras, twisted
//!   cohomology, and resonance membership ([`jumploci`]);
//! - Poincaré duality certification ([`pd`]);
//! - a catalog of named models and the acceptance checks that pin their
//!   expected invariants ([`catalog`], [`acceptance`]).
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod acceptance;
pub mod catalog;
pub mod cohomology;
pub mod dga;
pub mod error;
pub mod expr;
pub mod hirsch;
pub mod holonomy;
pub mod io;
pub mod jumploci;
pub mod lie;
pub mod matrix;
pub mod morphism;
pub mod pd;
pub mod rational;
pub mod regularity;
pub mod sample;
pub mod sullivan;
pub mod tensor;

pub use dga::{Element, TableDga};
pub use error::{DgaError, Result};
pub use rational::Rat;
