//! Exact computations in the K-theory skeleton of the bootstrap category:
//! graded finitely generated abelian groups with the Spanier-Whitehead
//! K-duality functor, Künneth and universal-coefficient computations,
//! mod-n K-theory, the square-zero endomorphism ring model, and
//! dual-existence decisions for eventually-periodic direct systems.
//!
//! All arithmetic is exact (arbitrary-precision integers); all values are
//! immutable and all operations are pure functions.

pub mod builders;
pub mod fgab;
pub mod intlin;
pub mod json;
pub mod kkobj;
pub mod limits;
pub mod ringmodel;
pub mod sample;

pub use fgab::{ExtClass, ExtGroup, FgAbGroup, GroupHom};
pub use intlin::{IntMatrix, SnfResult};
pub use kkobj::{GradedGroup, ModpConstruction, Parity};
pub use limits::{Colimit, DirectSystem, DualVerdict};
pub use ringmodel::{EndoRingElement, InvertOutcome};
