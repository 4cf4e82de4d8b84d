//! Finite commutative hypergroups, their character theory, and hyperfield
//! extensions `K(H, φ, L)`.

pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod demo;
pub mod duality;
pub mod error;
pub mod hyperfield;
pub mod hypergroup;
pub mod induction;
pub mod io;
pub mod iso;
mod linsolve;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use hypergroup::{FiniteHypergroup, Measure, RawHypergroup, ValidationReport};
pub use scalar::{Rational, Scalar};
