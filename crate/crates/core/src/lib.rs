//! Equation solving over algebraic structures and the derived objects of
//! algebraic geometry over algebras: radicals, closures, coordinate
//! algebras, irreducible components, approximation and discrimination,
//! quasi-identities, and equational domains.
//!
//! Finite algebras are handled exactly by enumeration and subalgebra
//! generation inside finite powers. Finitely generated abelian groups, the
//! naturals, free unars and the bicyclic monoid have symbolic procedures.
//! Every search runs under a [`Budget`] and fails with
//! [`Error::ResourceLimit`] rather than returning a partial answer.

pub mod budget;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod eval;
pub mod finalg;
pub mod formulas;
mod generate;
pub mod geometry;
pub mod linear;
pub mod normalize;
pub mod parse;
pub mod report;
pub mod symbolic;
pub mod term;

pub use budget::{Budget, Usage};
pub use error::{Error, ParseError, Result};
pub use finalg::{Elem, FiniteAlgebra};
pub use term::{Equation, Language, System, Term};
