//! Exact symbolic intersection calculus on tautological rings of flag-Hilbert
//! schemes of nodal curve families, with combinatorial and algebraic oracles.

pub mod charpoly;
pub mod error;
pub mod expr;
pub mod polyoracle;
pub mod regression;
pub mod schubert;
pub mod staircase;
pub mod surface;
pub mod tautring;

pub use charpoly::{CharMonomial, CharSymbol, CharacterPolynomial, Rational};
pub use error::{ParseError, Result, TautError};
pub use surface::{DivSym, FibreKind, NodeFlavor, SurfaceClass, SurfaceGeometry};
pub use tautring::{Conventions, Engine, Factor, Generator, TautExpr};
