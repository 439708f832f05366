//! Exact computation with polynomial invariants of several matrices under
//! `GL(n)`, `O(n)` and `Sp(n)`, and with invariants of mixed quiver
//! representations.
//!
//! All arithmetic is exact, over a prime field or the rationals. Identities
//! are checked as identities of polynomials, coefficient by coefficient.

pub mod error;
pub mod eval;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod quiver;
pub mod random;
pub mod rank;
pub mod sigma;
pub mod words;

pub use error::{Error, Result};
pub use eval::{GroupKind, GroupSpec};
pub use matrix::{GenericKind, PolyMatrix};
pub use poly::{Field, Monomial, Polynomial, Scalar, Variable};
pub use sigma::{SigmaFactor, SigmaMonomial, SigmaPoly};
pub use words::{Letter, LetterBase, Word, WordClass};
