//! Symbolic computation for Leavitt algebras `L(m,n)` and their zero
//! components.
//!
//! The crate is layered: exact scalars, words and polynomials of free
//! algebras ([`scalar`], [`word`], [`poly`]); a generic reduction engine with
//! a diamond-lemma checker ([`rewrite`]); the Leavitt algebra with its
//! reduction system ([`leavitt`]); the word combinatorics of the degree-zero
//! component ([`zero`]); the ⋆ matrix monoid ([`star`]); the presented
//! algebras `A(m,n,z)`, `B(m,n,z)` and Bergman graphs ([`presented`]);
//! commutative monoid presentations ([`vmonoid`]); and the acceptance battery
//! ([`suite`]).

pub mod error;
pub mod scalar;
pub mod word;
pub mod poly;
pub mod presented;
pub mod rewrite;
pub mod leavitt;
pub mod star;
pub mod suite;
pub mod vmonoid;
pub mod zero;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use scalar::{Field, Fp, Rational};
pub use word::{Letter, Word};
