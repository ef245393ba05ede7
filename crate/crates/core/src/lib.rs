//! Algebraic invariants of multivariate polynomial systems over small finite fields.
//!
//! This crate computes the degree of regularity and the standard/mutant solving
//! degrees of polynomial systems over GF(q) (q ≤ 64), tests systems for
//! algebraic randomness and semiregularity, evaluates closed-form upper bounds
//! for these invariants in terms of (n, m, D, q), and generates desk-scale
//! instances of HFEv−-style and Rainbow-style public keys for comparison
//! experiments.
//!
//! Module overview:
//! - [`field`]: table-backed arithmetic in GF(p^e), p^e ≤ 64.
//! - [`poly`]: sparse multivariate polynomials, grevlex/lex term orders,
//!   monomial combinatorics.
//! - [`macaulay`]: Macaulay matrices M_d / M_{≤d}, reduced row echelon form
//!   over GF(q), Hilbert functions.
//! - [`groebner`]: Gröbner-basis verification, standard and mutant solving
//!   degrees, system solving.
//! - [`regularity`]: degree of regularity, LexPlusPowers ideals, algebraic
//!   randomness and semiregularity tests.
//! - [`bounds`]: the closed-form bound formulas (σ, η, interval location,
//!   degree-of-regularity and solving-degree bounds).
//! - [`schemes`]: instance generators (uniform random, LPP-sharp, HFEv−,
//!   Rainbow), disguise, squaring, field-equation augmentation.
//! - [`sysfile`]: the MQS text file format for polynomial systems.

pub mod bounds;
pub mod field;
pub mod groebner;
pub mod macaulay;
pub mod poly;
pub mod regularity;
pub mod schemes;
pub mod sysfile;

pub use field::{Field, FieldElement};
pub use poly::{Monomial, PolySystem, Polynomial, TermOrder};
