//! Pairwise relatively prime trinomial moduli `2^n - 2^k + 1`.
//!
//! * [`bigpoly`]: exact integer and rational polynomials.
//! * [`resolve`]: resultants and the dyadic-resolvability predicate.
//! * [`trigraph`]: the compatibility graph `T(n)` on exponents `1..n`.
//! * [`cliquer`]: maximum cliques, divisibility-sequence cliques and the
//!   coloring that bounds the clique number.
//! * [`cofactor`]: Bezout cofactors, reduced resultants and scalable inverses.
//! * [`rns`]: a residue number system over a clique of trinomial moduli.

pub mod bigpoly;
pub mod cliquer;
pub mod cofactor;
pub mod par;
pub mod resolve;
pub mod rns;
pub mod trigraph;

pub use bigpoly::{Degree, IntPoly, Poly, PolyError, RatPoly, Trinomial};
pub use par::Execution;
pub use resolve::{dyadically_resolve, resultant, trinomial_resultant, DyadicVerdict, Resultant};
