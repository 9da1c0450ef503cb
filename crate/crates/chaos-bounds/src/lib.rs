//! Moment and tail bounds for homogeneous multilinear forms ("chaoses") of
//! independent random signs and other sub-Gaussian variables, together with
//! the exact oracles that verify them.
//!
//! A degree-k form Z = Σ a(j₁,…,j_k)·ε_{j₁}⋯ε_{j_k} over distinct indices
//! satisfies E Z² = k!·V² with V² = Σ a², and its moments and tails obey
//! closed-form bounds computed in [`bounds`]. Every bound can be checked
//! against independent exact routes:
//!
//! * [`moment`] — full enumeration over all 2ⁿ sign assignments, and a
//!   symbolic monomial expansion that takes any symmetric input moment
//!   sequence (Gaussian moments give the comparison variable built from
//!   absolute coefficients);
//! * [`diagram`] — the pairing-diagram sum for expected products of
//!   Gaussian multilinear forms over a finite ground set;
//! * [`montecarlo`] — seeded simulation with binomial error bars where
//!   enumeration is out of budget.
//!
//! [`distributions`] provides the sub-Gaussian input catalog, Hermite
//! polynomials and the constant-coefficient form whose normalized law
//! converges to V·H_k(η); [`cli`] is the batch command surface behind the
//! `chaos-bounds` binary. Start with the runnable demos in `examples/`.

pub mod bounds;
pub mod cli;
pub mod diagram;
pub mod distributions;
pub mod error;
pub mod form;
pub mod moment;
pub mod montecarlo;
pub mod report;

pub use error::{Error, Result};
pub use form::{SignVector, SymmetricMultilinearForm};
