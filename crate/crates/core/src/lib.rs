//! Exact q-Euler, q-Genocchi and q-Bernoulli numbers and polynomials.
//!
//! Everything lives in Q(q): numbers are canonical [`RatFn`]s and the
//! `x`-dependence of the polynomial families is carried by [`PolyX`], a
//! polynomial in `X = q^x`. The [`identities`] harness checks relations
//! between the families by exact equality, and [`oracle`] brackets the
//! defining series at rational `q` to arbitrate closed forms.

pub mod classical;
pub mod error;
pub mod exact;
pub mod identities;
pub mod oracle;
pub mod qfamilies;

pub use error::{ExactError, FamilyError, IdentityError, OracleError};
pub use exact::{PolyQ, PolyX, Rat, RatFn};
