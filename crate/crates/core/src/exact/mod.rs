//! Exact arithmetic kernel: rationals, polynomials in `q`, canonical
//! rational functions, and polynomials in `X = q^x` over Q(q).

mod intpoly;
mod modgcd;
pub mod polyq;
pub mod polyx;
pub mod rat;
pub mod ratfn;
pub mod render;

pub use polyq::{poly_gcd, PolyQ};
pub use polyx::{polyx_eval_int, polyx_subst_x, PolyX};
pub use rat::{parse_rat, rat, rat_int, Rat};
pub use ratfn::{
    ratfn_arith, ratfn_eval, ratfn_eval_at_one, ratfn_normalize, ratfn_subst_qpow, ArithOp, RatFn,
};
