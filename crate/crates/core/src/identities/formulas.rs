//! Both sides of every cataloged identity, per variant.
//!
//! Sides are assembled only from `classical` and `qfamilies` constructors,
//! so a mistake in a closed form cannot silently cancel against a private
//! re-derivation here.

use num_traits::Zero;

use super::{IdentityId, Params};
use crate::classical::{alt_power_sum, binom_rat, euler_poly, genocchi_number, XPoly};
use crate::exact::{PolyX, Rat, RatFn};
use crate::qfamilies::{
    base_changed_at_scaled_shift, base_changed_at_shift, bracket_quotient, q_bernoulli_number,
    q_euler_number, q_euler_poly, q_genocchi_number, q_genocchi_poly, q_genocchi_poly_form, q_int,
    q_int_signed, q_two, sign, star_apply, star_apply_with, BracketQuotient, GenocchiClosedForm,
    StarVariant,
};

/// The two sides of one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sides {
    Rat(Rat, Rat),
    XPoly(XPoly, XPoly),
    RatFn(RatFn, RatFn),
    PolyX(PolyX, PolyX),
    /// The printed form cannot be evaluated (reason given).
    Unevaluable(&'static str),
}

fn rint(k: i64) -> Rat {
    Rat::from_integer(k.into())
}

fn ru(k: u32) -> Rat {
    Rat::from_integer(k.into())
}

fn binom_f(n: u32, k: u32) -> RatFn {
    RatFn::constant(binom_rat(n, k))
}

fn div(a: &RatFn, b: &RatFn) -> RatFn {
    a.checked_div(b).expect("nonzero divisor")
}

/// `[x]_q^k` as a polynomial in `X`.
fn bracket_x_pow(k: u32) -> PolyX {
    PolyX::q_bracket_x().pow(k)
}

fn x_pow(k: u32) -> PolyX {
    PolyX::monomial(RatFn::one(), k as usize)
}

/// `sum_{a=a0}^{m-1} (-1)^a q^{a·e} [a]_q^p`.
fn alternating_bracket_sum(m: u32, a0: u32, e: u32, p: u32) -> RatFn {
    (a0..m)
        .map(|a| (&RatFn::q_pow((a * e) as usize) * &q_int(a).pow(p)).scale(&sign(a)))
        .sum()
}

pub(super) fn build(id: IdentityId, variant: &str, p: &Params) -> Sides {
    let n = p.n.unwrap_or(0);
    let m = p.m.unwrap_or(1);
    let corrected = variant != "printed";
    match id {
        IdentityId::Eq5 => {
            let lhs = euler_poly(n);
            let mut coeffs = vec![Rat::zero(); n as usize + 1];
            for k in 0..=n {
                coeffs[(n - k) as usize] = binom_rat(n, k) * genocchi_number(k + 1) / ru(k + 1);
            }
            Sides::XPoly(lhs, XPoly::from_coeffs(coeffs))
        }
        IdentityId::Eq6 => {
            let nn = ru(n);
            let lhs = (num_traits::pow(nn.clone(), m as usize) - &nn) * genocchi_number(m);
            let rhs = (1..m)
                .map(|k| {
                    binom_rat(m, k)
                        * num_traits::pow(nn.clone(), k as usize)
                        * genocchi_number(k)
                        * alt_power_sum(m - k, n - 1)
                })
                .sum();
            Sides::Rat(lhs, rhs)
        }
        IdentityId::Eq10Dist => {
            let e = q_euler_poly(n);
            let pre = div(&(&q_two(1) * &q_int(m).pow(n)), &q_two(m));
            let sum: PolyX = (0..m)
                .map(|a| {
                    base_changed_at_shift(&e, m, a).scale(&RatFn::q_pow(a as usize).scale(&sign(a)))
                })
                .sum();
            Sides::PolyX(e, sum.scale(&pre))
        }
        IdentityId::Eq10Add => {
            let rhs = (0..=n)
                .map(|k| {
                    (&bracket_x_pow(n - k) * &x_pow(k))
                        .scale(&(&binom_f(n, k) * &q_euler_number(k)))
                })
                .sum();
            Sides::PolyX(q_euler_poly(n), rhs)
        }
        IdentityId::Eq11 => {
            let e = q_euler_poly(n);
            let lhs = e.subst_x(&RatFn::one(), m as usize).scale(&q_two(m));
            let pre = &q_two(1) * &q_int(m).pow(n);
            let sum: PolyX = (0..m)
                .map(|a| {
                    base_changed_at_scaled_shift(&e, m, a)
                        .scale(&RatFn::q_pow(a as usize).scale(&sign(a)))
                })
                .sum();
            Sides::PolyX(lhs, sum.scale(&pre))
        }
        IdentityId::Eq12 | IdentityId::Prop1 => {
            let e = q_euler_number(n);
            let quotient = if corrected {
                BracketQuotient::TwoBracket
            } else {
                BracketQuotient::Signed
            };
            let lhs = if id == IdentityId::Prop1 {
                star_apply_with(StarVariant::Euler, quotient, n + 1, m, n, &e).expect("odd m")
            } else {
                let q = bracket_quotient(quotient, m, n + 1);
                &(&q_int_signed(m) * &e) - &(&(&q_int(m).pow(n) * &q) * &e.subst_qpow(m as usize))
            };
            let rhs = (0..n)
                .map(|l| {
                    &(&(&binom_f(n, l) * &q_int(m).pow(l))
                        * &q_euler_number(l).subst_qpow(m as usize))
                        * &alternating_bracket_sum(m, 1, l + 1, n - l)
                })
                .sum();
            Sides::RatFn(lhs, rhs)
        }
        IdentityId::Prop2 => {
            let lhs: RatFn = (0..n)
                .map(|l| (&RatFn::q_pow(l as usize) * &q_int(l).pow(m)).scale(&sign(l)))
                .sum();
            let at_n = q_euler_poly(m).eval_int(n as usize);
            let first = (&RatFn::q_pow(n as usize) * &at_n).scale(&sign(n + 1));
            let e = q_euler_number(m);
            let inner = if corrected { &first + &e } else { &first - &e };
            Sides::RatFn(lhs, div(&inner, &q_two(1)))
        }
        IdentityId::Eq17 => {
            let b = q_bernoulli_number(n);
            let rhs = &(&q_two(1) * &b) - &(&q_two(1).pow(n) * &b.subst_qpow(2)).scale(&rint(2));
            Sides::RatFn(q_genocchi_number(n), rhs)
        }
        IdentityId::Eq21 => {
            let rhs = (0..=n)
                .map(|k| {
                    let (xp, g) = if corrected { (k, k + 1) } else { (n, n + 1) };
                    let c = &binom_f(n, k) * &q_genocchi_number(g).scale(&ru(g).recip());
                    (&bracket_x_pow(n - k) * &x_pow(xp)).scale(&c)
                })
                .sum();
            Sides::PolyX(q_euler_poly(n), rhs)
        }
        IdentityId::Thm3a => {
            let lhs = (&PolyX::x() * &q_euler_poly(n - 1)).scale(&RatFn::constant(ru(n)));
            let form = if corrected {
                GenocchiClosedForm::WithTwoBracket
            } else {
                GenocchiClosedForm::WithoutTwoBracket
            };
            Sides::PolyX(lhs, q_genocchi_poly_form(n, form))
        }
        IdentityId::Thm4Dist | IdentityId::Eq23 => {
            let g = q_genocchi_poly(n);
            let scaled = id == IdentityId::Eq23;
            let lhs = if scaled {
                g.subst_x(&RatFn::one(), m as usize)
            } else {
                g.clone()
            };
            let pre = div(&(&q_two(1) * &q_int(m).pow(n - 1)), &q_two(m));
            let x_factor = if scaled { x_pow(m) } else { PolyX::x() };
            let sum: PolyX = (0..m)
                .map(|a| {
                    let shifted = if scaled {
                        base_changed_at_scaled_shift(&g, m, a)
                    } else {
                        base_changed_at_shift(&g, m, a)
                    };
                    let t = if corrected {
                        shifted
                    } else {
                        (&shifted * &x_factor).scale(&RatFn::q_pow(a as usize))
                    };
                    t.scale(&RatFn::constant(sign(a)))
                })
                .sum();
            Sides::PolyX(lhs, sum.scale(&pre))
        }
        IdentityId::Thm4Add => {
            if !corrected {
                return Sides::Unevaluable("summation upper limit is infinite");
            }
            let rhs = (0..=n)
                .map(|k| {
                    (&bracket_x_pow(n - k) * &x_pow(k))
                        .scale(&(&binom_f(n, k) * &q_genocchi_number(k)))
                })
                .sum();
            Sides::PolyX(q_genocchi_poly(n), rhs)
        }
        IdentityId::Eq24 | IdentityId::Eq25Final => {
            let g = q_genocchi_number(n);
            // (quotient index, exponent offset in q^{a(k+offset)}, inner index is k)
            let (qidx, offset, inner_k) = match variant {
                "printed" => (n + 1, 1, id == IdentityId::Eq24),
                "k-index" => (n + 1, 1, true),
                _ => (n, 0, true),
            };
            let lhs = if id == IdentityId::Eq25Final {
                if qidx == n + 1 {
                    star_apply(StarVariant::Genocchi, m, n, &g).expect("odd m")
                } else {
                    star_apply_with(
                        StarVariant::Genocchi,
                        BracketQuotient::TwoBracket,
                        qidx,
                        m,
                        n,
                        &g,
                    )
                    .expect("odd m")
                }
            } else {
                let q = bracket_quotient(BracketQuotient::TwoBracket, m, qidx);
                &(&(&q_two(m) * &q_int(m)) * &g)
                    - &(&(&(&q_two(1) * &q_int(m).pow(n)) * &g.subst_qpow(m as usize)) * &q)
            };
            let rhs: RatFn = (0..n)
                .map(|k| {
                    let gi = if inner_k { k } else { n };
                    &(&(&binom_f(n, k) * &q_int(m).pow(k))
                        * &q_genocchi_number(gi).subst_qpow(m as usize))
                        * &alternating_bracket_sum(m, 0, k + offset, n - k)
                })
                .sum();
            Sides::RatFn(lhs, &q_two(1) * &rhs)
        }
    }
}
