//! q-brackets and the q-Euler, q-Genocchi and q-Bernoulli families.
//!
//! All infinite sums in the generating functions are geometric in `q` and
//! are summed in closed form before anything is computed:
//!
//! ```text
//! sum_k (-1)^k q^{k(l+1)} = 1/(1+q^{l+1}),    sum_k q^{k(j+1)} = 1/(1-q^{j+1})
//! ```
//!
//! so every object here is a finite expression in Q(q), with the `x`
//! dependence carried as powers of `X = q^x`.

use crate::classical::binom_rat;
use crate::error::FamilyError;
use crate::exact::{PolyQ, PolyX, Rat, RatFn};

fn poly(v: &[i64]) -> PolyQ {
    PolyQ::from_ints(v)
}

fn frac(num: PolyQ, den: PolyQ) -> RatFn {
    RatFn::new(num, den).expect("nonzero denominator")
}

/// `1 ± q^k` as a polynomial.
fn one_plus_qk(k: usize, sign: i64) -> PolyQ {
    &PolyQ::one() + &PolyQ::monomial(Rat::from_integer(sign.into()), k)
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_int(n: u32) -> RatFn {
    RatFn::from_poly(PolyQ::from_ints(&vec![1; n as usize]))
}

/// `[n]_{-q} = (1 - (-q)^n) / (1 + q)`.
pub fn q_int_signed(n: u32) -> RatFn {
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    frac(one_plus_qk(n as usize, sign), poly(&[1, 1]))
}

/// `[2]_{q^k} = 1 + q^k`.
pub fn q_two(k: u32) -> RatFn {
    RatFn::from_poly(one_plus_qk(k as usize, 1))
}

/// `1/(1-q)^n` as a canonical rational function.
fn inv_one_minus_q_pow(n: u32) -> RatFn {
    frac(PolyQ::one(), poly(&[1, -1]).pow(n))
}

/// Coefficients `c_l` of `E_{n,q}(x) = sum_l c_l X^l`:
/// `c_l = [2]_q/(1-q)^n · C(n,l)(-1)^l/(1+q^{l+1})`.
fn q_euler_coeffs(n: u32) -> Vec<RatFn> {
    let pre = &q_two(1) * &inv_one_minus_q_pow(n);
    (0..=n)
        .map(|l| {
            let c = binom_rat(n, l) * sign(l);
            let term = frac(PolyQ::constant(c), one_plus_qk(l as usize + 1, 1));
            &pre * &term
        })
        .collect()
}

/// `E_{n,q}`.
pub fn q_euler_number(n: u32) -> RatFn {
    let pre = &q_two(1) * &inv_one_minus_q_pow(n);
    let s: RatFn = (0..=n)
        .map(|l| {
            let c = binom_rat(n, l) * sign(l);
            frac(PolyQ::constant(c), one_plus_qk(l as usize + 1, 1))
        })
        .sum();
    &pre * &s
}

/// `E_{n,q}(x)` as a polynomial of degree `n` in `X = q^x`.
pub fn q_euler_poly(n: u32) -> PolyX {
    PolyX::from_coeffs(q_euler_coeffs(n))
}

/// Which closed form to use for the q-Genocchi family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenocchiClosedForm {
    /// Carries the overall `[2]_q` from the generating function.
    WithTwoBracket,
    /// Omits the `[2]_q` factor.
    WithoutTwoBracket,
}

/// `G_{n,q}(x) = n[2]_q (1/(1-q))^{n-1} sum_l C(n-1,l)(-1)^l/(1+q^{l+1}) X^{l+1}`,
/// with `G_{0,q}(x) = 0`.
pub fn q_genocchi_poly_form(n: u32, form: GenocchiClosedForm) -> PolyX {
    if n == 0 {
        return PolyX::zero();
    }
    let mut pre = inv_one_minus_q_pow(n - 1).scale(&Rat::from_integer(n.into()));
    if form == GenocchiClosedForm::WithTwoBracket {
        pre = &pre * &q_two(1);
    }
    let mut coeffs = vec![RatFn::zero()];
    for l in 0..n {
        let c = binom_rat(n - 1, l) * sign(l);
        coeffs.push(&pre * &frac(PolyQ::constant(c), one_plus_qk(l as usize + 1, 1)));
    }
    PolyX::from_coeffs(coeffs)
}

pub fn q_genocchi_poly(n: u32) -> PolyX {
    q_genocchi_poly_form(n, GenocchiClosedForm::WithTwoBracket)
}

pub fn q_genocchi_number_form(n: u32, form: GenocchiClosedForm) -> RatFn {
    if n == 0 {
        return RatFn::zero();
    }
    let mut pre = inv_one_minus_q_pow(n - 1).scale(&Rat::from_integer(n.into()));
    if form == GenocchiClosedForm::WithTwoBracket {
        pre = &pre * &q_two(1);
    }
    let s: RatFn = (0..n)
        .map(|l| {
            let c = binom_rat(n - 1, l) * sign(l);
            frac(PolyQ::constant(c), one_plus_qk(l as usize + 1, 1))
        })
        .sum();
    &pre * &s
}

/// `G_{n,q}`; `G_{0,q} = 0`.
pub fn q_genocchi_number(n: u32) -> RatFn {
    q_genocchi_number_form(n, GenocchiClosedForm::WithTwoBracket)
}

/// `B_{n,q} = -n (1/(1-q))^{n-1} sum_j C(n-1,j)(-1)^j/(1-q^{j+1})` for
/// `n >= 1`.
///
/// `B_{0,q}` is set to 1 by convention; the series itself has no `t^0`
/// term. Nothing in the identity catalog consumes index 0. Note `B_{1,q} =
/// -1/(1-q)` has a genuine pole at `q = 1`.
pub fn q_bernoulli_number(n: u32) -> RatFn {
    if n == 0 {
        return RatFn::one();
    }
    let pre = inv_one_minus_q_pow(n - 1).scale(&-Rat::from_integer(n.into()));
    let s: RatFn = (0..n)
        .map(|j| {
            let c = binom_rat(n - 1, j) * sign(j);
            frac(PolyQ::constant(c), one_plus_qk(j as usize + 1, -1))
        })
        .sum();
    &pre * &s
}

/// Coefficient family of the `*` operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarVariant {
    /// `[m]_{-q} f(q) - [m]_q^n · Q · f(q^m)`.
    Euler,
    /// `[2]_{q^m}[m]_q f(q) - [2]_q[m]_q^n · Q · f(q^m)`.
    Genocchi,
}

/// The bracket quotient `Q` multiplying `f(q^m)`, at index `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketQuotient {
    /// `[mk]_{-q} / [k]_{-q}`.
    Signed,
    /// `[2]_{q^{mk}} / [2]_{q^k}`.
    TwoBracket,
}

/// Value of the bracket quotient for odd `m` at index `k >= 1`.
pub fn bracket_quotient(form: BracketQuotient, m: u32, k: u32) -> RatFn {
    match form {
        BracketQuotient::Signed => q_int_signed(m * k)
            .checked_div(&q_int_signed(k))
            .expect("[k]_{-q} is nonzero for k >= 1"),
        BracketQuotient::TwoBracket => {
            frac(one_plus_qk((m * k) as usize, 1), one_plus_qk(k as usize, 1))
        }
    }
}

/// The `*` operation with its default quotient `Q`: signed brackets at
/// index `n+1` for [`StarVariant::Euler`], `[2]`-brackets at index `n+1`
/// for [`StarVariant::Genocchi`].
pub fn star_apply(variant: StarVariant, m: u32, n: u32, f: &RatFn) -> Result<RatFn, FamilyError> {
    let quotient = match variant {
        StarVariant::Euler => BracketQuotient::Signed,
        StarVariant::Genocchi => BracketQuotient::TwoBracket,
    };
    star_apply_with(variant, quotient, n + 1, m, n, f)
}

/// The `*` operation with an explicit quotient form and index.
pub fn star_apply_with(
    variant: StarVariant,
    quotient: BracketQuotient,
    quotient_index: u32,
    m: u32,
    n: u32,
    f: &RatFn,
) -> Result<RatFn, FamilyError> {
    if m.is_multiple_of(2) {
        return Err(FamilyError::EvenM);
    }
    if f.is_zero() {
        return Ok(RatFn::zero());
    }
    let mq_n = q_int(m).pow(n);
    let quo = bracket_quotient(quotient, m, quotient_index);
    let based = f.subst_qpow(m as usize);
    let (a, b) = match variant {
        StarVariant::Euler => (q_int_signed(m), &mq_n * &quo),
        StarVariant::Genocchi => (&q_two(m) * &q_int(m), &(&q_two(1) * &mq_n) * &quo),
    };
    Ok(&(&a * f) - &(&b * &based))
}

/// Distribution helper: `F_{q^m}((a+x)/m)` as a polynomial in `X`, given
/// `F_q(y)` as a polynomial in `Y = q^y`. Base change `q ↦ q^m`, then
/// `Y ↦ q^a X`.
pub fn base_changed_at_shift(p: &PolyX, m: u32, a: u32) -> PolyX {
    p.subst_qpow(m as usize)
        .subst_x(&RatFn::q_pow(a as usize), 1)
}

/// `F_{q^m}(x + a/m)`: base change, then `Y ↦ q^a X^m`.
pub fn base_changed_at_scaled_shift(p: &PolyX, m: u32, a: u32) -> PolyX {
    p.subst_qpow(m as usize)
        .subst_x(&RatFn::q_pow(a as usize), m as usize)
}

/// `(-1)^k`.
pub(crate) fn sign(k: u32) -> Rat {
    if k.is_multiple_of(2) {
        Rat::from_integer(1.into())
    } else {
        Rat::from_integer((-1).into())
    }
}
