//! Canonical rational functions in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::polyq::{poly_gcd, PolyQ};
use super::rat::Rat;
use crate::error::ExactError;

/// A reduced quotient `num / den` of polynomials in `q`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, zero is `0/1`. Two
/// values are equal as rational functions iff they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: PolyQ,
    den: PolyQ,
}

/// Field operations accepted by [`ratfn_arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithOp<'a> {
    Add(&'a RatFn),
    Sub(&'a RatFn),
    Mul(&'a RatFn),
    Div(&'a RatFn),
    Pow(u32),
}

/// Applies one field operation to `a`.
pub fn ratfn_arith(a: &RatFn, op: ArithOp<'_>) -> Result<RatFn, ExactError> {
    Ok(match op {
        ArithOp::Add(b) => a + b,
        ArithOp::Sub(b) => a - b,
        ArithOp::Mul(b) => a * b,
        ArithOp::Div(b) => a.checked_div(b)?,
        ArithOp::Pow(e) => a.pow(e),
    })
}

/// Reduces `num / den` to canonical form.
pub fn ratfn_normalize(num: PolyQ, den: PolyQ) -> Result<RatFn, ExactError> {
    RatFn::new(num, den)
}

impl RatFn {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::make_monic(num, den))
    }

    fn make_monic(num: PolyQ, den: PolyQ) -> Self {
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            Self { num, den }
        } else {
            let inv = lead.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self {
            num: PolyQ::constant(c),
            den: PolyQ::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    pub fn from_poly(p: PolyQ) -> Self {
        Self {
            num: p,
            den: PolyQ::one(),
        }
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        Self::from_poly(PolyQ::monomial(Rat::one(), k))
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, when this is a constant.
    pub fn as_constant(&self) -> Option<Rat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// Checks the canonical-form invariants.
    pub fn is_canonical(&self) -> bool {
        if self.den.leading().is_none_or(|l| !l.is_one()) {
            return false;
        }
        if self.num.is_zero() {
            return self.den.is_one();
        }
        poly_gcd(&self.num, &self.den).is_ok_and(|g| g.is_one())
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        // Powers of coprime polynomials stay coprime.
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exact value at `q0`, or [`ExactError::Pole`] where the reduced
    /// denominator vanishes.
    pub fn eval(&self, q0: &Rat) -> Result<Rat, ExactError> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ExactError::Pole);
        }
        Ok(self.num.eval(q0) / d)
    }

    /// The `q → 1` limit, realized as evaluation of the reduced form.
    pub fn eval_at_one(&self) -> Result<Rat, ExactError> {
        self.eval(&Rat::one()).map_err(|_| ExactError::PoleAtOne)
    }

    /// Base change `q ↦ q^m`.
    pub fn subst_qpow(&self, m: usize) -> Self {
        if m == 1 {
            return self.clone();
        }
        // Substitution is a ring monomorphism, so coprimality survives and
        // the leading coefficient of the denominator stays 1.
        Self {
            num: self.num.subst_qpow(m),
            den: self.den.subst_qpow(m),
        }
    }
}

/// Exact value of `f` at `q0`.
pub fn ratfn_eval(f: &RatFn, q0: &Rat) -> Result<Rat, ExactError> {
    f.eval(q0)
}

pub fn ratfn_eval_at_one(f: &RatFn) -> Result<Rat, ExactError> {
    f.eval_at_one()
}

pub fn ratfn_subst_qpow(f: &RatFn, m: usize) -> RatFn {
    f.subst_qpow(m)
}

impl Default for RatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<PolyQ> for RatFn {
    fn from(p: PolyQ) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rat> for RatFn {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RatFn {
                num,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RatFn {
                num,
                den: self.den.clone(),
            };
        }
        // a/(g b') + c/(g d') = (a d' + c b') / (g b' d'); only g can share
        // factors with the new numerator.
        let g = poly_gcd(&self.den, &rhs.den).expect("nonzero denominators");
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RatFn::make_monic_nonzero(num, den);
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFn::zero();
        }
        let h = poly_gcd(&num, &g).expect("nonzero");
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.exact_div(&h).expect("gcd divides"),
                g.exact_div(&h).expect("gcd divides"),
            )
        };
        let den = &(&b1 * &d1) * &g;
        RatFn::make_monic_nonzero(num, den)
    }
}

impl RatFn {
    fn make_monic_nonzero(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            Self::zero()
        } else {
            Self::make_monic(num, den)
        }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b).
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RatFn::make_monic(&a * &c, &b * &d)
    }
}

fn cancel(x: &PolyQ, y: &PolyQ) -> (PolyQ, PolyQ) {
    if x.is_constant() || y.is_constant() {
        return (x.clone(), y.clone());
    }
    let g = poly_gcd(x, y).expect("nonzero");
    if g.is_one() {
        (x.clone(), y.clone())
    } else {
        (
            x.exact_div(&g).expect("gcd divides"),
            y.exact_div(&g).expect("gcd divides"),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFn {
            type Output = RatFn;
            fn $f(self, rhs: RatFn) -> RatFn {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RatFn> for RatFn {
            type Output = RatFn;
            fn $f(self, rhs: &RatFn) -> RatFn {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl std::iter::Sum for RatFn {
    fn sum<I: Iterator<Item = RatFn>>(iter: I) -> RatFn {
        iter.fold(RatFn::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::ratfn_plain(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, rat_int};

    fn p(v: &[i64]) -> PolyQ {
        PolyQ::from_ints(v)
    }

    fn f(n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(f(&[-1, 0, 1], &[-1, 1]), RatFn::from_poly(p(&[1, 1])));
        let r = f(&[2, 2], &[4]);
        assert_eq!(r.num(), &PolyQ::from_coeffs(vec![rat(1, 2), rat(1, 2)]));
        assert!(r.den().is_one());
        let z = f(&[0], &[5, 0, 0, 1]);
        assert!(z.is_zero() && z.den().is_one());
        assert_eq!(
            RatFn::new(p(&[1]), PolyQ::zero()),
            Err(ExactError::ZeroDenominator)
        );
    }

    #[test]
    fn arith_examples() {
        let a = f(&[1], &[1, -1]);
        assert!(ratfn_arith(&a, ArithOp::Add(&-&a)).unwrap().is_zero());
        let b = RatFn::from_poly(p(&[1, 1]));
        let inv = b.recip().unwrap();
        assert!(ratfn_arith(&b, ArithOp::Mul(&inv)).unwrap().is_one());
        assert_eq!(
            ratfn_arith(&RatFn::from_poly(p(&[1, -1])), ArithOp::Pow(2)).unwrap(),
            RatFn::from_poly(p(&[1, -2, 1]))
        );
        assert_eq!(
            ratfn_arith(&a, ArithOp::Div(&RatFn::zero())),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            RatFn::from_poly(p(&[1, 1, 1])).eval(&rat(1, 2)).unwrap(),
            rat(7, 4)
        );
        assert_eq!(
            f(&[0, -1], &[1, 0, 1]).eval(&rat(1, 2)).unwrap(),
            rat(-2, 5)
        );
        assert_eq!(f(&[1], &[1, -1]).eval(&rat_int(1)), Err(ExactError::Pole));
        assert_eq!(f(&[0, -1], &[1, 0, 1]).eval_at_one().unwrap(), rat(-1, 2));
        assert_eq!(
            RatFn::from_poly(p(&[1, 1, 1])).eval_at_one().unwrap(),
            rat_int(3)
        );
        assert_eq!(f(&[-1], &[1, -1]).eval_at_one(), Err(ExactError::PoleAtOne));
    }

    #[test]
    fn subst_examples() {
        assert_eq!(
            RatFn::from_poly(p(&[1, 1])).subst_qpow(3),
            RatFn::from_poly(p(&[1, 0, 0, 1]))
        );
        let e1 = f(&[0, -1], &[1, 0, 1]);
        let e1_sq = e1.subst_qpow(2);
        assert_eq!(e1_sq, f(&[0, 0, -1], &[1, 0, 0, 0, 1]));
        assert!(e1_sq.is_canonical());
        assert_eq!(e1_sq.eval(&rat(1, 2)).unwrap(), rat(-4, 17));
        assert_eq!(e1.subst_qpow(1), e1);
    }

    #[test]
    fn removable_singularity_cancels() {
        // (1 - q^3) / (1 - q) reduces to 1 + q + q^2, so q = 1 is not a pole.
        let r = f(&[1, 0, 0, -1], &[1, -1]);
        assert!(r.is_polynomial());
        assert_eq!(r.eval_at_one().unwrap(), rat_int(3));
    }

    #[test]
    fn add_with_shared_denominator_factor() {
        // 1/((1+q)(1-q)) + 1/((1+q)(1+q^2)) shares the factor 1+q.
        let a = f(&[1], &[1, 0, -1]);
        let b = f(&[1], &[1, 1, 1, 1]);
        let s = &a + &b;
        assert!(s.is_canonical());
        for q0 in [rat(1, 3), rat(2, 5), rat(-7, 2)] {
            assert_eq!(
                s.eval(&q0).unwrap(),
                a.eval(&q0).unwrap() + b.eval(&q0).unwrap()
            );
        }
    }
}
