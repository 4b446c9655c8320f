//! Dense univariate polynomials in `q` over the rationals.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intpoly;
use super::rat::Rat;
use crate::error::ExactError;

/// Polynomial in `q` with rational coefficients, index = power of `q`.
///
/// No trailing zero coefficients are stored, so the zero polynomial is the
/// empty vector and has no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at `q0`.
    pub fn eval(&self, q0: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * q0 + c)
    }

    /// `q ↦ q^m`.
    pub fn subst_qpow(&self, m: usize) -> Self {
        assert!(m >= 1, "substitution power must be positive");
        if m == 1 || self.is_constant() {
            return self.clone();
        }
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len() - 1) * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m] = c.clone();
        }
        Self { coeffs }
    }

    /// Splits `self = content * prim` with `prim` a primitive integer
    /// polynomial with positive leading coefficient.
    pub(crate) fn to_primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = intpoly::content(&ints);
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        let prim = ints.into_iter().map(|c| c / &g).collect();
        (Rat::new(g, lcm), prim)
    }

    pub(crate) fn from_primitive(content: &Rat, prim: &[BigInt]) -> Self {
        if content.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(
            prim.iter()
                .map(|c| content * Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Quotient and remainder of Euclidean division over Q.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ExactError> {
        let Some(dd) = divisor.degree() else {
            return Err(ExactError::ZeroDenominator);
        };
        let Some(dn) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if dn < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv_lead = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); dn - dd + 1];
        for k in (0..quo.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let qk = top * &inv_lead;
            for (j, bj) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * bj;
            }
            quo[k] = qk;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quo), Self::from_coeffs(rem)))
    }

    /// `self / divisor` when the division is known to be exact.
    ///
    /// Runs over Z on primitive parts (Gauss's lemma makes that sufficient).
    /// Returns `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "exact_div by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ca, pa) = self.to_primitive();
        let (cb, pb) = divisor.to_primitive();
        let quo = intpoly::exact_div(&pa, &pb)?;
        Some(Self::from_primitive(&(ca / cb), &quo))
    }

    /// Formal derivative in `q`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }
}

/// Monic greatest common divisor over Q.
///
/// Runs a primitive remainder sequence on the integer primitive parts, so
/// coefficient growth stays bounded by content removal at every step.
pub fn poly_gcd(a: &PolyQ, b: &PolyQ) -> Result<PolyQ, ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::GcdUndefined);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(PolyQ::one());
    }
    let (_, pa) = a.to_primitive();
    let (_, pb) = b.to_primitive();
    let g = intpoly::gcd_primitive(&pa, &pb);
    Ok(PolyQ::from_primitive(&Rat::one(), &g).monic())
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        PolyQ::from_coeffs(coeffs)
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        self + &(-rhs)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        if self.is_constant() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_constant() {
            return self.scale(&rhs.coeffs[0]);
        }
        let (ca, pa) = self.to_primitive();
        let (cb, pb) = rhs.to_primitive();
        PolyQ::from_primitive(&(ca * cb), &intpoly::mul(&pa, &pb))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $f(self, rhs: PolyQ) -> PolyQ {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&PolyQ> for PolyQ {
            type Output = PolyQ;
            fn $f(self, rhs: &PolyQ) -> PolyQ {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, rat_int};

    fn p(v: &[i64]) -> PolyQ {
        PolyQ::from_ints(v)
    }

    #[test]
    fn gcd_examples() {
        // (q^2 - 1, q^3 - 1) -> q - 1
        assert_eq!(
            poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 0, 0, 1])).unwrap(),
            p(&[-1, 1])
        );
        // (p, 0) -> monic p
        let a = p(&[2, 0, 4]);
        assert_eq!(
            poly_gcd(&a, &PolyQ::zero()).unwrap(),
            PolyQ::from_coeffs(vec![rat(1, 2), rat_int(0), rat_int(1)])
        );
        // ((1+q)^2 (1-q), (1+q)(1+q^2)) -> q + 1
        let a = &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[1, -1]);
        let b = &p(&[1, 1]) * &p(&[1, 0, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), p(&[1, 1]));
        assert_eq!(
            poly_gcd(&PolyQ::zero(), &PolyQ::zero()),
            Err(ExactError::GcdUndefined)
        );
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        let a = PolyQ::from_coeffs(vec![rat(1, 2), rat(1, 3)]);
        let b = &a * &PolyQ::from_coeffs(vec![rat(3, 7), rat_int(5)]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), a.monic());
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(PolyQ::zero().degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
        assert_eq!((&p(&[1, 1]) - &p(&[1, 1])).degree(), None);
    }

    #[test]
    fn division() {
        let (quo, rem) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(quo, p(&[1, -1, 1]));
        assert!(rem.is_zero());
        let (quo, rem) = p(&[1, 0, 1]).div_rem(&p(&[0, 2])).unwrap();
        assert_eq!(quo, PolyQ::from_coeffs(vec![rat_int(0), rat(1, 2)]));
        assert_eq!(rem, p(&[1]));
        assert!(p(&[1]).div_rem(&PolyQ::zero()).is_err());
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), None);
        assert_eq!(
            p(&[2, 2]).exact_div(&p(&[3, 3])),
            Some(PolyQ::constant(rat(2, 3)))
        );
    }

    #[test]
    fn pow_and_subst() {
        assert_eq!(p(&[1, -1]).pow(2), p(&[1, -2, 1]));
        assert_eq!(p(&[1, 1]).subst_qpow(3), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[1, 2, 3]).eval(&rat(1, 2)), rat(11, 4));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
    }
}
