//! Polynomials in `X = q^x` with coefficients in Q(q).

use std::ops::{Add, Mul, Neg, Sub};

use super::polyq::PolyQ;
use super::rat::Rat;
use super::ratfn::RatFn;

/// Polynomial in `X ≡ q^x` over the field of rational functions in `q`.
///
/// Index = power of `X`; only non-negative powers exist. No trailing zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    coeffs: Vec<RatFn>,
}

impl PolyX {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFn::one())
    }

    pub fn constant(c: RatFn) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: RatFn, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![RatFn::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The variable `X = q^x`.
    pub fn x() -> Self {
        Self::monomial(RatFn::one(), 1)
    }

    /// `[x]_q = (1 - X) / (1 - q)`.
    pub fn q_bracket_x() -> Self {
        let inv = RatFn::new(PolyQ::one(), PolyQ::from_ints(&[1, -1])).expect("nonzero");
        Self::from_coeffs(vec![inv.clone(), -inv])
    }

    pub fn from_coeffs(mut coeffs: Vec<RatFn>) -> Self {
        while coeffs.last().is_some_and(RatFn::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFn {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The coefficient of `X^0` if that is the only one.
    pub fn as_constant(&self) -> Option<RatFn> {
        match self.coeffs.len() {
            0 => Some(RatFn::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.coeffs.last().is_none_or(|c| !c.is_zero())
            && self.coeffs.iter().all(RatFn::is_canonical)
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `X ↦ c·X^k`: with `c = q^a, k = 1` this shifts
    /// `x ↦ x + a`; with `c = 1, k = m` it scales `x ↦ m·x`.
    pub fn subst_x(&self, c: &RatFn, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if k == 0 {
            return Self::constant(self.eval(c));
        }
        let mut coeffs = vec![RatFn::zero(); (self.coeffs.len() - 1) * k + 1];
        let mut cpow = RatFn::one();
        for (l, a) in self.coeffs.iter().enumerate() {
            if l > 0 {
                cpow = &cpow * c;
            }
            coeffs[l * k] = a * &cpow;
        }
        Self::from_coeffs(coeffs)
    }

    /// Horner evaluation at a value of `X` in Q(q).
    pub fn eval(&self, x_val: &RatFn) -> RatFn {
        self.coeffs
            .iter()
            .rev()
            .fold(RatFn::zero(), |acc, c| &(&acc * x_val) + c)
    }

    /// Value at integer argument `x = j`, i.e. `X ↦ q^j`.
    pub fn eval_int(&self, j: usize) -> RatFn {
        self.eval(&RatFn::q_pow(j))
    }

    /// Coefficientwise base change `q ↦ q^m`. Read as a function of `y`
    /// with `Y = (q^m)^y`, this turns a family in base `q` into base `q^m`.
    pub fn subst_qpow(&self, m: usize) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.subst_qpow(m)).collect(),
        }
    }

    /// Value at a rational `q0` and integer `x = j`.
    pub fn eval_at(&self, q0: &Rat, j: usize) -> Result<Rat, crate::ExactError> {
        let xv = num_traits::pow(q0.clone(), j);
        let mut acc = Rat::from_integer(0.into());
        for c in self.coeffs.iter().rev() {
            acc = acc * &xv + c.eval(q0)?;
        }
        Ok(acc)
    }

    /// `X ↦ 1` (the `x = 0` specialization).
    pub fn at_x_zero(&self) -> RatFn {
        self.coeffs.iter().cloned().sum()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

pub fn polyx_subst_x(p: &PolyX, c: &RatFn, k: usize) -> PolyX {
    p.subst_x(c, k)
}

pub fn polyx_eval_int(p: &PolyX, j: usize) -> RatFn {
    p.eval_int(j)
}

impl From<RatFn> for PolyX {
    fn from(c: RatFn) -> Self {
        Self::constant(c)
    }
}

impl Add for &PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = &*c + s;
        }
        PolyX::from_coeffs(coeffs)
    }
}

impl Sub for &PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        self + &(-rhs)
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyX {
    type Output = PolyX;
    fn mul(self, rhs: &PolyX) -> PolyX {
        if self.is_zero() || rhs.is_zero() {
            return PolyX::zero();
        }
        let mut coeffs = vec![RatFn::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        PolyX::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for PolyX {
            type Output = PolyX;
            fn $f(self, rhs: PolyX) -> PolyX {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&PolyX> for PolyX {
            type Output = PolyX;
            fn $f(self, rhs: &PolyX) -> PolyX {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        -&self
    }
}

impl std::iter::Sum for PolyX {
    fn sum<I: Iterator<Item = PolyX>>(iter: I) -> PolyX {
        iter.fold(PolyX::zero(), |acc, x| &acc + &x)
    }
}

impl std::fmt::Display for PolyX {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&super::render::polyx_plain(self))
    }
}
