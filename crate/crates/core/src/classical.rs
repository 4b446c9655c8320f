//! Classical Euler, Genocchi and Bernoulli numbers and polynomials.
//!
//! Conventions: `E_n = E_n(0)` from `2/(e^t+1)` (so `E_1 = -1/2`), `G_n`
//! from `2t/(e^t+1)`, `B_n` with `B_1 = -1/2`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::render::{coeffs_latex, coeffs_plain};
use crate::exact::Rat;

/// Largest index kept in the memo tables.
pub const MEMO_CAP: usize = 64;

/// Polynomial in `x` with rational coefficients, index = power of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct XPoly {
    coeffs: Vec<Rat>,
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::from_coeffs(v.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// `p(a + b·x)`.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Self {
        let lin = XPoly::from_coeffs(vec![a.clone(), b.clone()]);
        self.coeffs.iter().rev().fold(XPoly::zero(), |acc, c| {
            &(&acc * &lin) + &XPoly::from_coeffs(vec![c.clone()])
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn to_plain(&self) -> String {
        coeffs_plain(&self.coeffs, "x")
    }

    pub fn to_latex(&self) -> String {
        coeffs_latex(&self.coeffs, "x")
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[Rat], i: usize| v.get(i).cloned().unwrap_or_else(Rat::zero);
        XPoly::from_coeffs(
            (0..n)
                .map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i))
                .collect(),
        )
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        XPoly::from_coeffs(out)
    }
}

impl std::fmt::Display for XPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_plain())
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn binom_rat(n: u32, k: u32) -> Rat {
    Rat::from_integer(binomial(n, k))
}

/// Memo table filled by a recurrence that needs every earlier entry.
struct Memo {
    table: RwLock<Vec<Rat>>,
    next: fn(&[Rat]) -> Rat,
}

impl Memo {
    const fn new(next: fn(&[Rat]) -> Rat) -> Self {
        Self {
            table: RwLock::new(Vec::new()),
            next,
        }
    }

    fn get(&self, n: usize) -> Rat {
        if let Some(v) = self.table.read().expect("memo lock").get(n) {
            return v.clone();
        }
        if n <= MEMO_CAP {
            let mut t = self.table.write().expect("memo lock");
            while t.len() <= n {
                let v = (self.next)(&t);
                t.push(v);
            }
            return t[n].clone();
        }
        let mut t: Vec<Rat> = self.table.read().expect("memo lock").clone();
        while t.len() <= n {
            let v = (self.next)(&t);
            t.push(v);
        }
        t.swap_remove(n)
    }
}

// 2 E_n = -sum_{k<n} C(n,k) E_k for n >= 1, from (e^t + 1) F(t) = 2.
fn euler_next(prev: &[Rat]) -> Rat {
    let n = prev.len() as u32;
    if n == 0 {
        return Rat::one();
    }
    let s: Rat = prev
        .iter()
        .enumerate()
        .map(|(k, e)| binom_rat(n, k as u32) * e)
        .sum();
    -s / Rat::from_integer(2.into())
}

// sum_{k<=n} C(n+1,k) B_k = 0 for n >= 1.
fn bernoulli_next(prev: &[Rat]) -> Rat {
    let n = prev.len() as u32;
    if n == 0 {
        return Rat::one();
    }
    let s: Rat = prev
        .iter()
        .enumerate()
        .map(|(k, b)| binom_rat(n + 1, k as u32) * b)
        .sum();
    -s / Rat::from_integer(BigInt::from(n + 1))
}

fn euler_memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Memo::new(euler_next))
}

fn bernoulli_memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Memo::new(bernoulli_next))
}

/// `E_n`, the value at `x = 0` of the Euler polynomial.
pub fn euler_number(n: u32) -> Rat {
    euler_memo().get(n as usize)
}

/// `G_0 = 0`, `G_n = n·E_{n-1}`.
pub fn genocchi_number(n: u32) -> Rat {
    if n == 0 {
        return Rat::zero();
    }
    Rat::from_integer(n.into()) * euler_number(n - 1)
}

pub fn bernoulli_number(n: u32) -> Rat {
    bernoulli_memo().get(n as usize)
}

fn appell(n: u32, seq: impl Fn(u32) -> Rat) -> XPoly {
    // sum_k C(n,k) a_k x^{n-k}
    let mut coeffs = vec![Rat::zero(); n as usize + 1];
    for k in 0..=n {
        coeffs[(n - k) as usize] = binom_rat(n, k) * seq(k);
    }
    XPoly::from_coeffs(coeffs)
}

pub fn euler_poly(n: u32) -> XPoly {
    appell(n, euler_number)
}

pub fn genocchi_poly(n: u32) -> XPoly {
    appell(n, genocchi_number)
}

pub fn bernoulli_poly(n: u32) -> XPoly {
    appell(n, bernoulli_number)
}

/// `Z_m(n) = 1^m - 2^m + ... + (-1)^{n+1} n^m`.
pub fn alt_power_sum(m: u32, n: u32) -> Rat {
    let mut acc = BigInt::zero();
    for j in 1..=n {
        let t = num_traits::pow(BigInt::from(j), m as usize);
        if j % 2 == 1 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Rat::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, rat_int};

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(0), rat_int(1));
        assert_eq!(euler_number(1), rat(-1, 2));
        assert_eq!(euler_number(4), rat_int(0));
        assert_eq!(euler_number(3), rat(1, 4));
    }

    #[test]
    fn euler_poly_examples() {
        assert_eq!(euler_poly(0), XPoly::from_ints(&[1]));
        assert_eq!(
            euler_poly(1),
            XPoly::from_coeffs(vec![rat(-1, 2), rat_int(1)])
        );
        assert_eq!(euler_poly(2), XPoly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn genocchi_examples() {
        assert_eq!(genocchi_number(1), rat_int(1));
        assert_eq!(genocchi_number(3), rat_int(0));
        assert_eq!(genocchi_number(6), rat_int(-3));
        assert_eq!(genocchi_poly(0), XPoly::zero());
        assert_eq!(genocchi_poly(1), XPoly::from_ints(&[1]));
        assert_eq!(genocchi_poly(2), XPoly::from_ints(&[-1, 2]));
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_number(0), rat_int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(
            rat_int(2 * (1 - 4)) * bernoulli_number(2),
            genocchi_number(2)
        );
    }

    #[test]
    fn alt_power_sums() {
        assert_eq!(alt_power_sum(3, 0), rat_int(0));
        assert_eq!(alt_power_sum(1, 2), rat_int(-1));
        assert_eq!(alt_power_sum(2, 3), rat_int(6));
    }

    #[test]
    fn beyond_memo_cap_matches() {
        // Indices past the cap are recomputed each call; results must agree.
        let n = MEMO_CAP as u32 + 3;
        assert_eq!(euler_number(n), euler_number(n));
        assert_eq!(
            genocchi_number(n + 1),
            rat_int(i64::from(n + 1)) * euler_number(n)
        );
        assert_eq!(euler_number(MEMO_CAP as u32 + 2), rat_int(0));
    }

    #[test]
    fn compose_affine_reflection() {
        // E_2(1 - x) = (1-x)^2 - (1-x) = x^2 - x
        let p = euler_poly(2).compose_affine(&rat_int(1), &rat_int(-1));
        assert_eq!(p, euler_poly(2));
    }
}
