//! Dense integer polynomial kernels behind `PolyQ`.
//!
//! Slices are coefficient vectors indexed by degree with no trailing zeros;
//! the empty slice is the zero polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Positive gcd of all coefficients; zero for the zero polynomial.
pub(crate) fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    g
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(mut a: Vec<BigInt>) -> Vec<BigInt> {
    let Some(lead) = a.last() else { return a };
    let mut g = content(&a);
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in &mut a {
            *c = &*c / &g;
        }
    }
    a
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exact quotient `a / b` over Z, or `None` if `b` does not divide `a`.
pub(crate) fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!b.is_empty(), "exact_div by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (qk, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] -= &qk * bj;
            }
        }
        quo[k] = qk;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quo);
    Some(quo)
}

#[cfg(test)]
/// Pseudo-remainder of `a` by `b`: remainder of `lc(b)^e * a` with the
/// minimal scaling applied step by step.
pub(crate) fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let g = lr.gcd(lb);
        let sb = lb / &g;
        let sr = &lr / &g;
        if !sb.is_one() {
            for c in &mut r {
                *c *= &sb;
            }
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[shift + j] -= &sr * bj;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Gcd of two primitive integer polynomials, primitive with positive
/// leading coefficient.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return primitive(b.to_vec());
    }
    if b.is_empty() {
        return primitive(a.to_vec());
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    super::modgcd::gcd(a, b)
}

#[cfg(test)]
/// Gcd by the primitive remainder sequence. Slower than the modular
/// route on coprime inputs; kept as an independent check.
pub(crate) fn gcd_primitive_prs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    if b.is_empty() {
        return primitive(a);
    }
    loop {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return primitive(b);
        }
        a = b;
        b = primitive(r);
    }
}
