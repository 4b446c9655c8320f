//! Small-primes modular gcd for primitive integer polynomials.
//!
//! Images `gcd(a mod p, b mod p)` are combined by CRT over 31-bit primes
//! that do not divide either leading coefficient. A constant image proves
//! coprimality; otherwise a candidate is accepted only after it divides
//! both inputs exactly, so unlucky primes can delay but never corrupt the
//! result.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intpoly;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes descending from 2^31.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.0 > 3 {
            self.0 -= 1;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
        None
    }
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Monic gcd over GF(p).
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        // a <- a mod b
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let f = a[da] * inv % p;
            if f != 0 {
                let shift = da - db;
                for (j, bj) in b.iter().enumerate() {
                    a[shift + j] = (a[shift + j] + p - f * bj % p) % p;
                }
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for c in &mut a {
            *c = *c * inv % p;
        }
    }
    a
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

/// Gcd of primitive `a`, `b` (both nonzero), primitive with positive
/// leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let la = a.last().expect("nonzero");
    let lb = b.last().expect("nonzero");
    let gamma = la.gcd(lb);
    let mut image_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    for p in Primes(1 << 31) {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(&reduce(a, p), &reduce(b, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > image_deg {
            continue;
        }
        let gp = gamma.mod_floor(&pb).to_u64().expect("fits");
        let g: Vec<u64> = g.iter().map(|c| c * gp % p).collect();
        if d < image_deg {
            image_deg = d;
            modulus = pb;
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            if let Some(h) = try_accept(&acc, &modulus, a, b) {
                return h;
            }
            continue;
        }
        // CRT: x ≡ acc (mod modulus), x ≡ g (mod p)
        let m_mod_p = modulus.mod_floor(&pb).to_u64().expect("fits");
        let m_inv = inv_mod(m_mod_p, p);
        let mut changed = false;
        for (h, &gi) in acc.iter_mut().zip(&g) {
            let h_mod_p = h.mod_floor(&pb).to_u64().expect("fits");
            let t = (gi + p - h_mod_p) % p * m_inv % p;
            if t != 0 {
                *h += &modulus * BigInt::from(t);
                changed = true;
            }
        }
        modulus *= &pb;
        if !changed {
            if let Some(h) = try_accept(&acc, &modulus, a, b) {
                return h;
            }
        }
    }
    unreachable!("ran out of 31-bit primes")
}

fn try_accept(acc: &[BigInt], modulus: &BigInt, a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let half = modulus / 2;
    let cand: Vec<BigInt> = acc.iter().map(|c| symmetric(c, modulus, &half)).collect();
    if cand.last().is_none_or(Zero::is_zero) {
        return None;
    }
    let cand = intpoly::primitive(cand);
    if cand.last().is_some_and(Signed::is_negative) {
        return None;
    }
    if intpoly::exact_div(a, &cand).is_some() && intpoly::exact_div(b, &cand).is_some() {
        Some(cand)
    } else {
        None
    }
}
