//! Arbitrary-precision rationals.
//!
//! `Rat` is `num_rational::BigRational`, which already keeps the invariants
//! we need: reduced, positive denominator, zero as `0/1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ExactError;

pub type Rat = BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact `"num/den"` rendering; the denominator is always written.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Shortest plain rendering: integers without `/1`.
pub fn rat_to_plain(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a`, `-a`, `+a`, `a/b` with optional sign. Decimals are rejected.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let err = |msg: &str| ExactError::Parse {
        pos: 0,
        msg: format!("{msg}: {s:?}"),
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = num.strip_prefix('+').unwrap_or(num);
    if num.is_empty() || den.is_empty() || den.starts_with(['-', '+']) {
        return Err(err("expected rational a/b"));
    }
    let n = BigInt::from_str(num).map_err(|_| err("invalid numerator"))?;
    let d = BigInt::from_str(den).map_err(|_| err("invalid denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

/// `10^-k` as an exact rational.
pub fn pow10_neg(k: u32) -> Rat {
    Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("+7").unwrap(), rat_int(7));
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn canonical_zero() {
        let z = rat(0, -5);
        assert_eq!(rat_to_string(&z), "0/1");
        assert!(z.denom().is_positive());
    }
}
