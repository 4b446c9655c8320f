//! Inputs shared by the benchmarks under `benches/`.

use qeuler_core::PolyQ;

/// `(1+q)(1+q^2)...(1+q^k)`.
pub fn bracket_product(k: usize) -> PolyQ {
    (1..=k).fold(PolyQ::one(), |acc, j| {
        let mut c = vec![0i64; j + 1];
        c[0] = 1;
        c[j] = 1;
        &acc * &PolyQ::from_ints(&c)
    })
}

/// Two polynomials of degree about `2k` sharing the factor `bracket_product(k/2)`.
pub fn gcd_pair(k: usize) -> (PolyQ, PolyQ) {
    let common = bracket_product(k / 2);
    let a = &common * &PolyQ::from_ints(&(0..=k as i64).map(|i| i * i - 3).collect::<Vec<_>>());
    let b = &common * &PolyQ::from_ints(&(0..=k as i64).map(|i| 2 * i + 1).collect::<Vec<_>>());
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qeuler_core::exact::poly_gcd;

    #[test]
    fn pair_shares_the_bracket_product() {
        let (a, b) = gcd_pair(8);
        let g = poly_gcd(&a, &b).unwrap();
        assert!(g.exact_div(&bracket_product(4)).is_some());
    }
}
