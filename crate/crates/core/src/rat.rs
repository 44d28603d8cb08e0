//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator (both guaranteed by the backing type). Helpers here
//! cover the small amount of integer combinatorics the rest of the crate
//! needs: factorials, binomials, falling factorials, and the `num/den`
//! string form used by the CLI.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// n/d as a `Rat`. Panics if d == 0.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer n as a `Rat`.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Falling factorial (a)_k = a (a-1) ... (a-k+1) for integer a.
pub fn falling(a: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= a - i;
    }
    acc
}

/// Parses "n", "-n", or "n/d" (d > 0 after normalization).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    t.parse::<Rat>()
        .map_err(|_| Error::InvalidInput(format!("bad rational '{t}'")))
}

/// "n" when the denominator is 1, "n/d" otherwise.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Numerator and denominator as decimal strings (denominator positive).
pub fn num_den_strings(r: &Rat) -> (String, String) {
    debug_assert!(r.denom().is_positive());
    (r.numer().to_string(), r.denom().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom().is_positive());
        assert_eq!(format_rat(&r), "-3/2");
        assert_eq!(format_rat(&rint(7)), "7");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-25/12", "2875", "4876875/8"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(falling(5, 3), BigInt::from(60));
        assert_eq!(falling(2, 4), BigInt::zero());
        assert_eq!(falling(-2, 2), BigInt::from(6));
        assert_eq!(falling(3, 0), BigInt::one());
    }
}
