//! Exact rational scalars.
//!
//! Everything in the crate is computed over `BigRational`; there is no floating
//! point anywhere. Scalars travel through JSON as strings `"p/q"` or `"p"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

// Integer operands skip the gcd normalisation `BigRational` performs on every operation.

pub fn mul(a: &Scalar, b: &Scalar) -> Scalar {
    match (a.is_integer(), b.is_integer()) {
        (true, true) => BigRational::from_integer(a.numer() * b.numer()),
        (true, false) => integer_times(a.numer(), b),
        (false, true) => integer_times(b.numer(), a),
        (false, false) => a * b,
    }
}

/// `n·(p/q)` with one gcd against the (usually small) denominator.
fn integer_times(n: &BigInt, r: &Scalar) -> Scalar {
    let g = gcd_with(n, r.denom());
    if g.is_one() {
        BigRational::new_raw(n * r.numer(), r.denom().clone())
    } else {
        BigRational::new_raw((n / &g) * r.numer(), r.denom() / &g)
    }
}

/// `gcd(n, d)` for `d > 0`, reducing `n` modulo `d` first.
fn gcd_with(n: &BigInt, d: &BigInt) -> BigInt {
    let rem = n.mod_floor(d);
    match (rem.to_u64(), d.to_u64()) {
        (Some(r), Some(d)) => BigInt::from(r.gcd(&d)),
        _ => rem.gcd(d),
    }
}

pub fn add(a: &Scalar, b: &Scalar) -> Scalar {
    match (a.is_integer(), b.is_integer()) {
        (true, true) => BigRational::from_integer(a.numer() + b.numer()),
        // n/d in lowest terms stays in lowest terms after adding an integer
        (true, false) => BigRational::new_raw(a.numer() * b.denom() + b.numer(), b.denom().clone()),
        (false, true) => BigRational::new_raw(b.numer() * a.denom() + a.numer(), a.denom().clone()),
        (false, false) => a + b,
    }
}

pub fn sub(a: &Scalar, b: &Scalar) -> Scalar {
    add(a, &-b)
}

/// Parses `"p"`, `"p/q"` (optionally signed, surrounding whitespace allowed).
pub fn parse(text: &str) -> Result<Scalar> {
    let trimmed = text.trim();
    let bad = || Error::Input(format!("invalid rational `{text}`"));
    match trimmed.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Input(format!("zero denominator in `{text}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = trimmed.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Lowest terms, positive denominator, denominator omitted when it is 1.
pub fn format(value: &Scalar) -> String {
    value.to_string()
}

/// `Some(n)` when the scalar is an integer fitting in `i64`.
pub fn as_i64(value: &Scalar) -> Option<i64> {
    if value.is_integer() {
        i64::try_from(value.numer()).ok()
    } else {
        None
    }
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n).fold(one(), |acc, k| acc * int(k as i64))
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse(" -7 ").unwrap(), int(-7));
        assert_eq!(parse("3/-6").unwrap(), ratio(-1, 2));
        assert_eq!(format(&ratio(3, -6)), "-1/2");
        assert_eq!(format(&int(5)), "5");
        assert!(parse("1/0").is_err());
        assert!(parse("1.5").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn integer_extraction() {
        assert_eq!(as_i64(&int(-4)), Some(-4));
        assert_eq!(as_i64(&ratio(1, 2)), None);
    }

    #[test]
    fn counting() {
        assert_eq!(factorial(5), int(120));
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(15, 3), 455);
    }
    #[test]
    fn fast_paths_agree_with_generic_arithmetic() {
        let samples = [int(0), int(7), int(-12), int(18), ratio(3, 4), ratio(-5, 6), ratio(9, 3), ratio(-7, 12)];
        for a in &samples {
            for b in &samples {
                assert_eq!(mul(a, b), a * b);
                assert_eq!(add(a, b), a + b);
                assert_eq!(sub(a, b), a - b);
                assert_eq!(add(a, b).denom(), (a + b).denom());
                assert_eq!(mul(a, b).denom(), (a * b).denom());
            }
        }
    }

}
