//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational, always kept in lowest terms with
//! a positive denominator (that is what `num_rational::BigRational` guarantees
//! after every operation). No floating point appears anywhere in this crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Generalized binomial coefficient `binom(x, k) = x(x-1)...(x-k+1)/k!`
/// with a rational top argument.
pub fn gen_binomial(x: &Rat, k: u32) -> Rat {
    let mut num = Rat::one();
    for i in 0..k {
        num *= x - rint(i as i64);
    }
    num / factorial(k)
}

/// Binomial coefficient with integer arguments.
pub fn binomial(n: i64, k: u32) -> Rat {
    gen_binomial(&rint(n), k)
}

/// Pochhammer symbol (rising factorial) `(a)_n = a(a+1)...(a+n-1)`.
pub fn pochhammer(a: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..n {
        acc *= a + rint(i as i64);
    }
    acc
}

/// `base^exp` for a rational base and signed integer exponent.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Renders a rational as `num/den`, or just `num` when the denominator is 1.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `num/den` or a bare integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// True if `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// The integer value of `x`, if it is one.
pub fn to_integer(x: &Rat) -> Option<BigInt> {
    is_integer(x).then(|| x.numer().clone())
}

/// Sum of `d^k` over positive divisors `d` of `n`, by trial division.
pub fn sigma(n: u64, k: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(k);
        }
    }
    acc
}

/// True if `x` is a nonpositive integer (the forbidden lower-parameter set
/// for hypergeometric series).
pub fn is_nonpositive_integer(x: &Rat) -> bool {
    is_integer(x) && !x.numer().is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_binomial_small() {
        assert_eq!(gen_binomial(&rat(-1, 12), 0), rint(1));
        assert_eq!(gen_binomial(&rat(-1, 12), 1), rat(-1, 12));
        // (5/12)(-7/12)/2 = -35/288
        assert_eq!(gen_binomial(&rat(5, 12), 2), rat(-35, 288));
    }

    #[test]
    fn pochhammer_small() {
        assert_eq!(pochhammer(&rat(1, 12), 0), rint(1));
        assert_eq!(pochhammer(&rint(1), 5), rint(120));
        // (-12)^4 * (-1/12)_1 (5/12)_1 / 1! = -720, the A_{1,2}(0) value
        let v = rat_pow(&rint(-12), 4) * pochhammer(&rat(-1, 12), 1) * pochhammer(&rat(5, 12), 1);
        assert_eq!(v, rint(-720));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1, 1), BigInt::from(1));
        assert_eq!(sigma(2, 1), BigInt::from(3));
        assert_eq!(sigma(6, 1), BigInt::from(12));
        assert_eq!(sigma(2, 3), BigInt::from(9));
    }

    #[test]
    fn rat_round_trip() {
        for s in ["3/4", "-7", "0", "22/7", "-5/9"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
        }
        assert!(parse_rat("1/0").is_none());
    }
}
