//! Exact scalar arithmetic.
//!
//! Every coefficient in this crate is an arbitrary-precision rational.
//! `BigRational` already maintains the invariants we need (lowest terms,
//! positive denominator, structural equality), so we alias it rather than
//! wrap it.

use num_bigint::BigInt;
pub use num_rational::BigRational as Rat;
use num_traits::{One, Zero};

/// The rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

/// Renders `p/q` with the denominator omitted when it is one.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"`, with an optional leading sign.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// `(-1)^k` as a rational.
pub fn neg_one_pow(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Exact factorial.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn reduced_and_structural() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert!(rat(1, -2).denom().is_positive());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3", "-3", "1/2", "-7/3", "0"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&fmt_rat(&x)).unwrap(), x);
        }
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }
}
