//! Exact rational coefficients and their `p/q` string form.
//!
//! Every number in the engine is a [`Rat`]. On the wire rationals are always
//! strings `"p/q"` with `q > 0` and `gcd(|p|, q) = 1`; plain integers `"p"`
//! are accepted on input and read as `p/1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand for small rational constants.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical string form `p/q` (reduced, positive denominator).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator in {s:?}"))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid rational denominator in {s:?}"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// True if `r` is an integer `>= 1`.
pub fn is_positive_integer(r: &Rat) -> bool {
    r.is_integer() && r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0/1", "1/2", "-3/4", "7/1"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_accepts_integers_and_reduces() {
        assert_eq!(format_rat(&parse_rat("3").unwrap()), "3/1");
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("1/-2").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn frac_lands_in_unit_interval() {
        assert_eq!(frac(&rat(-1, 4)), rat(3, 4));
        assert_eq!(frac(&rat(5, 2)), rat(1, 2));
        assert_eq!(frac(&rat_int(2)), rat_int(0));
    }
}
