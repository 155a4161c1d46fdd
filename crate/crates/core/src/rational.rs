//! Exact rational scalars.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! there is no floating point anywhere. `num_rational::BigRational` keeps
//! entries in canonical reduced form with a positive denominator, which is
//! exactly the normal form the rest of the crate relies on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Parses `"p"` or `"p/q"` with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator in {s:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Formats as `"p"` or `"p/q"`, matching the JSON wire format.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders `c * label` the way a human would write a term in a sum.
pub fn format_term(c: &Rat, label: &str, first: bool) -> String {
    let mag = c.abs();
    let sign = if c.is_negative() {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    if mag.is_one() {
        format!("{sign}{label}")
    } else {
        format!("{sign}{}*{label}", format_rat(&mag))
    }
}

/// Renders a coordinate vector against basis labels, e.g. `a - 2*b`.
pub fn format_vector(coords: &[Rat], labels: &[String]) -> String {
    let mut out = String::new();
    let mut first = true;
    for (c, l) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        out.push_str(&format_term(c, l, first));
        first = false;
    }
    if first {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-3", "3/4", "-3/4", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // non-canonical input normalizes
        assert_eq!(format_rat(&parse_rat("4/-6").unwrap()), "-2/3");
        assert_eq!(format_rat(&parse_rat("6/3").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn vector_formatting() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert_eq!(format_vector(&[rat_int(1), rat_int(-2)], &labels), "a - 2*b");
        assert_eq!(format_vector(&[rat_int(0), rat_int(0)], &labels), "0");
    }
}
