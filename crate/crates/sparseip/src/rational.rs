//! Exact rational scalars and the "finite or infinite" bound type used for
//! variable upper bounds and multiplicity caps.
//!
//! All numeric data in this crate is `BigRational` (arbitrary precision,
//! always in lowest terms with positive denominator). The text form is
//! `p` or `p/q`; infinity is spelled `inf`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

pub type Rational = BigRational;

/// Shorthand for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    Empty,
    BadInteger(String),
    ZeroDenominator,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseRationalError::Empty => write!(f, "empty rational"),
            ParseRationalError::BadInteger(s) => write!(f, "bad integer {s:?}"),
            ParseRationalError::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `p` or `p/q`. The result is reduced; `q` may be negative in the
/// input and is normalized away.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let num = BigInt::from_str(num.trim())
        .map_err(|_| ParseRationalError::BadInteger(num.to_string()))?;
    let den = BigInt::from_str(den.trim())
        .map_err(|_| ParseRationalError::BadInteger(den.to_string()))?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `p` when the denominator is 1, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A finite rational or +infinity. Ordered with `Infinite` greatest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Finite(Rational),
    Infinite,
}

impl Bound {
    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(r) => Some(r),
            Bound::Infinite => None,
        }
    }

    /// The smaller of a finite value and this bound.
    pub fn min_with(&self, r: &Rational) -> Rational {
        match self {
            Bound::Finite(u) if u < r => u.clone(),
            _ => r.clone(),
        }
    }

    pub fn ge(&self, r: &Rational) -> bool {
        match self {
            Bound::Finite(u) => u >= r,
            Bound::Infinite => true,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Bound::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

pub fn parse_bound(s: &str) -> Result<Bound, ParseRationalError> {
    if s.trim() == "inf" {
        Ok(Bound::Infinite)
    } else {
        parse_rational(s).map(Bound::Finite)
    }
}

pub fn format_bound(b: &Bound) -> String {
    match b {
        Bound::Finite(r) => format_rational(r),
        Bound::Infinite => "inf".to_string(),
    }
}

/// True when `r` is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "3/4", "-7/2", "12345/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // non-canonical inputs normalize
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert_eq!(format_rational(&parse_rational("6/3").unwrap()), "2");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert_eq!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator));
        assert!(matches!(parse_rational("a/b"), Err(ParseRationalError::BadInteger(_))));
    }

    #[test]
    fn bounds() {
        assert_eq!(parse_bound("inf").unwrap(), Bound::Infinite);
        assert_eq!(parse_bound("3/2").unwrap(), Bound::Finite(rat(3, 2)));
        assert_eq!(format_bound(&Bound::Infinite), "inf");
        assert!(Bound::Infinite > Bound::Finite(rat_int(1_000_000)));
        assert_eq!(Bound::Finite(rat_int(2)).min_with(&rat_int(5)), rat_int(2));
        assert_eq!(Bound::Infinite.min_with(&rat_int(5)), rat_int(5));
        assert!(Bound::Infinite.ge(&rat_int(100)));
        assert!(!Bound::Finite(rat(1, 2)).ge(&rat_int(1)));
    }
}
