//! Exact rationals and their `"p/q"` interchange form.

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

/// The rational type used everywhere a coordinate, distance or function
/// value appears. 128-bit components: grid distances and Whitney sums stay
/// far below the overflow range.
pub type Q = Ratio<i128>;

pub fn q(num: i128, den: i128) -> Q {
    Ratio::new(num, den)
}

pub fn q0() -> Q {
    Q::zero()
}

pub fn q1() -> Q {
    Q::one()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatioParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or `"p"` (optionally signed) into a reduced rational.
pub fn parse_ratio(text: &str) -> Result<Q, RatioParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(RatioParseError::Empty);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => {
            let num: i128 = n
                .trim()
                .parse()
                .map_err(|_| RatioParseError::Invalid(text.to_owned()))?;
            let den: i128 = d
                .trim()
                .parse()
                .map_err(|_| RatioParseError::Invalid(text.to_owned()))?;
            (num, den)
        }
        None => {
            let num: i128 = t
                .parse()
                .map_err(|_| RatioParseError::Invalid(text.to_owned()))?;
            (num, 1)
        }
    };
    if den == 0 {
        return Err(RatioParseError::ZeroDenominator(text.to_owned()));
    }
    Ok(Ratio::new(num, den))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_ratio(x: Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in ["0", "1", "-3", "5/14", "-9/14", "100/7"] {
            let r = parse_ratio(s).unwrap();
            assert_eq!(format_ratio(r), s);
        }
    }

    #[test]
    fn reduces() {
        assert_eq!(parse_ratio("28/56").unwrap(), q(1, 2));
        assert_eq!(format_ratio(q(28, 56)), "1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratio("").is_err());
        assert!(parse_ratio("a/b").is_err());
        assert!(parse_ratio("1/0").is_err());
    }
}
