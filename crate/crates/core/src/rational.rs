//! Exact rational utilities.
//!
//! Utilities are compared and enumerated as atoms, so they are stored as
//! exact rationals. Text forms are `"3"`, `"-1/2"` and decimal `"0.25"`.

use num_rational::Rational64;
use num_traits::One;
use thiserror::Error;

pub type Rational = Rational64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{0}`")]
pub struct RationalError(pub String);

/// Parses `p`, `p/q` or a finite decimal such as `-0.125` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, RationalError> {
    let err = || RationalError(text.to_string());
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| err())?;
        let den: i64 = den.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(err());
        }
        let int_part: i64 = if int.is_empty() || int == "-" || int == "+" {
            0
        } else {
            int.parse().map_err(|_| err())?
        };
        let scale = 10i64.pow(frac.len() as u32);
        let frac_part: i64 = frac.parse().map_err(|_| err())?;
        let magnitude = int_part
            .abs()
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(err)?;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(signed, scale));
    }
    t.parse::<i64>().map(Rational::from_integer).map_err(|_| err())
}

/// Canonical text: integers bare, everything else as reduced `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}


/// Serde adapter storing a rational as its canonical string.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for rational sequences.
pub mod serde_vec {
    use super::{format_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational("-1/2").unwrap(), Rational::new(-1, 2));
        assert_eq!(parse_rational("2/4").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), Rational::new(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&Rational::new(4, 2)), "2");
        assert_eq!(format_rational(&Rational::new(-1, 2)), "-1/2");
    }

    #[test]
    fn distinct_rationals_never_compare_equal() {
        let a = Rational::new(1, 3);
        let b = Rational::new(333_333_333, 1_000_000_000);
        assert_ne!(a, b);
        assert!(b < a);
    }
}
