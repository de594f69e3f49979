//! Text and JSON forms of rational polynomials.
//!
//! JSON: `{"terms": [[e_x, e_y, "num/den"], ...]}` with terms in lexicographic
//! exponent order.

use std::fmt;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::symmetric::{push_power, write_sum};
use crate::{Error, RatPoly, Rational, Result};

/// Formats a rational as `num/den` (denominator always present).
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("{s:?}: zero denominator")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    terms: Vec<(u32, u32, String)>,
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire {
            terms: self
                .terms()
                .map(|(ex, ey, c)| (ex, ey, rational_to_string(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        for (ex, ey, c) in wire.terms {
            terms.push((ex, ey, parse_rational(&c).map_err(D::Error::custom)?));
        }
        Ok(RatPoly::from_terms(terms))
    }
}

/// Monomial-basis rendering in the variables `n1`, `n2`, highest total
/// degree first, e.g. `7*n1^2*n2^2/15 - n1^2*n2/15 - n1*n2^2/15`.
impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        write_sum(
            f,
            terms.into_iter().map(|(ex, ey, c)| {
                let mut factors = Vec::new();
                push_power(&mut factors, "n1", ex);
                push_power(&mut factors, "n2", ey);
                (factors.join("*"), c)
            }),
        )
    }
}
