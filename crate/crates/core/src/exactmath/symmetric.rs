//! Rewriting symmetric polynomials in the elementary basis `(n1·n2, n1+n2)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use crate::{Error, RatPoly, Rational, Result, Var};

/// A symmetric polynomial written as `Σ c · (n1 n2)^a · (n1 + n2)^b`, keyed by
/// `(a, b)`. Display-only: arithmetic stays on [`RatPoly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryForm {
    pub terms: BTreeMap<(u32, u32), Rational>,
}

/// Converts a symmetric polynomial in `(n1, n2)` to the elementary basis.
pub fn to_elementary(p: &RatPoly) -> Result<ElementaryForm> {
    if *p != p.swap_vars() {
        return Err(Error::NotSymmetric);
    }
    let e2 = RatPoly::monomial(Rational::one(), 1, 1);
    let e1 = &RatPoly::var(Var::First) + &RatPoly::var(Var::Second);

    let mut rest = p.clone();
    let mut terms = BTreeMap::new();
    // The lex-leading monomial of e2^b e1^(a-b) is x^a y^b, so peeling off
    // leading terms strictly decreases the leading exponent.
    while let Some((a, b, c)) = rest.terms().last().map(|(a, b, c)| (a, b, c.clone())) {
        if a < b {
            return Err(Error::NotSymmetric);
        }
        let basis = &e2.pow(b) * &e1.pow(a - b);
        rest -= &basis.scale(&c);
        terms.insert((b, a - b), c);
    }
    Ok(ElementaryForm { terms })
}

impl ElementaryForm {
    pub fn to_poly(&self) -> RatPoly {
        let e2 = RatPoly::monomial(Rational::one(), 1, 1);
        let e1 = &RatPoly::var(Var::First) + &RatPoly::var(Var::Second);
        let mut out = RatPoly::zero();
        for (&(a, b), c) in &self.terms {
            out += &(&e2.pow(a) * &e1.pow(b)).scale(c);
        }
        out
    }
}

impl fmt::Display for ElementaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        // highest weighted degree first, then higher powers of n1*n2
        keys.sort_by_key(|k| std::cmp::Reverse((2 * k.0 + k.1, k.0)));
        let items = keys.into_iter().map(|(a, b)| {
            let mut factors = Vec::new();
            push_power(&mut factors, "(n1*n2)", a);
            push_power(&mut factors, "(n1+n2)", b);
            (factors.join("*"), &self.terms[&(a, b)])
        });
        write_sum(f, items)
    }
}

pub(crate) fn push_power(factors: &mut Vec<String>, base: &str, e: u32) {
    match e {
        0 => {}
        1 => factors.push(base.to_string()),
        _ => factors.push(format!("{base}^{e}")),
    }
}

/// Writes `c1*m1 + c2*m2 - ...` with rational coefficients rendered as
/// `num*mono/den`.
pub(crate) fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, items: I) -> fmt::Result
where
    I: IntoIterator<Item = (String, &'a Rational)>,
{
    let mut first = true;
    for (mono, c) in items {
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let num = c.numer().abs();
        let den = c.denom();
        match (mono.is_empty(), num.is_one()) {
            (true, _) => write!(f, "{num}")?,
            (false, true) => f.write_str(&mono)?,
            (false, false) => write!(f, "{num}*{mono}")?,
        }
        if !den.is_one() {
            write!(f, "/{den}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
