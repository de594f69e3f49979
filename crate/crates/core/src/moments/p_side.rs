//! The `n1` side: polynomials `A_n(x, y)`, their products, and the
//! coefficient extraction producing `P^(k)_{l_1…l_k}(n1)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Composition;
use crate::exactmath::{factorial, falling_factorial_poly, shifted_rising_poly};
use crate::{BiPoly, Coeff, Error, IntPoly, RatPoly, Rational, Result, Var};

/// `A_n(x, y)` from `A_0 = 1`,
/// `A_{n+1} = (n+1)(x − y) A_n + (1 − x − y)(x∂_x − y∂_y) A_n`.
pub fn a_poly<T: Coeff>(n: u32) -> BiPoly<T> {
    a_polys(n).pop().unwrap()
}

/// `[A_0, …, A_max]`.
pub fn a_polys<T: Coeff>(max: u32) -> Vec<BiPoly<T>> {
    let x_minus_y = BiPoly::from_terms([(1, 0, T::one()), (0, 1, -T::one())]);
    let one_minus = BiPoly::from_terms([(0, 0, T::one()), (1, 0, -T::one()), (0, 1, -T::one())]);
    let mut out = vec![BiPoly::one()];
    for n in 0..max {
        let a = &out[n as usize];
        let next = &(&x_minus_y * a).scale(&T::from_int(n as i64 + 1)) + &(&one_minus * &a.diffop());
        out.push(next);
    }
    out
}

/// Coefficients `A_mn` of `Π_i A_{l_i}(x, y)`.
pub fn product_coeffs(c: &Composition) -> BTreeMap<(u32, u32), Rational> {
    let polys = a_polys::<BigInt>(c.parts().iter().copied().max().unwrap_or(0));
    product_of(c.parts(), &polys)
        .terms()
        .map(|(m, n, v)| ((m, n), Rational::from_integer(v.clone())))
        .collect()
}

fn product_of(parts: &[u32], polys: &[IntPoly]) -> IntPoly {
    parts
        .iter()
        .filter(|&&l| l > 0)
        .fold(IntPoly::one(), |acc, &l| &acc * &polys[l as usize])
}

/// `P^(k)(n1) = 1/(k+2l)! · Σ_{m,n} A_mn · ff(n1, m) · ff(n1, n) · rf(2n1+k, 2l−m−n)`
/// as a polynomial in the first variable.
pub fn p_poly(c: &Composition) -> RatPoly {
    let polys = a_polys::<BigInt>(c.parts().iter().copied().max().unwrap_or(0));
    PSide::new(c.total()).p_poly(c.parts(), &polys)
}

/// Shared falling/rising factorial tables for one moment order `2l`.
pub(crate) struct PSide {
    two_l: u32,
    ff: Vec<IntPoly>,
}

impl PSide {
    pub(crate) fn new(two_l: u32) -> Self {
        let ff = (0..=two_l)
            .map(|d| falling_factorial_poly::<BigInt>(Var::First, d))
            .collect();
        Self { two_l, ff }
    }

    pub(crate) fn p_poly(&self, parts: &[u32], polys: &[IntPoly]) -> RatPoly {
        let k = parts.len() as i64;
        let two_l = self.two_l;
        let product = product_of(parts, polys);

        // group by s = m + n so each rising factorial is built once
        let mut by_degree: Vec<IntPoly> = vec![IntPoly::zero(); two_l as usize + 1];
        for (m, n, a) in product.terms() {
            let term = (&self.ff[m as usize] * &self.ff[n as usize]).scale(a);
            by_degree[(m + n) as usize] += &term;
        }
        let mut acc = IntPoly::zero();
        for (s, inner) in by_degree.iter().enumerate() {
            if inner.is_zero() {
                continue;
            }
            let rf = shifted_rising_poly::<BigInt>(Var::First, 2, k, two_l - s as u32);
            acc += &(inner * &rf);
        }
        let den = Rational::new(BigInt::one(), factorial(k as u32 + two_l));
        acc.map_coeffs(|v| Rational::from_integer(v.clone()) * den.clone())
    }
}

/// Largest `n1` accepted by [`compute_c_direct`].
pub const C_DIRECT_MAX_N1: u32 = 8;

/// `C_{l_1…l_k}(n1)` by direct summation over all `α, β` with
/// `Σα = Σβ = n1` (each of length `k+1`) of
/// `Π (α_i+β_i)!/(α_i! β_i!) · Π_{i≥1} (α_i − β_i)^{l_i}`.
pub fn compute_c_direct(c: &Composition, n1: u32) -> Result<BigInt> {
    if n1 > C_DIRECT_MAX_N1 {
        return Err(Error::SizeLimit {
            what: "n1 for direct summation",
            value: n1 as u128,
            limit: C_DIRECT_MAX_N1 as u128,
        });
    }
    let k = c.len();
    let vectors = super::composition::weak_compositions(n1, k + 1);
    if (vectors.len() as u128).pow(2) > 50_000_000 {
        return Err(Error::SizeLimit {
            what: "direct summation terms",
            value: (vectors.len() as u128).pow(2),
            limit: 50_000_000,
        });
    }
    let fact: Vec<BigInt> = (0..=2 * n1).map(factorial).collect();
    let mut total = BigInt::zero();
    for alpha in &vectors {
        for beta in &vectors {
            let mut moment = BigInt::one();
            for (i, &l) in c.parts().iter().enumerate() {
                let d = alpha[i + 1] as i64 - beta[i + 1] as i64;
                moment *= BigInt::from(d).pow(l);
                if moment.is_zero() {
                    break;
                }
            }
            if moment.is_zero() {
                continue;
            }
            let mut weight = BigInt::one();
            for (&a, &b) in alpha.iter().zip(beta) {
                weight *= &fact[(a + b) as usize] / (&fact[a as usize] * &fact[b as usize]);
            }
            total += weight * moment;
        }
    }
    Ok(total)
}
