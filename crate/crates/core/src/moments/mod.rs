//! Symbolic computation of the moment polynomials `P_2l(n1, n2)`:
//!
//! ```text
//! Σ_{γ ∈ Γ(n1,n2)} Area(γ)^{2l} = |Γ(n1,n2)| · P_2l(n1, n2)
//! P_2l = Σ_{k=1..2l} Σ_{l_1+…+l_k = 2l} (2l)!/(l_1!⋯l_k!) · P^(k)(n1) · Q^(k)(n2)
//! ```
//!
//! `P^(k)` comes from coefficient extraction in a generating function built
//! on the polynomials `A_n(x, y)` ([`p_poly`]); `Q^(k)` is a signed sum over
//! interaction increments ([`q_poly`], [`q_poly_fast`]). Compositions are
//! grouped by permutation class so each `P^(k)` is computed once.

mod cache;
pub mod composition;
mod p_side;
mod q_side;

pub use cache::{MomentCache, CACHE_FORMAT_VERSION};
pub use composition::Composition;
pub use p_side::{a_poly, a_polys, compute_c_direct, p_poly, product_coeffs, C_DIRECT_MAX_N1};
pub use q_side::{class_q_sum, q_poly, q_poly_fast, s_poly};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactmath::{binomial, factorial, multinomial, to_elementary, ElementaryForm};
use crate::{Error, RatPoly, Rational, Result, Var};

/// `P_2l(n1, n2)`: the mean of `Area^{2l}` over `Γ(n1, n2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentPolynomial {
    pub order: u32,
    pub poly: RatPoly,
}

impl MomentPolynomial {
    /// Wraps `poly` after checking every structural invariant.
    pub fn new(order: u32, poly: RatPoly) -> Result<Self> {
        let mp = Self { order, poly };
        mp.validate()?;
        Ok(mp)
    }

    /// Symmetry, single-variable degree ≤ l, total degree exactly 2l,
    /// vanishing on both axes and `P(1, 1) = 1/3` (or `P_0 = 1`).
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(format!("P_{}: {msg}", self.order)));
        if self.order % 2 == 1 {
            return fail("odd order".into());
        }
        if self.order == 0 {
            if self.poly != RatPoly::one() {
                return fail("zeroth moment polynomial must be 1".into());
            }
            return Ok(());
        }
        let l = self.order / 2;
        if self.poly != self.poly.swap_vars() {
            return fail("not symmetric under n1 <-> n2".into());
        }
        if self.poly.degree() != Some(self.order) {
            return fail(format!("total degree {:?} != {}", self.poly.degree(), self.order));
        }
        for var in [Var::First, Var::Second] {
            if self.poly.degree_in(var).unwrap_or(0) > l {
                return fail(format!("degree in {var:?} exceeds {l}"));
            }
        }
        if self.poly.terms().any(|(ex, ey, _)| ex == 0 || ey == 0) {
            return fail("does not vanish when n1 = 0 or n2 = 0".into());
        }
        if self.eval(1, 1) != Rational::new(BigInt::one(), BigInt::from(3)) {
            return fail("P(1, 1) != 1/3".into());
        }
        Ok(())
    }

    pub fn eval(&self, n1: u32, n2: u32) -> Rational {
        self.poly.eval(
            &Rational::from_integer(n1.into()),
            &Rational::from_integer(n2.into()),
        )
    }

    /// The polynomial in the basis `(n1 n2, n1 + n2)`.
    pub fn elementary(&self) -> ElementaryForm {
        to_elementary(&self.poly).expect("validated moment polynomials are symmetric")
    }
}

/// Computes `P_2l` exactly. `two_l = 0` gives the constant 1.
pub fn moment_polynomial(two_l: u32) -> Result<MomentPolynomial> {
    if two_l % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "moment order must be even, got {two_l}"
        )));
    }
    if two_l == 0 {
        return MomentPolynomial::new(0, RatPoly::one());
    }
    let a_polys = a_polys::<BigInt>(two_l);
    let p_side = p_side::PSide::new(two_l);

    let mut work = Vec::new();
    for k in 1..=two_l as usize {
        work.extend(composition::classes(two_l, k));
    }
    let poly = work
        .par_iter()
        .map(|class| -> Result<RatPoly> {
            let q = class_q_sum(class)?;
            if q.is_zero() {
                return Ok(RatPoly::zero());
            }
            let p = p_side.p_poly(class, &a_polys);
            let m = Rational::from_integer(multinomial(class));
            Ok((&p * &q).scale(&m))
        })
        .try_reduce(RatPoly::zero, |a, b| Ok(&a + &b))?;
    MomentPolynomial::new(two_l, poly)
}

/// `Σ_{n1+n2=n} |Γ(n1,n2)| · P_2l(n1, n2)`.
pub fn mingo_nica_sum(mp: &MomentPolynomial, n: u32) -> Rational {
    let mut acc = Rational::zero();
    for n1 in 0..=n {
        let n2 = n - n1;
        let card = factorial(2 * n)
            / (factorial(n1).pow(2u32) * factorial(n2).pow(2u32));
        acc += Rational::from_integer(card) * mp.eval(n1, n2);
    }
    acc
}

/// Known closed forms of [`mingo_nica_sum`] for `2l ∈ {2, 4}`:
/// `C(2n,n)² · n²(n−1)/(6(2n−1))` and
/// `C(2n,n)² · n³(n−1)(7n²−18n+13)/(60(2n−1)(2n−3))`.
pub fn mingo_nica_closed_form(two_l: u32, n: u32) -> Option<Rational> {
    let c = binomial(2 * n, n).pow(2u32);
    let n = BigInt::from(n);
    let one = BigInt::one();
    let (num, den) = match two_l {
        2 => (
            &n * &n * (&n - &one),
            BigInt::from(6) * (BigInt::from(2) * &n - &one),
        ),
        4 => (
            n.pow(3u32) * (&n - &one) * (BigInt::from(7) * &n * &n - BigInt::from(18) * &n + 13),
            BigInt::from(60) * (BigInt::from(2) * &n - 1) * (BigInt::from(2) * &n - 3),
        ),
        _ => return None,
    };
    Some(Rational::new(c * num, den))
}
