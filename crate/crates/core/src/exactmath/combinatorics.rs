use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BiPoly, Coeff, Var};

/// `n!`
pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `1/n!`, with the convention `1/n! = 0` for negative `n`.
pub fn inv_factorial(n: i64) -> BigRational {
    if n < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(n as u32))
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(Σ parts)! / Π parts_i!`, built as a product of binomials so no
/// intermediate exceeds the result.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut total = 0u32;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// Integer falling factorial `n (n−1) ⋯ (n−m+1)`; empty product for `m = 0`.
pub fn falling_factorial(n: i64, m: u32) -> BigInt {
    (0..m as i64).fold(BigInt::one(), |acc, j| acc * (n - j))
}

/// The polynomial `v (v−1) ⋯ (v−depth+1)` in the chosen variable.
pub fn falling_factorial_poly<T: Coeff>(var: Var, depth: u32) -> BiPoly<T> {
    (0..depth as i64).fold(BiPoly::one(), |acc, j| {
        &acc * &BiPoly::linear(var, T::one(), T::from_int(-j))
    })
}

/// The polynomial `Π_{j=1..depth} (scale·v + offset + j)`, i.e. the ratio
/// `(scale·v + offset + depth)! / (scale·v + offset)!` expanded in `v`.
pub fn shifted_rising_poly<T: Coeff>(var: Var, scale: i64, offset: i64, depth: u32) -> BiPoly<T> {
    (1..=depth as i64).fold(BiPoly::one(), |acc, j| {
        &acc * &BiPoly::linear(var, T::from_int(scale), T::from_int(offset + j))
    })
}
