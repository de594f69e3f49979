//! The `n2` side: sums over interaction increments `ε_i ∈ {−1, 0, +1}`
//! producing `Q^(k)_{l_1…l_k}(n2)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Composition;
use crate::exactmath::{falling_factorial_poly, shifted_rising_poly};
use crate::{Error, IntPoly, RatPoly, Rational, Result, Var};

/// `ff(n2, n₊) · ff(n2, n₋) · rf(2n2 − k, n₀)` with `n₀ = k − n₊ − n₋`.
fn count_poly(k: usize, n_plus: usize, n_minus: usize) -> IntPoly {
    let n0 = k - n_plus - n_minus;
    let ff_p = falling_factorial_poly::<BigInt>(Var::Second, n_plus as u32);
    let ff_m = falling_factorial_poly::<BigInt>(Var::Second, n_minus as u32);
    let rf = shifted_rising_poly::<BigInt>(Var::Second, 2, -(k as i64), n0 as u32);
    &(&ff_p * &ff_m) * &rf
}

/// Combines a table `w[n₊][n₋]` of integer weights with the count
/// polynomials.
fn assemble(k: usize, weights: &[Vec<BigInt>]) -> RatPoly {
    let mut acc = IntPoly::zero();
    for (np, row) in weights.iter().enumerate() {
        for (nm, w) in row.iter().enumerate() {
            if !w.is_zero() {
                acc += &count_poly(k, np, nm).scale(w);
            }
        }
    }
    to_rat(&acc)
}

fn to_rat(p: &IntPoly) -> RatPoly {
    p.map_coeffs(|v| Rational::from_integer(v.clone()))
}

/// Calls `f(ε)` for every `ε ∈ {−1, 0, +1}^k`.
fn for_each_epsilon(k: usize, mut f: impl FnMut(&[i64])) {
    let mut eps = vec![-1i64; k];
    loop {
        f(&eps);
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            if eps[i] < 1 {
                eps[i] += 1;
                break;
            }
            eps[i] = -1;
            i += 1;
        }
    }
}

fn occupation(eps: &[i64]) -> (usize, usize, usize) {
    let plus = eps.iter().filter(|&&e| e == 1).count();
    let minus = eps.iter().filter(|&&e| e == -1).count();
    (plus, minus, eps.len() - plus - minus)
}

/// Reference implementation: the direct `3^k` sum
/// `Σ_ε (−1)^{n₀} Π σ_i^{l_i} · ff(n2,n₊) ff(n2,n₋) rf(2n2−k, n₀)`.
pub fn q_poly(c: &Composition) -> RatPoly {
    let k = c.len();
    let mut weights = vec![vec![BigInt::zero(); k + 1]; k + 1];
    for_each_epsilon(k, |eps| {
        let mut sigma = 0i64;
        let mut prod = BigInt::one();
        for (e, &l) in eps.iter().zip(c.parts()) {
            sigma += e;
            prod *= BigInt::from(sigma).pow(l);
        }
        let (np, nm, n0) = occupation(eps);
        if n0 % 2 == 1 {
            prod = -prod;
        }
        weights[np][nm] += prod;
    });
    assemble(k, &weights)
}

/// `S^(k)_{λ_1…λ_k}(n2)` by its closed reductions: zero if any `λ_i = 0`;
/// each even `λ_i` contributes a factor `(2n2 − k + j)`; the `k_o` odd ones
/// give `(−1)^p (2p)!/p! · ff(n2, p)` when `k_o = 2p`, and zero when `k_o` is
/// odd.
pub fn s_poly(lambdas: &[u32]) -> RatPoly {
    to_rat(&s_poly_int(lambdas))
}

fn s_poly_int(lambdas: &[u32]) -> IntPoly {
    if lambdas.contains(&0) {
        return IntPoly::zero();
    }
    let k = lambdas.len();
    let k_even = lambdas.iter().filter(|&&l| l % 2 == 0).count();
    let k_odd = k - k_even;
    if k_odd % 2 == 1 {
        return IntPoly::zero();
    }
    let p = (k_odd / 2) as u32;
    // (2p)!/p! = (p+1)(p+2)⋯(2p)
    let mut coeff = (p + 1..=2 * p).fold(BigInt::one(), |acc, j| acc * j);
    if p % 2 == 1 {
        coeff = -coeff;
    }
    let odd_core = falling_factorial_poly::<BigInt>(Var::Second, p).scale(&coeff);
    let even_factor = shifted_rising_poly::<BigInt>(Var::Second, 2, -(k as i64), k_even as u32);
    &odd_core * &even_factor
}

/// Performance route: expands `Π σ_i^{l_i}` into monomials `Π ε_i^{λ_i}` and
/// sums `multiplicity · S_λ`. Must agree with [`q_poly`] exactly.
pub fn q_poly_fast(c: &Composition) -> RatPoly {
    let k = c.len();
    // On ε ∈ {−1,0,1}, ε^λ only depends on whether λ is 0, odd, or even ≥ 2,
    // so exponents are folded to {0, 1, 2} as they grow.
    let mut monomials: HashMap<Vec<u8>, BigInt> = HashMap::new();
    monomials.insert(vec![0; k], BigInt::one());
    for (i, &l) in c.parts().iter().enumerate() {
        for _ in 0..l {
            let mut next: HashMap<Vec<u8>, BigInt> = HashMap::with_capacity(monomials.len());
            for (mono, coeff) in &monomials {
                for j in 0..=i {
                    let mut m = mono.clone();
                    m[j] = if m[j] == 2 { 1 } else { m[j] + 1 };
                    *next.entry(m).or_insert_with(BigInt::zero) += coeff;
                }
            }
            next.retain(|_, v| !v.is_zero());
            monomials = next;
        }
    }
    let mut acc = IntPoly::zero();
    let mut cache: HashMap<(usize, usize, usize), IntPoly> = HashMap::new();
    for (mono, coeff) in monomials {
        // S_λ depends only on the counts of zero, odd and even exponents
        let zeros = mono.iter().filter(|&&e| e == 0).count();
        if zeros > 0 {
            continue;
        }
        let odd = mono.iter().filter(|&&e| e == 1).count();
        let even = k - odd;
        let s = cache.entry((zeros, odd, even)).or_insert_with(|| {
            let lambdas: Vec<u32> = mono.iter().map(|&e| e as u32).collect();
            s_poly_int(&lambdas)
        });
        acc += &s.scale(&coeff);
    }
    to_rat(&acc)
}

/// `Σ_{c ∈ perms(class)} Q_c(n2)`: the member sum moved innermost, evaluated
/// by a DP over (parts still unplaced, σ, n₊, n₋).
///
/// Weights are tracked in `i128` with overflow checks; they stay far below
/// the limit for every order up to 2l = 16.
pub fn class_q_sum(class: &[u32]) -> Result<RatPoly> {
    let k = class.len();
    if k == 0 {
        return Err(Error::InvalidArgument("empty class".into()));
    }
    // distinct part values and multiplicities, encoded in a mixed radix
    let mut values: Vec<u32> = class.to_vec();
    values.sort_unstable();
    values.dedup();
    let mult: Vec<usize> = values
        .iter()
        .map(|v| class.iter().filter(|&&p| p == *v).count())
        .collect();
    let mut stride = Vec::with_capacity(values.len());
    let mut n_sub = 1usize;
    for &m in &mult {
        stride.push(n_sub);
        n_sub *= m + 1;
    }
    let digit = |sub: usize, j: usize| (sub / stride[j]) % (mult[j] + 1);

    let width = 2 * k + 1;
    let kk = k + 1;
    let idx = |sub: usize, sigma: i64, np: usize, nm: usize| {
        ((sub * width + (sigma + k as i64) as usize) * kk + np) * kk + nm
    };
    let max_part = *values.last().unwrap();
    let pow_table: Vec<Vec<i128>> = (-(k as i64)..=k as i64)
        .map(|s| (0..=max_part).map(|e| (s as i128).pow(e)).collect())
        .collect();

    let overflow = || Error::Invariant("class DP weight overflowed i128".into());
    let mut cur = vec![0i128; n_sub * width * kk * kk];
    cur[idx(n_sub - 1, 0, 0, 0)] = 1;
    for step in 0..k {
        let mut next = vec![0i128; cur.len()];
        for sub in 0..n_sub {
            for sigma in -(step as i64)..=step as i64 {
                for np in 0..=step {
                    for nm in 0..=(step - np) {
                        let w = cur[idx(sub, sigma, np, nm)];
                        if w == 0 {
                            continue;
                        }
                        for eps in -1i64..=1 {
                            let s2 = sigma + eps;
                            let (np2, nm2) = match eps {
                                1 => (np + 1, nm),
                                -1 => (np, nm + 1),
                                _ => (np, nm),
                            };
                            let signed = if eps == 0 { -w } else { w };
                            let row = &pow_table[(s2 + k as i64) as usize];
                            for (j, &v) in values.iter().enumerate() {
                                if digit(sub, j) == 0 {
                                    continue;
                                }
                                let f = row[v as usize];
                                if f == 0 {
                                    continue;
                                }
                                let add = signed.checked_mul(f).ok_or_else(overflow)?;
                                let slot = &mut next[idx(sub - stride[j], s2, np2, nm2)];
                                *slot = slot.checked_add(add).ok_or_else(overflow)?;
                            }
                        }
                    }
                }
            }
        }
        cur = next;
    }
    let mut weights = vec![vec![BigInt::zero(); kk]; kk];
    for sigma in -(k as i64)..=k as i64 {
        for np in 0..=k {
            for nm in 0..=(k - np) {
                let w = cur[idx(0, sigma, np, nm)];
                if w != 0 {
                    weights[np][nm] += BigInt::from(w);
                }
            }
        }
    }
    Ok(assemble(k, &weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::composition::{class_members, classes};

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn n2_poly(coeffs: &[i64]) -> RatPoly {
        let c: Vec<Rational> = coeffs.iter().map(|&v| Rational::from_integer(v.into())).collect();
        RatPoly::from_univariate(Var::Second, &c)
    }

    /// `S_λ` by its defining `3^k` sum.
    fn s_poly_direct(lambdas: &[u32]) -> RatPoly {
        let k = lambdas.len();
        let mut weights = vec![vec![BigInt::zero(); k + 1]; k + 1];
        for_each_epsilon(k, |eps| {
            let mut prod = BigInt::one();
            for (&e, &l) in eps.iter().zip(lambdas) {
                prod *= BigInt::from(e).pow(l);
            }
            let (np, nm, n0) = occupation(eps);
            if n0 % 2 == 1 {
                prod = -prod;
            }
            weights[np][nm] += prod;
        });
        assemble(k, &weights)
    }

    #[test]
    fn q_single_part() {
        assert_eq!(q_poly(&comp(&[2])), n2_poly(&[0, 2]));
        assert_eq!(q_poly_fast(&comp(&[2])), n2_poly(&[0, 2]));
    }

    #[test]
    fn q_for_two_parts() {
        // σ1 σ2 = ε1² + ε1 ε2 ; S(2,0) = 0, S(1,1) = −2 n2
        assert_eq!(q_poly(&comp(&[1, 1])), n2_poly(&[0, -2]));
        assert_eq!(q_poly_fast(&comp(&[1, 1])), n2_poly(&[0, -2]));
        // σ2² = ε1² + 2ε1ε2 + ε2²
        assert_eq!(q_poly(&comp(&[0, 2])), n2_poly(&[0, -4]));
        assert!(q_poly(&comp(&[2, 0])).is_zero());
    }

    #[test]
    fn s_poly_examples() {
        assert!(s_poly(&[0, 2]).is_zero());
        assert_eq!(s_poly(&[1, 1]), n2_poly(&[0, -2]));
        // (2n2 − 1)(2n2) = 4n2² − 2n2
        assert_eq!(s_poly(&[2, 2]), n2_poly(&[0, -2, 4]));
        assert_eq!(s_poly(&[2]), n2_poly(&[0, 2]));
        assert_eq!(s_poly(&[]), n2_poly(&[1]));
        assert!(s_poly(&[1, 2, 2]).is_zero());
    }

    #[test]
    fn s_poly_closed_form_matches_direct_sum() {
        let mut checked = 0;
        for k in 1..=5usize {
            for total in 0..=8u32 {
                for lambdas in crate::moments::composition::weak_compositions(total, k) {
                    assert_eq!(s_poly(&lambdas), s_poly_direct(&lambdas), "{lambdas:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn q_fast_matches_reference_up_to_order_8() {
        for two_l in (2..=8u32).step_by(2) {
            for k in 1..=two_l as usize {
                for parts in crate::moments::composition::weak_compositions(two_l, k) {
                    let c = comp(&parts);
                    let q = q_poly(&c);
                    assert_eq!(q_poly_fast(&c), q, "{parts:?}");
                    let l = two_l / 2;
                    if let Some(d) = q.degree_in(Var::Second) {
                        assert!(d <= (k as u32).min(l), "{parts:?} degree {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn class_dp_matches_member_sum() {
        for two_l in (2..=6u32).step_by(2) {
            for k in 1..=two_l as usize {
                for class in classes(two_l, k) {
                    let direct = class_members(&class)
                        .into_iter()
                        .fold(RatPoly::zero(), |acc, m| &acc + &q_poly(&comp(&m)));
                    assert_eq!(class_q_sum(&class).unwrap(), direct, "{class:?}");
                }
            }
        }
    }

    #[test]
    fn q_vanishes_when_an_increment_is_absent() {
        // k > 2l: some ε_i is missing from every monomial
        assert!(q_poly(&comp(&[1, 1, 0])).is_zero());
        assert!(q_poly(&comp(&[2, 0, 0])).is_zero());
        assert!(class_q_sum(&[1, 1, 0, 0, 0]).unwrap().is_zero());
    }
}
