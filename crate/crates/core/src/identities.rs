//! Exact checks of the combinatorial identities behind the moment formula,
//! each evaluated by direct summation and compared with its closed form.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::exactmath::serial::rational_to_string;
use crate::exactmath::{factorial, inv_factorial};
use crate::moments::composition::weak_compositions;
use crate::{Error, Rational, Result};

/// Upper bound on the number of `(α, β)` pairs a direct sum may visit.
pub const MAX_DIRECT_TERMS: u128 = 50_000_000;

/// Outcome of one identity at one parameter point; `pass` iff `lhs == rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub params: Vec<i64>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

impl IdentityReport {
    fn new(name: &str, params: Vec<i64>, lhs: Rational, rhs: Rational) -> Self {
        let pass = lhs == rhs;
        Self {
            name: name.to_string(),
            params,
            lhs,
            rhs,
            pass,
        }
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            name: &'a str,
            params: &'a [i64],
            lhs: String,
            rhs: String,
            pass: bool,
        }
        Wire {
            name: &self.name,
            params: &self.params,
            lhs: rational_to_string(&self.lhs),
            rhs: rational_to_string(&self.rhs),
            pass: self.pass,
        }
        .serialize(serializer)
    }
}

fn rat(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn fact_ratio(num: u32, den: &[u32]) -> Rational {
    let d = den.iter().fold(BigInt::one(), |acc, &v| acc * factorial(v));
    Rational::new(factorial(num), d)
}

/// `Σ_{b_0+…+b_k = B} Π (a_i+b_i)!/b_i!  =  Π a_i! · (A+B+k)! / (B! (A+k)!)`.
pub fn check_comb1(k: usize, a: &[u32], b_total: u32) -> Result<IdentityReport> {
    if a.len() != k + 1 {
        return Err(Error::InvalidArgument(format!(
            "comb1 needs k+1 = {} values of a, got {}",
            k + 1,
            a.len()
        )));
    }
    let mut lhs = BigInt::zero();
    for b in weak_compositions(b_total, k + 1) {
        let mut term = BigInt::one();
        for (&ai, &bi) in a.iter().zip(&b) {
            term *= factorial(ai + bi) / factorial(bi);
        }
        lhs += term;
    }
    let big_a: u32 = a.iter().sum();
    let prod_a = a.iter().fold(BigInt::one(), |acc, &v| acc * factorial(v));
    let rhs = rat(prod_a) * fact_ratio(big_a + b_total + k as u32, &[b_total, big_a + k as u32]);
    let mut params = vec![k as i64, b_total as i64];
    params.extend(a.iter().map(|&v| v as i64));
    Ok(IdentityReport::new("comb1", params, rat(lhs), rhs))
}

/// `Σ_{α,β} Π (α_i+β_i)!/(α_i! β_i!) · weight(α, β)` over all `α`, `β` of
/// length `k+1` summing to `n1`.
fn alpha_beta_sum(k: usize, n1: u32, weight: impl Fn(&[u32], &[u32]) -> i64) -> Result<BigInt> {
    let vectors = weak_compositions(n1, k + 1);
    let terms = (vectors.len() as u128).pow(2);
    if terms > MAX_DIRECT_TERMS {
        return Err(Error::SizeLimit {
            what: "(alpha, beta) pairs",
            value: terms,
            limit: MAX_DIRECT_TERMS,
        });
    }
    let fact: Vec<BigInt> = (0..=2 * n1).map(factorial).collect();
    let mut total = BigInt::zero();
    for alpha in &vectors {
        for beta in &vectors {
            let w = weight(alpha, beta);
            if w == 0 {
                continue;
            }
            let mut term = BigInt::from(w);
            for (&x, &y) in alpha.iter().zip(beta) {
                term *= &fact[(x + y) as usize] / (&fact[x as usize] * &fact[y as usize]);
            }
            total += term;
        }
    }
    Ok(total)
}

/// `Σ_{α,β} Π (α_i+β_i)!/(α_i! β_i!) = (2n1+k)! / (k! n1!²)`.
pub fn check_comb2(k: usize, n1: u32) -> Result<IdentityReport> {
    let lhs = alpha_beta_sum(k, n1, |_, _| 1)?;
    let rhs = fact_ratio(2 * n1 + k as u32, &[k as u32, n1, n1]);
    Ok(IdentityReport::new("comb2", vec![k as i64, n1 as i64], rat(lhs), rhs))
}

/// `(−1)^{n₀} (2n2−n₊−n₋)! / ((n2−n₊)! (n2−n₋)!)` with `1/m! = 0` for `m < 0`.
fn comb3_summand(n2: u32, n_plus: usize, n_minus: usize, n0: usize) -> Rational {
    let n2 = n2 as i64;
    let (p, m) = (n_plus as i64, n_minus as i64);
    let den = inv_factorial(n2 - p) * inv_factorial(n2 - m);
    if den.is_zero() {
        return den;
    }
    let v = rat(factorial((2 * n2 - p - m) as u32)) * den;
    if n0 % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Raw `3^k` sum of the `comb3` summand, split by `n₀`.
pub fn comb3_raw_terms(k: usize, n2: u32) -> Vec<Rational> {
    let mut by_n0 = vec![Rational::zero(); k + 1];
    let mut eps = vec![-1i8; k];
    loop {
        let np = eps.iter().filter(|&&e| e == 1).count();
        let nm = eps.iter().filter(|&&e| e == -1).count();
        let n0 = k - np - nm;
        by_n0[n0] += comb3_summand(n2, np, nm, n0);
        let mut i = 0;
        loop {
            if i == k {
                return by_n0;
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

/// The same sum regrouped by occupation numbers,
/// `k! Σ_{n₀} (−1)^{n₀}/n₀! · (2n2+n₀−k)!/n2!² · Σ_{n₋+n₊=k−n₀} C(n2,n₊)C(n2,n₋)·n2!²/(n₊!n₋!)·…`,
/// split by `n₀`.
pub fn comb3_regrouped_terms(k: usize, n2: u32) -> Vec<Rational> {
    let n2i = n2 as i64;
    let kf = rat(factorial(k as u32));
    let n2f = rat(factorial(n2));
    (0..=k)
        .map(|n0| {
            let top = 2 * n2i + n0 as i64 - k as i64;
            if top < 0 {
                return Rational::zero();
            }
            let rest = k - n0;
            let mut inner = Rational::zero();
            for np in 0..=rest {
                let nm = rest - np;
                inner += n2f.clone() * inv_factorial(np as i64) * inv_factorial(n2i - np as i64)
                    * n2f.clone()
                    * inv_factorial(nm as i64)
                    * inv_factorial(n2i - nm as i64);
            }
            let sign = if n0 % 2 == 1 { -Rational::one() } else { Rational::one() };
            sign * kf.clone() * inv_factorial(n0 as i64) * rat(factorial(top as u32))
                / (n2f.clone() * n2f.clone())
                * inner
        })
        .collect()
}

/// `n2!²/(k!(2n2−k)!) Σ_ε (−1)^{n₀} (2n2−n₊−n₋)!/((n2−n₊)!(n2−n₋)!) = 0` for `k ≥ 1`.
pub fn check_comb3(k: usize, n2: u32) -> Result<IdentityReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("comb3 requires k >= 1".into()));
    }
    let sum: Rational = comb3_raw_terms(k, n2).into_iter().sum();
    let prefactor = rat(factorial(n2).pow(2u32)) / rat(factorial(k as u32))
        * inv_factorial(2 * n2 as i64 - k as i64);
    Ok(IdentityReport::new(
        "comb3",
        vec![k as i64, n2 as i64],
        prefactor * sum,
        Rational::zero(),
    ))
}

/// The raw and regrouped forms of the `comb3` sum agree term by term in `n₀`;
/// reported as the total of absolute differences (must be 0).
pub fn check_comb3_regrouped(k: usize, n2: u32) -> Result<IdentityReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("comb3 requires k >= 1".into()));
    }
    let raw = comb3_raw_terms(k, n2);
    let regrouped = comb3_regrouped_terms(k, n2);
    let mismatch: Rational = raw
        .iter()
        .zip(&regrouped)
        .map(|(a, b)| num_traits::Signed::abs(&(a - b)))
        .sum();
    Ok(IdentityReport::new(
        "comb3_regrouped",
        vec![k as i64, n2 as i64],
        mismatch,
        Rational::zero(),
    ))
}

/// `comb4` with an arbitrary distinguished index `i ∈ 1..=k`.
pub fn check_comb4_at(k: usize, n1: u32, i: usize) -> Result<IdentityReport> {
    if k == 0 || i == 0 || i > k {
        return Err(Error::InvalidArgument(format!("comb4 needs 1 <= i <= k, got i={i}, k={k}")));
    }
    let lhs = alpha_beta_sum(k, n1, |a, b| {
        let d = a[i] as i64 - b[i] as i64;
        d * d
    })?;
    let rhs = Rational::new(BigInt::from(2 * k as u64 * n1 as u64), factorial(k as u32 + 2))
        * fact_ratio(2 * n1 + k as u32, &[n1, n1]);
    Ok(IdentityReport::new("comb4", vec![k as i64, n1 as i64], rat(lhs), rhs))
}

/// `Σ … (α_k − β_k)² = 2k n1/(k+2)! · (2n1+k)!/n1!²`.
pub fn check_comb4(k: usize, n1: u32) -> Result<IdentityReport> {
    check_comb4_at(k, n1, k)
}

/// `comb5` with arbitrary distinct indices `i, j ∈ 1..=k`.
pub fn check_comb5_at(k: usize, n1: u32, i: usize, j: usize) -> Result<IdentityReport> {
    if i == j || i == 0 || j == 0 || i > k || j > k {
        return Err(Error::InvalidArgument(format!(
            "comb5 needs distinct 1 <= i, j <= k, got i={i}, j={j}, k={k}"
        )));
    }
    let lhs = alpha_beta_sum(k, n1, |a, b| {
        (a[i] as i64 - b[i] as i64) * (a[j] as i64 - b[j] as i64)
    })?;
    let rhs = -Rational::new(BigInt::from(2 * n1 as u64), factorial(k as u32 + 2))
        * fact_ratio(2 * n1 + k as u32, &[n1, n1]);
    Ok(IdentityReport::new("comb5", vec![k as i64, n1 as i64], rat(lhs), rhs))
}

/// `Σ … (α_{k−1} − β_{k−1})(α_k − β_k) = −2n1/(k+2)! · (2n1+k)!/n1!²`, `k ≥ 2`.
pub fn check_comb5(k: usize, n1: u32) -> Result<IdentityReport> {
    if k < 2 {
        return Err(Error::InvalidArgument("comb5 requires k >= 2".into()));
    }
    check_comb5_at(k, n1, k - 1, k)
}

/// Every identity over the grid `k ≤ max_k`, `n ≤ max_n`. Negative bounds
/// give an empty grid. Results are in a fixed order.
pub fn run_sweep(max_k: i64, max_n: i64) -> Result<Vec<IdentityReport>> {
    if max_k < 0 || max_n < 0 {
        return Ok(Vec::new());
    }
    let (mk, mn) = (max_k as usize, max_n as u32);
    let mut jobs: Vec<Box<dyn Fn() -> Result<IdentityReport> + Send + Sync>> = Vec::new();
    for k in 0..=mk {
        for b in 0..=mn {
            for s in 0..=mn {
                let a: Vec<u32> = (0..=k as u32).map(|i| (i + s) % (s + 1)).collect();
                jobs.push(Box::new(move || check_comb1(k, &a, b)));
            }
        }
    }
    for k in 0..=mk {
        for n in 0..=mn {
            jobs.push(Box::new(move || check_comb2(k, n)));
        }
    }
    for k in 1..=mk {
        for n in 1..=mn {
            jobs.push(Box::new(move || check_comb3(k, n)));
            jobs.push(Box::new(move || check_comb3_regrouped(k, n)));
        }
    }
    for k in 1..=mk {
        for n in 0..=mn {
            jobs.push(Box::new(move || check_comb4(k, n)));
        }
    }
    for k in 2..=mk {
        for n in 0..=mn {
            jobs.push(Box::new(move || check_comb5(k, n)));
        }
    }
    jobs.par_iter().map(|job| job()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn comb1_examples() {
        let r = check_comb1(1, &[0, 0], 2).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(3), int(3)));
        assert!(r.pass);
        let r = check_comb1(0, &[4], 3).unwrap();
        assert_eq!(r.lhs, rat(factorial(7) / factorial(3)));
        assert!(r.pass);
        assert!(check_comb1(2, &[1, 2, 0], 3).unwrap().pass);
        assert!(check_comb1(2, &[1, 2], 3).is_err());
    }

    #[test]
    fn comb2_examples() {
        let r = check_comb2(0, 2).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(6), int(6)));
        let r = check_comb2(1, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(6), int(6)));
        assert!(check_comb2(3, 2).unwrap().pass);
    }

    #[test]
    fn comb3_examples() {
        for (k, n2) in [(1, 1), (2, 2), (3, 4)] {
            let r = check_comb3(k, n2).unwrap();
            assert!(r.lhs.is_zero() && r.pass, "{k} {n2}");
        }
        assert!(check_comb3(0, 1).is_err());
    }

    #[test]
    fn comb3_below_the_diagonal() {
        // n2 < k: reciprocal factorials of negative integers vanish. The bare
        // ε-sum still vanishes while 2n2 >= k; below that only the prefactor
        // 1/(2n2 − k)! = 0 kills it.
        for k in 2..=6 {
            for n2 in 1..k as u32 {
                assert!(check_comb3(k, n2).unwrap().lhs.is_zero(), "{k} {n2}");
                let raw: Rational = comb3_raw_terms(k, n2).into_iter().sum();
                assert_eq!(raw.is_zero(), 2 * n2 as usize >= k, "{k} {n2}");
            }
        }
    }

    #[test]
    fn comb3_regrouping_is_term_by_term() {
        for k in 1..=6 {
            for n2 in 0..=6 {
                assert_eq!(comb3_raw_terms(k, n2), comb3_regrouped_terms(k, n2), "{k} {n2}");
            }
        }
    }

    #[test]
    fn comb4_examples() {
        let r = check_comb4(1, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(2), int(2)));
        let r = check_comb4(2, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(4), int(4)));
        let r = check_comb4(1, 0).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(0), int(0)));
    }

    #[test]
    fn comb5_examples() {
        let r = check_comb5(2, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(-2), int(-2)));
        let r = check_comb5(3, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, int(-2));
        let r = check_comb5(2, 0).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(0), int(0)));
        assert!(check_comb5(1, 1).is_err());
    }

    #[test]
    fn distinguished_index_is_immaterial() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let k = rng.gen_range(2..=4usize);
            let n1 = rng.gen_range(0..=4u32);
            let i = rng.gen_range(1..=k);
            let mut j = rng.gen_range(1..=k);
            while j == i {
                j = rng.gen_range(1..=k);
            }
            let a = check_comb4_at(k, n1, i).unwrap();
            assert!(a.pass);
            assert_eq!(a.lhs, check_comb4(k, n1).unwrap().lhs);
            let b = check_comb5_at(k, n1, i, j).unwrap();
            assert!(b.pass);
            assert_eq!(b.lhs, check_comb5(k, n1).unwrap().lhs);
        }
    }

    #[test]
    fn sweep_edges() {
        assert!(run_sweep(-1, 3).unwrap().is_empty());
        let small = run_sweep(1, 1).unwrap();
        assert!(small.len() >= 5);
        assert!(small.iter().all(|r| r.pass));
    }

    #[test]
    fn report_json() {
        let r = check_comb5(2, 1).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"name":"comb5","params":[2,1],"lhs":"-2/1","rhs":"-2/1","pass":true}"#
        );
    }
}
