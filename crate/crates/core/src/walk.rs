//! Exact area histograms of closed walks, by enumeration and by dynamic
//! programming.
//!
//! The algebraic area is accumulated as `∮ x dy`: a `+2` step taken at column
//! `x` adds `x`, a `−2` step subtracts `x`, and `±1` steps leave it unchanged.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactmath::factorial;
use crate::{Error, Real, Result};

/// Longest walk the brute-force enumerator accepts.
pub const BRUTEFORCE_MAX_LENGTH: u32 = 12;

/// Default cap on the number of DP states; comfortably covers every walk of
/// length ≤ 20 and most up to length 30.
pub const DEFAULT_STATE_BUDGET: u64 = 4_000_000;

/// Numbers of steps per axis: `n1` steps in each of `±1`, `n2` in each of `±2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StepCounts {
    pub n1: u32,
    pub n2: u32,
}

impl StepCounts {
    pub fn new(n1: u32, n2: u32) -> Self {
        Self { n1, n2 }
    }

    pub fn length(&self) -> u32 {
        2 * (self.n1 + self.n2)
    }

    /// Number of closed walks: `(2(n1+n2))! / (n1!² n2!²)`.
    pub fn cardinal(&self) -> BigInt {
        let d1 = factorial(self.n1);
        let d2 = factorial(self.n2);
        factorial(self.length()) / (&d1 * &d1 * &d2 * &d2)
    }

    /// Largest possible |area|.
    pub fn max_area(&self) -> i64 {
        self.n1 as i64 * self.n2 as i64
    }

    /// Size of the full DP state space `(n1+1)² (n2+1)² (2 n1 n2 + 1)`.
    pub fn dp_states(&self) -> u128 {
        let a = self.n1 as u128 + 1;
        let b = self.n2 as u128 + 1;
        a * a * b * b * (2 * self.n1 as u128 * self.n2 as u128 + 1)
    }
}

/// Exact histogram `area ↦ number of walks` over `Γ(n1, n2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaDistribution {
    pub step_counts: StepCounts,
    pub counts: BTreeMap<i64, BigInt>,
}

impl AreaDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn count(&self, area: i64) -> BigInt {
        self.counts.get(&area).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `Σ count(a) · a^order`.
    pub fn moment(&self, order: u32) -> BigInt {
        self.counts
            .iter()
            .map(|(&a, c)| c * BigInt::from(a).pow(order))
            .sum()
    }

    /// `Σ count(a) · exp(i φ a)` in floating point.
    pub fn char_function<F: Real>(&self, phi: F) -> Complex<F> {
        let mut acc = Complex::new(F::zero(), F::zero());
        for (&a, c) in &self.counts {
            let w = F::from_f64(c.to_f64().unwrap_or(f64::INFINITY)).unwrap();
            let theta = phi * F::from_i64(a).unwrap();
            acc = acc + Complex::new(theta.cos(), theta.sin()) * w;
        }
        acc
    }
}

/// Enumerates every ordered step sequence. Only for walks of length ≤ 12.
pub fn enumerate_bruteforce(sc: StepCounts) -> Result<AreaDistribution> {
    if sc.length() > BRUTEFORCE_MAX_LENGTH {
        return Err(Error::SizeLimit {
            what: "walk length 2(n1+n2)",
            value: sc.length() as u128,
            limit: BRUTEFORCE_MAX_LENGTH as u128,
        });
    }
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    // remaining steps of kind +1, -1, +2, -2
    let mut remaining = [sc.n1, sc.n1, sc.n2, sc.n2];
    walk_rec(&mut remaining, 0, 0, &mut counts);
    Ok(AreaDistribution {
        step_counts: sc,
        counts: counts.into_iter().map(|(a, c)| (a, BigInt::from(c))).collect(),
    })
}

fn walk_rec(remaining: &mut [u32; 4], x: i64, area: i64, counts: &mut BTreeMap<i64, u64>) {
    if remaining.iter().all(|&r| r == 0) {
        *counts.entry(area).or_default() += 1;
        return;
    }
    for kind in 0..4 {
        if remaining[kind] == 0 {
            continue;
        }
        remaining[kind] -= 1;
        match kind {
            0 => walk_rec(remaining, x + 1, area, counts),
            1 => walk_rec(remaining, x - 1, area, counts),
            2 => walk_rec(remaining, x, area + x, counts),
            _ => walk_rec(remaining, x, area - x, counts),
        }
        remaining[kind] += 1;
    }
}

/// Step usage `(+1, −1, +2, −2)` and accumulated area.
type DpKey = (u32, u32, u32, u32, i64);

/// Counts walks by dynamic programming over the number of steps of each kind
/// already used and the area so far, one step-count layer at a time.
pub fn enumerate_dp(sc: StepCounts, state_budget: u64) -> Result<AreaDistribution> {
    let states = sc.dp_states();
    if states > state_budget as u128 {
        return Err(Error::SizeLimit {
            what: "DP states (n1+1)^2 (n2+1)^2 (2 n1 n2 + 1)",
            value: states,
            limit: state_budget as u128,
        });
    }
    let StepCounts { n1, n2 } = sc;
    let mut layer: HashMap<DpKey, BigInt> = HashMap::new();
    layer.insert((0, 0, 0, 0, 0), BigInt::one());
    for _ in 0..sc.length() {
        let mut next: HashMap<DpKey, BigInt> = HashMap::with_capacity(layer.len() * 2);
        for ((p1, m1, p2, m2, area), count) in layer {
            let x = p1 as i64 - m1 as i64;
            let mut push = |key: DpKey| {
                *next.entry(key).or_insert_with(BigInt::zero) += &count;
            };
            if p1 < n1 {
                push((p1 + 1, m1, p2, m2, area));
            }
            if m1 < n1 {
                push((p1, m1 + 1, p2, m2, area));
            }
            if p2 < n2 {
                push((p1, m1, p2 + 1, m2, area + x));
            }
            if m2 < n2 {
                push((p1, m1, p2, m2 + 1, area - x));
            }
        }
        layer = next;
    }
    let counts = layer
        .into_iter()
        .map(|((_, _, _, _, area), c)| (area, c))
        .collect();
    Ok(AreaDistribution {
        step_counts: sc,
        counts,
    })
}

#[derive(Serialize, Deserialize)]
struct Wire {
    n1: u32,
    n2: u32,
    histogram: Vec<(i64, String)>,
}

impl Serialize for AreaDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire {
            n1: self.step_counts.n1,
            n2: self.step_counts.n2,
            histogram: self
                .counts
                .iter()
                .map(|(&a, c)| (a, c.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AreaDistribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        let mut counts = BTreeMap::new();
        for (a, c) in wire.histogram {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            counts.insert(a, c);
        }
        Ok(AreaDistribution {
            step_counts: StepCounts::new(wire.n1, wire.n2),
            counts,
        })
    }
}
