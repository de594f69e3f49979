use crate::{Error, Result};

/// Ordered tuple `(l_1, …, l_k)` of non-negative parts.
///
/// Zero parts are meaningful: a zero at position `i` still leaves the
/// increment `ε_i` inside every later partial sum `σ_j`, `j > i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "a composition needs at least one part".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `Σ l_i = 2l`.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Parts sorted in descending order; identifies the permutation class.
    pub fn class_key(&self) -> Vec<u32> {
        let mut key = self.parts.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        key
    }
}

/// All weak compositions of `total` into exactly `k` parts, in lexicographic
/// order.
pub fn weak_compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    weak_rec(total, k, &mut cur, &mut out);
    out
}

fn weak_rec(left: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if slots == 1 {
        cur.push(left);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for v in 0..=left {
        cur.push(v);
        weak_rec(left - v, slots - 1, cur, out);
        cur.pop();
    }
}

/// Permutation classes of weak compositions of `total` into `k` parts: the
/// partitions of `total` with at most `k` non-zero parts, descending and
/// zero-padded to length `k`. Colex order of the partitions.
pub fn classes(total: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    partitions_rec(total, total, k, &mut cur, &mut out);
    for p in &mut out {
        p.resize(k, 0);
    }
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

fn partitions_rec(left: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    if slots == 0 {
        return;
    }
    for v in (1..=max.min(left)).rev() {
        cur.push(v);
        partitions_rec(left - v, v, slots - 1, cur, out);
        cur.pop();
    }
}

/// Distinct permutations of `class`, lexicographic.
pub fn class_members(class: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = class.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
