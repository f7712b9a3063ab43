//! Restricted partitions `P(k, d, n)`: partitions of `n` into at most `d`
//! parts, each part at most `k`.
//!
//! Lists are always produced in decreasing lexicographic order on the part
//! tuple `(λ₁, …, λ_d)`. Row and column labels of the incidence matrices, the
//! monomial bases of the Lefschetz modules and every report depend on this
//! order.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition `k ≥ λ₁ ≥ … ≥ λ_d ≥ 0`, stored with all `d` parts (zeros
/// included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    k: u32,
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(k: u32, parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a partition needs at least one part slot"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("parts {parts:?} are not nonincreasing")));
        }
        if parts[0] > k {
            return Err(Error::invalid(format!("part {} exceeds bound {k}", parts[0])));
        }
        Ok(Self { k, parts })
    }

    /// Sorts arbitrary parts into canonical (descending) form.
    pub fn from_unsorted(k: u32, mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(k, parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Multiplicity `e_i` of the part `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    /// Exponent form, indexed by part size: entry `i` is `e_i`, for
    /// `0 ≤ i ≤ k`.
    pub fn exponent_form(&self) -> Vec<u32> {
        let mut e = vec![0; self.k as usize + 1];
        for &p in &self.parts {
            e[p as usize] += 1;
        }
        e
    }

    /// Inverse of [`Partition::exponent_form`]. `exponents[i]` is `e_i`.
    pub fn from_exponents(k: u32, d: u32, exponents: &[i64]) -> Result<Self> {
        if exponents.len() != k as usize + 1 {
            return Err(Error::invalid(format!("expected {} exponents, got {}", k + 1, exponents.len())));
        }
        if let Some(e) = exponents.iter().find(|&&e| e < 0) {
            return Err(Error::invalid(format!("negative exponent {e}")));
        }
        let total: i64 = exponents.iter().sum();
        if total != i64::from(d) {
            return Err(Error::invalid(format!("exponents sum to {total}, expected {d}")));
        }
        let parts =
            exponents.iter().enumerate().rev().flat_map(|(i, &e)| std::iter::repeat_n(i as u32, e as usize)).collect();
        Self::new(k, parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded by `n`; within a degree, decreasing lexicographic order, so that
/// sorting a `P(k, d, n)` reproduces the canonical list order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n().cmp(&other.n()).then_with(|| other.parts.cmp(&self.parts)).then_with(|| self.k.cmp(&other.k))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All of `P(k, d, n)` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionList {
    pub k: u32,
    pub d: u32,
    pub n: u32,
    items: Vec<Partition>,
}

impl PartitionList {
    pub fn items(&self) -> &[Partition] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.items.binary_search_by(|q| p.parts.cmp(&q.parts)).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Partition> {
        self.items.iter()
    }
}

impl<'a> IntoIterator for &'a PartitionList {
    type Item = &'a Partition;
    type IntoIter = std::slice::Iter<'a, Partition>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

fn check_kd(k: u32, d: u32) -> Result<()> {
    if k == 0 || d == 0 {
        return Err(Error::range(format!("k and d must be positive (k={k}, d={d})")));
    }
    Ok(())
}

/// Enumerates `P(k, d, n)`. Empty when `n > dk`.
pub fn enumerate(k: u32, d: u32, n: u32) -> Result<PartitionList> {
    check_kd(k, d)?;
    let mut items = Vec::new();
    let mut current = Vec::with_capacity(d as usize);
    fill(k, k, d, n, &mut current, &mut items);
    Ok(PartitionList { k, d, n, items })
}

fn fill(k: u32, bound: u32, slots: u32, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if slots == 0 {
        if remaining == 0 {
            out.push(Partition { k, parts: current.clone() });
        }
        return;
    }
    if u64::from(remaining) > u64::from(bound) * u64::from(slots) {
        return;
    }
    for first in (0..=bound.min(remaining)).rev() {
        current.push(first);
        fill(k, first, slots - 1, remaining - first, current, out);
        current.pop();
    }
}

thread_local! {
    static COUNT_MEMO: RefCell<HashMap<(u32, u32, u32), u64>> = RefCell::new(HashMap::new());
}

fn count_rec(k: u32, d: u32, n: u32) -> u64 {
    if k == 0 || d == 0 {
        return u64::from(n == 0);
    }
    if u64::from(n) > u64::from(k) * u64::from(d) {
        return 0;
    }
    if let Some(v) = COUNT_MEMO.with(|m| m.borrow().get(&(k, d, n)).copied()) {
        return v;
    }
    let mut v = count_rec(k, d - 1, n);
    if n >= d {
        v = v.checked_add(count_rec(k - 1, d, n - d)).expect("partition count overflows u64");
    }
    COUNT_MEMO.with(|m| m.borrow_mut().insert((k, d, n), v));
    v
}

/// `p(k, d, n)` via the recurrence `p(k,d,n) = p(k,d-1,n) + p(k-1,d,n-d)`.
pub fn count(k: u32, d: u32, n: u32) -> Result<u64> {
    check_kd(k, d)?;
    Ok(count_rec(k, d, n))
}

/// Coefficients of the Gaussian binomial `[d+k choose d]_q`, of length
/// `dk + 1`; entry `n` is `p(k, d, n)`.
pub fn gaussian_binomial(k: u32, d: u32) -> Result<Vec<u64>> {
    check_kd(k, d)?;
    Ok((0..=k * d).map(|n| count_rec(k, d, n)).collect())
}

/// Whether a sequence rises weakly and then falls weakly.
pub fn is_unimodal(seq: &[u64]) -> bool {
    let peak = seq.windows(2).take_while(|w| w[0] <= w[1]).count();
    seq[peak..].windows(2).all(|w| w[0] >= w[1])
}
