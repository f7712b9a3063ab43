//! Weighted incidence matrices `A_{k,d,n}` between `P(k,d,n-1)` (rows) and
//! `P(k,d,n)` (columns). The `(μ, λ)` entry counts the ways to turn `μ`
//! into `λ` by raising a single part by one.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};
use crate::partitions::{enumerate, Partition, PartitionList};

/// Replaces one part equal to `i` in `mu` by `i + 1`. `None` when `mu` has
/// no part equal to `i`.
pub fn bump(mu: &Partition, i: u32) -> Result<Option<Partition>> {
    let k = mu.k();
    if i >= k {
        return Err(Error::range(format!("bump index {i} outside [0, {}]", k - 1)));
    }
    // The first occurrence of i in a nonincreasing tuple stays nonincreasing
    // after incrementing, since its left neighbour is > i.
    let Some(pos) = mu.parts().iter().position(|&p| p == i) else {
        return Ok(None);
    };
    let mut parts = mu.parts().to_vec();
    parts[pos] += 1;
    Partition::new(k, parts).map(Some)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub k: u32,
    pub d: u32,
    pub n: u32,
    rows: PartitionList,
    cols: PartitionList,
    entries: Vec<Vec<BigInt>>,
}

impl IncidenceMatrix {
    pub fn row_labels(&self) -> &PartitionList {
        &self.rows
    }

    pub fn col_labels(&self) -> &PartitionList {
        &self.cols
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Entries as small integers, for comparisons against literal tables.
    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        self.entries.iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect()).collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let (r, c) = self.shape();
        RationalMatrix::from_fn(r, c, |i, j| Rational::from_integer(self.entries[i][j].clone()))
    }

    pub fn transpose_rational(&self) -> RationalMatrix {
        self.to_rational().transpose()
    }
}

/// Builds `A_{k,d,n}` for `1 ≤ n ≤ dk`.
pub fn build_matrix(k: u32, d: u32, n: u32) -> Result<IncidenceMatrix> {
    if n == 0 || n > k.saturating_mul(d) {
        return Err(Error::range(format!("n={n} outside [1, {}]", k * d)));
    }
    let rows = enumerate(k, d, n - 1)?;
    let cols = enumerate(k, d, n)?;
    let mut entries = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (r, mu) in rows.iter().enumerate() {
        for i in 0..k {
            if let Some(lambda) = bump(mu, i)? {
                let c = cols.position(&lambda).expect("bumped partition lies in P(k,d,n)");
                entries[r][c] += mu.multiplicity(i);
            }
        }
    }
    Ok(IncidenceMatrix { k, d, n, rows, cols, entries })
}
