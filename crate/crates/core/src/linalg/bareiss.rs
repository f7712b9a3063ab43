//! Fraction-free (Bareiss) elimination over an integral domain with exact
//! division. Shared by the integer route for rational matrices and the
//! polynomial route for `PolyMatrix` determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::RationalPoly;

pub(crate) trait ExactRing: Clone + Zero + One {
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / rhs`, where the caller guarantees divisibility.
    fn div_exact(&self, rhs: &Self) -> Self;
    /// Cost used to pick a pivot; smaller is preferred.
    fn pivot_cost(&self) -> usize;
}

impl ExactRing for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(r.is_zero(), "Bareiss division must be exact");
        q
    }
    fn pivot_cost(&self) -> usize {
        self.abs().bits() as usize
    }
}

impl ExactRing for RationalPoly {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.exact_div(rhs).expect("Bareiss division over Q[n] must be exact")
    }
    fn pivot_cost(&self) -> usize {
        self.degree().finite().unwrap_or(0) * 64 + self.coeffs().len()
    }
}

/// In-place fraction-free row echelon form. Returns the rank and whether an
/// odd number of row swaps happened.
pub(crate) fn echelon<T: ExactRing>(m: &mut [Vec<T>]) -> (usize, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    let mut odd = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].pivot_cost());
        let Some(p) = pivot else { continue };
        if p != rank {
            m.swap(p, rank);
            odd = !odd;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                for x in row.iter_mut().skip(c + 1) {
                    *x = prow[c].mul_ref(x).div_exact(&prev);
                }
            } else {
                for j in c + 1..cols {
                    let v = prow[c].mul_ref(&row[j]).sub_ref(&row[c].mul_ref(&prow[j]));
                    row[j] = v.div_exact(&prev);
                }
                row[c] = T::zero();
            }
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    (rank, odd)
}

pub(crate) fn determinant<T: ExactRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let (rank, odd) = echelon(&mut m);
    if rank < n {
        return T::zero();
    }
    let d = m[n - 1][n - 1].clone();
    if odd {
        d.neg_ref()
    } else {
        d
    }
}
