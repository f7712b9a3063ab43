use num_traits::Zero;

use super::bareiss;
use super::matrix::RationalMatrix;
use super::poly::RationalPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Square matrix with entries in `Q[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Vec<RationalPoly>>,
}

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<RationalPoly>>) -> Result<Self> {
        let n = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare(n, row.len()));
        }
        Ok(Self { n, entries })
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![vec![RationalPoly::zero(); n]; n] }
    }

    pub fn constant(m: &RationalMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.rows(), m.cols()));
        }
        Ok(Self {
            n: m.rows(),
            entries: m.to_rows().into_iter().map(|row| row.into_iter().map(RationalPoly::constant).collect()).collect(),
        })
    }

    /// `sum_i p_i(n) * M_i` for square matrices `M_i` of equal size.
    pub fn from_terms(terms: &[(RationalPoly, RationalMatrix)]) -> Result<Self> {
        let size = terms.first().map_or(0, |(_, m)| m.rows());
        let mut out = Self::zeros(size);
        for (p, m) in terms {
            if m.rows() != size || m.cols() != size {
                return Err(Error::DimensionMismatch { left: (size, size), right: (m.rows(), m.cols()) });
            }
            for i in 0..size {
                for j in 0..size {
                    if !m[(i, j)].is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &p.scale(&m[(i, j)]);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalPoly {
        &self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: (self.n, self.n), right: (rhs.n, rhs.n) });
        }
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        })
    }

    pub fn eval(&self, x: &Rational) -> RationalMatrix {
        RationalMatrix::from_fn(self.n, self.n, |i, j| self.entries[i][j].eval(x))
    }

    pub fn eval_int(&self, x: i64) -> RationalMatrix {
        self.eval(&Rational::from_integer(x.into()))
    }
}

/// Exact determinant of a polynomial matrix by fraction-free elimination
/// over `Q[n]`.
pub fn polydet(m: &PolyMatrix) -> RationalPoly {
    bareiss::determinant(m.entries.clone())
}
