//! Lefschetz operator of `Sym^d(P^k)` in the monomial symmetric function
//! model. Cohomology is the ring of symmetric polynomials in `x_1..x_d`
//! truncated at `x_i^{k+1} = 0`; the hyperplane class is `x_1 + … + x_d`.
//!
//! Products are expanded monomial by monomial in `d` variables, so this
//! route never touches the bump rule or the Leibniz operators.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};
use crate::partitions::{enumerate, Partition};

type Poly = HashMap<Vec<u32>, BigInt>;

/// Weighted monomial basis `m̃_λ = (e_0!…e_k!/d!) m_λ`.
#[derive(Clone, Copy, Debug)]
pub struct SymFunModel {
    pub k: u32,
    pub d: u32,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// All distinct permutations of `parts`.
fn distinct_permutations(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = parts.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // lexicographic next-permutation
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

impl SymFunModel {
    pub fn new(k: u32, d: u32) -> Result<Self> {
        if k == 0 || d == 0 {
            return Err(Error::range("k and d must be positive"));
        }
        Ok(Self { k, d })
    }

    /// `e_0!…e_k!/d!`.
    pub fn weight(&self, lambda: &Partition) -> Rational {
        let num: BigInt = lambda.exponent_form().into_iter().map(factorial).product();
        Rational::new(num, factorial(self.d))
    }

    /// `m_λ` as an explicit polynomial.
    fn monomial_symmetric(&self, lambda: &Partition) -> Poly {
        distinct_permutations(lambda.parts()).into_iter().map(|a| (a, BigInt::one())).collect()
    }

    /// Multiplies by `x_1 + … + x_d`, dropping monomials with an exponent
    /// above `k`.
    fn times_hyperplane(&self, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (mono, c) in p {
            for i in 0..mono.len() {
                if mono[i] == self.k {
                    continue;
                }
                let mut m = mono.clone();
                m[i] += 1;
                *out.entry(m).or_insert_with(BigInt::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Matrix of multiplication by the hyperplane class from degree `n-1` to
    /// degree `n` in the weighted bases; shape `p(k,d,n) × p(k,d,n-1)`.
    pub fn lefschetz_matrix(&self, n: u32) -> Result<RationalMatrix> {
        if n == 0 || n > self.k * self.d {
            return Err(Error::range(format!("n={n} outside [1, {}]", self.k * self.d)));
        }
        let src = enumerate(self.k, self.d, n - 1)?;
        let tgt = enumerate(self.k, self.d, n)?;
        let mut m = RationalMatrix::zeros(tgt.len(), src.len());
        for (col, mu) in src.iter().enumerate() {
            let product = self.times_hyperplane(&self.monomial_symmetric(mu));
            let w_mu = self.weight(mu);
            for (row, lambda) in tgt.iter().enumerate() {
                // m_λ contains x^λ (parts in descending slot order) exactly once
                if let Some(c) = product.get(lambda.parts()) {
                    m[(row, col)] = Rational::from_integer(c.clone()) * &w_mu / self.weight(lambda);
                }
            }
        }
        Ok(m)
    }
}

pub fn symfun_lefschetz_matrix(k: u32, d: u32, n: u32) -> Result<RationalMatrix> {
    SymFunModel::new(k, d)?.lefschetz_matrix(n)
}
