//! The `sl2` module `Sym^d W_k` in the monomial basis, graded by
//! `n = Σ i·e_i`. `W_k` has basis `x_0, …, x_k` with `H x_i = (k-2i) x_i`,
//! `Y x_i = x_{i+1}` and `X x_i = i(k-i+1) x_{i-1}`; the induced operators
//! on symmetric powers follow the Leibniz rule.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};
use crate::partitions::{enumerate, PartitionList};

#[derive(Clone, Debug)]
pub struct Sl2Module {
    pub k: u32,
    pub d: u32,
    bases: Vec<PartitionList>,
    // exponent vector -> basis index, per grade
    index: Vec<HashMap<Vec<u32>, usize>>,
}

fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

impl Sl2Module {
    pub fn new(k: u32, d: u32) -> Result<Self> {
        let bases = (0..=k * d).map(|n| enumerate(k, d, n)).collect::<Result<Vec<_>>>()?;
        let index =
            bases.iter().map(|list| list.iter().enumerate().map(|(i, p)| (p.exponent_form(), i)).collect()).collect();
        Ok(Self { k, d, bases, index })
    }

    pub fn top_grade(&self) -> u32 {
        self.k * self.d
    }

    pub fn basis(&self, n: u32) -> &PartitionList {
        &self.bases[n as usize]
    }

    pub fn dim(&self, n: u32) -> usize {
        self.bases[n as usize].len()
    }

    fn check_grade(&self, n: u32, low: u32) -> Result<()> {
        if n < low || n > self.top_grade() {
            return Err(Error::range(format!("grade {n} outside [{low}, {}]", self.top_grade())));
        }
        Ok(())
    }

    /// H-eigenvalue of a basis monomial with exponents `e`.
    pub fn weight_of(&self, e: &[u32]) -> i64 {
        e.iter().enumerate().map(|(i, &ei)| i64::from(ei) * (i64::from(self.k) - 2 * i as i64)).sum()
    }

    /// Diagonal matrix of H on the grade-`n` piece.
    pub fn h(&self, n: u32) -> Result<RationalMatrix> {
        self.check_grade(n, 0)?;
        let weights: Vec<Rational> = self.basis(n).iter().map(|p| q(self.weight_of(&p.exponent_form()))).collect();
        Ok(RationalMatrix::diagonal(&weights))
    }

    /// Matrix of Y from grade `n-1` to grade `n`, of shape
    /// `dim(n) × dim(n-1)`.
    pub fn y(&self, n: u32) -> Result<RationalMatrix> {
        self.check_grade(n, 1)?;
        let src = self.basis(n - 1);
        let tgt = &self.index[n as usize];
        let mut m = RationalMatrix::zeros(tgt.len(), src.len());
        for (col, mu) in src.iter().enumerate() {
            let e = mu.exponent_form();
            for i in 0..self.k as usize {
                if e[i] == 0 {
                    continue;
                }
                let mut f = e.clone();
                f[i] -= 1;
                f[i + 1] += 1;
                m[(tgt[&f], col)] += q(i64::from(e[i]));
            }
        }
        Ok(m)
    }

    /// Matrix of X from grade `n` to grade `n-1`, of shape
    /// `dim(n-1) × dim(n)`.
    pub fn x(&self, n: u32) -> Result<RationalMatrix> {
        self.check_grade(n, 1)?;
        let src = self.basis(n);
        let tgt = &self.index[n as usize - 1];
        let k = i64::from(self.k);
        let mut m = RationalMatrix::zeros(tgt.len(), src.len());
        for (col, lambda) in src.iter().enumerate() {
            let e = lambda.exponent_form();
            for i in 1..=self.k as usize {
                if e[i] == 0 {
                    continue;
                }
                let mut f = e.clone();
                f[i] -= 1;
                f[i - 1] += 1;
                let c = i as i64 * (k - i as i64 + 1);
                m[(tgt[&f], col)] += q(i64::from(e[i]) * c);
            }
        }
        Ok(m)
    }
}

/// Matrix of the lowering operator between grades `n-1` and `n`.
pub fn build_y(k: u32, d: u32, n: u32) -> Result<RationalMatrix> {
    if n == 0 || n > k * d {
        return Err(Error::range(format!("n={n} outside [1, {}]", k * d)));
    }
    Sl2Module::new(k, d)?.y(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketFailure {
    pub identity: String,
    pub grade: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketReport {
    pub k: u32,
    pub d: u32,
    pub weights_ok: bool,
    pub failure: Option<BracketFailure>,
}

impl BracketReport {
    pub fn holds(&self) -> bool {
        self.weights_ok && self.failure.is_none()
    }
}

/// Checks `[X,Y] = H`, `[H,X] = 2X` and `[H,Y] = -2Y` on every grade, and
/// that grade `n` is the `(dk - 2n)`-eigenspace of H.
pub fn verify_bracket(k: u32, d: u32) -> Result<BracketReport> {
    let module = Sl2Module::new(k, d)?;
    let top = module.top_grade();
    let weights_ok = (0..=top).all(|n| {
        module.basis(n).iter().all(|p| module.weight_of(&p.exponent_form()) == i64::from(top) - 2 * i64::from(n))
    });
    let two = q(2);
    let fail = |identity: &str, grade: u32| BracketFailure { identity: identity.to_string(), grade };
    for n in 0..=top {
        let h = module.h(n)?;
        let dim = module.dim(n);
        let mut xy = RationalMatrix::zeros(dim, dim);
        if n < top {
            xy = xy.add(&module.x(n + 1)?.matmul(&module.y(n + 1)?)?)?;
        }
        if n > 0 {
            xy = xy.sub(&module.y(n)?.matmul(&module.x(n)?)?)?;
        }
        if xy != h {
            return Ok(BracketReport { k, d, weights_ok, failure: Some(fail("[X,Y]=H", n)) });
        }
        if n > 0 {
            let h_prev = module.h(n - 1)?;
            let x = module.x(n)?;
            let hx = h_prev.matmul(&x)?.sub(&x.matmul(&h)?)?;
            if hx != x.scale(&two) {
                return Ok(BracketReport { k, d, weights_ok, failure: Some(fail("[H,X]=2X", n)) });
            }
            let y = module.y(n)?;
            let hy = h.matmul(&y)?.sub(&y.matmul(&h_prev)?)?;
            if hy != y.scale(&-two.clone()) {
                return Ok(BracketReport { k, d, weights_ok, failure: Some(fail("[H,Y]=-2Y", n)) });
            }
        }
    }
    Ok(BracketReport { k, d, weights_ok, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_representation() {
        let m = Sl2Module::new(1, 1).unwrap();
        assert_eq!(m.h(0).unwrap(), RationalMatrix::identity(1));
        assert_eq!(m.h(1).unwrap(), RationalMatrix::identity(1).scale(&q(-1)));
        assert_eq!(m.y(1).unwrap(), RationalMatrix::identity(1));
        assert_eq!(m.x(1).unwrap(), RationalMatrix::identity(1));
        assert!(verify_bracket(1, 1).unwrap().holds());
    }

    #[test]
    fn first_lowering_is_d() {
        for (k, d) in [(1, 3), (4, 2), (3, 3)] {
            assert_eq!(build_y(k, d, 1).unwrap(), RationalMatrix::diagonal(&[q(i64::from(d))]));
        }
    }

    #[test]
    fn brackets_hold_for_small_modules() {
        for k in 1..=12u32 {
            for d in 1..=12 / k {
                let r = verify_bracket(k, d).unwrap();
                assert!(r.holds(), "({k},{d}) {:?}", r.failure);
            }
        }
    }

    #[test]
    fn wrong_normalisation_is_caught() {
        // With X(x_i) = x_{i-1} instead of the weighted rule, [X,Y] on the top
        // weight vector of W_2 is 1, not 2.
        let m = Sl2Module::new(2, 1).unwrap();
        let naive_x = m.y(1).unwrap().transpose();
        let xy = naive_x.matmul(&m.y(1).unwrap()).unwrap();
        assert_eq!(xy, RationalMatrix::identity(1));
        assert_ne!(xy, m.h(0).unwrap());
    }

    #[test]
    fn grade_range_checked() {
        let m = Sl2Module::new(2, 2).unwrap();
        assert!(m.y(0).is_err());
        assert!(m.y(5).is_err());
        assert!(build_y(2, 2, 0).is_err());
        assert_eq!(m.h(4).unwrap(), RationalMatrix::identity(1).scale(&q(-4)));
    }
}
