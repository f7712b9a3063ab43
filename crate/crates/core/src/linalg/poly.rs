//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first. The representation is
//! canonical: the zero polynomial has no coefficients and otherwise the last
//! coefficient is nonzero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&Rational::from_integer(BigInt::from(x)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading_coefficient().expect("polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Lowest common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Whether the polynomial takes a strictly positive value at every
    /// sample point.
    pub fn positive_at(&self, points: impl IntoIterator<Item = i64>) -> bool {
        points.into_iter().all(|m| self.eval_int(m).is_positive())
    }
}

impl Zero for RationalPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RationalPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl<'a> Add<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: RationalPoly) -> RationalPoly {
        &self + &rhs
    }
}

impl<'a> Sub<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: RationalPoly) -> RationalPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: RationalPoly) -> RationalPoly {
        &self * &rhs
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "n")?;
                    } else {
                        write!(f, "n^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `C(n, j)` as a polynomial in `n`: `n(n-1)...(n-j+1)/j!`.
pub fn choose_poly(j: usize) -> RationalPoly {
    let mut p = RationalPoly::one();
    for t in 0..j {
        let factor = RationalPoly::new(vec![Rational::from_integer(BigInt::from(-(t as i64))), Rational::one()]);
        p = &p * &factor;
    }
    let fact: BigInt = (1..=j as u64).map(BigInt::from).product();
    p.scale(&Rational::new(BigInt::one(), fact))
}

/// `C(n, i + 1)` as a polynomial in `n`, the coefficient of `N^i H` in the
/// summed pullbacks `H + f^*H + ... + (f^{n-1})^*H`.
pub fn binomial_poly(i: usize) -> RationalPoly {
    choose_poly(i + 1)
}

/// Cyclotomic polynomial `Phi_n` for `n >= 1`.
pub fn cyclotomic(n: usize) -> RationalPoly {
    assert!(n >= 1);
    let mut xn = vec![Rational::zero(); n + 1];
    xn[0] = -Rational::one();
    xn[n] = Rational::one();
    let mut p = RationalPoly::new(xn);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = p.exact_div(&cyclotomic(d)).expect("cyclotomic factors divide x^n - 1");
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn zero_degree_is_marker() {
        assert_eq!(RationalPoly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(RationalPoly::from_integers(&[0, 0, 0]).degree(), Degree::NegInfinity);
    }

    #[test]
    fn binomial_poly_small_cases() {
        assert_eq!(binomial_poly(0), RationalPoly::x());
        assert_eq!(binomial_poly(1), RationalPoly::new(vec![q(0, 1), q(-1, 2), q(1, 2)]));
        // n(n-1)(n-2)(n-3)/24 = (n^4 - 6n^3 + 11n^2 - 6n)/24
        let p3 = binomial_poly(3);
        assert_eq!(p3.degree(), Degree::Finite(4));
        assert_eq!(p3, RationalPoly::new(vec![q(0, 1), q(-6, 24), q(11, 24), q(-6, 24), q(1, 24)]));
    }

    #[test]
    fn binomial_poly_matches_integer_binomials() {
        for i in 0..6usize {
            let p = binomial_poly(i);
            for n in 0..12i64 {
                let expect = num_integer::binomial(n as u64, i as u64 + 1);
                assert_eq!(p.eval_int(n), Rational::from_integer(expect.into()));
            }
        }
    }

    #[test]
    fn division_round_trips() {
        let a = RationalPoly::from_integers(&[1, 2, 3, 4]);
        let b = RationalPoly::from_integers(&[-1, 0, 2]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(&(&quot * &b) + &rem, a);
        assert!(rem.degree() < b.degree());
    }

    #[test]
    fn cyclotomic_known_values() {
        assert_eq!(cyclotomic(1), RationalPoly::from_integers(&[-1, 1]));
        assert_eq!(cyclotomic(2), RationalPoly::from_integers(&[1, 1]));
        assert_eq!(cyclotomic(4), RationalPoly::from_integers(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), RationalPoly::from_integers(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), RationalPoly::from_integers(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn display_is_readable() {
        let p = RationalPoly::new(vec![q(1, 1), q(0, 1), q(-1, 2)]);
        assert_eq!(p.to_string(), "-1/2*n^2 + 1");
    }
}
