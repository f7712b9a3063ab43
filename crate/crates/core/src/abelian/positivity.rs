//! Weak triviality, sampled weak positivity and the positivity sequence
//! `t_r, …, t_1` of a unipotent model.
//!
//! A codimension-`j` class is represented by the list of `j` divisors whose
//! product it is. Weak triviality is decided exactly: by multilinearity it
//! suffices to pair with every multiset of `d - j` basis classes. Weak
//! positivity quantifies over all ample tuples, so it is only sampled.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dynamics::UnipotentModel;
use super::intersection::{intersection_number, poly_intersection_number};
use super::model::{AbelianModel, NsClass};
use crate::error::{Error, Result};
use crate::linalg::{Degree, PolyMatrix, Rational, RationalMatrix, RationalPoly};

/// True when `factors · B_1 ⋯ B_{d-j}` vanishes for every choice of basis
/// classes `B_i` (with repetition).
pub fn weakly_trivial(d: usize, factors: &[NsClass]) -> Result<bool> {
    let j = factors.len();
    if j > d {
        return Err(Error::range(format!("{j} factors exceed d={d}")));
    }
    if factors.iter().any(NsClass::is_zero) {
        return Ok(true);
    }
    let basis = NsClass::basis(d);
    let mut choice = Vec::with_capacity(d - j);
    nonzero_pairing(factors, &basis, 0, d - j, &mut choice).map(|found| !found)
}

fn nonzero_pairing(
    factors: &[NsClass],
    basis: &[NsClass],
    start: usize,
    remaining: usize,
    choice: &mut Vec<usize>,
) -> Result<bool> {
    if remaining == 0 {
        let mut classes = factors.to_vec();
        classes.extend(choice.iter().map(|&b| basis[b].clone()));
        return Ok(!intersection_number(&classes)?.is_zero());
    }
    for b in start..basis.len() {
        choice.push(b);
        let found = nonzero_pairing(factors, basis, b, remaining - 1, choice)?;
        choice.pop();
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Random ample classes `BᵀB + I` with `B` uniform in `[-2, 2]`.
pub struct AmpleSampler {
    rng: ChaCha8Rng,
    d: usize,
}

impl AmpleSampler {
    pub fn new(d: usize, seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), d }
    }

    pub fn sample(&mut self) -> NsClass {
        let d = self.d;
        let b = RationalMatrix::from_fn(d, d, |_, _| Rational::from_integer(self.rng.gen_range(-2i64..=2).into()));
        let m =
            b.transpose().matmul(&b).and_then(|g| g.add(&RationalMatrix::identity(d))).expect("square shapes agree");
        NsClass::new(m).expect("BᵀB + I is symmetric")
    }

    /// `count` tuples of `d` ample classes; the first tuple is `(H, …, H)`.
    pub fn tuples(&mut self, h: &NsClass, count: usize) -> Vec<Vec<NsClass>> {
        let mut out = vec![vec![h.clone(); self.d]];
        for _ in 1..count.max(1) {
            out.push((0..self.d).map(|_| self.sample()).collect());
        }
        out
    }
}

/// `sign · factors · T_1 ⋯ T_{d-j} > 0` for every sampled tuple `T`.
fn sampled_positive(factors: &[NsClass], tuples: &[Vec<NsClass>], negate: bool) -> Result<bool> {
    for tuple in tuples {
        let mut classes = factors.to_vec();
        classes.extend(tuple.iter().take(tuple.len() - factors.len()).cloned());
        let v = intersection_number(&classes)?;
        let positive = if negate { v.is_negative() } else { v.is_positive() };
        if !positive {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityConfig {
    /// Number of ample tuples, including the all-`H` tuple.
    pub samples: usize,
    pub seed: u64,
}

impl Default for PositivityConfig {
    fn default() -> Self {
        Self { samples: 8, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityStep {
    pub j: usize,
    /// The exponent `2r - 2j` of the class `N^{2r-2j}H` used at this step.
    pub power: usize,
    pub t: usize,
    /// `M_j · (N^{2r-2j}H)^i` positive on samples for `0 ≤ i ≤ t`.
    pub positive: bool,
    /// `M_{j+1} · N^s H` weakly trivial for every `s ≥ 2r-2j-1`.
    pub vanishing: bool,
    /// `-M_j · (N^{2r-2j}H)^{t-1} · (N^{2r-2j-1}H)^2` positive on samples.
    pub negative_square: bool,
    /// `M_{j+1} · N^{2r-2j-2}H` positive on samples.
    pub next_positive: bool,
}

impl PositivityStep {
    pub fn holds(&self) -> bool {
        self.t > 0 && self.positive && self.vanishing && self.negative_square && self.next_positive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivitySequence {
    pub d: usize,
    pub r: usize,
    /// `t_r, t_{r-1}, …, t_1`; shorter than `r` if the sequence broke off.
    pub t: Vec<usize>,
    /// `s_0 = 0, s_1, …`.
    pub s: Vec<usize>,
    pub steps: Vec<PositivityStep>,
    pub config: PositivityConfig,
}

impl PositivitySequence {
    pub fn complete(&self) -> bool {
        self.t.len() == self.r && self.t.iter().all(|&t| t > 0)
    }

    pub fn sum_below_d(&self) -> bool {
        self.t.iter().sum::<usize>() < self.d
    }

    pub fn r_bound(&self) -> bool {
        self.r < self.d
    }

    pub fn holds(&self) -> bool {
        self.complete() && self.sum_below_d() && self.r_bound() && self.steps.iter().all(PositivityStep::holds)
    }

    /// Factors of `M_j`.
    pub fn m_factors(&self, u: &UnipotentModel, j: usize) -> Vec<NsClass> {
        let mut out = Vec::new();
        for (step, &t) in self.t.iter().enumerate().take(j) {
            out.extend(std::iter::repeat_n(u.n_power_h(2 * self.r - 2 * step), t));
        }
        out
    }
}

pub fn positivity_sequence(u: &UnipotentModel, cfg: PositivityConfig) -> Result<PositivitySequence> {
    let (d, k) = (u.d(), u.k());
    if k == 0 {
        return Err(Error::TrivialNilpotency);
    }
    if k % 2 != 0 {
        return Err(Error::invalid(format!("nilpotency exponent k={k} is odd")));
    }
    let r = k / 2;
    let tuples = AmpleSampler::new(d, cfg.seed).tuples(u.h(), cfg.samples);
    let mut seq = PositivitySequence { d, r, t: Vec::new(), s: vec![0], steps: Vec::new(), config: cfg };
    let mut m = Vec::new();

    for j in 0..r {
        let power = 2 * r - 2 * j;
        let class = u.n_power_h(power);
        let s_j = m.len();
        let mut t = 0;
        while s_j + t < d {
            let mut trial = m.clone();
            trial.extend(std::iter::repeat_n(class.clone(), t + 1));
            if weakly_trivial(d, &trial)? {
                break;
            }
            t += 1;
        }
        seq.t.push(t);
        if t == 0 {
            break;
        }

        let mut positive = true;
        for i in 0..=t {
            let mut f = m.clone();
            f.extend(std::iter::repeat_n(class.clone(), i));
            positive &= sampled_positive(&f, &tuples, false)?;
        }

        let mut next = m.clone();
        next.extend(std::iter::repeat_n(class.clone(), t));
        let mut vanishing = true;
        if next.len() < d {
            for s in (power - 1)..=k {
                let mut f = next.clone();
                f.push(u.n_power_h(s));
                vanishing &= weakly_trivial(d, &f)?;
            }
        }

        let negative_square = if s_j + t < d {
            let mut f = m.clone();
            f.extend(std::iter::repeat_n(class.clone(), t - 1));
            f.extend(std::iter::repeat_n(u.n_power_h(power - 1), 2));
            sampled_positive(&f, &tuples, true)?
        } else {
            false
        };

        let next_positive = if next.len() < d {
            let mut f = next.clone();
            f.push(u.n_power_h(power - 2));
            sampled_positive(&f, &tuples, false)?
        } else {
            false
        };

        seq.steps.push(PositivityStep { j, power, t, positive, vanishing, negative_square, next_positive });
        m = next;
        seq.s.push(m.len());
    }
    Ok(seq)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialCheck {
    pub j: usize,
    pub l: usize,
    /// `P(m) = M_j · ((f^m)^*H)^l · H^{d-s_j-l}`.
    pub poly: RationalPoly,
    pub degree_bound: usize,
    /// `(m, P(m))` for `m ∈ [-10, 10]`, negative `m` computed through `f^{-1}`.
    pub samples: Vec<(i64, Rational)>,
}

impl PolynomialCheck {
    pub fn even_degree(&self) -> bool {
        matches!(self.poly.degree(), Degree::Finite(e) if e % 2 == 0)
    }

    pub fn positive_leading(&self) -> bool {
        self.poly.leading_coefficient().is_some_and(|c| c.is_positive())
    }

    pub fn degree_bounded(&self) -> bool {
        matches!(self.poly.degree(), Degree::Finite(e) if e <= self.degree_bound)
    }

    /// Every sample is positive and agrees with the polynomial.
    pub fn samples_positive(&self) -> bool {
        self.samples.iter().all(|(m, v)| v.is_positive() && self.poly.eval_int(*m) == *v)
    }

    pub fn holds(&self) -> bool {
        self.even_degree() && self.positive_leading() && self.degree_bounded() && self.samples_positive()
    }
}

pub fn positivity_polynomial_check(
    u: &UnipotentModel,
    seq: &PositivitySequence,
    j: usize,
    l: usize,
) -> Result<PolynomialCheck> {
    let d = u.d();
    if j >= seq.r || j >= seq.s.len() {
        return Err(Error::range(format!("j={j} outside the computed sequence (r={})", seq.r)));
    }
    let s_j = seq.s[j];
    if s_j + l > d {
        return Err(Error::range(format!("l={l} exceeds d - s_j = {}", d - s_j)));
    }
    let m = seq.m_factors(u, j);
    let fill = d - s_j - l;

    let constant = |c: &NsClass| PolyMatrix::constant(c.matrix());
    let mut classes = m.iter().map(constant).collect::<Result<Vec<_>>>()?;
    let pulled = u.pullback_poly()?;
    classes.extend(std::iter::repeat_n(pulled, l));
    classes.extend(std::iter::repeat_n(constant(u.h())?, fill));
    let poly = poly_intersection_number(&classes)?;

    let forward = u.model().clone();
    let backward = forward.inverse()?;
    let mut samples = Vec::new();
    for mm in -10i64..=10 {
        let step: &AbelianModel = if mm < 0 { &backward } else { &forward };
        let mut h = u.h().clone();
        for _ in 0..mm.unsigned_abs() {
            h = step.pullback(&h)?;
        }
        let mut args = m.clone();
        args.extend(std::iter::repeat_n(h, l));
        args.extend(std::iter::repeat_n(u.h().clone(), fill));
        samples.push((mm, intersection_number(&args)?));
    }
    Ok(PolynomialCheck { j, l, poly, degree_bound: (2 * seq.r - 2 * j) * l, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::model::jordan_model;

    fn unipotent(r0: usize, d0: usize, m0: usize) -> UnipotentModel {
        UnipotentModel::new(jordan_model(r0, d0, m0).unwrap()).unwrap()
    }

    #[test]
    fn weak_triviality_examples() {
        let u = unipotent(0, 2, 1);
        let n2h = u.n_power_h(2);
        assert!(!weakly_trivial(2, std::slice::from_ref(&n2h)).unwrap());
        assert!(weakly_trivial(2, &[n2h.clone(), n2h]).unwrap());
        assert!(weakly_trivial(2, &[NsClass::zero(2)]).unwrap());
        assert!(!weakly_trivial(3, &[]).unwrap());
        assert!(weakly_trivial(1, &[NsClass::identity(1), NsClass::identity(1)]).is_err());
    }

    #[test]
    fn sampler_is_ample_and_seeded() {
        let mut a = AmpleSampler::new(3, 7);
        let mut b = AmpleSampler::new(3, 7);
        for _ in 0..20 {
            let x = a.sample();
            assert!(x.is_ample());
            assert_eq!(x, b.sample());
        }
    }

    #[test]
    fn sequence_j12() {
        let u = unipotent(0, 2, 1);
        let seq = positivity_sequence(&u, PositivityConfig::default()).unwrap();
        assert_eq!(seq.r, 1);
        assert_eq!(seq.t, vec![1]);
        assert_eq!(seq.s, vec![0, 1]);
        assert!(seq.holds(), "{seq:?}");
    }

    #[test]
    fn sequence_j13() {
        let u = unipotent(0, 3, 1);
        let seq = positivity_sequence(&u, PositivityConfig::default()).unwrap();
        assert_eq!(seq.r, 2);
        assert!(seq.complete());
        assert!(seq.sum_below_d());
        assert!(seq.holds(), "{seq:?}");
    }

    #[test]
    fn sequence_rejects_k_zero() {
        let u = unipotent(0, 1, 2);
        assert_eq!(positivity_sequence(&u, PositivityConfig::default()), Err(Error::TrivialNilpotency));
    }

    #[test]
    fn polynomial_checks_j12() {
        let u = unipotent(0, 2, 1);
        let seq = positivity_sequence(&u, PositivityConfig::default()).unwrap();
        let full = positivity_polynomial_check(&u, &seq, 0, 2).unwrap();
        assert_eq!(full.poly, RationalPoly::constant(Rational::from_integer(2.into())));
        assert!(full.holds());
        let one = positivity_polynomial_check(&u, &seq, 0, 1).unwrap();
        assert_eq!(one.poly.degree(), Degree::Finite(2));
        assert!(one.holds());
        let none = positivity_polynomial_check(&u, &seq, 0, 0).unwrap();
        assert!(none.holds());
        assert!(positivity_polynomial_check(&u, &seq, 1, 0).is_err());
        assert!(positivity_polynomial_check(&u, &seq, 0, 3).is_err());
    }
}
