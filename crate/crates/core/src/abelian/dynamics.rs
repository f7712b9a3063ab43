//! Growth data of a unipotent automorphism `f^* = id + N` on `E^d`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::intersection::{intersection_number, poly_intersection_number};
use super::model::{AbelianModel, NsClass};
use super::reduce::is_unipotent;
use crate::error::{Error, Result};
use crate::linalg::{binomial_poly, choose_poly, Degree, PolyMatrix, Rational, RationalMatrix, RationalPoly};
use crate::partitions::{enumerate, Partition};

/// A model whose induced action on Néron–Severi classes is unipotent,
/// together with the classes `N^i H` for `0 ≤ i ≤ k`.
#[derive(Clone, Debug)]
pub struct UnipotentModel {
    model: AbelianModel,
    nilpotent: RationalMatrix,
    k: usize,
    jordan_sizes: Vec<usize>,
    powers: Vec<NsClass>,
}

impl UnipotentModel {
    pub fn new(model: AbelianModel) -> Result<Self> {
        let phi = model.ns_operator()?;
        if !is_unipotent(&phi)? {
            return Err(Error::NotUnipotent);
        }
        let size = phi.rows();
        let nilpotent = phi.sub(&RationalMatrix::identity(size))?;

        // ranks of N^0, N^1, ... until they hit zero
        let mut ranks = vec![size];
        let mut power = RationalMatrix::identity(size);
        while *ranks.last().unwrap() > 0 {
            power = power.matmul(&nilpotent)?;
            ranks.push(power.rank());
        }
        let k = ranks.len() - 2;
        ranks.push(0);
        // blocks of size ≥ s: ranks[s-1] - ranks[s]
        let mut jordan_sizes = Vec::new();
        for s in 1..ranks.len() - 1 {
            let at_least = ranks[s - 1] - ranks[s];
            let above = ranks[s] - ranks[s + 1];
            jordan_sizes.extend(std::iter::repeat_n(s, at_least - above));
        }
        jordan_sizes.sort_unstable_by(|a, b| b.cmp(a));

        let mut powers = vec![model.h().clone()];
        for _ in 0..k {
            let prev = powers.last().unwrap();
            powers.push(model.pullback(prev)?.sub(prev)?);
        }
        Ok(Self { model, nilpotent, k, jordan_sizes, powers })
    }

    pub fn model(&self) -> &AbelianModel {
        &self.model
    }

    pub fn d(&self) -> usize {
        self.model.d()
    }

    /// Nilpotency exponent: `N^k ≠ 0 = N^{k+1}`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> &NsClass {
        self.model.h()
    }

    /// `N^i H`, zero for `i > k`.
    pub fn n_power_h(&self, i: usize) -> NsClass {
        self.powers.get(i).cloned().unwrap_or_else(|| NsClass::zero(self.d()))
    }

    pub fn nilpotent_operator(&self) -> &RationalMatrix {
        &self.nilpotent
    }

    /// `(f^n)^*H = Σ_j C(n,j) N^j H` with polynomial entries in `n`.
    pub fn pullback_poly(&self) -> Result<PolyMatrix> {
        let terms: Vec<_> = self.powers.iter().enumerate().map(|(j, c)| (choose_poly(j), c.matrix().clone())).collect();
        PolyMatrix::from_terms(&terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentData {
    pub k: usize,
    /// Jordan block sizes of the induced operator, largest first.
    pub jordan_sizes: Vec<usize>,
    /// `max{i : N^i H ≠ 0}` for the model's ample class.
    pub h_exponent: usize,
}

impl NilpotentData {
    pub fn h_exponent_matches(&self) -> bool {
        self.h_exponent == self.k
    }
}

pub fn nilpotent_data(u: &UnipotentModel) -> NilpotentData {
    let h_exponent = u.powers.iter().rposition(|c| !c.is_zero()).expect("H itself is nonzero");
    NilpotentData { k: u.k, jordan_sizes: u.jordan_sizes.clone(), h_exponent }
}

/// `Δ_n = Σ_{m<n} (f^m)^*H = Σ_{i≤k} C(n, i+1) N^i H`.
pub fn delta_poly(u: &UnipotentModel) -> Result<PolyMatrix> {
    let terms: Vec<_> = u.powers.iter().enumerate().map(|(i, c)| (binomial_poly(i), c.matrix().clone())).collect();
    PolyMatrix::from_terms(&terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plov {
    pub plov: usize,
    pub gkdim: usize,
    pub leading_coefficient: Rational,
    /// `Δ_n^d` as a polynomial in `n`.
    pub volume: RationalPoly,
}

/// Degree of `Δ_n^d = d!·det(Δ_n)`.
pub fn plov(u: &UnipotentModel) -> Result<Plov> {
    let delta = delta_poly(u)?;
    let d = u.d();
    let fact: u64 = (1..=d as u64).product();
    let volume = crate::linalg::polydet(&delta).scale(&Rational::from_integer(fact.into()));
    let plov = volume.degree().finite().ok_or_else(|| Error::invalid("volume polynomial vanishes identically"))?;
    let leading_coefficient = volume.leading_coefficient().cloned().unwrap_or_else(Rational::zero);
    if !leading_coefficient.is_positive() {
        return Err(Error::invalid("volume polynomial has nonpositive leading coefficient"));
    }
    Ok(Plov { plov, gkdim: plov + 1, leading_coefficient, volume })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub i: usize,
    pub poly: RationalPoly,
}

impl DegreeSequence {
    pub fn exponent(&self) -> Degree {
        self.poly.degree()
    }

    pub fn even_degree(&self) -> bool {
        matches!(self.exponent(), Degree::Finite(e) if e % 2 == 0)
    }

    pub fn positive_leading(&self) -> bool {
        self.poly.leading_coefficient().is_some_and(|c| c.is_positive())
    }

    /// `2(d−1)·min(i, d−i)`.
    pub fn exponent_cap(&self, d: usize) -> usize {
        2 * d.saturating_sub(1) * self.i.min(d - self.i)
    }
}

/// `deg_i(f^n) = ((f^n)^*H)^i · H^{d-i}` as a polynomial in `n`.
pub fn degree_sequence(u: &UnipotentModel, i: usize) -> Result<DegreeSequence> {
    let d = u.d();
    if i > d {
        return Err(Error::range(format!("i={i} exceeds d={d}")));
    }
    let pulled = u.pullback_poly()?;
    let h = PolyMatrix::constant(u.h().matrix())?;
    let mut classes = vec![pulled; i];
    classes.extend(std::iter::repeat_n(h, d - i));
    Ok(DegreeSequence { i, poly: poly_intersection_number(&classes)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIntersections {
    pub k: usize,
    pub d: usize,
    /// `v_λ = N^{λ_1}H ⋯ N^{λ_d}H` for every `λ ∈ ∪_n P(k, d, n)`.
    pub values: BTreeMap<Partition, Rational>,
}

impl MonomialIntersections {
    /// Partitions with `|λ| > dk/2` and `v_λ ≠ 0`; empty when the vanishing
    /// above the midpoint holds.
    pub fn violations(&self) -> Vec<&Partition> {
        self.values
            .iter()
            .filter(|(p, v)| 2 * p.n() as usize > self.d * self.k && !v.is_zero())
            .map(|(p, _)| p)
            .collect()
    }

    /// Largest `|λ|` with `v_λ ≠ 0`.
    pub fn max_nonvanishing_weight(&self) -> Option<u32> {
        self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(p, _)| p.n()).max()
    }

    pub fn get(&self, parts: &[u32]) -> Option<&Rational> {
        let p = Partition::new(self.k as u32, parts.to_vec()).ok()?;
        self.values.get(&p)
    }
}

pub fn monomial_intersections(u: &UnipotentModel) -> Result<MonomialIntersections> {
    let (k, d) = (u.k, u.d());
    let partitions: Vec<Partition> = if k == 0 {
        vec![Partition::new(0, vec![0; d])?]
    } else {
        let mut all = Vec::new();
        for n in 0..=(k * d) as u32 {
            all.extend(enumerate(k as u32, d as u32, n)?.items().iter().cloned());
        }
        all
    };
    let values = partitions
        .into_par_iter()
        .map(|p| {
            let classes: Vec<NsClass> = p.parts().iter().map(|&j| u.n_power_h(j as usize)).collect();
            intersection_number(&classes).map(|v| (p, v))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(MonomialIntersections { k, d, values })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialGap {
    pub plov: usize,
    /// `d + max{Σ i e_i : v ≠ 0}`.
    pub bound: usize,
}

impl MonomialGap {
    pub fn holds(&self) -> bool {
        self.plov <= self.bound
    }

    /// `bound - plov`; reported, never asserted to be zero.
    pub fn gap(&self) -> i64 {
        self.bound as i64 - self.plov as i64
    }
}

pub fn plov_monomial_gap(u: &UnipotentModel) -> Result<MonomialGap> {
    let scan = monomial_intersections(u)?;
    let top = scan.max_nonvanishing_weight().ok_or_else(|| Error::invalid("every monomial intersection vanishes"))?;
    Ok(MonomialGap { plov: plov(u)?.plov, bound: u.d() + top as usize })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::model::{jordan_block, jordan_model, pullback};

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    fn unipotent(r0: usize, d0: usize, m0: usize) -> UnipotentModel {
        UnipotentModel::new(jordan_model(r0, d0, m0).unwrap()).unwrap()
    }

    #[test]
    fn nilpotent_data_examples() {
        let u = unipotent(0, 2, 1);
        let nd = nilpotent_data(&u);
        assert_eq!(nd.k, 2);
        assert_eq!(nd.jordan_sizes, vec![3]);
        assert!(nd.h_exponent_matches());
        assert_eq!(nilpotent_data(&unipotent(0, 1, 3)).k, 0);
        assert_eq!(nilpotent_data(&unipotent(0, 3, 1)).k, 4);
    }

    #[test]
    fn rejects_non_unipotent() {
        let m = AbelianModel::from_i64(&[vec![0, -1], vec![1, 0]]).unwrap();
        assert!(matches!(UnipotentModel::new(m), Err(Error::NotUnipotent)));
    }

    #[test]
    fn n_powers_for_j12() {
        let u = unipotent(0, 2, 1);
        assert_eq!(u.n_power_h(1), NsClass::from_i64(&[vec![0, 1], vec![1, 1]]).unwrap());
        assert_eq!(u.n_power_h(2), NsClass::from_i64(&[vec![0, 0], vec![0, 2]]).unwrap());
        assert!(u.n_power_h(3).is_zero());
    }

    #[test]
    fn delta_for_identity_is_n_h() {
        let u = UnipotentModel::new(AbelianModel::from_i64(&[vec![1, 0], vec![0, 1]]).unwrap()).unwrap();
        let delta = delta_poly(&u).unwrap();
        assert_eq!(delta.entry(0, 0), &RationalPoly::x());
        assert!(delta.entry(0, 1).is_zero());
    }

    #[test]
    fn delta_for_j12_by_hand() {
        let u = unipotent(0, 2, 1);
        let delta = delta_poly(&u).unwrap();
        let n = RationalPoly::x();
        let c2 = binomial_poly(1);
        let c3 = binomial_poly(2);
        assert_eq!(delta.entry(0, 0), &n);
        assert_eq!(delta.entry(0, 1), &c2);
        assert_eq!(delta.entry(1, 0), &c2);
        assert_eq!(delta.entry(1, 1), &(&(&n + &c2) + &c3.scale(&q(2))));
        // evaluation at n = 3 against H + f^*H + (f^2)^*H
        let a = jordan_block(2);
        let h = NsClass::identity(2);
        let f1 = pullback(&a, &h).unwrap();
        let f2 = pullback(&a, &f1).unwrap();
        let direct = h.add(&f1).unwrap().add(&f2).unwrap();
        assert_eq!(&delta.eval_int(3), direct.matrix());
    }

    #[test]
    fn plov_small_models() {
        assert_eq!(plov(&unipotent(0, 2, 1)).unwrap().plov, 4);
        assert_eq!(plov(&unipotent(0, 2, 1)).unwrap().gkdim, 5);
        for d in 1..=4 {
            assert_eq!(plov(&unipotent(0, 1, d)).unwrap().plov, d);
        }
    }

    #[test]
    fn degree_sequences_j12() {
        let u = unipotent(0, 2, 1);
        let d0 = degree_sequence(&u, 0).unwrap();
        assert_eq!(d0.poly, RationalPoly::constant(q(2)));
        let d1 = degree_sequence(&u, 1).unwrap();
        assert_eq!(d1.exponent(), Degree::Finite(2));
        assert!(d1.poly.leading_coefficient().unwrap().is_positive());
        // projection formula: deg_d is constant
        assert_eq!(degree_sequence(&u, 2).unwrap().poly, RationalPoly::constant(q(2)));
        assert!(degree_sequence(&u, 3).is_err());
    }

    #[test]
    fn monomials_j12() {
        let u = unipotent(0, 2, 1);
        let scan = monomial_intersections(&u).unwrap();
        assert_eq!(scan.get(&[0, 0]), Some(&q(2)));
        assert_eq!(scan.get(&[2, 2]), Some(&q(0)));
        assert_eq!(scan.get(&[2, 0]), Some(&q(2)));
        assert!(scan.violations().is_empty());
        let gap = plov_monomial_gap(&u).unwrap();
        assert_eq!(gap.bound, 4);
        assert_eq!(gap.gap(), 0);
    }

    #[test]
    fn monomial_gap_identity() {
        let u = unipotent(0, 1, 3);
        let gap = plov_monomial_gap(&u).unwrap();
        assert_eq!((gap.bound, gap.gap()), (3, 0));
    }
}
