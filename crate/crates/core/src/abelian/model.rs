//! `X = E^d` for an elliptic curve without complex multiplication.
//!
//! Real Néron–Severi classes are symmetric `d × d` rational matrices, ample
//! classes are the positive definite ones, and the automorphism given by an
//! integer matrix `A` acts on classes by `M ↦ AᵀMA`.

use num_traits::{One, Signed};
use rand::Rng;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};

/// A divisor class on `E^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NsClass(RationalMatrix);

impl NsClass {
    pub fn new(m: RationalMatrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::invalid("Néron–Severi classes must be symmetric matrices"));
        }
        Ok(Self(m))
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(RationalMatrix::from_i64(rows)?)
    }

    pub fn zero(d: usize) -> Self {
        Self(RationalMatrix::zeros(d, d))
    }

    pub fn identity(d: usize) -> Self {
        Self(RationalMatrix::identity(d))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_ample(&self) -> bool {
        self.0.is_positive_definite()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self(self.0.add(&rhs.0)?))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self(self.0.sub(&rhs.0)?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.scale(c))
    }

    /// Basis `{E_ii} ∪ {E_ij + E_ji : i < j}` of the symmetric matrices, in
    /// that order.
    pub fn basis(d: usize) -> Vec<NsClass> {
        basis_pairs(d)
            .into_iter()
            .map(|(i, j)| {
                let mut m = RationalMatrix::zeros(d, d);
                m[(i, j)] = Rational::one();
                m[(j, i)] = Rational::one();
                NsClass(m)
            })
            .collect()
    }

    /// Coordinates in [`NsClass::basis`].
    pub fn coords(&self) -> Vec<Rational> {
        basis_pairs(self.dim()).into_iter().map(|(i, j)| self.0[(i, j)].clone()).collect()
    }

    pub fn from_coords(d: usize, coords: &[Rational]) -> Self {
        let mut m = RationalMatrix::zeros(d, d);
        for ((i, j), c) in basis_pairs(d).into_iter().zip(coords) {
            m[(i, j)] = c.clone();
            m[(j, i)] = c.clone();
        }
        NsClass(m)
    }
}

fn basis_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).map(|i| (i, i)).chain((0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j)))).collect()
}

/// Dimension of the Néron–Severi space of `E^d`.
pub fn ns_rank(d: usize) -> usize {
    d * (d + 1) / 2
}

/// `AᵀMA`.
pub fn pullback(a: &RationalMatrix, m: &NsClass) -> Result<NsClass> {
    if a.rows() != m.dim() || !a.is_square() {
        return Err(Error::DimensionMismatch { left: (a.rows(), a.cols()), right: (m.dim(), m.dim()) });
    }
    NsClass::new(a.transpose().matmul(m.matrix())?.matmul(a)?)
}

/// Matrix of `M ↦ AᵀMA` on the symmetric matrices, in the basis of
/// [`NsClass::basis`].
pub fn ns_operator(a: &RationalMatrix) -> Result<RationalMatrix> {
    let d = a.rows();
    let basis = NsClass::basis(d);
    let columns = basis.iter().map(|b| pullback(a, b).map(|m| m.coords())).collect::<Result<Vec<_>>>()?;
    let n = basis.len();
    Ok(RationalMatrix::from_fn(n, n, |i, j| columns[j][i].clone()))
}

/// Upper triangular Jordan block of eigenvalue 1.
pub fn jordan_block(size: usize) -> RationalMatrix {
    let mut m = RationalMatrix::identity(size);
    for i in 1..size {
        m[(i - 1, i)] = Rational::one();
    }
    m
}

pub fn block_diagonal(blocks: &[RationalMatrix]) -> RationalMatrix {
    let n: usize = blocks.iter().map(RationalMatrix::rows).sum();
    let mut m = RationalMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows();
    }
    m
}

/// An automorphism of `E^d` together with an ample class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianModel {
    a: RationalMatrix,
    h: NsClass,
    iterate: u64,
}

impl AbelianModel {
    /// `a` must be an integer matrix with determinant ±1; `h` defaults to
    /// the identity and must be positive definite.
    pub fn new(a: RationalMatrix, h: Option<NsClass>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare(a.rows(), a.cols()));
        }
        let d = a.rows();
        if d == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if !a.is_integral() {
            return Err(Error::invalid("automorphism matrix must have integer entries"));
        }
        if !a.det()?.abs().is_one() {
            return Err(Error::invalid("automorphism matrix must have determinant ±1"));
        }
        let h = h.unwrap_or_else(|| NsClass::identity(d));
        if h.dim() != d {
            return Err(Error::DimensionMismatch { left: (d, d), right: (h.dim(), h.dim()) });
        }
        if !h.is_ample() {
            return Err(Error::invalid("polarization H must be positive definite"));
        }
        Ok(Self { a, h, iterate: 1 })
    }

    pub fn from_i64(a: &[Vec<i64>]) -> Result<Self> {
        Self::new(RationalMatrix::from_i64(a)?, None)
    }

    /// Parses `{"d": 3, "A": [[...]], "H": [[...]]}`; entries may be JSON
    /// integers or decimal strings, `d` and `H` are optional.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Spec {
            d: Option<Value>,
            #[serde(rename = "A")]
            a: Vec<Vec<Value>>,
            #[serde(rename = "H")]
            h: Option<Vec<Vec<Value>>>,
        }
        let spec: Spec = serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad model JSON: {e}")))?;
        let a = RationalMatrix::from_rows(parse_rows(&spec.a)?)?;
        if let Some(d) = spec.d {
            let d = parse_rational(&d)?;
            if d != Rational::from_integer(a.rows().into()) {
                return Err(Error::invalid(format!("d = {d} but A has {} rows", a.rows())));
            }
        }
        let h = spec.h.map(|rows| RationalMatrix::from_rows(parse_rows(&rows)?).and_then(NsClass::new)).transpose()?;
        Self::new(a, h)
    }

    pub fn d(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn h(&self) -> &NsClass {
        &self.h
    }

    /// `m` when this model stands for `f^m` of the original automorphism.
    pub fn iterate(&self) -> u64 {
        self.iterate
    }

    pub fn pullback(&self, m: &NsClass) -> Result<NsClass> {
        pullback(&self.a, m)
    }

    pub fn ns_operator(&self) -> Result<RationalMatrix> {
        ns_operator(&self.a)
    }

    /// The model of `f^m`.
    pub fn power(&self, m: u32) -> Result<Self> {
        Ok(Self { a: self.a.pow(m)?, h: self.h.clone(), iterate: self.iterate * u64::from(m) })
    }

    /// The model of `f^{-1}`.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self { a: self.a.inverse()?, h: self.h.clone(), iterate: self.iterate })
    }

    pub fn with_h(&self, h: NsClass) -> Result<Self> {
        Self::new(self.a.clone(), Some(h))
    }
}

fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| Error::invalid(format!("{n} is not an integer"))),
        Value::String(s) => {
            s.trim().parse::<Rational>().map_err(|_| Error::invalid(format!("cannot parse {s:?} as a rational")))
        }
        other => Err(Error::invalid(format!("unexpected matrix entry {other}"))),
    }
}

fn parse_rows(rows: &[Vec<Value>]) -> Result<Vec<Vec<Rational>>> {
    rows.iter().map(|r| r.iter().map(parse_rational).collect()).collect()
}

/// `J_{1,r0} ⊕ J_{1,d0}^{⊕m0}` on `E^d`, `d = m0·d0 + r0`, with `H = I`.
pub fn jordan_model(r0: usize, d0: usize, m0: usize) -> Result<AbelianModel> {
    if d0 == 0 || r0 >= d0 {
        return Err(Error::invalid(format!("need 0 ≤ r0 < d0 (r0={r0}, d0={d0})")));
    }
    if m0 * d0 + r0 == 0 {
        return Err(Error::invalid("d = m0·d0 + r0 must be at least 1"));
    }
    let mut blocks = Vec::new();
    if r0 > 0 {
        blocks.push(jordan_block(r0));
    }
    blocks.extend(std::iter::repeat_with(|| jordan_block(d0)).take(m0));
    AbelianModel::new(block_diagonal(&blocks), None)
}

/// Every admissible `(r0, d0, m0)` with `d = m0·d0 + r0 ≤ max_d` and `d0 ≤ max_d`.
pub fn jordan_triples(max_d: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for d0 in 1..=max_d {
        for m0 in 0..=max_d / d0 {
            for r0 in 0..d0 {
                let d = m0 * d0 + r0;
                if (1..=max_d).contains(&d) {
                    out.push((r0, d0, m0));
                }
            }
        }
    }
    out
}

/// A random integer matrix of determinant ±1 with entries in `[-bound, bound]`,
/// built from elementary row operations that keep the entries in range.
pub fn random_unimodular<R: Rng + ?Sized>(d: usize, bound: i64, steps: usize, rng: &mut R) -> RationalMatrix {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        if d == 1 || rng.gen_bool(0.1) {
            let i = rng.gen_range(0..d);
            m[i].iter_mut().for_each(|x| *x = -*x);
            continue;
        }
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        let row: Vec<i64> = m[i].iter().zip(&m[j]).map(|(a, b)| a + c * b).collect();
        if row.iter().all(|x| x.abs() <= bound) {
            m[i] = row;
        }
    }
    RationalMatrix::from_i64(&m).expect("square")
}

/// `a` has entries only in `{x : |x| ≤ bound}`.
pub fn entries_bounded(a: &RationalMatrix, bound: i64) -> bool {
    let b = Rational::from_integer(bound.into());
    (0..a.rows()).all(|i| a.row(i).iter().all(|x| x.abs() <= b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_by_jordan_block() {
        let a = jordan_block(2);
        let m = pullback(&a, &NsClass::identity(2)).unwrap();
        assert_eq!(m, NsClass::from_i64(&[vec![1, 1], vec![1, 2]]).unwrap());
        let id = RationalMatrix::identity(3);
        let c = NsClass::from_i64(&[vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 5]]).unwrap();
        assert_eq!(pullback(&id, &c).unwrap(), c);
    }

    #[test]
    fn ns_operator_identity_and_j12() {
        assert_eq!(ns_operator(&RationalMatrix::identity(3)).unwrap(), RationalMatrix::identity(6));
        let phi = ns_operator(&jordan_block(2)).unwrap();
        let n = phi.sub(&RationalMatrix::identity(3)).unwrap();
        assert!(!n.pow(2).unwrap().is_zero());
        assert!(n.pow(3).unwrap().is_zero());
    }

    #[test]
    fn ns_operator_respects_blocks() {
        let a = block_diagonal(&[jordan_block(1), jordan_block(2)]);
        let phi = ns_operator(&a).unwrap();
        // E_11 is fixed by the first block
        let e11 = NsClass::basis(3)[0].coords();
        let image: Vec<Rational> = (0..6).map(|i| (0..6).map(|j| &phi[(i, j)] * &e11[j]).sum()).collect();
        assert_eq!(image, e11);
    }

    #[test]
    fn coords_round_trip() {
        let c = NsClass::from_i64(&[vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 5]]).unwrap();
        assert_eq!(NsClass::from_coords(3, &c.coords()), c);
    }

    #[test]
    fn jordan_model_shapes() {
        assert_eq!(jordan_model(0, 2, 1).unwrap().a(), &jordan_block(2));
        assert_eq!(jordan_model(1, 4, 1).unwrap().d(), 5);
        assert_eq!(jordan_model(0, 4, 1).unwrap().a(), &jordan_block(4));
        assert!(jordan_model(2, 2, 1).is_err());
        assert!(jordan_model(0, 0, 1).is_err());
        assert!(jordan_model(0, 3, 0).is_err());
    }

    #[test]
    fn model_validation() {
        assert!(AbelianModel::from_i64(&[vec![2, 0], vec![0, 1]]).is_err());
        assert!(AbelianModel::from_i64(&[vec![1, 0, 0], vec![0, 1, 0]]).is_err());
        let bad_h = NsClass::from_i64(&[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(AbelianModel::new(jordan_block(2), Some(bad_h)).is_err());
        assert!(AbelianModel::from_i64(&[vec![0, -1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn json_parsing() {
        let m = AbelianModel::from_json(r#"{"d": 2, "A": [[1, 1], [0, 1]]}"#).unwrap();
        assert_eq!(m.a(), &jordan_block(2));
        let m = AbelianModel::from_json(r#"{"A": [["1", "0"], ["0", "1"]], "H": [[2, 1], [1, 2]]}"#).unwrap();
        assert_eq!(m.h(), &NsClass::from_i64(&[vec![2, 1], vec![1, 2]]).unwrap());
        assert!(AbelianModel::from_json(r#"{"d": 3, "A": [[1, 1], [0, 1]]}"#).is_err());
        assert!(AbelianModel::from_json(r#"{"A": [[1, 1, 0], [0, 1]]}"#).is_err());
        assert!(AbelianModel::from_json("not json").is_err());
    }

    #[test]
    fn random_unimodular_is_unimodular() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for d in 1..=4 {
            for _ in 0..20 {
                let a = random_unimodular(d, 3, 12, &mut rng);
                assert_eq!(a.det().unwrap().abs(), Rational::one());
                assert!(entries_bounded(&a, 3));
            }
        }
    }

    #[test]
    fn triples_up_to_five() {
        let t = jordan_triples(5);
        assert!(t.contains(&(1, 4, 1)));
        assert!(t.contains(&(0, 2, 1)));
        assert!(!t.contains(&(1, 1, 0)));
        assert!(t.iter().all(|&(r0, d0, m0)| r0 < d0 && (1..=5).contains(&(m0 * d0 + r0))));
    }
}
