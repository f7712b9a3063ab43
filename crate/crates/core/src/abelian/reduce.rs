//! Zero-entropy test and passage to a unipotent iterate.
//!
//! The induced operator on Néron–Severi classes is quasi-unipotent exactly
//! when its characteristic polynomial is a product of cyclotomic
//! polynomials. Trial division by every `Φ_j` with `φ(j) ≤ D` decides this
//! exactly, and the lcm of the `j` found is the least iterate that is
//! unipotent.

use num_integer::Integer;
use num_traits::One;

use super::model::AbelianModel;
use crate::error::{Error, Result};
use crate::linalg::{cyclotomic, polydet, PolyMatrix, RationalMatrix, RationalPoly};

/// `det(xI - M)`.
pub fn characteristic_polynomial(m: &RationalMatrix) -> Result<RationalPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = RationalPoly::constant(-m[(i, j)].clone());
                    if i == j {
                        &c + &RationalPoly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    Ok(polydet(&PolyMatrix::new(entries)?))
}

pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Orders `j` (with multiplicity) of the cyclotomic factors `Φ_j` of a
/// monic polynomial, or the non-cyclotomic cofactor.
pub fn cyclotomic_factorization(p: &RationalPoly) -> std::result::Result<Vec<usize>, RationalPoly> {
    let degree = p.degree().finite().unwrap_or(0);
    let mut rest = p.clone();
    let mut orders = Vec::new();
    // φ(j) ≥ sqrt(j/2), so φ(j) ≤ D forces j ≤ 2D²
    let limit = 2 * degree * degree + 2;
    for j in (1..=limit).filter(|&j| euler_phi(j) <= degree) {
        let phi = cyclotomic(j);
        while rest.degree() >= phi.degree() {
            match rest.exact_div(&phi) {
                Some(q) => {
                    rest = q;
                    orders.push(j);
                }
                None => break,
            }
        }
        if rest.degree().finite() == Some(0) {
            break;
        }
    }
    if rest == RationalPoly::one() {
        Ok(orders)
    } else {
        Err(rest)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Least `m` with `(f^m)^*` unipotent on Néron–Severi classes.
    pub iterate: u64,
    pub cyclotomic_orders: Vec<usize>,
    pub model: AbelianModel,
}

pub fn quasi_unipotent_reduce(model: &AbelianModel) -> Result<Reduction> {
    let phi = model.ns_operator()?;
    let chi = characteristic_polynomial(&phi)?;
    let orders = cyclotomic_factorization(&chi).map_err(|rest| Error::PositiveEntropy(rest.to_string()))?;
    let m = orders.iter().fold(1usize, |acc, &j| acc.lcm(&j));
    let reduced = model.power(m as u32)?;
    if !is_unipotent(&reduced.ns_operator()?)? {
        return Err(Error::NotUnipotent);
    }
    Ok(Reduction { iterate: m as u64, cyclotomic_orders: orders, model: reduced })
}

/// True when `(φ - id)^D = 0`.
pub fn is_unipotent(phi: &RationalMatrix) -> Result<bool> {
    let n = phi.sub(&RationalMatrix::identity(phi.rows()))?;
    Ok(n.pow(phi.rows() as u32)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::model::jordan_block;

    #[test]
    fn phi_values() {
        let expect = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(euler_phi(i + 1), e);
        }
    }

    #[test]
    fn char_poly_2x2() {
        let m = RationalMatrix::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(characteristic_polynomial(&m).unwrap(), RationalPoly::from_integers(&[1, -3, 1]));
    }

    #[test]
    fn unipotent_needs_no_iterate() {
        let model = AbelianModel::new(jordan_block(3), None).unwrap();
        let r = quasi_unipotent_reduce(&model).unwrap();
        assert_eq!(r.iterate, 1);
        assert_eq!(r.cyclotomic_orders, vec![1; 6]);
    }

    #[test]
    fn rotation_by_quarter_turn() {
        // On symmetric 2x2 matrices the rotation swaps E11 and E22 and negates
        // E12 + E21: eigenvalues 1, -1, -1, so the square is already trivial.
        let model = AbelianModel::from_i64(&[vec![0, -1], vec![1, 0]]).unwrap();
        let r = quasi_unipotent_reduce(&model).unwrap();
        assert_eq!(r.iterate, 2);
        assert_eq!(r.model.ns_operator().unwrap(), RationalMatrix::identity(3));
    }

    #[test]
    fn order_three_rotation() {
        let model = AbelianModel::from_i64(&[vec![0, -1], vec![1, -1]]).unwrap();
        let r = quasi_unipotent_reduce(&model).unwrap();
        assert_eq!(r.iterate, 3);
    }

    #[test]
    fn cat_map_has_positive_entropy() {
        let model = AbelianModel::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        match quasi_unipotent_reduce(&model) {
            Err(Error::PositiveEntropy(_)) => {}
            other => panic!("expected positive entropy, got {other:?}"),
        }
    }
}
