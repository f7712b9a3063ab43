//! Top intersection numbers of divisors on `E^d` by polarizing the
//! determinant:
//!
//! `D_1 ⋯ D_d = Σ_{∅≠S⊆[d]} (-1)^{d-|S|} det(Σ_{i∈S} M_i)`,
//!
//! which is `d!` times the mixed discriminant, so `D^d = d!·det(M)`.

use std::ops::{Add, Sub};

use num_traits::Zero;

use super::model::NsClass;
use crate::error::{Error, Result};
use crate::linalg::{polydet, PolyMatrix, Rational, RationalPoly};

fn polarize<C, R>(
    classes: &[C],
    zero: impl Fn() -> C,
    add: impl Fn(&C, &C) -> Result<C>,
    det: impl Fn(&C) -> Result<R>,
) -> Result<R>
where
    R: Zero + Add<Output = R> + Sub<Output = R>,
{
    let d = classes.len();
    let mut total = R::zero();
    for mask in 1u32..(1 << d) {
        let mut sum = zero();
        for (i, c) in classes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = add(&sum, c)?;
            }
        }
        let value = det(&sum)?;
        if (d - mask.count_ones() as usize).is_multiple_of(2) {
            total = total + value;
        } else {
            total = total - value;
        }
    }
    Ok(total)
}

/// `D_1 ⋯ D_d` for exactly `d` classes on `E^d`.
pub fn intersection_number(classes: &[NsClass]) -> Result<Rational> {
    let d = check_arity(classes.len(), classes.iter().map(NsClass::dim))?;
    polarize(classes, || NsClass::zero(d), |a, b| a.add(b), |m| m.matrix().det())
}

/// Intersection number of classes whose entries are polynomials in one
/// variable; exact in `Q[n]`.
pub fn poly_intersection_number(classes: &[PolyMatrix]) -> Result<RationalPoly> {
    let d = check_arity(classes.len(), classes.iter().map(PolyMatrix::size))?;
    polarize(classes, || PolyMatrix::zeros(d), |a, b| a.add(b), |m| Ok(polydet(m)))
}

fn check_arity(count: usize, mut dims: impl Iterator<Item = usize>) -> Result<usize> {
    let Some(d) = dims.next() else {
        return Err(Error::invalid("intersection of zero classes"));
    };
    if dims.any(|x| x != d) {
        return Err(Error::invalid("classes of different dimensions"));
    }
    if count != d {
        return Err(Error::invalid(format!("need exactly d = {d} classes, got {count}")));
    }
    if d > 20 {
        return Err(Error::range("dimension too large for polarization"));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::model::jordan_block;
    use crate::abelian::model::pullback;

    fn c(rows: &[Vec<i64>]) -> NsClass {
        NsClass::from_i64(rows).unwrap()
    }

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    #[test]
    fn self_intersection_is_d_factorial_det() {
        let i2 = NsClass::identity(2);
        assert_eq!(intersection_number(&[i2.clone(), i2]).unwrap(), q(2));
        let m = c(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let det = m.matrix().det().unwrap();
        assert_eq!(intersection_number(&[m.clone(), m.clone(), m]).unwrap(), det * q(6));
    }

    #[test]
    fn fibre_classes_meet_once() {
        // On E×E the fibres f1 = {pt}×E and f2 = E×{pt} satisfy f1·f2 = 1,
        // f1² = f2² = 0.
        let f1 = c(&[vec![1, 0], vec![0, 0]]);
        let f2 = c(&[vec![0, 0], vec![0, 1]]);
        assert_eq!(intersection_number(&[f1.clone(), f2.clone()]).unwrap(), q(1));
        assert_eq!(intersection_number(&[f1.clone(), f1]).unwrap(), q(0));
        assert_eq!(intersection_number(&[f2.clone(), f2]).unwrap(), q(0));
    }

    #[test]
    fn diagonal_class_on_e_times_e() {
        // The diagonal Δ has class f1 + f2 - δ with δ the off-diagonal part;
        // Δ² = 0 and Δ·f_i = 1. With M_Δ = [[1,-1],[-1,1]]:
        let delta = c(&[vec![1, -1], vec![-1, 1]]);
        let f1 = c(&[vec![1, 0], vec![0, 0]]);
        assert_eq!(intersection_number(&[delta.clone(), delta.clone()]).unwrap(), q(0));
        assert_eq!(intersection_number(&[delta, f1]).unwrap(), q(1));
    }

    #[test]
    fn zero_argument_vanishes() {
        for d in 1..=4 {
            let mut args = vec![NsClass::identity(d); d];
            args[d - 1] = NsClass::zero(d);
            assert_eq!(intersection_number(&args).unwrap(), q(0));
        }
    }

    #[test]
    fn arity_is_checked() {
        let i = NsClass::identity(3);
        assert!(intersection_number(&[i.clone(), i]).is_err());
        assert!(intersection_number(&[]).is_err());
    }

    #[test]
    fn projection_formula_j12() {
        let a = jordan_block(2);
        let i = NsClass::identity(2);
        let p = pullback(&a, &i).unwrap();
        assert_eq!(intersection_number(&[p.clone(), p]).unwrap(), q(2));
    }

    #[test]
    fn poly_route_matches_evaluation() {
        let m1 = PolyMatrix::new(vec![
            vec![RationalPoly::from_integers(&[1, 1]), RationalPoly::from_integers(&[0, 1])],
            vec![RationalPoly::from_integers(&[0, 1]), RationalPoly::from_integers(&[2, 0, 1])],
        ])
        .unwrap();
        let m2 = PolyMatrix::constant(NsClass::identity(2).matrix()).unwrap();
        let p = poly_intersection_number(&[m1.clone(), m2.clone()]).unwrap();
        for x in -3..5 {
            let a = NsClass::new(m1.eval_int(x)).unwrap();
            let b = NsClass::new(m2.eval_int(x)).unwrap();
            assert_eq!(p.eval_int(x), intersection_number(&[a, b]).unwrap());
        }
    }
}
