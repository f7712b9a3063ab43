//! Exact linear algebra over `Q` and `Q[n]`. No floating point anywhere.

mod bareiss;
pub mod matrix;
pub mod poly;
pub mod polymatrix;

pub use matrix::{chain_product, RationalMatrix};
pub use poly::{binomial_poly, choose_poly, cyclotomic, Degree, RationalPoly};
pub use polymatrix::{polydet, PolyMatrix};

pub type Rational = num_rational::BigRational;

/// Exact rank over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}
