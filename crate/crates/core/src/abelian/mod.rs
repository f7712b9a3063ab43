//! Automorphisms of `E^d` given by unimodular integer matrices, acting on
//! Néron–Severi classes modelled as symmetric matrices.

pub mod bounds;
pub mod dynamics;
pub mod intersection;
pub mod model;
pub mod positivity;
pub mod reduce;

pub use bounds::{midpoint_bound_applies, model_plov, unipotent_part, verify_bounds, BoundsConfig, DynReport};
pub use dynamics::{
    degree_sequence, delta_poly, monomial_intersections, nilpotent_data, plov, plov_monomial_gap, DegreeSequence,
    MonomialGap, MonomialIntersections, NilpotentData, Plov, UnipotentModel,
};
pub use intersection::{intersection_number, poly_intersection_number};
pub use model::{
    jordan_block, jordan_model, jordan_triples, ns_operator, ns_rank, pullback, random_unimodular, AbelianModel,
    NsClass,
};
pub use positivity::{
    positivity_polynomial_check, positivity_sequence, weakly_trivial, AmpleSampler, PolynomialCheck, PositivityConfig,
    PositivitySequence, PositivityStep,
};
pub use reduce::{characteristic_polynomial, quasi_unipotent_reduce, Reduction};
