//! Fox calculus, twisted chain maps and the Reidemeister trace.

mod complex;
mod fox;
mod maps;
mod reidemeister;

pub use complex::{presentation_complex, EquivariantChainComplex, TwistedChainMap};
pub use fox::{fox_derivative, fox_derivative_images, fox_free};
pub use maps::{circle_self_map, divide_by_generator_minus_one, torus2_self_map, torus_group};
pub use reidemeister::{
    circle_fixed_points, coker_order, fixed_point_class_sum, lefschetz_via_homology, reidemeister_trace, torus_fixed_points, FixedPoint,
    ReidemeisterResult,
};
