//! Ringoids of free modules, their twisted bimodules and shadows.

mod compare;
mod shadow;
mod skeleton;

pub use compare::{
    action_trace, class_of_endomorphism, free_module, ground, transport_map, transport_square, EndomorphismClass, TransportReport,
};
pub use shadow::{ringoid_shadow, RingoidShadow, RingoidShadowElement};
pub use skeleton::{free_module_skeleton, Ringoid, RingoidBimodule};
