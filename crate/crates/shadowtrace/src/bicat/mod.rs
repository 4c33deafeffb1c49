//! Rings, bimodules and bimodule maps, with shadows.

mod bimodule;
mod shadow;
mod twocell;

pub use bimodule::{hcompose, hcompose_all, Bimodule, RingObject};
pub use shadow::{shadow, shadow_map, theta, theta_vector, Coker, CokerGen, Label, ShadowElement, ShadowGroup, ShadowMap};
pub use twocell::TwoCell;
