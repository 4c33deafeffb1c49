//! Exact shadows and traces over integral group rings.
//!
//! The crate models the bicategory of group rings, right-free bimodules and
//! bimodule maps, with HH0 as its shadow. On top of that it computes traces of
//! 2-cells, Euler characteristics, base change and Morita invariance,
//! restriction and transfer, Reidemeister traces of self-maps of 2-complexes and
//! the components of the twisted cyclic nerve of a finite group.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bicat;
pub mod cli;
pub mod error;
pub mod fixed;
pub mod morita;
pub mod nerve;
pub mod ringoid;
pub mod trace;

pub use error::{Error, Result};
