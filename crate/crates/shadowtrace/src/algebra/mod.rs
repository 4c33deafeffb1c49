//! Groups, group rings, integer Smith normal form and twisted conjugacy classes.

pub mod classes;
pub mod group;
pub mod hom;
pub mod ring;
pub mod snf;
pub mod word;

pub use classes::{twisted_conjugacy_classes, ClassLabel, TwistedClassSet};
pub use group::{Elem, Group, GroupModel};
pub use hom::GroupHom;
pub use ring::{RingElement, RingMatrix, Vector};
pub use snf::{smith_normal_form, IntMatrix, Snf};
pub use word::Word;
