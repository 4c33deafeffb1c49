//! Base change along ring maps, Morita equivalences, restriction and transfer.

mod base_change;
mod equivalence;
mod matrix_units;
mod ringhom;
mod transfer;

pub use base_change::{base_change_pair, left_base_change, BaseChange, Transversal, MAX_INDEX};
pub use equivalence::{base_change_morita, matrix_morita, twisted_unit_morita, MoritaWitness};
pub use matrix_units::MatrixUnitModel;
pub use ringhom::RingHom;
pub use transfer::{
    composite_of, forget_restriction, restricted_shadow_trace, restriction, restriction_transfer_composite, transfer, transfer_of,
    transfer_oracle, twisted_transfer, twisted_transfer_cell, twisted_transfer_of, twisted_transfer_oracle, CompositeOrder,
    CompositeReport,
};
