//! Dual pairs and bicategorical traces.

mod dual;
mod traces;

pub(crate) use dual::block_repeat;
pub use dual::{canonical_dual, twisted_units_dual, DualPair};
pub use traces::{
    dual_twocell, eps_p, eta_q, euler_characteristic, hattori_stallings, mate, sandwich, trace, trace_eps, trace_eps_raw, trace_eta,
    trace_eta_raw, trace_left, trace_staged,
};
