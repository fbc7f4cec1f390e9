//! Shared inputs for the criterion benches in `benches/`.

use bicay_core::havt::{self, HavtParams, Sign};
use bicay_core::{BiCayleyGraph, GroupParams};

/// The half-arc-transitive graph over G_{α,β,γ}(p) with the given m, k, l.
pub fn havt_graph(p: u64, alpha: u32, beta: u32, gamma: u32, m: u64, k: u64, l: u64) -> BiCayleyGraph {
    let group = GroupParams::new(p, alpha, beta, gamma).expect("valid group parameters");
    let params = HavtParams::new(group, m, k, l, Sign::Plus).expect("valid construction parameters");
    havt::construct_havt(params).expect("constructible").graph
}
