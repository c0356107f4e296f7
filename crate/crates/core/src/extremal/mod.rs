//! Extremal values: `s_{−∞}(n)` with certificates, harmonic frontiers and nets
//! for `s_{−1}(n)`, defect bounds and the summary tables.

mod frontier;
mod net;
mod reference;
mod sinf;
mod tables;

pub use frontier::{dominates_sorted, harmonic_exceeds, minimal_frontier, FrontierSet, COORD_CAP, FRONTIER_CAP};
pub use net::{certified_generating, s1_lower_bound, suggest_net, verify_net, verify_net_certified, Decider};
pub use reference::{KnownDiscrepancy, ReferenceValues};
pub use sinf::{s_inf, SInfResult};
pub use tables::{
    defect_bound, diff_table1, diff_table2, diff_weight_table, table1, table2, table2_reference_inputs, weight_table,
    DefectBound, Discrepancy, S1Cell, SInfCell, Table1Row, TableOptions,
};
