//! Families `E_i : y² = x³ + A_i(t) x + B_i(t)` over Q(t): the excluded set
//! S, parameters of bounded height, exact trace counts over F_p, and the
//! exceptional-prime scan.

mod badset;
mod chebotarev;
mod scan;
mod spec;

pub use badset::{
    enumerate_f, enumerate_height, is_cm_j, s_membership, s_membership_with, BadReason,
    BadSetReason, CM_J_INVARIANTS, DEFAULT_ISOGENY_PRIME_BOUND,
};
pub use chebotarev::{chebotarev_count, chebotarev_table, TraceCountTable};
pub use scan::{
    reverify_entry, scan_exceptional, CellStatus, DensityRow, ScanCell, ScanConfig, ScanEntry,
    ScanReport, ThresholdNote, SCAN_SCHEMA,
};
pub use spec::FamilySpec;
