//! Short Weierstrass curves over Q, F_p, Q(t) and F_p(t): invariants,
//! specialization, twists, point counting and Frobenius sampling.
//!
//! Only characteristic > 3 is supported anywhere a point count is taken.

mod count;
mod frobenius;
mod weierstrass;

pub use count::{
    bsgs_count, count_points, count_points_bsgs, count_points_exhaustive, exhaustive_count,
    hasse_bound, isqrt, trace_with_table, FrobeniusDatum, EXHAUSTIVE_LIMIT,
};
pub use frobenius::{
    function_field_samples, integral_trace, residue, samples_from_traces, trace_samples,
    trace_table, Place, SquareTables, TraceSample,
};
pub use weierstrass::{
    discriminant_of, j_invariant_of, CurveBase, DomainTag, IntegralModel, PolyCurve,
    WeierstrassCurve,
};
