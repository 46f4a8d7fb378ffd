//! Finite group theory in GL_2(Z/ℓZ) and the determinant locus
//! Δ_ℓ = {(M_1, ..., M_n) : det M_1 = ... = det M_n}.

mod closure;
mod counts;
mod mat;
mod mw;
mod subgroups;

pub use closure::{closure, DetLocusElement, SubgroupClosure, DEFAULT_CLOSURE_CAP};
pub use counts::{
    class_count_product, count_by_trace_det, det_fiber_size, trace_det_closed_form, TraceDetTable,
};
pub use mat::Mat2Mod;
pub use mw::{verify_mw_instance, DetVariant, MwOutcome, MwWitness};
pub use subgroups::{
    borel, exceptional_subgroup, fiber_product_generators, generate, gl2_generators,
    nonsplit_cartan_normalizer, primitive_root, sl2_generators, split_cartan_normalizer,
    twisted_graph_generators, ExceptionalKind,
};
