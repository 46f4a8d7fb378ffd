//! Closed-form quantities: effective thresholds, heights, isogeny-degree
//! bounds, the genus of X_0(N), and isogeny degree bookkeeping.

mod constants;
mod genus;
mod heights;
mod isogeny;

pub use constants::{
    c_of_g, c_prime, c_tilde, clears_product_threshold, clears_single_threshold, e2, e3,
    BoundReport, CThreshold, SurdValue, C0_ASSERTED, FAMILY_THRESHOLD, PRODUCT_CONSTANT,
};
pub use constants::C_of_g;
pub use genus::{gamma_zero_data, genus_x0, GammaZeroData};
pub use heights::{weil_height_ff, weil_height_int, weil_height_q, HeightValue, ModularHeight};
pub use isogeny::{
    is_biseparable_degree, isogeny_bound_ec_genus, isogeny_bound_ec_hmod,
    isogeny_bound_surface_genus, isogeny_bound_surface_hmod, mult_degree, tilde_degree,
};
