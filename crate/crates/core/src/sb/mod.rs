//! Normal forms, standard bases and ideal operations.

mod basis;
mod dim;
mod nf;
mod ops;
pub(crate) mod sorted;

pub use basis::{
    groebner_basis, is_loc_whole_ring, loc_membership, standard_basis, LocalizedIdealHandle, SbMethod, SbOptions,
};
pub use dim::{dim_ideal, dim_leading_ideal_loc, dim_monomial_ideal, strongly_independent_sets, MonomialIdeal};
pub use nf::{audit, mora_weak_nf, WeakNF};
pub use ops::{
    eliminate, exact_divide, ideal_contains, ideal_intersection, ideal_is_subset, ideal_quotient,
    ideal_sum_is_whole_ring, ideals_equal, radical_membership, reduced_gb,
};
