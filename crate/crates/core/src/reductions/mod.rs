//! Reductions between NFI, budgeted minimum s-t cut and densest k-subgraph.

mod auxiliary;
mod bmstc;
mod normalize;
mod pipeline;
mod subsample;

pub use auxiliary::{cut_solution_from_cut, dks_to_nfi, AuxiliaryGraph, CutSolution, DksInstance, EdgeRole};
pub use bmstc::{
    bmstc_guess_count, bmstc_to_nfi, bmstc_via_nfi, cut_to_interdiction, interdiction_to_cut, nfi_via_bmstc,
    nfi_via_bmstc_with_limit, BmstcSolver, MAX_BMSTC_GUESSES,
};
pub use normalize::normalize_to_cut_solution;
pub use pipeline::{dks_approx_pipeline, DksEstimate, LevelOutcome};
pub use subsample::densest_k_subsample;
