//! Network flow interdiction: instances, evaluation, the knapsack-cover
//! subroutines, the approximation algorithm and exact oracles.

pub(crate) mod approx;
mod exact;
mod instance;
mod knapsack;

pub use approx::nfi_approx;
pub use exact::{bmstc_exact, nfi_exact_cutwise, nfi_exact_subsets, MAX_CUTWISE_VERTICES, MAX_SUBSET_EDGES};
pub use instance::{evaluate, InterdictionSolution, NfiInstance, NfiSolver};
pub(crate) use knapsack::for_each_subset_upto;
pub use knapsack::{knapsack_cover_exact, knapsack_cover_greedy, KnapsackCoverInstance};

