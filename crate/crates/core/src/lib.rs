//! Solvers for network flow interdiction (NFI) and budgeted minimum s-t cut
//! (BMstC) on undirected multigraphs, with exact small-instance oracles, the
//! reductions between the two problems and the densest-k-subgraph machinery
//! built on top of them.

pub mod error;
pub mod ext;
pub mod flow;
pub mod generate;
pub mod gomory_hu;
pub mod graph;
pub mod instance_file;
pub mod interdiction;
pub mod reductions;

pub use error::{Error, Result};
pub use ext::ExtNat;
pub use flow::{max_flow, min_weight_st_cut};
pub use gomory_hu::{cut_cover, gomory_hu, CoverEntry, GomoryHuTree};
pub use graph::{contract_pairs, Multigraph, WeightedCut};
pub use interdiction::{
    bmstc_exact, evaluate, knapsack_cover_exact, knapsack_cover_greedy, nfi_approx, nfi_exact_cutwise,
    nfi_exact_subsets, InterdictionSolution, KnapsackCoverInstance, NfiInstance, NfiSolver,
};
