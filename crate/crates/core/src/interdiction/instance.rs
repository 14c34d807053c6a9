use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::flow::{max_flow, residual_flow};
use crate::graph::Multigraph;

/// A network flow interdiction instance. The same data describes a budgeted
/// minimum s-t cut instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfiInstance {
    graph: Multigraph,
    capacity: Vec<ExtNat>,
    cost: Vec<ExtNat>,
    s: usize,
    t: usize,
    budget: u64,
}

impl NfiInstance {
    pub fn new(
        graph: Multigraph,
        capacity: Vec<ExtNat>,
        cost: Vec<ExtNat>,
        s: usize,
        t: usize,
        budget: u64,
    ) -> Result<Self> {
        graph.check_weights(&capacity, "capacity")?;
        graph.check_weights(&cost, "cost")?;
        let n = graph.vertex_count();
        if s >= n || t >= n {
            return Err(Error::InvalidInstance(format!(
                "terminal outside 0..{n} (s = {s}, t = {t})"
            )));
        }
        if s == t {
            return Err(Error::InvalidInstance("s and t must differ".into()));
        }
        let doubly_infinite = graph
            .edges()
            .iter()
            .any(|e| capacity[e.id].is_inf() && cost[e.id].is_inf());
        if doubly_infinite && max_flow(&graph, &capacity, s, t)?.0.is_inf() {
            return Err(Error::InvalidInstance(
                "an edge with infinite capacity and infinite cost makes the max flow infinite".into(),
            ));
        }
        Ok(NfiInstance {
            graph,
            capacity,
            cost,
            s,
            t,
            budget,
        })
    }

    /// Convenience constructor from `(a, b, capacity, cost)` records.
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize, ExtNat, ExtNat)],
        s: usize,
        t: usize,
        budget: u64,
    ) -> Result<Self> {
        let pairs: Vec<_> = edges.iter().map(|&(a, b, _, _)| (a, b)).collect();
        let graph = Multigraph::new(n, &pairs)?;
        NfiInstance::new(
            graph,
            edges.iter().map(|e| e.2).collect(),
            edges.iter().map(|e| e.3).collect(),
            s,
            t,
            budget,
        )
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn capacity(&self) -> &[ExtNat] {
        &self.capacity
    }

    pub fn cost(&self) -> &[ExtNat] {
        &self.cost
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Same graph and weights under a different budget.
    pub fn with_budget(&self, budget: u64) -> NfiInstance {
        NfiInstance {
            budget,
            ..self.clone()
        }
    }

    /// Max flow of the intact graph.
    pub fn max_flow(&self) -> ExtNat {
        max_flow(&self.graph, &self.capacity, self.s, self.t)
            .expect("validated instance")
            .0
    }

    pub fn cost_of(&self, ids: &[usize]) -> ExtNat {
        ids.iter().map(|&id| self.cost[id]).sum()
    }

    pub fn capacity_of(&self, ids: &[usize]) -> ExtNat {
        ids.iter().map(|&id| self.capacity[id]).sum()
    }
}

/// An interdiction set with its cost and the max flow that survives it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterdictionSolution {
    /// Sorted, duplicate-free edge ids.
    pub removed: Vec<usize>,
    pub cost: ExtNat,
    pub residual: ExtNat,
    pub budget_feasible: bool,
}

impl InterdictionSolution {
    /// Deterministic preference: lower residual, then lower cost, then the
    /// lexicographically smaller edge-id list.
    pub fn preference(&self, other: &Self) -> Ordering {
        (self.residual, self.cost, &self.removed).cmp(&(other.residual, other.cost, &other.removed))
    }
}

/// Cost and residual max flow of removing `removed` from the instance.
///
/// Over-budget sets are reported with `budget_feasible = false`.
pub fn evaluate(inst: &NfiInstance, removed: &[usize]) -> Result<InterdictionSolution> {
    let mut ids = removed.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if let Some(&bad) = ids.iter().find(|&&id| !inst.graph.contains_edge(id)) {
        return Err(Error::MalformedInput(format!("unknown edge id {bad}")));
    }
    let cost = inst.cost_of(&ids);
    let residual = residual_flow(&inst.graph, &inst.capacity, inst.s, inst.t, &ids)?;
    Ok(InterdictionSolution {
        removed: ids,
        cost,
        residual,
        budget_feasible: cost <= ExtNat::Fin(inst.budget),
    })
}

/// Anything that produces interdiction sets for NFI instances.
pub trait NfiSolver: Sync {
    fn solve_nfi(&self, inst: &NfiInstance) -> Result<InterdictionSolution>;
}

impl<F> NfiSolver for F
where
    F: Fn(&NfiInstance) -> Result<InterdictionSolution> + Sync,
{
    fn solve_nfi(&self, inst: &NfiInstance) -> Result<InterdictionSolution> {
        self(inst)
    }
}
