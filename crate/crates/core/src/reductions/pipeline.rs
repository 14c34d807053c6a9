//! Densest-k-subgraph estimates from an NFI solver run on the auxiliary graph.

use num_rational::Ratio;
use rayon::prelude::*;

use super::auxiliary::{dks_to_nfi, CutSolution, DksInstance};
use super::normalize::normalize_to_cut_solution;
use super::subsample::densest_k_subsample;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::interdiction::NfiSolver;

/// One budget level of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelOutcome {
    /// Target edge count `ℓ`; the NFI budget is `|E| - ℓ`.
    pub level: u64,
    pub budget: u64,
    /// Interdiction set returned by the solver.
    pub removed: Vec<usize>,
    /// Its normalized cut solution.
    pub cut_solution: CutSolution,
    /// Host vertices still carrying flow, i.e. the complement of the cut.
    pub flow_side: Vec<usize>,
    /// `ℓ k(k-1) / (v(v-1))` when `v = |flow_side| >= k`, otherwise `ℓ`.
    pub estimate: Ratio<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DksEstimate {
    /// Lower bound on the edge count of a densest `k`-subgraph.
    pub estimate: Ratio<u64>,
    /// Level attaining the estimate, if any level ran.
    pub best_level: Option<u64>,
    /// `k` host vertices, sorted.
    pub witness: Vec<usize>,
    /// Edges induced by the witness; at least `floor(estimate)`.
    pub witness_edges: u64,
    pub levels: Vec<LevelOutcome>,
}

fn induced_edges(h: &Multigraph, set: &[usize]) -> u64 {
    let mut side = vec![false; h.vertex_count()];
    for &v in set {
        side[v] = true;
    }
    h.induced_edge_count(&side) as u64
}

/// `k` vertices of `h` extending `set`: a subsample when `set` is too large,
/// the lowest missing ids otherwise.
fn witness_from(h: &Multigraph, set: &[usize], k: usize) -> Result<Vec<usize>> {
    if set.len() >= k {
        let mut local = vec![usize::MAX; h.vertex_count()];
        for (i, &v) in set.iter().enumerate() {
            local[v] = i;
        }
        let pairs: Vec<(usize, usize)> = h
            .edges()
            .iter()
            .filter(|e| local[e.a] != usize::MAX && local[e.b] != usize::MAX)
            .map(|e| (local[e.a], local[e.b]))
            .collect();
        let sub = Multigraph::new(set.len(), &pairs)?;
        let mut picked: Vec<usize> = densest_k_subsample(&sub, k)?.into_iter().map(|i| set[i]).collect();
        picked.sort_unstable();
        Ok(picked)
    } else {
        let mut in_set = vec![false; h.vertex_count()];
        for &v in set {
            in_set[v] = true;
        }
        let mut picked = set.to_vec();
        picked.extend((0..h.vertex_count()).filter(|&v| !in_set[v]).take(k - set.len()));
        picked.sort_unstable();
        Ok(picked)
    }
}

/// Runs `solver` on the auxiliary graph for every level
/// `ℓ = 1..=min(C(k,2), |E|)` and returns the best density-scaled estimate
/// together with a `k`-vertex witness certifying it.
pub fn dks_approx_pipeline(dks: &DksInstance, solver: &dyn NfiSolver) -> Result<DksEstimate> {
    let h = dks.graph();
    let k = dks.k();
    let m = h.edge_count() as u64;
    let kk = k as u64;
    let max_level = (kk * kk.saturating_sub(1) / 2).min(m);
    let aux = dks_to_nfi(dks);
    let levels: Vec<LevelOutcome> = (1..=max_level)
        .into_par_iter()
        .map(|level| {
            let budget = m - level;
            let inst = aux.instance(budget);
            let sol = solver.solve_nfi(&inst)?;
            let cost = inst.cost_of(&sol.removed);
            if cost > crate::ext::Fin(budget) {
                return Err(Error::Infeasible(format!(
                    "solver exceeded budget {budget} at level {level} (cost {cost})"
                )));
            }
            let cs = normalize_to_cut_solution(&aux, &sol.removed)?;
            let flow_side: Vec<usize> = (0..h.vertex_count()).filter(|&v| !cs.cut[v]).collect();
            let v = flow_side.len() as u64;
            let estimate = if v >= kk {
                Ratio::new(level * kk * (kk - 1), v * (v - 1))
            } else {
                Ratio::from_integer(level)
            };
            Ok(LevelOutcome { level, budget, removed: sol.removed, cut_solution: cs, flow_side, estimate })
        })
        .collect::<Result<_>>()?;

    let best = levels.iter().fold(None::<&LevelOutcome>, |best, l| match best {
        Some(b) if b.estimate >= l.estimate => Some(b),
        _ => Some(l),
    });
    let (estimate, best_level, witness) = match best {
        Some(l) => (l.estimate, Some(l.level), witness_from(h, &l.flow_side, k)?),
        None => (Ratio::from_integer(0), None, (0..k).collect()),
    };
    let witness_edges = induced_edges(h, &witness);
    debug_assert!(Ratio::from_integer(witness_edges) >= estimate.floor());
    Ok(DksEstimate { estimate, best_level, witness, witness_edges, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::AuxiliaryGraph;

    fn exact(inst: &crate::interdiction::NfiInstance) -> Result<crate::interdiction::InterdictionSolution> {
        crate::interdiction::nfi_exact_cutwise(inst)
    }

    #[test]
    fn k4_triangle() {
        let h = Multigraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let aux = AuxiliaryGraph::new(&h).unwrap();
        let solver = |inst: &crate::interdiction::NfiInstance| aux.solve_exact(inst.budget());
        let est = dks_approx_pipeline(&DksInstance::new(h, 3).unwrap(), &solver).unwrap();
        assert_eq!(est.estimate, Ratio::from_integer(3));
        assert_eq!(est.witness.len(), 3);
        assert_eq!(est.witness_edges, 3);
        assert_eq!(est.levels.len(), 3);
    }

    #[test]
    fn paw_host_with_generic_oracle() {
        let h = Multigraph::new(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let est = dks_approx_pipeline(&DksInstance::new(h, 3).unwrap(), &exact).unwrap();
        assert_eq!(est.estimate, Ratio::from_integer(3));
        assert_eq!(est.witness, vec![0, 1, 2]);
    }

    #[test]
    fn edgeless_host() {
        let h = Multigraph::new(3, &[]).unwrap();
        let est = dks_approx_pipeline(&DksInstance::new(h, 2).unwrap(), &exact).unwrap();
        assert_eq!(est.estimate, Ratio::from_integer(0));
        assert_eq!((est.best_level, est.witness.len(), est.witness_edges), (None, 2, 0));
    }

    #[test]
    fn k_one() {
        let h = Multigraph::new(3, &[(0, 1)]).unwrap();
        let est = dks_approx_pipeline(&DksInstance::new(h, 1).unwrap(), &exact).unwrap();
        assert_eq!(est.estimate, Ratio::from_integer(0));
        assert_eq!(est.witness, vec![0]);
    }

    #[test]
    fn over_budget_solver_rejected() {
        let h = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let aux = AuxiliaryGraph::new(&h).unwrap();
        let all_sinks: Vec<usize> = (0..2).map(|i| aux.sink_edge(i)).collect();
        let cheat = move |inst: &crate::interdiction::NfiInstance| crate::interdiction::evaluate(inst, &all_sinks);
        assert!(matches!(
            dks_approx_pipeline(&DksInstance::new(h, 2).unwrap(), &cheat),
            Err(Error::Infeasible(_))
        ));
    }
}
