//! The `(1 + 1/k)(n - 1)`-approximation for NFI.
//!
//! Edges are ranked by efficiency `capacity / cost`. Every candidate split of
//! the edge set into a "kept" part `E_le` (a low-efficiency prefix under a
//! capacity threshold) and an "attacked" part `E_gt` is examined: a Gomory-Hu
//! tree of `E_le` decides which vertex pairs may be merged, the pairs are
//! contracted inside `E_gt`, and a minimum-cost s-t cut of the contracted
//! graph yields an interdiction set. The budget-feasible set with the
//! smallest residual flow wins.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Inf};
use crate::flow::FlowNetwork;
use crate::gomory_hu::gusfield;
use crate::graph::UnionFind;

use super::instance::{evaluate, InterdictionSolution, NfiInstance};
use super::knapsack::{cmp_ratio, for_each_subset_upto};

/// An edge of the normalized working instance.
#[derive(Debug, Clone, Copy)]
pub(crate) struct WorkEdge {
    pub(crate) id: usize,
    pub(crate) a: usize,
    pub(crate) b: usize,
    pub(crate) cap: u128,
    pub(crate) cost: u128,
}

/// Normalized view of an instance: zero-capacity edges dropped, zero-cost
/// edges set aside, costs above the budget clamped to `B + 1` and infinite
/// capacities replaced by a large finite value.
pub(crate) struct Work {
    n: usize,
    s: usize,
    t: usize,
    budget: u128,
    /// Sorted by nondecreasing efficiency, ties by edge id.
    pub(crate) edges: Vec<WorkEdge>,
    /// Zero-cost edges: removed for free and appended to every answer.
    pub(crate) free: Vec<usize>,
}

impl Work {
    pub(crate) fn new(inst: &NfiInstance) -> Work {
        let g = inst.graph();
        let (u, c) = (inst.capacity(), inst.cost());
        let budget = u128::from(inst.budget());
        let finite_total: u128 = g
            .edges()
            .iter()
            .filter_map(|e| u[e.id].finite())
            .map(u128::from)
            .sum();
        // Large enough that any solution within the approximation factor of a
        // finite optimum never relies on an infinite edge.
        let big_cap = finite_total
            .saturating_mul(2 * g.vertex_count() as u128)
            .saturating_add(1);
        let mut free = Vec::new();
        let mut edges = Vec::new();
        for e in g.edges() {
            if u[e.id].is_zero() {
                continue;
            }
            if c[e.id].is_zero() {
                free.push(e.id);
                continue;
            }
            let cap = u[e.id].finite().map_or(big_cap, u128::from);
            let cost = match c[e.id] {
                Fin(x) => u128::from(x).min(budget + 1),
                Inf => budget + 1,
            };
            edges.push(WorkEdge {
                id: e.id,
                a: e.a,
                b: e.b,
                cap,
                cost,
            });
        }
        edges.sort_by(|x, y| cmp_ratio(x.cap, x.cost, y.cap, y.cost).then(x.id.cmp(&y.id)));
        Work {
            n: g.vertex_count(),
            s: inst.s(),
            t: inst.t(),
            budget,
            edges,
            free,
        }
    }

    /// All distinct kept-edge sets, as membership flags over `self.edges`.
    fn kept_sets(&self, k: usize) -> Vec<Vec<bool>> {
        let m = self.edges.len();
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut out = Vec::new();
        let mut push = |set: &Vec<bool>| {
            if seen.insert(set.clone()) {
                out.push(set.clone());
            }
        };
        // The j = 0 iteration: nothing kept, i.e. a plain min-cost cut.
        push(&vec![false; m]);

        let thresholds: BTreeSet<u128> = self.edges.iter().map(|e| e.cap).collect();
        for &cap in &thresholds {
            let mut set = vec![false; m];
            for (j, e) in self.edges.iter().enumerate() {
                if e.cap <= cap {
                    set[j] = true;
                    push(&set);
                }
            }
        }

        if k > 1 {
            for_each_subset_upto(m, k, |guess| {
                if guess.is_empty() {
                    return;
                }
                let cap = guess.iter().map(|&i| self.edges[i].cap).min().unwrap();
                let mut set = vec![false; m];
                guess.iter().for_each(|&i| set[i] = true);
                push(&set);
                for (j, e) in self.edges.iter().enumerate() {
                    if !set[j] && e.cap <= cap {
                        set[j] = true;
                        push(&set);
                    }
                }
            });
        }
        out
    }

    /// Budget-feasible interdiction sets produced from one kept set.
    fn candidates(&self, kept: &[bool]) -> Vec<Vec<usize>> {
        let le: Vec<(usize, usize, u128)> = self
            .edges
            .iter()
            .zip(kept)
            .filter(|(_, &k)| k)
            .map(|(e, _)| (e.a, e.b, e.cap))
            .collect();
        let gt: Vec<&WorkEdge> = self.edges.iter().zip(kept).filter(|(_, &k)| !k).map(|(e, _)| e).collect();
        let tree = gusfield(self.n, &le);
        let kappas: BTreeSet<u128> = tree.iter().map(|&(_, _, k)| k).collect();
        let mut found = Vec::new();
        for &limit in &kappas {
            let mut uf = UnionFind::new(self.n);
            for &(a, b, k) in &tree {
                if k > limit {
                    uf.union(a, b);
                }
            }
            if uf.find(self.s) == uf.find(self.t) {
                continue;
            }
            let label = uf.labels();
            let classes = label.iter().max().map_or(0, |&x| x + 1);
            let net = FlowNetwork::new(classes, gt.iter().map(|e| (label[e.a], label[e.b], e.cost)));
            let (cost, side) = net.max_flow(label[self.s], label[self.t]);
            if cost > self.budget {
                continue;
            }
            let mut removed: Vec<usize> = gt
                .iter()
                .filter(|e| side[label[e.a]] != side[label[e.b]])
                .map(|e| e.id)
                .collect();
            removed.sort_unstable();
            found.push(removed);
        }
        found
    }
}

/// Approximate NFI with `k` guessed kept edges per cut.
///
/// Budget feasible, with residual at most `(1 + 1/k)(n - 1)` times optimal.
/// `k = 1` gives the `2(n - 1)` guarantee.
pub fn nfi_approx(inst: &NfiInstance, k: usize) -> Result<InterdictionSolution> {
    if k == 0 {
        return Err(Error::InvalidInstance("k must be at least 1".into()));
    }
    let work = Work::new(inst);
    let kept_sets = work.kept_sets(k);
    let candidates: BTreeSet<Vec<usize>> = kept_sets
        .par_iter()
        .flat_map_iter(|kept| work.candidates(kept))
        .collect();
    let mut candidates: Vec<Vec<usize>> = candidates.into_iter().collect();
    if candidates.is_empty() {
        candidates.push(Vec::new());
    }
    let solutions = candidates
        .into_par_iter()
        .map(|mut removed| {
            removed.extend_from_slice(&work.free);
            evaluate(inst, &removed)
        })
        .collect::<Result<Vec<_>>>()?;
    let best = solutions
        .into_iter()
        .min_by(|x, y| x.preference(y))
        .expect("at least one candidate");
    debug_assert!(best.cost <= ExtNat::Fin(inst.budget()));
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interdiction::nfi_exact_subsets;

    fn inst(n: usize, edges: &[(usize, usize, u64, u64)], s: usize, t: usize, b: u64) -> NfiInstance {
        let e: Vec<_> = edges.iter().map(|&(a, b, u, c)| (a, b, Fin(u), Fin(c))).collect();
        NfiInstance::from_edges(n, &e, s, t, b).unwrap()
    }

    #[test]
    fn zero_budget_keeps_everything() {
        let i = inst(3, &[(0, 1, 3, 1), (1, 2, 2, 1), (0, 2, 4, 2)], 0, 2, 0);
        let sol = nfi_approx(&i, 1).unwrap();
        assert!(sol.removed.is_empty());
        assert_eq!(sol.residual, i.max_flow());
    }

    #[test]
    fn affordable_cut_found() {
        let i = inst(4, &[(0, 1, 9, 1), (1, 3, 9, 3), (0, 2, 9, 1), (2, 3, 9, 3)], 0, 3, 2);
        let sol = nfi_approx(&i, 1).unwrap();
        assert_eq!(sol.residual, Fin(0));
        assert!(sol.budget_feasible);
    }

    #[test]
    fn two_parallel_edges() {
        let i = inst(2, &[(0, 1, 1, 1), (0, 1, 10, 1)], 0, 1, 1);
        let opt = nfi_exact_subsets(&i).unwrap().residual;
        assert_eq!(opt, Fin(1));
        let sol = nfi_approx(&i, 1).unwrap();
        assert!(sol.budget_feasible);
        assert!(sol.residual <= Fin(2));
        assert_eq!(sol.residual, Fin(1));
    }

    #[test]
    fn zero_cost_edges_always_removed() {
        let i = inst(3, &[(0, 1, 5, 0), (1, 2, 5, 4), (0, 2, 1, 1)], 0, 2, 1);
        let sol = nfi_approx(&i, 1).unwrap();
        assert!(sol.removed.contains(&0));
        assert_eq!(sol.residual, Fin(0));
    }

    #[test]
    fn zero_capacity_edges_never_removed() {
        let i = inst(2, &[(0, 1, 0, 1), (0, 1, 3, 1)], 0, 1, 2);
        let sol = nfi_approx(&i, 1).unwrap();
        assert_eq!(sol.removed, vec![1]);
        assert_eq!(sol.residual, Fin(0));
    }

    #[test]
    fn infinite_weights_respected() {
        let e = [(0, 1, Inf, Fin(2)), (1, 2, Inf, Fin(5)), (0, 2, Fin(3), Fin(1))];
        let i = NfiInstance::from_edges(3, &e, 0, 2, 2).unwrap();
        let sol = nfi_approx(&i, 1).unwrap();
        assert!(sol.budget_feasible);
        assert_eq!(sol.residual, Fin(3));
    }

    #[test]
    fn k_zero_rejected() {
        let i = inst(2, &[(0, 1, 1, 1)], 0, 1, 1);
        assert!(nfi_approx(&i, 0).is_err());
    }

    #[test]
    fn deterministic_across_runs() {
        let i = inst(
            5,
            &[(0, 1, 3, 2), (1, 4, 2, 1), (0, 2, 4, 3), (2, 3, 1, 1), (3, 4, 5, 2), (1, 2, 2, 2)],
            0,
            4,
            3,
        );
        let first = nfi_approx(&i, 2).unwrap();
        for _ in 0..5 {
            assert_eq!(nfi_approx(&i, 2).unwrap(), first);
        }
    }
}
