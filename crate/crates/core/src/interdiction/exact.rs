//! Enumeration oracles for small instances.

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin};
use crate::graph::WeightedCut;

use super::instance::{evaluate, InterdictionSolution, NfiInstance};
use super::knapsack::min_cover;

/// Largest vertex count accepted by the cut-enumerating oracles.
pub const MAX_CUTWISE_VERTICES: usize = 20;
/// Largest edge count accepted by the subset-enumerating oracle.
pub const MAX_SUBSET_EDGES: usize = 16;

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::SizeGuard {
            what,
            actual: actual as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Calls `f` with the side of every s-t cut (`s` inside, `t` outside).
pub(crate) fn for_each_st_cut(n: usize, s: usize, t: usize, mut f: impl FnMut(&[bool])) {
    let free: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut side = vec![false; n];
    side[s] = true;
    for mask in 0u64..1 << free.len() {
        for (bit, &v) in free.iter().enumerate() {
            side[v] = mask >> bit & 1 == 1;
        }
        f(&side);
    }
}

/// Exact NFI by cut enumeration.
///
/// Some optimal interdiction set lies inside a single cut `δ(C)`. For every
/// s-t cut the edges left standing form a minimum-capacity subset of `δ(C)`
/// whose cost is at least `c(δ(C)) - B`, a Knapsack Cover solved exactly.
pub fn nfi_exact_cutwise(inst: &NfiInstance) -> Result<InterdictionSolution> {
    let n = inst.vertex_count();
    guard("vertex count", n, MAX_CUTWISE_VERTICES)?;
    let g = inst.graph();
    let budget = inst.budget();
    // Costs above the budget are equivalent to B + 1; infinite capacities to
    // anything above the finite total.
    let cost_of = |id: usize| match inst.cost()[id] {
        Fin(c) => c.min(budget.saturating_add(1)),
        ExtNat::Inf => budget.saturating_add(1),
    };
    let big: u128 = inst
        .capacity()
        .iter()
        .filter_map(|u| u.finite())
        .map(u128::from)
        .sum::<u128>()
        + 1;
    let value_of = |id: usize| inst.capacity()[id].finite().map_or(big, u128::from);

    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut failure = None;
    for_each_st_cut(n, inst.s(), inst.t(), |side| {
        if failure.is_some() {
            return;
        }
        let boundary = g.boundary(side);
        let total: u128 = boundary.iter().map(|&id| u128::from(cost_of(id))).sum();
        let need = total.saturating_sub(u128::from(budget));
        let (value, removed) = if need == 0 {
            (0, boundary)
        } else {
            let values: Vec<u128> = boundary.iter().map(|&id| value_of(id)).collect();
            let costs: Vec<u64> = boundary.iter().map(|&id| cost_of(id)).collect();
            match min_cover(&values, &costs, need as u64) {
                Err(e) => {
                    failure = Some(e);
                    return;
                }
                Ok(None) => unreachable!("the whole boundary always covers"),
                Ok(Some((value, keep))) => {
                    let mut kept = vec![false; boundary.len()];
                    keep.iter().for_each(|&i| kept[i] = true);
                    let removed = boundary
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !kept[*i])
                        .map(|(_, &id)| id)
                        .collect();
                    (value, removed)
                }
            }
        };
        if best.as_ref().is_none_or(|(bv, _)| value < *bv) {
            best = Some((value, removed));
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (_, removed) = best.expect("at least one s-t cut exists");
    evaluate(inst, &removed)
}

/// Exact NFI by enumerating every budget-feasible edge subset.
pub fn nfi_exact_subsets(inst: &NfiInstance) -> Result<InterdictionSolution> {
    let m = inst.edge_count();
    guard("edge count", m, MAX_SUBSET_EDGES)?;
    let ids: Vec<usize> = inst.graph().edges().iter().map(|e| e.id).collect();
    let mut best: Option<InterdictionSolution> = None;
    for mask in 0u32..1 << m {
        let removed: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
        if inst.cost_of(&removed) > Fin(inst.budget()) {
            continue;
        }
        let sol = evaluate(inst, &removed)?;
        if best.as_ref().is_none_or(|b| sol.preference(b).is_lt()) {
            best = Some(sol);
        }
    }
    Ok(best.expect("the empty set is always budget feasible"))
}

/// Exact budgeted minimum s-t cut: the least-capacity cut whose cost fits the
/// budget. The returned cut's weight is its capacity.
pub fn bmstc_exact(inst: &NfiInstance) -> Result<WeightedCut> {
    let n = inst.vertex_count();
    guard("vertex count", n, MAX_CUTWISE_VERTICES)?;
    let g = inst.graph();
    let mut best: Option<(ExtNat, Vec<bool>)> = None;
    for_each_st_cut(n, inst.s(), inst.t(), |side| {
        let boundary = g.boundary(side);
        if inst.cost_of(&boundary) > Fin(inst.budget()) {
            return;
        }
        let cap = inst.capacity_of(&boundary);
        if best.as_ref().is_none_or(|(bc, _)| cap < *bc) {
            best = Some((cap, side.to_vec()));
        }
    });
    match best {
        Some((_, side)) => Ok(WeightedCut::new(g, inst.capacity(), side)),
        None => Err(Error::Infeasible(format!(
            "no s-t cut costs at most the budget {}",
            inst.budget()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Inf;

    fn inst(n: usize, edges: &[(usize, usize, u64, u64)], s: usize, t: usize, b: u64) -> NfiInstance {
        let e: Vec<_> = edges.iter().map(|&(a, b, u, c)| (a, b, Fin(u), Fin(c))).collect();
        NfiInstance::from_edges(n, &e, s, t, b).unwrap()
    }

    #[test]
    fn affordable_cut_gives_zero() {
        let i = inst(3, &[(0, 1, 4, 1), (1, 2, 4, 5), (0, 2, 1, 1)], 0, 2, 2);
        assert_eq!(nfi_exact_cutwise(&i).unwrap().residual, Fin(0));
        assert_eq!(nfi_exact_subsets(&i).unwrap().residual, Fin(0));
    }

    #[test]
    fn zero_budget_removes_nothing() {
        let i = inst(3, &[(0, 1, 4, 1), (1, 2, 3, 5)], 0, 2, 0);
        let a = nfi_exact_cutwise(&i).unwrap();
        let b = nfi_exact_subsets(&i).unwrap();
        assert!(a.removed.is_empty() && b.removed.is_empty());
        assert_eq!(a.residual, Fin(3));
    }

    #[test]
    fn no_edges_between_terminals() {
        let i = inst(3, &[(0, 1, 2, 2)], 0, 2, 0);
        let sol = nfi_exact_subsets(&i).unwrap();
        assert_eq!(sol.residual, Fin(0));
        assert!(sol.removed.is_empty());
    }

    #[test]
    fn single_edge_within_budget() {
        let i = inst(2, &[(0, 1, 9, 3)], 0, 1, 3);
        assert_eq!(nfi_exact_subsets(&i).unwrap().removed, vec![0]);
        assert_eq!(nfi_exact_cutwise(&i).unwrap().residual, Fin(0));
    }

    #[test]
    fn two_parallel_edges_opt_is_one() {
        let i = inst(2, &[(0, 1, 1, 1), (0, 1, 10, 1)], 0, 1, 1);
        let sol = nfi_exact_subsets(&i).unwrap();
        assert_eq!(sol.residual, Fin(1));
        assert_eq!(sol.removed, vec![1]);
        assert_eq!(nfi_exact_cutwise(&i).unwrap().residual, Fin(1));
    }

    #[test]
    fn infinite_entries() {
        // s=0,t=2; uncuttable inf-capacity path through 1 unless 0-1 removed.
        let e = [(0, 1, Inf, Fin(2)), (1, 2, Inf, Fin(5)), (0, 2, Fin(3), Fin(1))];
        let i = NfiInstance::from_edges(3, &e, 0, 2, 2).unwrap();
        assert_eq!(nfi_exact_cutwise(&i).unwrap().residual, Fin(3));
        assert_eq!(nfi_exact_subsets(&i).unwrap().residual, Fin(3));
        let i1 = i.with_budget(1);
        assert_eq!(nfi_exact_cutwise(&i1).unwrap().residual, Inf);
        assert_eq!(nfi_exact_subsets(&i1).unwrap().residual, Inf);
    }

    #[test]
    fn bmstc_single_edge() {
        let ok = inst(2, &[(0, 1, 7, 2)], 0, 1, 2);
        let cut = bmstc_exact(&ok).unwrap();
        assert_eq!(cut.vertices(), vec![0]);
        assert_eq!(cut.weight, Fin(7));
        let tight = inst(2, &[(0, 1, 7, 3)], 0, 1, 2);
        assert!(matches!(bmstc_exact(&tight), Err(Error::Infeasible(_))));
    }

    #[test]
    fn guards_are_errors() {
        let edges: Vec<_> = (0..17).map(|_| (0, 1, 1, 1)).collect();
        let wide = inst(2, &edges, 0, 1, 3);
        assert!(matches!(nfi_exact_subsets(&wide), Err(Error::SizeGuard { .. })));
        let path: Vec<_> = (0..21).map(|v| (v, v + 1, 1, 1)).collect();
        let long = inst(22, &path, 0, 21, 1);
        assert!(matches!(nfi_exact_cutwise(&long), Err(Error::SizeGuard { .. })));
        assert!(matches!(bmstc_exact(&long), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn cut_enumeration_count() {
        let mut count = 0;
        for_each_st_cut(5, 1, 3, |side| {
            assert!(side[1] && !side[3]);
            count += 1;
        });
        assert_eq!(count, 8);
    }
}
