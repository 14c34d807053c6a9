//! NFI and budgeted minimum s-t cut (BMstC) reduce to each other.
//!
//! BMstC to NFI doubles every edge: a copy that costs what the original does
//! but has infinite capacity, and an unremovable copy carrying the capacity.
//! NFI to BMstC guesses the kept edges of largest capacity and the least
//! efficient removed edge, then prices edges so that a cheap cut in the
//! BMstC instance is an interdiction set.

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Inf};
use crate::flow::min_weight_st_cut;
use crate::graph::{Multigraph, WeightedCut};
use crate::interdiction::approx::Work;
use crate::interdiction::{evaluate, for_each_subset_upto, InterdictionSolution, NfiInstance, NfiSolver};

/// Anything that solves budgeted minimum s-t cut: a cut whose cost is within
/// the budget, with weight equal to its capacity.
pub trait BmstcSolver: Sync {
    fn solve_bmstc(&self, inst: &NfiInstance) -> Result<WeightedCut>;
}

impl<F> BmstcSolver for F
where
    F: Fn(&NfiInstance) -> Result<WeightedCut> + Sync,
{
    fn solve_bmstc(&self, inst: &NfiInstance) -> Result<WeightedCut> {
        self(inst)
    }
}

/// Builds the NFI instance on `2m` edges: edge `2i` is the removable copy of
/// input edge `i` (its cost, infinite capacity), edge `2i + 1` the capacity
/// copy (infinite cost, its capacity).
///
/// Infinite input costs become `B + 1` on the removable copy, and the
/// capacity copy of an infinite-capacity edge costs `B + 1` instead of
/// infinity, so that no edge is infinite in both weights. Neither copy is
/// affordable either way.
pub fn bmstc_to_nfi(inst: &NfiInstance) -> NfiInstance {
    let g = inst.graph();
    let over = Fin(inst.budget().saturating_add(1));
    let mut pairs = Vec::with_capacity(2 * g.edge_count());
    let mut capacity = Vec::with_capacity(2 * g.edge_count());
    let mut cost = Vec::with_capacity(2 * g.edge_count());
    for e in g.edges() {
        pairs.push((e.a, e.b));
        capacity.push(Inf);
        cost.push(if inst.cost()[e.id].is_inf() { over } else { inst.cost()[e.id] });
        pairs.push((e.a, e.b));
        capacity.push(inst.capacity()[e.id]);
        cost.push(if inst.capacity()[e.id].is_inf() { over } else { Inf });
    }
    let graph = Multigraph::new(g.vertex_count(), &pairs).expect("copies of a valid graph");
    NfiInstance::new(graph, capacity, cost, inst.s(), inst.t(), inst.budget())
        .expect("no copy is infinite in both weights")
}

/// The interdiction set matched with cut `side`: the removable copies of
/// every edge crossing it.
pub fn cut_to_interdiction(bmstc: &NfiInstance, side: &[bool]) -> Vec<usize> {
    let mut position = vec![0; bmstc.graph().id_bound()];
    for (i, e) in bmstc.graph().edges().iter().enumerate() {
        position[e.id] = i;
    }
    bmstc.graph().boundary(side).into_iter().map(|id| 2 * position[id]).collect()
}

/// Recovers a BMstC cut from an interdiction set of the doubled instance: the
/// canonical minimum cut left after removal.
///
/// When the residual is infinite the cut is read off the removable copies
/// instead: the vertices `s` reaches through copies not in `removed`. If
/// those reach `t`, no cut is paid for by `removed`.
pub fn interdiction_to_cut(bmstc: &NfiInstance, doubled: &NfiInstance, removed: &[usize]) -> Result<WeightedCut> {
    let view = doubled.graph().without_edges(removed);
    let cut = min_weight_st_cut(&view, doubled.capacity(), doubled.s(), doubled.t())?;
    if !cut.weight.is_inf() {
        return Ok(WeightedCut::new(bmstc.graph(), bmstc.capacity(), cut.side));
    }
    let comp = view.filter_edges(|e| e.id % 2 == 0).components();
    let side: Vec<bool> = comp.iter().map(|&c| c == comp[doubled.s()]).collect();
    if side[doubled.t()] {
        return Err(Error::Infeasible("the removed copies pay for no s-t cut".into()));
    }
    Ok(WeightedCut::new(bmstc.graph(), bmstc.capacity(), side))
}

/// Solves BMstC with an NFI solver through [`bmstc_to_nfi`].
pub fn bmstc_via_nfi(inst: &NfiInstance, solver: &dyn NfiSolver) -> Result<WeightedCut> {
    let doubled = bmstc_to_nfi(inst);
    let sol = solver.solve_nfi(&doubled)?;
    if !sol.budget_feasible {
        return Err(Error::Infeasible("inner solver returned an over-budget set".into()));
    }
    interdiction_to_cut(inst, &doubled, &sol.removed)
}

/// Default cap on the number of `(S, f)` guesses in [`nfi_via_bmstc`].
pub const MAX_BMSTC_GUESSES: u128 = 1_000_000;

/// Exact number of `(S, f)` guesses over `m` edges: kept sets of size at most
/// `k` and one removed edge outside the set.
#[allow(clippy::manual_checked_ops)]
pub fn bmstc_guess_count(m: usize, k: usize) -> u128 {
    let m = m as u128;
    let mut binom = 1u128;
    let mut total = 0u128;
    for i in 0..=k as u128 {
        if i > m {
            break;
        }
        if i > 0 {
            binom = binom * (m - i + 1) / i;
        }
        total = total.saturating_add(binom.saturating_mul(m - i));
    }
    total
}

/// Solves NFI with a BMstC solver; `(1 + 1/k)`-approximate when the inner
/// solver is exact.
pub fn nfi_via_bmstc(inst: &NfiInstance, solver: &dyn BmstcSolver, k: usize) -> Result<InterdictionSolution> {
    nfi_via_bmstc_with_limit(inst, solver, k, Some(MAX_BMSTC_GUESSES))
}

/// [`nfi_via_bmstc`] with an explicit guess limit (`None` disables it).
pub fn nfi_via_bmstc_with_limit(
    inst: &NfiInstance,
    solver: &dyn BmstcSolver,
    k: usize,
    limit: Option<u128>,
) -> Result<InterdictionSolution> {
    if k == 0 {
        return Err(Error::InvalidInstance("k must be at least 1".into()));
    }
    let work = Work::new(inst);
    let m = work.edges.len();
    let guesses = bmstc_guess_count(m, k);
    if let Some(limit) = limit {
        if guesses > limit {
            return Err(Error::SizeGuard {
                what: "BMstC guess count",
                actual: guesses,
                limit,
            });
        }
    }
    let g = inst.graph();
    let mut best = evaluate(inst, &work.free)?;
    let mut in_guess = vec![false; m];
    let mut failure = None;
    for_each_subset_upto(m, k, |guess| {
        if failure.is_some() {
            return;
        }
        guess.iter().for_each(|&i| in_guess[i] = true);
        for f in (0..m).filter(|&f| !in_guess[f]) {
            if work.edges[f].cost > u128::from(inst.budget()) {
                continue;
            }
            // Kept edges cost nothing; attacked edges carry no capacity.
            let mut cap = vec![ExtNat::ZERO; g.id_bound()];
            let mut cost = vec![ExtNat::ZERO; g.id_bound()];
            for (rank, e) in work.edges.iter().enumerate() {
                if in_guess[rank] || rank < f {
                    cap[e.id] = inst.capacity()[e.id];
                } else {
                    cost[e.id] = inst.cost()[e.id];
                }
            }
            let priced = NfiInstance::new(g.clone(), cap, cost, inst.s(), inst.t(), inst.budget())
                .expect("no edge is infinite in both weights");
            let cut = match solver.solve_bmstc(&priced) {
                Ok(cut) => cut,
                Err(Error::Infeasible(_)) => continue,
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            };
            let mut removed: Vec<usize> = work
                .edges
                .iter()
                .enumerate()
                .filter(|&(rank, e)| !in_guess[rank] && rank >= f && cut.side[e.a] != cut.side[e.b])
                .map(|(_, e)| e.id)
                .collect();
            removed.extend_from_slice(&work.free);
            match evaluate(inst, &removed) {
                Ok(sol) if sol.budget_feasible && sol.preference(&best).is_lt() => best = sol,
                Ok(_) => {}
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        guess.iter().for_each(|&i| in_guess[i] = false);
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interdiction::{bmstc_exact, nfi_exact_cutwise, nfi_exact_subsets};

    fn inst(n: usize, edges: &[(usize, usize, u64, u64)], s: usize, t: usize, b: u64) -> NfiInstance {
        let e: Vec<_> = edges.iter().map(|&(a, b, u, c)| (a, b, Fin(u), Fin(c))).collect();
        NfiInstance::from_edges(n, &e, s, t, b).unwrap()
    }

    #[test]
    fn single_edge_doubling() {
        let b = inst(2, &[(0, 1, 4, 2)], 0, 1, 2);
        let d = bmstc_to_nfi(&b);
        assert_eq!(d.edge_count(), 2);
        assert_eq!((d.capacity()[0], d.cost()[0]), (Inf, Fin(2)));
        assert_eq!((d.capacity()[1], d.cost()[1]), (Fin(4), Inf));
        let sol = evaluate(&d, &[0]).unwrap();
        assert_eq!(sol.residual, Fin(4));
        assert!(sol.budget_feasible);
        let cut = interdiction_to_cut(&b, &d, &[0]).unwrap();
        assert_eq!(cut.weight, bmstc_exact(&b).unwrap().weight);
    }

    #[test]
    fn unaffordable_cuts_leave_infinite_flow() {
        let b = inst(3, &[(0, 1, 4, 3), (1, 2, 1, 3)], 0, 2, 2);
        assert!(bmstc_exact(&b).is_err());
        let d = bmstc_to_nfi(&b);
        assert_eq!(d.max_flow(), Inf);
        assert_eq!(nfi_exact_cutwise(&d).unwrap().residual, Inf);
        assert!(matches!(bmstc_via_nfi(&b, &nfi_exact_cutwise), Err(Error::Infeasible(_))));
    }

    #[test]
    fn guess_count_formula() {
        // m * sum_{i<=k} C(m-1, i), the bound's exact form.
        for m in 0..7usize {
            for k in 1..4usize {
                let mut brute = 0u128;
                for_each_subset_upto(m, k, |s| brute += (m - s.len()) as u128);
                assert_eq!(bmstc_guess_count(m, k), brute, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn zero_budget_removes_nothing() {
        let i = inst(3, &[(0, 1, 3, 1), (1, 2, 2, 1)], 0, 2, 0);
        let sol = nfi_via_bmstc(&i, &bmstc_exact, 1).unwrap();
        assert!(sol.removed.is_empty());
        assert_eq!(sol.residual, Fin(2));
    }

    #[test]
    fn two_parallel_edges() {
        let i = inst(2, &[(0, 1, 1, 1), (0, 1, 10, 1)], 0, 1, 1);
        let opt = nfi_exact_subsets(&i).unwrap().residual;
        assert_eq!(opt, Fin(1));
        let sol = nfi_via_bmstc(&i, &bmstc_exact, 1).unwrap();
        assert!(sol.budget_feasible);
        assert!(sol.residual <= Fin(2));
    }

    #[test]
    fn guard_trips() {
        let edges: Vec<_> = (0..30).map(|_| (0, 1, 1, 1)).collect();
        let i = inst(2, &edges, 0, 1, 1);
        assert!(matches!(
            nfi_via_bmstc_with_limit(&i, &bmstc_exact, 2, Some(100)),
            Err(Error::SizeGuard { .. })
        ));
    }
}
