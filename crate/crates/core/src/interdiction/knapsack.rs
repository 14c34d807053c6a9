//! Knapsack Cover: pick a minimum-value item set whose cost reaches a threshold.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Items with values and costs, plus the cost threshold to reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackCoverInstance {
    pub values: Vec<u64>,
    pub costs: Vec<u64>,
    pub threshold: u64,
}

impl KnapsackCoverInstance {
    pub fn new(values: Vec<u64>, costs: Vec<u64>, threshold: u64) -> Result<Self> {
        if values.len() != costs.len() {
            return Err(Error::MalformedInput(format!(
                "{} values but {} costs",
                values.len(),
                costs.len()
            )));
        }
        Ok(KnapsackCoverInstance {
            values,
            costs,
            threshold,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_feasible(&self) -> bool {
        self.costs.iter().map(|&c| u128::from(c)).sum::<u128>() >= u128::from(self.threshold)
    }

    pub fn value_of(&self, items: &[usize]) -> u128 {
        items.iter().map(|&i| u128::from(self.values[i])).sum()
    }

    pub fn cost_of(&self, items: &[usize]) -> u128 {
        items.iter().map(|&i| u128::from(self.costs[i])).sum()
    }

    fn require_feasible(&self) -> Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(Error::Infeasible(format!(
                "total item cost is below the threshold {}",
                self.threshold
            )))
        }
    }
}

/// Compares `a / b` with `c / d` exactly, for positive denominators.
pub(crate) fn cmp_ratio(a: u128, b: u128, c: u128, d: u128) -> Ordering {
    debug_assert!(b > 0 && d > 0);
    let (qa, ra) = (a / b, a % b);
    let (qc, rc) = (c / d, c % d);
    match qa.cmp(&qc) {
        Ordering::Equal => {}
        other => return other,
    }
    match (ra == 0, rc == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        // ra/b vs rc/d  <=>  d/rc vs b/ra, reversed.
        (false, false) => cmp_ratio(d, rc, b, ra),
    }
}

/// Visits every subset of `0..m` with at most `k` elements, in
/// lexicographic order of the sorted index lists.
pub(crate) fn for_each_subset_upto(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        f(cur);
        if cur.len() == k {
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, f);
            cur.pop();
        }
    }
    rec(0, m, k, &mut Vec::new(), &mut f);
}

/// Guessing greedy: for every set `S` of at most `k` items, keep `S`, admit
/// the other items whose value does not exceed the smallest value in `S`, and
/// add them by increasing efficiency `value / cost` until the threshold is
/// met. The cheapest resulting cover wins (ties: smaller index list).
///
/// With `k = 1` this is the classic 2-approximation; in general the result is
/// within a factor `1 + 1/k` of optimal.
pub fn knapsack_cover_greedy(kc: &KnapsackCoverInstance, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::MalformedInput("number of guesses must be at least 1".into()));
    }
    kc.require_feasible()?;
    let need = u128::from(kc.threshold);
    // Zero-cost items never help reach the threshold.
    let mut order: Vec<usize> = (0..kc.len()).filter(|&i| kc.costs[i] > 0).collect();
    order.sort_by(|&x, &y| {
        cmp_ratio(
            kc.values[x].into(),
            kc.costs[x].into(),
            kc.values[y].into(),
            kc.costs[y].into(),
        )
        .then(x.cmp(&y))
    });

    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut in_guess = vec![false; kc.len()];
    for_each_subset_upto(kc.len(), k, |guess| {
        let mut chosen = guess.to_vec();
        let mut covered = kc.cost_of(guess);
        if covered < need {
            let cap = guess.iter().map(|&i| kc.values[i]).min().unwrap_or(u64::MAX);
            guess.iter().for_each(|&i| in_guess[i] = true);
            for &i in &order {
                if covered >= need {
                    break;
                }
                if !in_guess[i] && kc.values[i] <= cap {
                    chosen.push(i);
                    covered += u128::from(kc.costs[i]);
                }
            }
            guess.iter().for_each(|&i| in_guess[i] = false);
        }
        if covered >= need {
            chosen.sort_unstable();
            let value = kc.value_of(&chosen);
            let better = match &best {
                None => true,
                Some((bv, bs)) => (value, &chosen) < (*bv, bs),
            };
            if better {
                best = Some((value, chosen));
            }
        }
    });
    Ok(best.expect("feasible instance always yields a cover").1)
}

/// Cells allowed in the exact dynamic program.
const MAX_DP_CELLS: u128 = 50_000_000;

/// Minimum-value cover by dynamic programming over cost capped at the
/// threshold. Values are `u128` so callers can encode "infinite" items.
/// Returns `None` when no cover exists.
pub(crate) fn min_cover(values: &[u128], costs: &[u64], threshold: u64) -> Result<Option<(u128, Vec<usize>)>> {
    let m = values.len();
    let width = threshold as usize + 1;
    let cells = (m as u128 + 1) * width as u128;
    if cells > MAX_DP_CELLS {
        return Err(Error::SizeGuard {
            what: "knapsack table cells",
            actual: cells,
            limit: MAX_DP_CELLS,
        });
    }
    const UNREACHED: u128 = u128::MAX;
    // table[i][c]: least value using items 0..i reaching capped cost c.
    let mut table = vec![vec![UNREACHED; width]; m + 1];
    table[0][0] = 0;
    for i in 0..m {
        let (prev, next) = table.split_at_mut(i + 1);
        let (prev, next) = (&prev[i], &mut next[0]);
        next.copy_from_slice(prev);
        for (c, &here) in prev.iter().enumerate() {
            if here == UNREACHED {
                continue;
            }
            let to = (c as u128 + u128::from(costs[i])).min(u128::from(threshold)) as usize;
            let v = here.saturating_add(values[i]);
            if v < next[to] {
                next[to] = v;
            }
        }
    }
    let best = table[m][width - 1];
    if best == UNREACHED {
        return Ok(None);
    }
    // Walk back, preferring to skip items when that keeps the optimum.
    let mut items = Vec::new();
    let mut c = width - 1;
    for i in (0..m).rev() {
        if table[i][c] == table[i + 1][c] {
            continue;
        }
        items.push(i);
        // Find the predecessor cell that produced table[i+1][c].
        let target = table[i + 1][c];
        let pred = (0..width)
            .find(|&p| {
                table[i][p] != UNREACHED
                    && (p as u128 + u128::from(costs[i])).min(u128::from(threshold)) as usize == c
                    && table[i][p].saturating_add(values[i]) == target
            })
            .expect("dp predecessor exists");
        c = pred;
    }
    items.reverse();
    Ok(Some((best, items)))
}

/// Optimal Knapsack Cover by dynamic programming over capped cost.
pub fn knapsack_cover_exact(kc: &KnapsackCoverInstance) -> Result<Vec<usize>> {
    kc.require_feasible()?;
    let values: Vec<u128> = kc.values.iter().map(|&v| v.into()).collect();
    let (_, items) = min_cover(&values, &kc.costs, kc.threshold)?
        .expect("feasible instance always yields a cover");
    Ok(items)
}
