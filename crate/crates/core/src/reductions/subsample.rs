//! Picking `k` vertices whose induced density is at least `(k-1)/(n-1)`
//! times the density of the whole graph, by conditional expectations.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Expected number of induced edges when `q` more vertices are drawn
/// uniformly from the `p` pending ones, given `ef` edges inside the accepted
/// set, `efp` between accepted and pending, and `ep` among pending.
fn expectation(ef: u64, efp: u64, ep: u64, p: u64, q: u64) -> Ratio<u128> {
    let mut e = Ratio::from_integer(u128::from(ef));
    if p >= 1 {
        e += Ratio::new(u128::from(efp) * u128::from(q), u128::from(p));
    }
    if p >= 2 {
        let pairs = u128::from(q) * u128::from(q.saturating_sub(1));
        e += Ratio::new(u128::from(ep) * pairs, u128::from(p) * u128::from(p - 1));
    }
    e
}

/// Returns `k` vertices of `h`, sorted, scanning vertices in id order and
/// accepting each one when that does not lower the conditional expectation.
pub fn densest_k_subsample(h: &Multigraph, k: usize) -> Result<Vec<usize>> {
    let n = h.vertex_count();
    if k == 0 || k > n {
        return Err(Error::InvalidInstance(format!("subsample size must satisfy 1 <= k <= n = {n}, got {k}")));
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Status {
        Accepted,
        Pending,
        Rejected,
    }
    let adj = h.adjacency();
    let mut status = vec![Status::Pending; n];
    let (mut ef, mut efp, mut ep) = (0u64, 0u64, h.edge_count() as u64);
    let mut q = k as u64;
    let mut chosen = Vec::with_capacity(k);
    for v in 0..n {
        let pending = (n - v) as u64;
        let (mut df, mut dp) = (0u64, 0u64);
        for &(u, _) in &adj[v] {
            match status[u] {
                Status::Accepted => df += 1,
                Status::Pending => dp += 1,
                Status::Rejected => {}
            }
        }
        let accept = if q == 0 {
            false
        } else if q == pending {
            true
        } else {
            let acc = expectation(ef + df, efp - df + dp, ep - dp, pending - 1, q - 1);
            let rej = expectation(ef, efp - df, ep - dp, pending - 1, q);
            acc >= rej
        };
        ep -= dp;
        if accept {
            status[v] = Status::Accepted;
            ef += df;
            efp = efp - df + dp;
            q -= 1;
            chosen.push(v);
        } else {
            status[v] = Status::Rejected;
            efp -= df;
        }
    }
    debug_assert_eq!(chosen.len(), k);
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn induced(h: &Multigraph, set: &[usize]) -> usize {
        let mut side = vec![false; h.vertex_count()];
        for &v in set {
            side[v] = true;
        }
        h.induced_edge_count(&side)
    }

    #[test]
    fn k4_pair() {
        let h = Multigraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s = densest_k_subsample(&h, 2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(induced(&h, &s), 1);
    }

    #[test]
    fn whole_graph() {
        let h = Multigraph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(densest_k_subsample(&h, 3).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn star_keeps_center() {
        // Center listed last so a naive prefix would miss it.
        let h = Multigraph::new(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        let s = densest_k_subsample(&h, 2).unwrap();
        assert!(s.contains(&3));
        assert_eq!(induced(&h, &s), 1);
    }

    #[test]
    fn size_checked() {
        let h = Multigraph::new(3, &[(0, 1)]).unwrap();
        assert!(densest_k_subsample(&h, 4).is_err());
        assert!(densest_k_subsample(&h, 0).is_err());
    }

    #[test]
    fn bound_on_small_graphs() {
        // Every graph on 5 vertices, every k.
        let all: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << all.len() {
            let pairs: Vec<_> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            let h = Multigraph::new(5, &pairs).unwrap();
            for k in 1..=5u64 {
                let s = densest_k_subsample(&h, k as usize).unwrap();
                // induced/k >= (k-1)/(n-1) * m/n
                let lhs = induced(&h, &s) as u64 * 4 * 5;
                assert!(lhs >= (k - 1) * pairs.len() as u64 * k, "mask {mask} k {k}");
            }
        }
    }
}
