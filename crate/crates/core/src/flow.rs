//! Maximum flow and minimum s-t cuts on undirected multigraphs.
//!
//! Infinite capacities are handled in two steps: if `s` reaches `t` along
//! infinite-capacity edges alone, the flow is infinite; otherwise every
//! infinite capacity is replaced by one more than the sum of the finite ones,
//! which cannot change a finite answer.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Inf};
use crate::graph::{Multigraph, WeightedCut};

/// Dinic's algorithm over an undirected network with finite capacities.
///
/// Each undirected edge becomes a pair of opposite arcs that serve as each
/// other's residual.
pub(crate) struct FlowNetwork {
    n: usize,
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u128>,
    first: Vec<usize>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl FlowNetwork {
    pub(crate) fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u128)>) -> Self {
        let mut arcs: Vec<(usize, usize, u128)> = Vec::new();
        for (a, b, c) in edges {
            if c > 0 && a != b {
                arcs.push((a, b, c));
            }
        }
        let mut deg = vec![0usize; n + 1];
        for &(a, b, _) in &arcs {
            deg[a] += 1;
            deg[b] += 1;
        }
        // CSR layout of arc indices by tail.
        let mut first = vec![0usize; n + 1];
        for v in 0..n {
            first[v + 1] = first[v] + deg[v];
        }
        let mut head = vec![NONE; 2 * arcs.len()];
        let mut to = vec![0; 2 * arcs.len()];
        let mut cap = vec![0; 2 * arcs.len()];
        let mut fill = first.clone();
        for (i, &(a, b, c)) in arcs.iter().enumerate() {
            let (f, r) = (2 * i, 2 * i + 1);
            to[f] = b;
            cap[f] = c;
            to[r] = a;
            cap[r] = c;
            head[fill[a]] = f;
            fill[a] += 1;
            head[fill[b]] = r;
            fill[b] += 1;
        }
        FlowNetwork {
            n,
            head,
            to,
            cap,
            first,
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for k in self.first[v]..self.first[v + 1] {
                let arc = self.head[k];
                let w = self.to[arc];
                if self.cap[arc] > 0 && self.level[w] == u32::MAX {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, limit: u128) -> u128 {
        if v == t {
            return limit;
        }
        while self.iter[v] < self.first[v + 1] {
            let arc = self.head[self.iter[v]];
            let w = self.to[arc];
            if self.cap[arc] > 0 && self.level[w] == self.level[v] + 1 {
                let pushed = self.dfs(w, t, limit.min(self.cap[arc]));
                if pushed > 0 {
                    self.cap[arc] -= pushed;
                    self.cap[arc ^ 1] += pushed;
                    return pushed;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    /// Returns the max-flow value and the vertices reachable from `s` in the
    /// final residual network.
    pub(crate) fn max_flow(mut self, s: usize, t: usize) -> (u128, Vec<bool>) {
        let mut value = 0u128;
        while self.bfs(s, t) {
            self.iter.copy_from_slice(&self.first[..self.n]);
            loop {
                let pushed = self.dfs(s, t, u128::MAX);
                if pushed == 0 {
                    break;
                }
                value += pushed;
            }
        }
        // The last BFS failed to reach t, so `level` marks the residual
        // reachable set.
        let side = self.level.iter().map(|&l| l != u32::MAX).collect();
        (value, side)
    }
}

/// Vertices reachable from `s` using only edges whose weight is `Inf`.
fn inf_reachable(g: &Multigraph, w: &[ExtNat], s: usize) -> Vec<bool> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &(x, id) in &adj[v] {
            if w[id].is_inf() && !seen[x] {
                seen[x] = true;
                stack.push(x);
            }
        }
    }
    seen
}

fn check_terminals(g: &Multigraph, s: usize, t: usize) -> Result<()> {
    let n = g.vertex_count();
    if s >= n || t >= n {
        return Err(Error::InvalidInstance(format!(
            "terminal outside 0..{n} (s = {s}, t = {t})"
        )));
    }
    if s == t {
        return Err(Error::InvalidInstance("s and t must differ".into()));
    }
    Ok(())
}

/// Replacement value for `Inf` weights: one more than the finite total.
pub(crate) fn inf_substitute(w: &[ExtNat]) -> u128 {
    w.iter()
        .filter_map(|x| x.finite())
        .map(u128::from)
        .sum::<u128>()
        + 1
}

/// Minimum-weight s-t cut under `w`.
///
/// Among all minimum cuts, the one whose source side is exactly the set of
/// vertices reachable from `s` in the final residual network is returned; this
/// is the unique inclusion-minimal minimum source side.
pub fn min_weight_st_cut(g: &Multigraph, w: &[ExtNat], s: usize, t: usize) -> Result<WeightedCut> {
    g.check_weights(w, "weight")?;
    check_terminals(g, s, t)?;
    if inf_reachable(g, w, s)[t] {
        let mut side = vec![false; g.vertex_count()];
        side[s] = true;
        return Ok(WeightedCut::new(g, w, side));
    }
    let big = inf_substitute(w);
    let net = FlowNetwork::new(
        g.vertex_count(),
        g.edges().iter().map(|e| {
            let c = w[e.id].finite().map_or(big, u128::from);
            (e.a, e.b, c)
        }),
    );
    let (_, side) = net.max_flow(s, t);
    Ok(WeightedCut::new(g, w, side))
}

/// Maximum s-t flow value and a minimum cut witnessing it.
pub fn max_flow(g: &Multigraph, u: &[ExtNat], s: usize, t: usize) -> Result<(ExtNat, WeightedCut)> {
    let cut = min_weight_st_cut(g, u, s, t)?;
    Ok((cut.weight, cut))
}

/// Max-flow value on `g` with the edges in `removed` deleted.
pub fn residual_flow(g: &Multigraph, u: &[ExtNat], s: usize, t: usize, removed: &[usize]) -> Result<ExtNat> {
    let view = g.without_edges(removed);
    Ok(max_flow(&view, u, s, t)?.0)
}

pub(crate) fn fin_or_inf(v: u128, big: u128) -> ExtNat {
    if v >= big {
        Inf
    } else {
        Fin(v as u64)
    }
}
