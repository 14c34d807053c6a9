//! Gomory-Hu cut trees (Gusfield's construction) and the tree-based cut cover.

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::flow::{fin_or_inf, inf_substitute, FlowNetwork};
use crate::graph::{Multigraph, WeightedCut};

/// A weighted spanning tree whose minimum path weight between any two vertices
/// is their minimum cut value, and whose edges induce minimum cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GomoryHuTree {
    n: usize,
    tree_edges: Vec<(usize, usize, ExtNat)>,
}

/// Gusfield's cut-tree algorithm on finite capacities: `n - 1` max-flow calls
/// on the original graph, no contraction. Entry `v - 1` (for `v >= 1`) is the
/// tree edge `(v, parent, value)`, and removing it leaves a minimum cut
/// between its endpoints.
pub(crate) fn gusfield(n: usize, edges: &[(usize, usize, u128)]) -> Vec<(usize, usize, u128)> {
    let mut parent = vec![0usize; n];
    let mut value = vec![0u128; n];
    for s in 1..n {
        let t = parent[s];
        let net = FlowNetwork::new(n, edges.iter().copied());
        let (f, side) = net.max_flow(s, t);
        value[s] = f;
        for i in 0..n {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        if side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
            value[s] = value[t];
            value[t] = f;
        }
    }
    (1..n).map(|v| (v, parent[v], value[v])).collect()
}

impl GomoryHuTree {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The `n - 1` tree edges as `(vertex, vertex, kappa)`.
    pub fn tree_edges(&self) -> &[(usize, usize, ExtNat)] {
        &self.tree_edges
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(a, b, _)) in self.tree_edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        adj
    }

    /// Tree-edge indices on the unique path from `a` to `b`.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut via = vec![usize::MAX; self.n];
        let mut seen = vec![false; self.n];
        seen[a] = true;
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            for &(w, i) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = i;
                    stack.push(w);
                }
            }
        }
        let mut path = Vec::new();
        let mut v = b;
        while v != a {
            let i = via[v];
            path.push(i);
            let (x, y, _) = self.tree_edges[i];
            v = if x == v { y } else { x };
        }
        path
    }

    /// Minimum kappa along the tree path, i.e. the min `a`-`b` cut value.
    pub fn min_cut_value(&self, a: usize, b: usize) -> ExtNat {
        self.path(a, b)
            .into_iter()
            .map(|i| self.tree_edges[i].2)
            .min()
            .unwrap_or(ExtNat::Inf)
    }

    /// The component of `tree - edge` that contains the edge's first endpoint.
    pub fn side_of(&self, edge: usize) -> Vec<bool> {
        let adj = self.adjacency();
        let start = self.tree_edges[edge].0;
        let mut side = vec![false; self.n];
        side[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(w, i) in &adj[v] {
                if i != edge && !side[w] {
                    side[w] = true;
                    stack.push(w);
                }
            }
        }
        side
    }
}

/// Builds a Gomory-Hu tree for `g` under capacities `u`.
///
/// Vertices in different components end up joined by zero-weight tree edges.
pub fn gomory_hu(g: &Multigraph, u: &[ExtNat]) -> Result<GomoryHuTree> {
    g.check_weights(u, "capacity")?;
    let big = inf_substitute(u);
    let edges: Vec<_> = g
        .edges()
        .iter()
        .map(|e| (e.a, e.b, u[e.id].finite().map_or(big, u128::from)))
        .collect();
    let tree_edges = gusfield(g.vertex_count(), &edges)
        .into_iter()
        .map(|(a, b, v)| (a, b, fin_or_inf(v, big)))
        .collect();
    Ok(GomoryHuTree {
        n: g.vertex_count(),
        tree_edges,
    })
}

/// One element of a cut cover: a tree-edge pair and its minimum cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverEntry {
    pub pair: (usize, usize),
    pub cut: WeightedCut,
}

/// Covers `δ(C)` with at most `n - 1` pairwise minimum cuts.
///
/// The pairs are the Gomory-Hu tree edges crossing `C`; each cut is the side
/// of the tree, minus that edge, containing the pair's first vertex.
pub fn cut_cover(g: &Multigraph, u: &[ExtNat], side: &[bool]) -> Result<Vec<CoverEntry>> {
    let n = g.vertex_count();
    if side.len() != n {
        return Err(Error::InvalidCut(format!("cut has {} flags for {n} vertices", side.len())));
    }
    let inside = side.iter().filter(|&&x| x).count();
    if inside == 0 || inside == n {
        return Err(Error::InvalidCut("cut must be a proper nonempty vertex subset".into()));
    }
    let tree = gomory_hu(g, u)?;
    Ok(tree
        .tree_edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b, _))| side[a] != side[b])
        .map(|(i, &(a, b, _))| CoverEntry {
            pair: (a, b),
            cut: WeightedCut::new(g, u, tree.side_of(i)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Fin;
    use crate::flow::max_flow;

    fn star(leaves: usize) -> Multigraph {
        let pairs: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        Multigraph::new(leaves + 1, &pairs).unwrap()
    }

    #[test]
    fn unit_triangle_all_twos() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = gomory_hu(&g, &[Fin(1); 3]).unwrap();
        assert_eq!(t.tree_edges().len(), 2);
        assert!(t.tree_edges().iter().all(|&(_, _, k)| k == Fin(2)));
    }

    #[test]
    fn path_tree_is_the_path() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let t = gomory_hu(&g, &[Fin(3), Fin(1)]).unwrap();
        let mut edges: Vec<_> = t
            .tree_edges()
            .iter()
            .map(|&(a, b, k)| (a.min(b), a.max(b), k))
            .collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 1, Fin(3)), (1, 2, Fin(1))]);
    }

    #[test]
    fn star_tree_is_the_star() {
        let g = star(4);
        let t = gomory_hu(&g, &[Fin(1); 4]).unwrap();
        for &(a, b, k) in t.tree_edges() {
            assert!(a == 0 || b == 0);
            assert_eq!(k, Fin(1));
        }
    }

    #[test]
    fn disconnected_graph_joined_by_zero() {
        let g = Multigraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let t = gomory_hu(&g, &[Fin(2), Fin(5)]).unwrap();
        assert_eq!(t.min_cut_value(0, 3), Fin(0));
        assert_eq!(t.min_cut_value(2, 3), Fin(5));
        assert_eq!(t.min_cut_value(0, 1), Fin(2));
    }

    #[test]
    fn infinite_capacities_map_back() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let t = gomory_hu(&g, &[ExtNat::Inf, Fin(4)]).unwrap();
        assert_eq!(t.min_cut_value(0, 1), ExtNat::Inf);
        assert_eq!(t.min_cut_value(0, 2), Fin(4));
    }

    #[test]
    fn star_cover_needs_every_leaf() {
        let g = star(5);
        let u = [Fin(1); 5];
        let mut side = vec![false; 6];
        side[0] = true;
        let cover = cut_cover(&g, &u, &side).unwrap();
        assert_eq!(cover.len(), 5);
        for entry in &cover {
            assert_eq!(entry.cut.edge_ids.len(), 1);
        }
    }

    #[test]
    fn path_cover_single_pair() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let u = [Fin(3), Fin(1)];
        let cover = cut_cover(&g, &u, &[true, false, false]).unwrap();
        assert_eq!(cover.len(), 1);
        let (a, b) = cover[0].pair;
        assert_eq!((a.min(b), a.max(b)), (0, 1));
        assert!(cover[0].cut.edge_ids.contains(&0));
        let (v, _) = max_flow(&g, &u, a, b).unwrap();
        assert_eq!(cover[0].cut.weight, v);
    }

    #[test]
    fn improper_cuts_rejected() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let u = [Fin(1), Fin(1)];
        assert!(matches!(cut_cover(&g, &u, &[false; 3]), Err(Error::InvalidCut(_))));
        assert!(matches!(cut_cover(&g, &u, &[true; 3]), Err(Error::InvalidCut(_))));
    }

    proptest::proptest! {
        #[test]
        fn tree_edges_induce_minimum_cuts(
            n in 2usize..7,
            raw in proptest::collection::vec((0usize..7, 1usize..7, 1u64..6), 0..12),
        ) {
            let edges: Vec<_> = raw.iter().map(|&(a, d, w)| (a % n, (a + d) % n, w)).filter(|e| e.0 != e.1).collect();
            let g = Multigraph::new(n, &edges.iter().map(|e| (e.0, e.1)).collect::<Vec<_>>()).unwrap();
            let u: Vec<_> = edges.iter().map(|e| Fin(e.2)).collect();
            let tree = gomory_hu(&g, &u).unwrap();
            for (i, &(a, b, kappa)) in tree.tree_edges().iter().enumerate() {
                let cut = WeightedCut::new(&g, &u, tree.side_of(i));
                proptest::prop_assert!(cut.separates(a, b));
                proptest::prop_assert_eq!(cut.weight, kappa);
                proptest::prop_assert_eq!(max_flow(&g, &u, a, b).unwrap().0, kappa);
            }
        }
    }
}
