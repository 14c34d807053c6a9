//! Undirected multigraphs with stable edge ids, cuts and contraction.

use crate::error::{Error, Result};
use crate::ext::ExtNat;

/// An undirected edge with a stable id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: usize,
    pub a: usize,
    pub b: usize,
}

impl Edge {
    /// The endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn crosses(&self, side: &[bool]) -> bool {
        side[self.a] != side[self.b]
    }
}

/// Undirected multigraph on vertices `0..n`.
///
/// Edge ids are fixed at construction and survive [`Multigraph::without_edges`]
/// and [`contract_pairs`]; weight maps are slices indexed by edge id and must
/// have length [`Multigraph::id_bound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    id_bound: usize,
}

impl Multigraph {
    /// Builds a graph whose edge `i` joins `pairs[i]`.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("graph needs at least one vertex".into()));
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for (id, &(a, b)) in pairs.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge {id} ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidInstance(format!("edge {id} is a self-loop at {a}")));
            }
            edges.push(Edge { id, a, b });
        }
        Ok(Multigraph {
            n,
            edges,
            id_bound: pairs.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// One past the largest edge id that weight maps must cover.
    pub fn id_bound(&self) -> usize {
        self.id_bound
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn contains_edge(&self, id: usize) -> bool {
        self.edge(id).is_some()
    }

    /// Edge-subset view with `removed` deleted. Surviving ids are unchanged.
    pub fn without_edges(&self, removed: &[usize]) -> Multigraph {
        let mut drop = vec![false; self.id_bound];
        for &id in removed {
            if id < self.id_bound {
                drop[id] = true;
            }
        }
        self.filter_edges(|e| !drop[e.id])
    }

    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self.edges.iter().copied().filter(|e| keep(e)).collect(),
            id_bound: self.id_bound,
        }
    }

    /// Whether no two edges join the same pair of vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges
            .iter()
            .all(|e| seen.insert((e.a.min(e.b), e.a.max(e.b))))
    }

    /// Ids of the edges with exactly one endpoint in `side`.
    pub fn boundary(&self, side: &[bool]) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.crosses(side))
            .map(|e| e.id)
            .collect()
    }

    /// Number of edges with both endpoints in `side`.
    pub fn induced_edge_count(&self, side: &[bool]) -> usize {
        self.edges.iter().filter(|e| side[e.a] && side[e.b]).count()
    }

    /// Adjacency lists of `(neighbor, edge id)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.a].push((e.b, e.id));
            adj[e.b].push((e.a, e.id));
        }
        adj
    }

    /// Component label for every vertex, numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.a, e.b);
        }
        uf.labels()
    }

    pub(crate) fn check_weights(&self, w: &[ExtNat], name: &str) -> Result<()> {
        if w.len() != self.id_bound {
            return Err(Error::InvalidInstance(format!(
                "{name} map has {} entries, graph needs {}",
                w.len(),
                self.id_bound
            )));
        }
        Ok(())
    }
}

/// A vertex set `side` with its boundary edges and their total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCut {
    pub side: Vec<bool>,
    pub edge_ids: Vec<usize>,
    pub weight: ExtNat,
}

impl WeightedCut {
    pub fn new(g: &Multigraph, weights: &[ExtNat], side: Vec<bool>) -> WeightedCut {
        assert_eq!(side.len(), g.vertex_count(), "side must cover every vertex");
        let edge_ids = g.boundary(&side);
        let weight = edge_ids.iter().map(|&id| weights[id]).sum();
        WeightedCut {
            side,
            edge_ids,
            weight,
        }
    }

    pub fn from_vertices(g: &Multigraph, weights: &[ExtNat], vertices: &[usize]) -> WeightedCut {
        let mut side = vec![false; g.vertex_count()];
        for &v in vertices {
            side[v] = true;
        }
        WeightedCut::new(g, weights, side)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.side[v]
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }

    pub fn separates(&self, a: usize, b: usize) -> bool {
        self.side[a] != self.side[b]
    }
}

/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Dense class labels, numbered by the smallest member of each class.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label_of_root = vec![usize::MAX; n];
        let mut next = 0;
        (0..n)
            .map(|v| {
                let r = self.find(v);
                if label_of_root[r] == usize::MAX {
                    label_of_root[r] = next;
                    next += 1;
                }
                label_of_root[r]
            })
            .collect()
    }
}

/// Merges the union-find closure of `pairs`.
///
/// Returns the contracted graph and the old-to-new vertex mapping. Edges whose
/// endpoints merge are dropped; every other edge keeps its id.
pub fn contract_pairs(g: &Multigraph, pairs: &[(usize, usize)]) -> (Multigraph, Vec<usize>) {
    let mut uf = UnionFind::new(g.n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    let mapping = uf.labels();
    let n = mapping.iter().max().map_or(0, |&x| x + 1);
    let edges = g
        .edges
        .iter()
        .filter(|e| mapping[e.a] != mapping[e.b])
        .map(|e| Edge {
            id: e.id,
            a: mapping[e.a],
            b: mapping[e.b],
        })
        .collect();
    (
        Multigraph {
            n,
            edges,
            id_bound: g.id_bound,
        },
        mapping,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Fin;
    use proptest::prelude::*;

    #[test]
    fn self_loops_rejected() {
        assert!(matches!(
            Multigraph::new(3, &[(0, 1), (2, 2)]),
            Err(Error::InvalidInstance(_))
        ));
        assert!(Multigraph::new(2, &[(0, 2)]).is_err());
        assert!(Multigraph::new(0, &[]).is_err());
    }

    #[test]
    fn parallel_edges_keep_distinct_ids() {
        let g = Multigraph::new(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(!g.is_simple());
        let ids: Vec<_> = g.edges().iter().map(|e| e.id).collect();
        assert_eq!(ids, vec![0, 1, 2]);
    }

    #[test]
    fn removal_never_renumbers() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = g.without_edges(&[1]);
        assert_eq!(h.id_bound(), 3);
        assert_eq!(h.edge(2), Some(&Edge { id: 2, a: 0, b: 2 }));
        assert!(h.edge(1).is_none());
    }

    #[test]
    fn weighted_cut_sums_boundary() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let w = [Fin(1), Fin(10), Fin(100)];
        let cut = WeightedCut::from_vertices(&g, &w, &[0]);
        assert_eq!(cut.edge_ids, vec![0, 2]);
        assert_eq!(cut.weight, Fin(101));
    }

    #[test]
    fn contract_nothing_is_identity() {
        let g = Multigraph::new(4, &[(0, 1), (2, 3), (1, 2)]).unwrap();
        let (h, map) = contract_pairs(&g, &[]);
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert_eq!(h, g);
    }

    #[test]
    fn contract_triangle_edge() {
        // a=0, b=1, c=2; edges ab, ac, bc
        let g = Multigraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let (h, map) = contract_pairs(&g, &[(0, 1)]);
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(map[0], map[1]);
        let ids: Vec<_> = h.edges().iter().map(|e| e.id).collect();
        assert_eq!(ids, vec![1, 2]);
        assert!(h.edges().iter().all(|e| {
            (e.a, e.b) == (map[0], map[2]) || (e.b, e.a) == (map[0], map[2])
        }));
    }

    #[test]
    fn contract_chain_on_k4() {
        let k4: Vec<_> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .collect();
        let g = Multigraph::new(4, &k4).unwrap();
        let (h, map) = contract_pairs(&g, &[(0, 1), (1, 2)]);
        assert_eq!(h.vertex_count(), 2);
        // Oracle: count original edges whose endpoints land in different classes.
        let expected = k4.iter().filter(|&&(a, b)| map[a] != map[b]).count();
        assert_eq!(expected, 3);
        assert_eq!(h.edge_count(), 3);
        assert!(h.edges().iter().all(|e| {
            let (x, y) = (e.a.min(e.b), e.a.max(e.b));
            (x, y) == (map[0].min(map[3]), map[0].max(map[3]))
        }));
    }

    fn arb_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (2usize..8).prop_flat_map(|n| {
            let e = (0..n, 0..n)
                .prop_filter("no loops", |(a, b)| a != b);
            (Just(n), proptest::collection::vec(e, 0..14))
        })
    }

    proptest! {
        #[test]
        fn contraction_preserves_surviving_edge_ids(
            (n, pairs) in arb_graph(),
            merges in proptest::collection::vec((0usize..8, 0usize..8), 0..5),
        ) {
            let g = Multigraph::new(n, &pairs).unwrap();
            let merges: Vec<_> = merges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
            let (h, map) = contract_pairs(&g, &merges);
            for &(a, b) in &merges {
                prop_assert_eq!(map[a], map[b]);
            }
            for e in h.edges() {
                let orig = g.edge(e.id).unwrap();
                prop_assert_eq!((e.a, e.b), (map[orig.a], map[orig.b]));
            }
            let survivors = g.edges().iter().filter(|e| map[e.a] != map[e.b]).count();
            prop_assert_eq!(h.edge_count(), survivors);
        }
    }
}
