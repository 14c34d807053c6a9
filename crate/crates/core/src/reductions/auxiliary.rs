//! The auxiliary NFI instance built from a densest-k-subgraph instance.
//!
//! Every edge of `H` is subdivided; a source is joined to each original
//! vertex and a sink to each subdivision vertex. Source edges cost infinity
//! and carry one unit, the other edges cost one and carry infinity.

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Inf};
use crate::graph::Multigraph;
use crate::interdiction::{evaluate, InterdictionSolution, NfiInstance, MAX_CUTWISE_VERTICES};

/// A densest-k-subgraph instance on a simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DksInstance {
    h: Multigraph,
    k: usize,
}

impl DksInstance {
    pub fn new(h: Multigraph, k: usize) -> Result<Self> {
        if !h.is_simple() {
            return Err(Error::InvalidInstance("densest-k-subgraph needs a simple graph".into()));
        }
        let n = h.vertex_count();
        if k == 0 || k >= n {
            return Err(Error::InvalidInstance(format!("k must satisfy 0 < k < n = {n}, got {k}")));
        }
        Ok(DksInstance { h, k })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.h
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// What an auxiliary-graph edge stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRole {
    /// `s` to original vertex `v`.
    Source(usize),
    /// Original vertex `vertex` to the subdivision vertex of edge `edge`.
    Incidence { vertex: usize, edge: usize },
    /// Subdivision vertex of edge `edge` to `t`.
    Sink(usize),
}

/// Auxiliary graph on `V ∪ E ∪ {s, t}`.
///
/// Vertex layout: original vertices `0..n`, the subdivision vertex of the
/// `i`-th edge of `H` at `n + i`, then `s = n + m`, `t = n + m + 1`.
/// Edge ids: source edges `0..n`, the two incidence edges of edge `i` at
/// `n + 2i` and `n + 2i + 1`, sink edges from `n + 2m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    h: Multigraph,
    graph: Multigraph,
    capacity: Vec<ExtNat>,
    cost: Vec<ExtNat>,
    roles: Vec<EdgeRole>,
}

/// Builds the auxiliary graph of `dks`.
pub fn dks_to_nfi(dks: &DksInstance) -> AuxiliaryGraph {
    AuxiliaryGraph::new(dks.graph()).expect("DksInstance is simple")
}

impl AuxiliaryGraph {
    pub fn new(h: &Multigraph) -> Result<Self> {
        if !h.is_simple() {
            return Err(Error::InvalidInstance("auxiliary graph needs a simple host graph".into()));
        }
        let (n, m) = (h.vertex_count(), h.edge_count());
        let (s, t) = (n + m, n + m + 1);
        let mut pairs = Vec::with_capacity(n + 3 * m);
        let mut roles = Vec::with_capacity(n + 3 * m);
        let mut capacity = Vec::with_capacity(n + 3 * m);
        let mut cost = Vec::with_capacity(n + 3 * m);
        for v in 0..n {
            pairs.push((s, v));
            roles.push(EdgeRole::Source(v));
            capacity.push(Fin(1));
            cost.push(Inf);
        }
        for (i, e) in h.edges().iter().enumerate() {
            for v in [e.a, e.b] {
                pairs.push((v, n + i));
                roles.push(EdgeRole::Incidence { vertex: v, edge: i });
                capacity.push(Inf);
                cost.push(Fin(1));
            }
        }
        for i in 0..m {
            pairs.push((n + i, t));
            roles.push(EdgeRole::Sink(i));
            capacity.push(Inf);
            cost.push(Fin(1));
        }
        Ok(AuxiliaryGraph {
            h: h.clone(),
            graph: Multigraph::new(n + m + 2, &pairs)?,
            capacity,
            cost,
            roles,
        })
    }

    pub fn host(&self) -> &Multigraph {
        &self.h
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

    pub fn roles(&self) -> &[EdgeRole] {
        &self.roles
    }

    pub fn source(&self) -> usize {
        self.h.vertex_count() + self.h.edge_count()
    }

    pub fn sink(&self) -> usize {
        self.source() + 1
    }

    pub fn source_edge(&self, v: usize) -> usize {
        v
    }

    /// Incidence edge joining original vertex `v` to the subdivision of the
    /// `i`-th host edge.
    pub fn incidence_edge(&self, i: usize, v: usize) -> usize {
        let e = self.h.edges()[i];
        let n = self.h.vertex_count();
        if v == e.a {
            n + 2 * i
        } else {
            debug_assert_eq!(v, e.b);
            n + 2 * i + 1
        }
    }

    pub fn sink_edge(&self, i: usize) -> usize {
        self.h.vertex_count() + 2 * self.h.edge_count() + i
    }

    /// The NFI instance with budget `budget`.
    pub fn instance(&self, budget: u64) -> NfiInstance {
        NfiInstance::new(
            self.graph.clone(),
            self.capacity.clone(),
            self.cost.clone(),
            self.source(),
            self.sink(),
            budget,
        )
        .expect("auxiliary instance is valid")
    }

    /// Exact NFI on this graph by enumerating the cut solutions of every
    /// vertex set of `H`; cut solutions dominate all interdiction sets.
    /// Ties prefer lower cost, then the smaller edge-id list.
    pub fn solve_exact(&self, budget: u64) -> Result<InterdictionSolution> {
        let n = self.h.vertex_count();
        if n > MAX_CUTWISE_VERTICES {
            return Err(Error::SizeGuard {
                what: "host vertex count",
                actual: n as u128,
                limit: MAX_CUTWISE_VERTICES as u128,
            });
        }
        let mut best: Option<CutSolution> = None;
        for mask in 0u64..1 << n {
            let cut: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            let cs = cut_solution_from_cut(self, &cut);
            if cs.cost > budget {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => (cs.residual, cs.cost, &cs.removed) < (b.residual, b.cost, &b.removed),
            };
            if better {
                best = Some(cs);
            }
        }
        let best = best.expect("the empty cut costs nothing");
        evaluate(&self.instance(budget), &best.removed)
    }
}

/// The canonical interdiction set of a vertex set `C` of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSolution {
    /// Membership flags over the vertices of `H`.
    pub cut: Vec<bool>,
    /// Sorted auxiliary-graph edge ids.
    pub removed: Vec<usize>,
    /// `|δ_H(C)| + |E_H[C]|`.
    pub cost: u64,
    /// Non-isolated vertices outside `C`; this is `|V \ C|` when `H` has no
    /// isolated vertex.
    pub residual: u64,
}

impl CutSolution {
    pub fn cut_vertices(&self) -> Vec<usize> {
        (0..self.cut.len()).filter(|&v| self.cut[v]).collect()
    }
}

/// Cuts the `C`-side incidence edge of every boundary edge of `C` and the sink
/// edge of every edge inside `C`.
pub fn cut_solution_from_cut(aux: &AuxiliaryGraph, cut: &[bool]) -> CutSolution {
    let h = &aux.h;
    assert_eq!(cut.len(), h.vertex_count(), "cut must flag every host vertex");
    let mut removed = Vec::new();
    let (mut boundary, mut inside) = (0u64, 0u64);
    let mut degree = vec![0usize; h.vertex_count()];
    for (i, e) in h.edges().iter().enumerate() {
        degree[e.a] += 1;
        degree[e.b] += 1;
        match (cut[e.a], cut[e.b]) {
            (true, true) => {
                inside += 1;
                removed.push(aux.sink_edge(i));
            }
            (true, false) => {
                boundary += 1;
                removed.push(aux.incidence_edge(i, e.a));
            }
            (false, true) => {
                boundary += 1;
                removed.push(aux.incidence_edge(i, e.b));
            }
            (false, false) => {}
        }
    }
    removed.sort_unstable();
    CutSolution {
        cut: cut.to_vec(),
        removed,
        cost: boundary + inside,
        residual: (0..h.vertex_count()).filter(|&v| !cut[v] && degree[v] > 0).count() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Paw graph: a=0, b=1, c=2, d=3 with edges ab, ac, bc, cd.
    fn host() -> Multigraph {
        Multigraph::new(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn sizes_and_roles() {
        let aux = dks_to_nfi(&DksInstance::new(host(), 2).unwrap());
        assert_eq!(aux.graph().vertex_count(), 10);
        assert_eq!(aux.graph().edge_count(), 16);
        let count = |f: fn(&EdgeRole) -> bool| aux.roles().iter().filter(|r| f(r)).count();
        assert_eq!(count(|r| matches!(r, EdgeRole::Source(_))), 4);
        assert_eq!(count(|r| matches!(r, EdgeRole::Incidence { .. })), 8);
        assert_eq!(count(|r| matches!(r, EdgeRole::Sink(_))), 4);
        for (id, role) in aux.roles().iter().enumerate() {
            let expected = match role {
                EdgeRole::Source(_) => (Inf, Fin(1)),
                _ => (Fin(1), Inf),
            };
            assert_eq!((aux.cost()[id], aux.capacity()[id]), expected);
        }
    }

    #[test]
    fn small_hosts() {
        let single = AuxiliaryGraph::new(&Multigraph::new(2, &[(0, 1)]).unwrap()).unwrap();
        assert_eq!((single.graph().vertex_count(), single.graph().edge_count()), (5, 5));
        let tri = AuxiliaryGraph::new(&Multigraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()).unwrap();
        assert_eq!((tri.graph().vertex_count(), tri.graph().edge_count()), (8, 12));
    }

    #[test]
    fn parallel_host_rejected() {
        let h = Multigraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(DksInstance::new(h.clone(), 1).is_err());
        assert!(AuxiliaryGraph::new(&h).is_err());
    }

    #[test]
    fn k_range_checked() {
        assert!(DksInstance::new(host(), 0).is_err());
        assert!(DksInstance::new(host(), 4).is_err());
    }

    #[test]
    fn paw_cut_solution() {
        let aux = AuxiliaryGraph::new(&host()).unwrap();
        let cs = cut_solution_from_cut(&aux, &[true, true, false, true]);
        assert_eq!(cs.removed.len(), 4);
        assert_eq!((cs.cost, cs.residual), (4, 1));
        let sol = evaluate(&aux.instance(4), &cs.removed).unwrap();
        assert_eq!((sol.cost, sol.residual), (Fin(4), Fin(1)));
        // ab's sink edge plus a-ac, b-bc, d-cd.
        let mut expected = vec![aux.sink_edge(0), aux.incidence_edge(1, 0), aux.incidence_edge(2, 1), aux.incidence_edge(3, 3)];
        expected.sort_unstable();
        assert_eq!(cs.removed, expected);
    }

    #[test]
    fn empty_and_full_cuts() {
        let aux = AuxiliaryGraph::new(&host()).unwrap();
        let none = cut_solution_from_cut(&aux, &[false; 4]);
        assert!(none.removed.is_empty());
        assert_eq!((none.cost, none.residual), (0, 4));
        let all = cut_solution_from_cut(&aux, &[true; 4]);
        assert_eq!(all.removed, (0..4).map(|i| aux.sink_edge(i)).collect::<Vec<_>>());
        assert_eq!((all.cost, all.residual), (4, 0));
    }

    #[test]
    fn isolated_vertices_carry_no_flow() {
        let aux = AuxiliaryGraph::new(&Multigraph::new(3, &[(0, 1)]).unwrap()).unwrap();
        let cs = cut_solution_from_cut(&aux, &[false; 3]);
        assert_eq!(cs.residual, 2);
        assert_eq!(evaluate(&aux.instance(0), &cs.removed).unwrap().residual, Fin(2));
    }

    #[test]
    fn exact_solver_matches_generic_oracle() {
        let aux = AuxiliaryGraph::new(&host()).unwrap();
        for b in 0..=4 {
            let fast = aux.solve_exact(b).unwrap();
            let slow = crate::interdiction::nfi_exact_cutwise(&aux.instance(b)).unwrap();
            assert_eq!(fast.residual, slow.residual, "budget {b}");
        }
    }
}
