//! Rewriting an arbitrary interdiction set of the auxiliary graph into a cut
//! solution that is no worse in cost or residual flow.

use super::auxiliary::{cut_solution_from_cut, AuxiliaryGraph, CutSolution, EdgeRole};
use crate::error::{Error, Result};
use crate::graph::UnionFind;

struct State<'a> {
    aux: &'a AuxiliaryGraph,
    removed: Vec<bool>,
}

/// Component labels of the subdivided host minus `R`, plus whether each
/// component still carries flow (some sink edge survives).
struct Components {
    label: Vec<usize>,
    flow: Vec<bool>,
}

impl State<'_> {
    fn n(&self) -> usize {
        self.aux.host().vertex_count()
    }

    fn components(&self) -> Components {
        let n = self.n();
        let m = self.aux.host().edge_count();
        let mut uf = UnionFind::new(n + m);
        for (i, e) in self.aux.host().edges().iter().enumerate() {
            for v in [e.a, e.b] {
                if !self.removed[self.aux.incidence_edge(i, v)] {
                    uf.union(v, n + i);
                }
            }
        }
        let label = uf.labels();
        let mut flow = vec![false; n + m];
        for i in 0..m {
            if !self.removed[self.aux.sink_edge(i)] {
                flow[label[n + i]] = true;
            }
        }
        Components { label, flow }
    }

    /// Drops incidence edges inside a component and sink edges of flow
    /// components.
    fn drop_redundant(&mut self, comp: &Components) -> bool {
        let n = self.n();
        let mut changed = false;
        for (i, e) in self.aux.host().edges().iter().enumerate() {
            for v in [e.a, e.b] {
                let id = self.aux.incidence_edge(i, v);
                if self.removed[id] && comp.label[v] == comp.label[n + i] {
                    self.removed[id] = false;
                    changed = true;
                }
            }
            let id = self.aux.sink_edge(i);
            if self.removed[id] && comp.flow[comp.label[n + i]] {
                self.removed[id] = false;
                changed = true;
            }
        }
        changed
    }

    /// Drops incidence edges joining two components of the same type.
    fn merge_same_type(&mut self, comp: &Components) -> bool {
        let n = self.n();
        let mut changed = false;
        for (i, e) in self.aux.host().edges().iter().enumerate() {
            for v in [e.a, e.b] {
                let id = self.aux.incidence_edge(i, v);
                let (cv, ce) = (comp.label[v], comp.label[n + i]);
                if self.removed[id] && comp.flow[cv] == comp.flow[ce] {
                    self.removed[id] = false;
                    changed = true;
                }
            }
        }
        changed
    }

    /// For a removed `ve` with `v` flowing and `e` blocked, moves `e` to the
    /// flow side: `R - ve - et + we`.
    fn swap_one(&mut self, comp: &Components) -> bool {
        let n = self.n();
        for (i, e) in self.aux.host().edges().iter().enumerate() {
            for (v, w) in [(e.a, e.b), (e.b, e.a)] {
                let id = self.aux.incidence_edge(i, v);
                if self.removed[id] && comp.flow[comp.label[v]] && !comp.flow[comp.label[n + i]] {
                    self.removed[id] = false;
                    self.removed[self.aux.sink_edge(i)] = false;
                    self.removed[self.aux.incidence_edge(i, w)] = true;
                    return true;
                }
            }
        }
        false
    }

    /// A subdivision vertex cut off from two blocked endpoints but still
    /// draining to `t` carries no flow; blocking its sink edge instead of both
    /// incidence edges saves one unit.
    fn absorb_isolated(&mut self, comp: &Components) -> bool {
        let n = self.n();
        for (i, e) in self.aux.host().edges().iter().enumerate() {
            let (ia, ib) = (self.aux.incidence_edge(i, e.a), self.aux.incidence_edge(i, e.b));
            let sink = self.aux.sink_edge(i);
            if self.removed[ia]
                && self.removed[ib]
                && !self.removed[sink]
                && !comp.flow[comp.label[e.a]]
                && !comp.flow[comp.label[e.b]]
            {
                debug_assert!(comp.flow[comp.label[n + i]]);
                self.removed[ia] = false;
                self.removed[ib] = false;
                self.removed[sink] = true;
                return true;
            }
        }
        false
    }
}

/// Normalizes `removed` (edge ids of `aux`, avoiding source edges) into the
/// cut solution of the union of host vertices in blocked components.
pub fn normalize_to_cut_solution(aux: &AuxiliaryGraph, removed: &[usize]) -> Result<CutSolution> {
    let mut state = State { aux, removed: vec![false; aux.graph().id_bound()] };
    for &id in removed {
        match aux.roles().get(id) {
            None => return Err(Error::MalformedInput(format!("unknown auxiliary edge id {id}"))),
            Some(EdgeRole::Source(v)) => {
                return Err(Error::MalformedInput(format!("edge {id} leaves the source (vertex {v})")));
            }
            Some(_) => state.removed[id] = true,
        }
    }
    loop {
        let comp = state.components();
        if state.drop_redundant(&comp)
            || state.merge_same_type(&comp)
            || state.swap_one(&comp)
            || state.absorb_isolated(&comp)
        {
            continue;
        }
        let n = state.n();
        let cut: Vec<bool> = (0..n).map(|v| !comp.flow[comp.label[v]]).collect();
        let cs = cut_solution_from_cut(aux, &cut);
        debug_assert_eq!(
            cs.removed,
            (0..state.removed.len()).filter(|&id| state.removed[id]).collect::<Vec<_>>()
        );
        return Ok(cs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Fin;
    use crate::graph::Multigraph;
    use crate::interdiction::evaluate;

    fn paw() -> AuxiliaryGraph {
        AuxiliaryGraph::new(&Multigraph::new(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()).unwrap()
    }

    #[test]
    fn cut_solution_is_fixed_point() {
        let aux = paw();
        for mask in 0..16u32 {
            let cut: Vec<bool> = (0..4).map(|v| mask >> v & 1 == 1).collect();
            let cs = cut_solution_from_cut(&aux, &cut);
            assert_eq!(normalize_to_cut_solution(&aux, &cs.removed).unwrap(), cs);
        }
    }

    #[test]
    fn swap_moves_blocked_edge_vertex() {
        let aux = paw();
        // c-cd and cd-t: cd hangs off d, so d is blocked and only a, b, c flow.
        let r = [aux.incidence_edge(3, 2), aux.sink_edge(3)];
        let before = evaluate(&aux.instance(2), &r).unwrap();
        assert_eq!((before.cost, before.residual), (Fin(2), Fin(3)));
        let cs = normalize_to_cut_solution(&aux, &r).unwrap();
        assert_eq!(cs.cut_vertices(), vec![3]);
        assert_eq!(cs.removed, vec![aux.incidence_edge(3, 3)]);
        assert_eq!((cs.cost, cs.residual), (1, 3));
    }

    #[test]
    fn isolated_edge_vertex_absorbed() {
        let aux = AuxiliaryGraph::new(&Multigraph::new(2, &[(0, 1)]).unwrap()).unwrap();
        let r = [aux.incidence_edge(0, 0), aux.incidence_edge(0, 1)];
        let cs = normalize_to_cut_solution(&aux, &r).unwrap();
        assert_eq!(cs.removed, vec![aux.sink_edge(0)]);
        assert_eq!((cs.cost, cs.residual), (1, 0));
    }

    #[test]
    fn source_edges_rejected() {
        let aux = paw();
        assert!(matches!(normalize_to_cut_solution(&aux, &[0]), Err(Error::MalformedInput(_))));
        assert!(normalize_to_cut_solution(&aux, &[99]).is_err());
    }

    #[test]
    fn never_worse_on_all_subsets() {
        let aux = paw();
        let candidates: Vec<usize> = (4..16).collect();
        for mask in 0u32..1 << candidates.len() {
            let r: Vec<usize> = (0..candidates.len()).filter(|&i| mask >> i & 1 == 1).map(|i| candidates[i]).collect();
            let before = evaluate(&aux.instance(16), &r).unwrap();
            let cs = normalize_to_cut_solution(&aux, &r).unwrap();
            assert!(Fin(cs.cost) <= before.cost, "{r:?}");
            assert!(Fin(cs.residual) <= before.residual, "{r:?}");
            let after = evaluate(&aux.instance(16), &cs.removed).unwrap();
            assert_eq!((after.cost, after.residual), (Fin(cs.cost), Fin(cs.residual)));
        }
    }
}
