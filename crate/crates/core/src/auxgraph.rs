//! The auxiliary graph on vertices, triangles and induced paths.
//!
//! Nodes are the singletons `{v}`, the triangles and the induced paths of a
//! host graph; two nodes are adjacent when their union induces a connected
//! subgraph of the host. Stable sets of this graph are exactly the co-3-plexes
//! of a chordal host, written as their component partitions.
//!
//! The graph is exponential in the host and is only built for verification.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::chordal::{is_chordal, CliqueSet};
use crate::structures::{induces_triangle, is_co3plex, Co3Plex, ComponentCatalog};
use crate::{Error, Graph, Result, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Vertex,
    Triangle,
    Path,
}

impl NodeKind {
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Vertex => "vertex",
            NodeKind::Triangle => "triangle",
            NodeKind::Path => "path",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AuxGraph {
    nodes: Vec<VertexSet>,
    kinds: Vec<NodeKind>,
    index: HashMap<VertexSet, usize>,
    graph: Graph,
}

impl AuxGraph {
    fn assemble(host: &Graph, nodes: Vec<VertexSet>, kinds: Vec<NodeKind>, edges: &[(usize, usize)]) -> Result<Self> {
        let index = nodes.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let graph = Graph::from_edges(nodes.len(), edges)?
            .with_weights(nodes.iter().map(|s| host.weight_of(s)).collect())?
            .with_labels(nodes.clone())?;
        Ok(AuxGraph {
            nodes,
            kinds,
            index,
            graph,
        })
    }

    /// The node graph; vertex `i` is node `i`, labeled by its vertex set and
    /// weighted by the host weight of that set.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: usize) -> &VertexSet {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[VertexSet] {
        &self.nodes
    }

    pub fn kind(&self, i: usize) -> NodeKind {
        self.kinds[i]
    }

    pub fn node_index(&self, set: &VertexSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.graph.has_edge(a, b)
    }

    /// Adjacency as sorted pairs of node labels, for comparing two
    /// constructions without isomorphism testing.
    pub fn labeled_edges(&self) -> Vec<(VertexSet, VertexSet)> {
        let mut out: Vec<_> = self
            .graph
            .edges()
            .map(|(a, b)| {
                let (x, y) = (self.nodes[a].clone(), self.nodes[b].clone());
                if x <= y { (x, y) } else { (y, x) }
            })
            .collect();
        out.sort();
        out
    }

    /// DIMACS rendering with one `c node` comment per node.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (i, (set, kind)) in self.nodes.iter().zip(&self.kinds).enumerate() {
            writeln!(out, "c node {} {} {}", i + 1, kind.name(), set).unwrap();
        }
        out.push_str(&crate::dimacs::write_graph(&self.graph));
        out
    }
}

fn catalog_nodes(g: &Graph, cat: &ComponentCatalog) -> (Vec<VertexSet>, Vec<NodeKind>) {
    let mut nodes: Vec<VertexSet> = g.vertices().map(VertexSet::singleton).collect();
    let mut kinds = vec![NodeKind::Vertex; nodes.len()];
    for t in &cat.triangles {
        nodes.push(t.clone());
        kinds.push(NodeKind::Triangle);
    }
    for p in &cat.paths {
        nodes.push(p.key().clone());
        kinds.push(NodeKind::Path);
    }
    (nodes, kinds)
}

/// Builds the auxiliary graph by testing connectivity of every union.
/// Nodes are the singletons in vertex order, then triangles, then paths.
pub fn build_aux_direct(g: &Graph, cat: &ComponentCatalog) -> Result<AuxGraph> {
    let (nodes, kinds) = catalog_nodes(g, cat);
    let mut edges = Vec::new();
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if g.is_connected_subset(&nodes[a].union(&nodes[b])) {
                edges.push((a, b));
            }
        }
    }
    AuxGraph::assemble(g, nodes, kinds, &edges)
}

/// One twin-and-contract step: adds a true twin of every vertex of `set`
/// (vertices `0..n` of `current` being the host vertices), then contracts
/// the twins into a single node labeled `set`.
pub fn compress_component(current: &Graph, set: &VertexSet) -> Result<Graph> {
    let mut g = current.clone();
    let mut twins = Vec::with_capacity(set.len());
    for v in set.iter() {
        g = g.add_true_twin(v)?;
        twins.push(g.vertex_count() - 1);
    }
    let contract: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(a, b)| twins.contains(&a) && twins.contains(&b))
        .collect();
    let out = g.contract_edges(&contract)?;
    // The twins span G[set]; a disconnected set would leave several pieces.
    if out.vertex_count() != current.vertex_count() + 1 {
        return Err(Error::Internal(format!("component {set} is not connected")));
    }
    Ok(out)
}

/// Builds the auxiliary graph by repeatedly adding true twins and
/// contracting them, then reads the result back through node labels.
pub fn build_aux_by_twins(g: &Graph, cat: &ComponentCatalog) -> Result<AuxGraph> {
    let (nodes, kinds) = catalog_nodes(g, cat);
    let mut current = g.clone();
    for set in cat.component_sets() {
        current = compress_component(&current, set)?;
    }
    let index: HashMap<&VertexSet, usize> = nodes.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let position: Vec<usize> = current
        .labels()
        .iter()
        .map(|l| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::Internal(format!("unexpected label {l}")))
        })
        .collect::<Result<_>>()?;
    let edges: Vec<(usize, usize)> = current.edges().map(|(a, b)| (position[a], position[b])).collect();
    AuxGraph::assemble(g, nodes, kinds, &edges)
}

/// Union of a stable set of nodes, partitioned by the nodes themselves.
pub fn stable_to_co3plex(a: &AuxGraph, nodes: &[usize]) -> Result<Co3Plex> {
    for (i, &x) in nodes.iter().enumerate() {
        if x >= a.node_count() {
            return Err(Error::VertexOutOfRange { vertex: x + 1, n: a.node_count() });
        }
        if nodes[i + 1..].iter().any(|&y| y == x || a.adjacent(x, y)) {
            return Err(Error::NotStable);
        }
    }
    let mut components: Vec<VertexSet> = nodes.iter().map(|&i| a.node(i).clone()).collect();
    components.sort();
    let set = components.iter().flat_map(|c| c.iter()).collect();
    Ok(Co3Plex { set, components })
}

/// Node indices of the components of `G[S]`, sorted.
pub fn co3plex_to_stable(a: &AuxGraph, host: &Graph, set: &VertexSet) -> Result<Vec<usize>> {
    if !is_co3plex(host, set) {
        return Err(Error::NotCo3Plex(format!("{set}")));
    }
    let plex = Co3Plex::from_set(host, set.clone())?;
    let mut out = plex
        .components
        .iter()
        .map(|c| {
            a.node_index(c)
                .ok_or_else(|| Error::NotCo3Plex(format!("component {c} is not a node")))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    Ok(out)
}

/// For each maximal clique `K` of a chordal host: the singletons of `K`
/// plus every non-singleton node meeting `K`. Sets are node indices.
pub fn aux_cliques_by_formula(g: &Graph, cliques: &CliqueSet, a: &AuxGraph) -> Result<CliqueSet> {
    if !is_chordal(g) {
        return Err(Error::NotChordal);
    }
    let out = cliques
        .iter()
        .map(|k| {
            (0..a.node_count())
                .filter(|&i| match a.kind(i) {
                    NodeKind::Vertex => a.node(i).is_subset(k),
                    _ => a.node(i).intersects(k),
                })
                .collect()
        })
        .collect();
    Ok(CliqueSet::new(out))
}

/// Classifies a label as the node kind it would have in the auxiliary graph.
pub fn node_kind_of(host: &Graph, set: &VertexSet) -> NodeKind {
    match set.len() {
        1 => NodeKind::Vertex,
        _ if induces_triangle(host, set) => NodeKind::Triangle,
        _ => NodeKind::Path,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::{chordal_cliques, maximal_cliques_general};
    use crate::SearchOptions;

    fn catalog(g: &Graph) -> ComponentCatalog {
        ComponentCatalog::enumerate(g, SearchOptions::default()).unwrap()
    }

    fn labels(a: &AuxGraph, idx: &VertexSet) -> Vec<VertexSet> {
        let mut v: Vec<_> = idx.iter().map(|i| a.node(i).clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn p3_direct() {
        let g = Graph::path(3);
        let a = build_aux_direct(&g, &catalog(&g)).unwrap();
        assert_eq!(a.node_count(), 6);
        let expected: Vec<VertexSet> = vec![[0].into(), [1].into(), [2].into(), [0, 1].into(), [0, 1, 2].into(), [1, 2].into()];
        let mut got = a.nodes().to_vec();
        got.sort();
        let mut exp = expected.clone();
        exp.sort();
        assert_eq!(got, exp);
        // K6 minus the pair {1},{3}.
        assert_eq!(a.graph().edge_count(), 14);
        let (one, three) = (a.node_index(&[0].into()).unwrap(), a.node_index(&[2].into()).unwrap());
        assert!(!a.adjacent(one, three));
    }

    #[test]
    fn edge_and_triangle_direct() {
        let e = Graph::path(2);
        let a = build_aux_direct(&e, &catalog(&e)).unwrap();
        assert_eq!((a.node_count(), a.graph().edge_count()), (3, 3));
        let k3 = Graph::complete(3);
        let a = build_aux_direct(&k3, &catalog(&k3)).unwrap();
        assert_eq!((a.node_count(), a.graph().edge_count()), (7, 21));
    }

    #[test]
    fn twins_match_direct() {
        for g in [Graph::path(3), Graph::complete(3), Graph::path(4)] {
            let cat = catalog(&g);
            let d = build_aux_direct(&g, &cat).unwrap();
            let t = build_aux_by_twins(&g, &cat).unwrap();
            assert_eq!(d.labeled_edges(), t.labeled_edges());
        }
    }

    #[test]
    fn figure_one_intermediate_step() {
        let g = compress_component(&Graph::path(3), &[0, 1].into()).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.label(3), &VertexSet::from([0, 1]));
        let mut e: Vec<_> = g.edges().collect();
        e.sort();
        assert_eq!(e, vec![(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn bijection_examples() {
        let g = Graph::path(3);
        let a = build_aux_direct(&g, &catalog(&g)).unwrap();
        let whole = a.node_index(&[0, 1, 2].into()).unwrap();
        let c = stable_to_co3plex(&a, &[whole]).unwrap();
        assert_eq!(c.set, VertexSet::from([0, 1, 2]));
        assert_eq!(co3plex_to_stable(&a, &g, &c.set).unwrap(), vec![whole]);

        let empty = stable_to_co3plex(&a, &[]).unwrap();
        assert!(empty.set.is_empty() && empty.components.is_empty());

        let c = stable_to_co3plex(&a, &[0, 2]).unwrap();
        assert_eq!(c.set, VertexSet::from([0, 2]));
        assert_eq!(c.components.len(), 2);

        assert_eq!(stable_to_co3plex(&a, &[0, 1]), Err(Error::NotStable));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let a = build_aux_direct(&star, &catalog(&star)).unwrap();
        assert!(co3plex_to_stable(&a, &star, &star.all_vertices()).is_err());
    }

    #[test]
    fn clique_formula_examples() {
        let g = Graph::path(3);
        let a = build_aux_direct(&g, &catalog(&g)).unwrap();
        let k = chordal_cliques(&g).unwrap();
        let f = aux_cliques_by_formula(&g, &k, &a).unwrap();
        let by_clique: Vec<Vec<VertexSet>> = f.iter().map(|c| labels(&a, c)).collect();
        let mut k12 = vec![[0].into(), [1].into(), [0, 1].into(), [1, 2].into(), [0, 1, 2].into()];
        k12.sort();
        let mut k23 = vec![[1].into(), [2].into(), [0, 1].into(), [1, 2].into(), [0, 1, 2].into()];
        k23.sort();
        let mut got = by_clique.clone();
        got.sort();
        let mut exp: Vec<Vec<VertexSet>> = vec![k12, k23];
        exp.sort();
        assert_eq!(got, exp);
        assert_eq!(f.sorted_family(), maximal_cliques_general(a.graph()).sorted_family());

        let k3 = Graph::complete(3);
        let a = build_aux_direct(&k3, &catalog(&k3)).unwrap();
        let f = aux_cliques_by_formula(&k3, &chordal_cliques(&k3).unwrap(), &a).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.get(0).len(), 7);

        let c4 = Graph::cycle(4);
        let a = build_aux_direct(&c4, &catalog(&c4)).unwrap();
        assert_eq!(
            aux_cliques_by_formula(&c4, &maximal_cliques_general(&c4), &a).unwrap_err(),
            Error::NotChordal
        );
    }
}
