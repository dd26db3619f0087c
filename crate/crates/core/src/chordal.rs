//! Chordality recognition and maximal cliques.

use std::collections::BTreeMap;

use crate::{Error, Graph, Result, VertexSet};

/// A vertex ordering together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrdering {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl EliminationOrdering {
    /// Wraps a permutation of `0..n`. Whether it is a perfect elimination
    /// ordering of some graph is checked by [`EliminationOrdering::verify`].
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::InvalidOrdering("not a permutation".into()));
            }
            position[v] = i;
        }
        Ok(EliminationOrdering { order, position })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Neighbors of `v` that come after it, sorted by position.
    pub fn later_neighbors(&self, g: &Graph, v: usize) -> Vec<usize> {
        let mut later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.position[u] > self.position[v])
            .collect();
        later.sort_by_key(|&u| self.position[u]);
        later
    }

    /// Checks the perfect elimination property: for every `v`, the later
    /// neighbors other than the earliest one (the parent) are all adjacent
    /// to the parent.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(Error::InvalidOrdering(format!(
                "ordering has {} vertices, graph has {}",
                self.len(),
                g.vertex_count()
            )));
        }
        for &v in &self.order {
            let later = self.later_neighbors(g, v);
            if let Some((&parent, rest)) = later.split_first() {
                if let Some(&bad) = rest.iter().find(|&&u| !g.has_edge(parent, u)) {
                    return Err(Error::InvalidOrdering(format!(
                        "later neighbors {} and {} of vertex {} are not adjacent",
                        parent + 1,
                        bad + 1,
                        v + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Lexicographic breadth-first search by partition refinement, starting at
/// vertex 0 and breaking ties by vertex index. Returns the visit order.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut classes: Vec<Vec<usize>> = if n > 0 { vec![(0..n).collect()] } else { vec![] };
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some(first) = classes.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            classes.remove(0);
        }
        visited[v] = true;
        order.push(v);
        let mut refined = Vec::with_capacity(classes.len() + 1);
        for class in classes.drain(..) {
            let (hit, miss): (Vec<usize>, Vec<usize>) =
                class.into_iter().partition(|&u| g.has_edge(u, v));
            if !hit.is_empty() {
                refined.push(hit);
            }
            if !miss.is_empty() {
                refined.push(miss);
            }
        }
        classes = refined;
    }
    debug_assert!(visited.iter().all(|&x| x));
    order
}

/// Perfect elimination ordering (reverse LexBFS order), or `None` if the
/// graph is not chordal. The candidate ordering is always verified.
pub fn peo(g: &Graph) -> Option<EliminationOrdering> {
    let mut order = lex_bfs(g);
    order.reverse();
    let ordering = EliminationOrdering::new(order).expect("LexBFS visits every vertex once");
    ordering.verify(g).ok().map(|_| ordering)
}

pub fn is_chordal(g: &Graph) -> bool {
    peo(g).is_some()
}

/// Maximal cliques with an edge → clique index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSet {
    cliques: Vec<VertexSet>,
    by_edge: BTreeMap<(usize, usize), Vec<usize>>,
}

impl CliqueSet {
    pub fn new(cliques: Vec<VertexSet>) -> Self {
        let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, c) in cliques.iter().enumerate() {
            let s = c.as_slice();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    by_edge.entry((s[i], s[j])).or_default().push(k);
                }
            }
        }
        CliqueSet { cliques, by_edge }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    pub fn get(&self, k: usize) -> &VertexSet {
        &self.cliques[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.cliques.iter()
    }

    /// Indices of the cliques containing both endpoints.
    pub fn containing_edge(&self, u: usize, v: usize) -> &[usize] {
        self.by_edge
            .get(&(u.min(v), u.max(v)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Cliques as a sorted family, for order-insensitive comparison.
    pub fn sorted_family(&self) -> Vec<VertexSet> {
        let mut f = self.cliques.clone();
        f.sort();
        f
    }
}

/// Maximal cliques of a chordal graph from a perfect elimination ordering.
/// Candidate `{v} ∪ later(v)` is dropped when some vertex whose parent is
/// `v` has more later neighbors than `v`. Cliques are indexed by the
/// position of their earliest vertex.
pub fn maximal_cliques_chordal(g: &Graph, ordering: &EliminationOrdering) -> Result<CliqueSet> {
    ordering.verify(g)?;
    let n = g.vertex_count();
    let later: Vec<Vec<usize>> = (0..n).map(|v| ordering.later_neighbors(g, v)).collect();
    let mut dominated = vec![false; n];
    for u in 0..n {
        if let Some(&parent) = later[u].first() {
            if later[u].len() > later[parent].len() {
                dominated[parent] = true;
            }
        }
    }
    let cliques = ordering
        .order()
        .iter()
        .filter(|&&v| !dominated[v])
        .map(|&v| later[v].iter().copied().chain([v]).collect())
        .collect();
    Ok(CliqueSet::new(cliques))
}

/// Maximal cliques of a chordal graph, computing the ordering first.
pub fn chordal_cliques(g: &Graph) -> Result<CliqueSet> {
    let ordering = peo(g).ok_or(Error::NotChordal)?;
    maximal_cliques_chordal(g, &ordering)
}

/// Every maximal clique of an arbitrary graph, by Bron–Kerbosch with
/// Tomita pivoting. Exponential in the worst case. Sorted canonically.
/// The empty graph has no cliques.
pub fn maximal_cliques_general(g: &Graph) -> CliqueSet {
    let mut out = Vec::new();
    if g.vertex_count() == 0 {
        return CliqueSet::new(out);
    }
    let p: Vec<usize> = g.vertices().collect();
    bron_kerbosch(g, &mut Vec::new(), p, Vec::new(), &mut out);
    out.sort();
    CliqueSet::new(out)
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.iter().copied().collect());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .expect("p is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    let (mut p, mut x) = (p, x);
    for v in candidates {
        let np = p.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
        let nx = x.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }

    fn family(sets: &[&[usize]]) -> Vec<VertexSet> {
        let mut f: Vec<VertexSet> = sets.iter().map(|s| s.iter().copied().collect()).collect();
        f.sort();
        f
    }

    #[test]
    fn peo_examples() {
        let p3 = Graph::path(3);
        let o = peo(&p3).unwrap();
        o.verify(&p3).unwrap();
        assert!(peo(&Graph::cycle(4)).is_none());
        let k4 = Graph::complete(4);
        for order in [[0, 1, 2, 3], [3, 1, 0, 2], [2, 3, 1, 0]] {
            EliminationOrdering::new(order.to_vec()).unwrap().verify(&k4).unwrap();
        }
    }

    #[test]
    fn chordality_examples() {
        assert!(is_chordal(&Graph::path(6)));
        assert!(is_chordal(&Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()));
        assert!(!is_chordal(&Graph::cycle(5)));
        // C4 plus one chord.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(is_chordal(&g));
        assert!(is_chordal(&Graph::new(0)));
    }

    #[test]
    fn chordal_clique_examples() {
        let p3 = chordal_cliques(&Graph::path(3)).unwrap();
        assert_eq!(p3.sorted_family(), family(&[&[0, 1], &[1, 2]]));
        assert_eq!(chordal_cliques(&Graph::complete(4)).unwrap().sorted_family(), family(&[&[0, 1, 2, 3]]));
        assert_eq!(chordal_cliques(&paw()).unwrap().sorted_family(), family(&[&[0, 1, 2], &[2, 3]]));
        assert_eq!(chordal_cliques(&Graph::cycle(4)), Err(Error::NotChordal));
    }

    #[test]
    fn rejects_bad_ordering() {
        let o = EliminationOrdering::new(vec![1, 0, 2]).unwrap();
        assert!(matches!(maximal_cliques_chordal(&Graph::path(3), &o), Err(Error::InvalidOrdering(_))));
        assert!(EliminationOrdering::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn general_clique_examples() {
        let c4 = maximal_cliques_general(&Graph::cycle(4));
        assert_eq!(c4.sorted_family(), family(&[&[0, 1], &[0, 3], &[1, 2], &[2, 3]]));
        let mut g = Graph::new(6);
        for u in 0..6 {
            for v in u + 1..6 {
                if (u, v) != (0, 2) {
                    g.insert_edge(u, v).unwrap();
                }
            }
        }
        assert_eq!(
            maximal_cliques_general(&g).sorted_family(),
            family(&[&[0, 1, 3, 4, 5], &[1, 2, 3, 4, 5]])
        );
        assert_eq!(maximal_cliques_general(&Graph::complete(3)).sorted_family(), family(&[&[0, 1, 2]]));
    }

    #[test]
    fn edge_index() {
        let k = chordal_cliques(&paw()).unwrap();
        let tri = k.iter().position(|c| c.len() == 3).unwrap();
        assert_eq!(k.containing_edge(1, 0), &[tri]);
        assert_eq!(k.containing_edge(2, 3).len(), 1);
        assert!(k.containing_edge(0, 3).is_empty());
    }
}
