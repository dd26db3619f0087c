//! Vertex-weighted simple undirected graphs.
//!
//! Vertices are `0..n` internally and `1..=n` in every textual form. Each
//! vertex carries a label: the set of original vertices it stands for. Plain
//! graphs label vertex `v` with `{v}`; induced subgraphs keep the labels of
//! the retained vertices and contractions label the new vertex with the
//! union of the merged labels, so derived graphs can be compared with each
//! other by label equality.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// Sorted, duplicate-free set of vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn from_sorted_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        VertexSet(vertices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) > 0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == self.len()
    }

    /// Bitmask form; only meaningful when every element is below 64.
    pub fn to_mask(&self) -> u64 {
        self.iter().fold(0u64, |m, v| m | (1 << v))
    }

    pub fn from_mask(mask: u64) -> VertexSet {
        VertexSet((0..64).filter(|&v| mask >> v & 1 == 1).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

/// Renders one-based, e.g. `{1,2,3}`.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    weights: Vec<Rational>,
    labels: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` unit-weight vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            weights: vec![Rational::one(); n],
            labels: (0..n).map(VertexSet::singleton).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_weights(mut self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.vertex_count() {
            return Err(Error::WeightCount {
                expected: self.vertex_count(),
                got: weights.len(),
            });
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<VertexSet>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::WeightCount {
                expected: self.vertex_count(),
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x + 1, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u + 1));
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u.min(v) + 1, u.max(v) + 1)),
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                Ok(())
            }
        }
    }

    fn push_vertex(&mut self, weight: Rational, label: VertexSet) -> usize {
        self.adjacency.push(Vec::new());
        self.weights.push(weight);
        self.labels.push(label);
        self.adjacency.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet((0..self.vertex_count()).collect())
    }

    /// Sorted open neighborhood.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        self.adjacency[v].iter().copied().chain([v]).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|nb| nb.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_of(&self, set: &VertexSet) -> Rational {
        set.iter()
            .fold(Rational::zero(), |acc, v| acc + &self.weights[v])
    }

    pub fn label(&self, v: usize) -> &VertexSet {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[VertexSet] {
        &self.labels
    }

    pub fn contains_all(&self, set: &VertexSet) -> bool {
        set.max().is_none_or(|m| m < self.vertex_count())
    }

    /// Adjacency bitmasks, available when the graph has at most 64 vertices.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        (self.vertex_count() <= 64).then(|| {
            self.adjacency
                .iter()
                .map(|nb| nb.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect()
        })
    }

    /// Subgraph induced by `set`. Vertex `i` of the result is the `i`-th
    /// element of `set`; weights and labels are carried over.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        if !self.contains_all(set) {
            return Err(Error::NotSubset);
        }
        let index: BTreeMap<usize, usize> = set.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let adjacency = set
            .iter()
            .map(|v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|u| index.get(u).copied())
                    .collect()
            })
            .collect();
        Ok(Graph {
            adjacency,
            weights: set.iter().map(|v| self.weights[v].clone()).collect(),
            labels: set.iter().map(|v| self.labels[v].clone()).collect(),
        })
    }

    /// Adds a true twin `v'` of `v`: `N[v'] = N[v] ∪ {v'}`. The twin is the
    /// last vertex of the result and copies the weight and label of `v`.
    pub fn add_true_twin(&self, v: usize) -> Result<Graph> {
        let n = self.vertex_count();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n });
        }
        let mut g = self.clone();
        let twin = g.push_vertex(self.weights[v].clone(), self.labels[v].clone());
        for u in self.closed_neighborhood(v).iter() {
            g.insert_edge(u, twin)?;
        }
        Ok(g)
    }

    /// The graph `G/F`. Each connected component of `(V(F), F)` collapses
    /// into one vertex adjacent to the union of the former neighborhoods and
    /// labeled with the union of the former labels; its weight is the sum.
    ///
    /// Untouched vertices keep their relative order and come first; the
    /// contracted vertices follow, ordered by their smallest member.
    pub fn contract_edges(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(Error::NotAnEdge(format!("{}-{}", u + 1, v + 1)));
            }
        }
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        let mut touched = vec![false; n];
        for &(u, v) in edges {
            touched[u] = true;
            touched[v] = true;
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }

        let mut new_index = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if !touched[v] {
                new_index[v] = next;
                next += 1;
            }
        }
        // Roots are component minima, so walking roots in order yields the
        // "smallest member" ordering.
        let mut root_index = BTreeMap::new();
        for (v, &t) in touched.iter().enumerate() {
            if t && find(&mut parent, v) == v {
                root_index.insert(v, next);
                next += 1;
            }
        }
        for v in 0..n {
            if touched[v] {
                let r = find(&mut parent, v);
                new_index[v] = root_index[&r];
            }
        }

        let mut weights = vec![Rational::zero(); next];
        let mut labels = vec![VertexSet::new(); next];
        for (v, &i) in new_index.iter().enumerate() {
            weights[i] += &self.weights[v];
            labels[i] = labels[i].union(&self.labels[v]);
        }
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); next];
        for (u, v) in self.edges() {
            let (a, b) = (new_index[u], new_index[v]);
            if a != b {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
            nb.dedup();
        }
        Ok(Graph {
            adjacency,
            weights,
            labels,
        })
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Components in order of their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            components.push(comp.into_iter().collect());
        }
        components
    }

    /// Whether `G[set]` is connected, without materializing the subgraph.
    /// The empty set counts as connected.
    pub fn is_connected_subset(&self, set: &VertexSet) -> bool {
        let Some(&start) = set.as_slice().first() else {
            return true;
        };
        let mut seen = vec![false; set.len()];
        let pos = |v: usize| set.as_slice().binary_search(&v).ok();
        seen[0] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if let Some(i) = pos(w) {
                    if !seen[i] {
                        seen[i] = true;
                        reached += 1;
                        stack.push(w);
                    }
                }
            }
        }
        reached == set.len()
    }

    /// Number of edges of `G[set]`.
    pub fn induced_edge_count(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|v| self.adjacency[v].iter().filter(|&&u| u > v && set.contains(u)).count())
            .sum()
    }

    /// Degree of `v` inside `G[set]`.
    pub fn degree_within(&self, v: usize, set: &VertexSet) -> usize {
        self.adjacency[v].iter().filter(|&&u| set.contains(u)).count()
    }

    /// Same graph with vertices renamed by `perm` (vertex `v` becomes
    /// `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::Internal("relabeling is not a permutation".into()));
        }
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v])?;
        }
        for (v, &p) in perm.iter().enumerate() {
            g.weights[p] = self.weights[v].clone();
            g.labels[p] = self.labels[v].clone();
        }
        Ok(g)
    }

    /// Cycle on `n >= 3` vertices `0-1-...-(n-1)-0`.
    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).expect("clique edges are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn p3() -> Graph {
        Graph::path(3)
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = p3().induced_subgraph(&[0, 2].into()).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.label(1), &VertexSet::singleton(2));

        let k4 = Graph::complete(4);
        let t = k4.induced_subgraph(&[0, 1, 3].into()).unwrap();
        assert_eq!(t, Graph::complete(3).with_labels(vec![[0].into(), [1].into(), [3].into()]).unwrap());

        assert_eq!(p3().induced_subgraph(&p3().all_vertices()).unwrap(), p3());
        assert_eq!(p3().induced_subgraph(&[0, 5].into()), Err(Error::NotSubset));
    }

    #[test]
    fn twin_examples() {
        // Twin of vertex 1 in P3 is adjacent to {1,2}.
        let g = p3().add_true_twin(0).unwrap();
        assert_eq!(g.neighbors(3), &[0, 1]);

        let g = Graph::new(1).add_true_twin(0).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);

        for v in 0..3 {
            let g = Graph::complete(3).add_true_twin(v).unwrap();
            assert_eq!(g.edge_count(), 6);
            let mut nv = g.closed_neighborhood(v);
            nv = nv.union(&VertexSet::singleton(3));
            assert_eq!(g.closed_neighborhood(3), nv);
        }
        assert!(matches!(p3().add_true_twin(7), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn contraction_examples() {
        let k3 = Graph::complete(3).contract_edges(&[(0, 1)]).unwrap();
        assert_eq!(k3.vertex_count(), 2);
        assert_eq!(k3.edge_count(), 1);
        assert_eq!(k3.label(1), &VertexSet::from([0, 1]));

        let p = p3().contract_edges(&[(0, 1)]).unwrap();
        assert_eq!(p.vertex_count(), 2);
        assert_eq!(p.edge_count(), 1);
        assert_eq!(p.weight(1), &int(2));

        assert!(matches!(p3().contract_edges(&[(0, 2)]), Err(Error::NotAnEdge(_))));
    }

    #[test]
    fn figure_one_twin_then_contract() {
        // Twins 1' (vertex 3) and 2' (vertex 4) of P3, then contract 1'-2'.
        let g = p3().add_true_twin(0).unwrap().add_true_twin(1).unwrap();
        let mut edges: Vec<_> = g.edges().collect();
        edges.sort();
        assert_eq!(
            edges,
            vec![(0, 1), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)]
        );
        let c = g.contract_edges(&[(3, 4)]).unwrap();
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.label(3), &VertexSet::from([0, 1]));
        assert_eq!(c.neighbors(3), &[0, 1, 2]);
        assert_eq!(c.neighbors(0), &[1, 3]);
    }

    #[test]
    fn connectivity_examples() {
        assert!(p3().is_connected());
        let two = Graph::new(2);
        assert!(!two.is_connected());
        assert_eq!(two.connected_components().len(), 2);
        let empty = Graph::new(0);
        assert!(empty.is_connected());
        assert!(empty.connected_components().is_empty());
        assert!(p3().is_connected_subset(&[0, 1].into()));
        assert!(!p3().is_connected_subset(&[0, 2].into()));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Graph::from_edges(3, &[(0, 5)]), Err(Error::VertexOutOfRange { vertex: 6, .. })));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(1, 2)));
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(2)));
    }

    #[test]
    fn vertex_set_ops() {
        let a = VertexSet::from([3, 1, 2, 1]);
        assert_eq!(a.as_slice(), &[1, 2, 3]);
        assert_eq!(a.to_string(), "{2,3,4}");
        assert_eq!(a.intersection_len(&[2, 3, 9].into()), 2);
        assert_eq!(VertexSet::from_mask(a.to_mask()), a);
    }
}
