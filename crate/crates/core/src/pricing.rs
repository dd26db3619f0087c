//! Maximum vertex-and-edge-weighted induced path.
//!
//! This is the pricing oracle of the column generation: with edge weights
//! `Σ λ_K` over the maximal cliques containing the edge and vertex weights
//! `-μ_v`, the value of a path equals the reduced cost of its column.
//!
//! The search is exact and exponential in the worst case: best-first
//! endpoint extension, pruned with an optimistic bound.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_traits::{Signed, Zero};

use crate::chordal::CliqueSet;
use crate::lp::DualValues;
use crate::structures::{induces_path, InducedPath};
use crate::{Error, Graph, Rational, Result, SearchOptions, VertexSet};

/// How vertex weights are derived from the star duals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PricingConvention {
    /// `-μ_v`: path value equals the reduced cost of its column.
    #[default]
    Dual,
    /// `w_v - μ_v`.
    Paper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PricingWeights {
    vertex: Vec<Rational>,
    edge: HashMap<(usize, usize), Rational>,
}

impl PricingWeights {
    /// Edge weights must be given for exactly the edges of `g`, keyed with
    /// either orientation.
    pub fn new(g: &Graph, vertex: Vec<Rational>, edges: impl IntoIterator<Item = ((usize, usize), Rational)>) -> Result<Self> {
        if vertex.len() != g.vertex_count() {
            return Err(Error::WeightCount { expected: g.vertex_count(), got: vertex.len() });
        }
        let mut edge = HashMap::new();
        for ((u, v), w) in edges {
            if !g.has_edge(u, v) {
                return Err(Error::NotAnEdge(format!("{}-{}", u + 1, v + 1)));
            }
            edge.insert((u.min(v), u.max(v)), w);
        }
        if edge.len() != g.edge_count() {
            return Err(Error::WeightCount { expected: g.edge_count(), got: edge.len() });
        }
        Ok(PricingWeights { vertex, edge })
    }

    pub fn vertex(&self, v: usize) -> &Rational {
        &self.vertex[v]
    }

    pub fn edge(&self, u: usize, v: usize) -> &Rational {
        &self.edge[&(u.min(v), u.max(v))]
    }

    /// Sum of vertex weights plus the weights of the induced edges.
    pub fn set_value(&self, g: &Graph, set: &VertexSet) -> Rational {
        let mut value = set.iter().fold(Rational::zero(), |acc, v| acc + &self.vertex[v]);
        for u in set.iter() {
            for &v in g.neighbors(u) {
                if v > u && set.contains(v) {
                    value += self.edge(u, v);
                }
            }
        }
        value
    }
}

/// Composite weights from master duals.
pub fn edge_weights_from_duals(
    g: &Graph,
    cliques: &CliqueSet,
    duals: &DualValues,
    convention: PricingConvention,
) -> PricingWeights {
    let vertex = g
        .vertices()
        .map(|v| match convention {
            PricingConvention::Dual => -&duals.star[v],
            PricingConvention::Paper => g.weight(v) - &duals.star[v],
        })
        .collect();
    let edge = g
        .edges()
        .map(|(u, v)| {
            let w = cliques
                .containing_edge(u, v)
                .iter()
                .fold(Rational::zero(), |acc, &k| acc + &duals.clique[k]);
            ((u, v), w)
        })
        .collect();
    PricingWeights { vertex, edge }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PricedPath {
    pub path: InducedPath,
    pub value: Rational,
}

/// Higher value first, then the lexicographically smaller vertex set.
fn rank(a: &PricedPath, b: &PricedPath) -> Ordering {
    b.value.cmp(&a.value).then_with(|| a.path.cmp(&b.path))
}

struct Node {
    bound: Rational,
    value: Rational,
    seq: Vec<usize>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .cmp(&other.bound)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Keeps the `limit` best paths seen so far.
struct TopPaths {
    limit: usize,
    best: Vec<PricedPath>,
}

impl TopPaths {
    fn offer(&mut self, cand: PricedPath) {
        let pos = self
            .best
            .binary_search_by(|p| rank(p, &cand))
            .unwrap_or_else(|e| e);
        if pos < self.limit {
            self.best.insert(pos, cand);
            self.best.truncate(self.limit);
        }
    }

    /// Value a node must be able to reach to still matter.
    fn threshold(&self) -> Option<&Rational> {
        (self.best.len() == self.limit).then(|| &self.best[self.limit - 1].value)
    }
}

/// Optimistic completion of a partial path: every vertex that could still
/// be appended and every edge among those and the tail, counted when
/// positive.
fn bound(g: &Graph, pw: &PricingWeights, seq: &[usize], value: &Rational, in_path: &[bool], blocked: &[bool]) -> Rational {
    let tail = *seq.last().expect("nonempty");
    let open = |x: usize| !in_path[x] && !blocked[x];
    let mut b = value.clone();
    for x in g.vertices().filter(|&x| open(x)) {
        if pw.vertex[x].is_positive() {
            b += &pw.vertex[x];
        }
        for &y in g.neighbors(x) {
            if (y > x && open(y)) || y == tail {
                let w = pw.edge(x, y);
                if w.is_positive() {
                    b += w;
                }
            }
        }
    }
    b
}

fn search_from(
    g: &Graph,
    pw: &PricingWeights,
    start: usize,
    limit: usize,
    exclude: &HashSet<VertexSet>,
    cap: usize,
) -> Result<Vec<PricedPath>> {
    let n = g.vertex_count();
    let mut top = TopPaths { limit, best: Vec::new() };
    let mut heap = BinaryHeap::new();
    let mut in_path = vec![false; n];
    let mut blocked = vec![false; n];
    let mark = |seq: &[usize], in_path: &mut [bool], blocked: &mut [bool]| {
        in_path.iter_mut().for_each(|x| *x = false);
        blocked.iter_mut().for_each(|x| *x = false);
        for &v in seq {
            in_path[v] = true;
        }
        for &v in &seq[..seq.len() - 1] {
            for &u in g.neighbors(v) {
                blocked[u] = true;
            }
        }
    };
    let seq = vec![start];
    mark(&seq, &mut in_path, &mut blocked);
    let value = pw.vertex[start].clone();
    heap.push(Node {
        bound: bound(g, pw, &seq, &value, &in_path, &blocked),
        value,
        seq,
    });
    let mut expanded = 0usize;
    while let Some(node) = heap.pop() {
        if top.threshold().is_some_and(|t| node.bound < *t) {
            break;
        }
        expanded += 1;
        if expanded > cap {
            return Err(Error::CapExceeded { what: "pricing search nodes", cap });
        }
        let tail = *node.seq.last().expect("nonempty");
        if node.seq.len() >= 2 && node.seq[0] < tail {
            let path = InducedPath::new(node.seq.clone());
            if !exclude.contains(path.key()) {
                top.offer(PricedPath { path, value: node.value.clone() });
            }
        }
        mark(&node.seq, &mut in_path, &mut blocked);
        for &x in g.neighbors(tail) {
            if in_path[x] || blocked[x] {
                continue;
            }
            let mut seq = node.seq.clone();
            seq.push(x);
            let value = &node.value + &pw.vertex[x] + pw.edge(tail, x);
            // The old tail now blocks its neighbors.
            let mut child_blocked = blocked.clone();
            for &u in g.neighbors(tail) {
                child_blocked[u] = true;
            }
            in_path[x] = true;
            let b = bound(g, pw, &seq, &value, &in_path, &child_blocked);
            in_path[x] = false;
            if top.threshold().is_some_and(|t| b < *t) {
                continue;
            }
            heap.push(Node { bound: b, value, seq });
        }
    }
    Ok(top.best)
}

/// The `limit` best induced paths (at least one edge) whose vertex sets are
/// not in `exclude`, best first.
pub fn best_induced_paths(
    g: &Graph,
    pw: &PricingWeights,
    limit: usize,
    exclude: &HashSet<VertexSet>,
    opts: SearchOptions,
) -> Result<Vec<PricedPath>> {
    if limit == 0 {
        return Ok(Vec::new());
    }
    let per_start = opts
        .execution
        .map_range(g.vertex_count(), |s| search_from(g, pw, s, limit, exclude, opts.cap));
    let mut all = Vec::new();
    for r in per_start {
        all.extend(r?);
    }
    all.sort_by(rank);
    all.truncate(limit);
    Ok(all)
}

/// Best induced path with at least one edge, or `None` when `g` has no
/// edge. Ties go to the lexicographically smallest vertex set; the path is
/// oriented with its smaller endpoint first.
pub fn max_weight_induced_path(g: &Graph, pw: &PricingWeights, opts: SearchOptions) -> Result<Option<PricedPath>> {
    Ok(best_induced_paths(g, pw, 1, &HashSet::new(), opts)?.into_iter().next())
}

/// Same contract as [`max_weight_induced_path`], by scanning every vertex
/// subset. Requires `2^n <= opts.cap`.
pub fn brute_force_pricing(g: &Graph, pw: &PricingWeights, opts: SearchOptions) -> Result<Option<PricedPath>> {
    let n = g.vertex_count();
    if n >= 63 || (1u64 << n) > opts.cap as u64 {
        return Err(Error::CapExceeded { what: "subsets for the pricing oracle", cap: opts.cap });
    }
    const CHUNK: u64 = 1 << 10;
    let total = 1u64 << n;
    let chunks = total.div_ceil(CHUNK) as usize;
    let best = opts.execution.map_range(chunks, |c| {
        let lo = c as u64 * CHUNK;
        let hi = (lo + CHUNK).min(total);
        let mut best: Option<PricedPath> = None;
        for mask in lo..hi {
            if mask.count_ones() < 2 {
                continue;
            }
            let set = VertexSet::from_mask(mask);
            if !induces_path(g, &set) {
                continue;
            }
            let cand = PricedPath {
                value: pw.set_value(g, &set),
                path: InducedPath::new(order_path(g, &set)),
            };
            if best.as_ref().is_none_or(|b| rank(&cand, b) == Ordering::Less) {
                best = Some(cand);
            }
        }
        best
    });
    Ok(best.into_iter().flatten().min_by(rank))
}

/// Walks an induced path from its smaller endpoint.
fn order_path(g: &Graph, set: &VertexSet) -> Vec<usize> {
    let start = set
        .iter()
        .find(|&v| g.degree_within(v, set) <= 1)
        .expect("a path has an endpoint");
    let mut seq = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g
        .neighbors(cur)
        .iter()
        .find(|&&x| x != prev && set.contains(x))
    {
        seq.push(next);
        prev = cur;
        cur = next;
    }
    seq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::chordal_cliques;
    use crate::{int, ratio};

    fn weights(g: &Graph, vertex: &[i64], edges: &[i64]) -> PricingWeights {
        let e: Vec<_> = g.edges().zip(edges.iter().map(|&w| int(w))).collect();
        PricingWeights::new(g, vertex.iter().map(|&w| int(w)).collect(), e).unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn single_edge() {
        let g = Graph::path(2);
        let pw = weights(&g, &[2, 3], &[4]);
        let best = max_weight_induced_path(&g, &pw, opts()).unwrap().unwrap();
        assert_eq!(best.value, int(9));
        assert_eq!(best.path.sequence(), &[0, 1]);
    }

    #[test]
    fn p3_negative_middle() {
        let g = Graph::path(3);
        let pw = weights(&g, &[1, -5, 1], &[0, 0]);
        let best = max_weight_induced_path(&g, &pw, opts()).unwrap().unwrap();
        assert_eq!(best.path.sequence(), &[0, 1, 2]);
        assert_eq!(best.value, int(-3));
        assert_eq!(brute_force_pricing(&g, &pw, opts()).unwrap().unwrap(), best);
    }

    #[test]
    fn triangle_only_edges() {
        let g = Graph::complete(3);
        // Edge order (0,1), (0,2), (1,2).
        let pw = weights(&g, &[0, 0, 0], &[5, 1, 1]);
        let best = max_weight_induced_path(&g, &pw, opts()).unwrap().unwrap();
        assert_eq!((best.path.key().clone(), best.value), (VertexSet::from([0, 1]), int(5)));
    }

    #[test]
    fn no_edges() {
        let g = Graph::new(1);
        let pw = weights(&g, &[3], &[]);
        assert_eq!(max_weight_induced_path(&g, &pw, opts()).unwrap(), None);
        assert_eq!(brute_force_pricing(&g, &pw, opts()).unwrap(), None);
    }

    #[test]
    fn all_zero_weights() {
        let g = Graph::path(4);
        let pw = weights(&g, &[0; 4], &[0; 3]);
        let best = max_weight_induced_path(&g, &pw, opts()).unwrap().unwrap();
        assert_eq!(best.value, int(0));
        assert_eq!(best.path.key(), &VertexSet::from([0, 1]));
    }

    #[test]
    fn dual_weights() {
        let g = Graph::path(3);
        let k = chordal_cliques(&g).unwrap();
        let i12 = k.iter().position(|c| c.contains(0)).unwrap();
        let mut clique = vec![Rational::zero(); 2];
        clique[i12] = ratio(1, 2);
        clique[1 - i12] = ratio(1, 3);
        let d = DualValues { clique, star: vec![int(0); 3] };
        let pw = edge_weights_from_duals(&g, &k, &d, PricingConvention::Dual);
        assert_eq!(pw.edge(0, 1), &ratio(1, 2));
        assert_eq!(pw.edge(2, 1), &ratio(1, 3));

        let k4 = Graph::complete(4);
        let kk = chordal_cliques(&k4).unwrap();
        let d = DualValues { clique: vec![int(1)], star: vec![int(0); 4] };
        let pw = edge_weights_from_duals(&k4, &kk, &d, PricingConvention::Dual);
        assert!(k4.edges().all(|(u, v)| pw.edge(u, v) == &int(1)));

        let zero = DualValues::zero(1, 4);
        let pw = edge_weights_from_duals(&k4, &kk, &zero, PricingConvention::Paper);
        assert!(k4.edges().all(|(u, v)| pw.edge(u, v).is_zero()));
        assert_eq!(pw.vertex(0), &int(1));
    }

    #[test]
    fn top_k_with_exclusions() {
        let g = Graph::path(3);
        let pw = weights(&g, &[1, 1, 1], &[1, 1]);
        let exclude: HashSet<VertexSet> = [VertexSet::from([0, 1, 2])].into();
        let top = best_induced_paths(&g, &pw, 5, &exclude, opts()).unwrap();
        let keys: Vec<_> = top.iter().map(|p| p.path.key().clone()).collect();
        assert_eq!(keys, vec![VertexSet::from([0, 1]), [1, 2].into()]);
    }

    #[test]
    fn rejects_bad_weights() {
        let g = Graph::path(3);
        assert!(PricingWeights::new(&g, vec![int(0); 3], [((0, 2), int(1))]).is_err());
        assert!(PricingWeights::new(&g, vec![int(0); 3], [((0, 1), int(1))]).is_err());
    }
}
