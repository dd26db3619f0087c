//! Triangles, induced paths, stable sets and co-3-plexes.
//!
//! These are the connected pieces a co-3-plex of a chordal graph decomposes
//! into, plus the exhaustive oracles used to check the solver.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;

use crate::{Error, Graph, Rational, Result, SearchOptions, VertexSet};

/// An induced path, stored as a vertex sequence whose first endpoint is the
/// smaller one, together with its unordered vertex-set key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InducedPath {
    sequence: Vec<usize>,
    key: VertexSet,
}

impl InducedPath {
    /// Orients `sequence` so the smaller endpoint comes first.
    pub fn new(mut sequence: Vec<usize>) -> Self {
        if sequence.first() > sequence.last() {
            sequence.reverse();
        }
        let key = sequence.iter().copied().collect();
        InducedPath { sequence, key }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn key(&self) -> &VertexSet {
        &self.key
    }

    pub fn edge_count(&self) -> usize {
        self.sequence.len().saturating_sub(1)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sequence.windows(2).map(|w| (w[0], w[1]))
    }

    /// Checks that the sequence induces exactly the path edges in `g`.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let s = &self.sequence;
        s.len() >= 2
            && self.key.len() == s.len()
            && g.contains_all(&self.key)
            && (0..s.len()).all(|i| {
                (i + 1..s.len()).all(|j| g.has_edge(s[i], s[j]) == (j == i + 1))
            })
    }
}

impl Ord for InducedPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .cmp(&other.key)
            .then_with(|| self.sequence.cmp(&other.sequence))
    }
}

impl PartialOrd for InducedPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Triangles and induced paths (with at least one edge) of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCatalog {
    pub triangles: Vec<VertexSet>,
    pub paths: Vec<InducedPath>,
}

impl ComponentCatalog {
    pub fn enumerate(g: &Graph, opts: SearchOptions) -> Result<Self> {
        Ok(ComponentCatalog {
            triangles: enumerate_triangles(g),
            paths: enumerate_induced_paths(g, opts)?,
        })
    }

    /// Non-singleton component sets: triangles first, then path keys.
    pub fn component_sets(&self) -> impl Iterator<Item = &VertexSet> {
        self.triangles.iter().chain(self.paths.iter().map(InducedPath::key))
    }
}

/// A co-3-plex with its partition into the components of `G[S]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Co3Plex {
    pub set: VertexSet,
    pub components: Vec<VertexSet>,
}

impl Co3Plex {
    /// Validates `set` and splits it into components, ordered by smallest
    /// vertex.
    pub fn from_set(g: &Graph, set: VertexSet) -> Result<Self> {
        if !g.contains_all(&set) {
            return Err(Error::NotSubset);
        }
        if let Some(v) = set.iter().find(|&v| g.degree_within(v, &set) > 2) {
            return Err(Error::NotCo3Plex(format!(
                "vertex {} has degree {} in the induced subgraph",
                v + 1,
                g.degree_within(v, &set)
            )));
        }
        let sub = g.induced_subgraph(&set)?;
        let components = sub
            .connected_components()
            .into_iter()
            .map(|c| c.iter().map(|i| set.as_slice()[i]).collect())
            .collect();
        Ok(Co3Plex { set, components })
    }

    pub fn weight(&self, g: &Graph) -> Rational {
        g.weight_of(&self.set)
    }
}

pub fn is_co3plex(g: &Graph, set: &VertexSet) -> bool {
    g.contains_all(set) && set.iter().all(|v| g.degree_within(v, set) <= 2)
}

/// Whether `set` induces a path with at least one edge: connected, acyclic
/// and of maximum degree two. Independent of the path enumerator.
pub fn induces_path(g: &Graph, set: &VertexSet) -> bool {
    set.len() >= 2
        && g.contains_all(set)
        && g.induced_edge_count(set) == set.len() - 1
        && set.iter().all(|v| g.degree_within(v, set) <= 2)
        && g.is_connected_subset(set)
}

/// Whether `set` induces a triangle.
pub fn induces_triangle(g: &Graph, set: &VertexSet) -> bool {
    set.len() == 3 && g.induced_edge_count(set) == 3
}

/// All triangles `{u < v < w}`, sorted.
pub fn enumerate_triangles(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                out.push(VertexSet::from_sorted_unchecked(vec![u, v, w]));
            }
        }
    }
    out.sort();
    out
}

/// Every vertex set inducing a path with at least one edge, exactly once,
/// sorted by key.
///
/// Paths grow at their tail: a vertex may be appended when it is adjacent
/// to the tail and to no other path vertex, so only induced paths are ever
/// built. Each path is reached from both endpoints and kept from the smaller
/// one. Fails once more than `opts.cap` paths have been emitted.
pub fn enumerate_induced_paths(g: &Graph, opts: SearchOptions) -> Result<Vec<InducedPath>> {
    let n = g.vertex_count();
    let per_start = opts.execution.map_range(n, |start| {
        let mut out = Vec::new();
        let mut in_path = vec![false; n];
        // blocked[x] counts path vertices other than the tail adjacent to x.
        let mut blocked = vec![0usize; n];
        let mut seq = vec![start];
        in_path[start] = true;
        extend_paths(g, &mut seq, &mut in_path, &mut blocked, &mut out, opts.cap)?;
        Ok(out)
    });
    let mut paths = Vec::new();
    for chunk in per_start {
        paths.extend(chunk?);
        if paths.len() > opts.cap {
            return Err(Error::CapExceeded { what: "induced paths", cap: opts.cap });
        }
    }
    paths.sort();
    Ok(paths)
}

fn extend_paths(
    g: &Graph,
    seq: &mut Vec<usize>,
    in_path: &mut [bool],
    blocked: &mut [usize],
    out: &mut Vec<InducedPath>,
    cap: usize,
) -> Result<()> {
    let tail = *seq.last().expect("paths are nonempty");
    let candidates: Vec<usize> = g
        .neighbors(tail)
        .iter()
        .copied()
        .filter(|&x| !in_path[x] && blocked[x] == 0)
        .collect();
    // The tail stops being the tail: its neighbors become blocked.
    for &x in g.neighbors(tail) {
        blocked[x] += 1;
    }
    for next in candidates {
        seq.push(next);
        in_path[next] = true;
        if seq[0] < next {
            out.push(InducedPath::new(seq.clone()));
            if out.len() > cap {
                return Err(Error::CapExceeded { what: "induced paths", cap });
            }
        }
        extend_paths(g, seq, in_path, blocked, out, cap)?;
        in_path[next] = false;
        seq.pop();
    }
    for &x in g.neighbors(tail) {
        blocked[x] -= 1;
    }
    Ok(())
}

/// Every stable set, including the empty one, sorted.
pub fn enumerate_stable_sets(g: &Graph, opts: SearchOptions) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    let mut out = vec![VertexSet::new()];
    let mut current = Vec::new();
    stable_rec(g, 0, &mut current, &mut out, opts.cap, n)?;
    out.sort();
    Ok(out)
}

fn stable_rec(
    g: &Graph,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<VertexSet>,
    cap: usize,
    n: usize,
) -> Result<()> {
    for v in from..n {
        if current.iter().any(|&u| g.has_edge(u, v)) {
            continue;
        }
        current.push(v);
        out.push(VertexSet::from_sorted_unchecked(current.clone()));
        if out.len() > cap {
            return Err(Error::CapExceeded { what: "stable sets", cap });
        }
        stable_rec(g, v + 1, current, out, cap, n)?;
        current.pop();
    }
    Ok(())
}

fn subset_budget(g: &Graph, cap: usize, what: &'static str) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    if n >= 63 || (1u64 << n) > cap as u64 {
        return Err(Error::CapExceeded { what, cap });
    }
    Ok(g.neighbor_masks().expect("n < 64"))
}

/// Lexicographic order on sorted vertex lists, for bitmask-encoded sets.
fn mask_lex_cmp(a: u64, b: u64) -> Ordering {
    VertexSet::from_mask(a).cmp(&VertexSet::from_mask(b))
}

/// Maximum-weight co-3-plex by scanning all `2^n` subsets; ties go to the
/// lexicographically smallest vertex set. Requires `2^n <= opts.cap`.
pub fn brute_force_max_co3plex(g: &Graph, opts: SearchOptions) -> Result<(Co3Plex, Rational)> {
    let masks = subset_budget(g, opts.cap, "subsets for the co-3-plex oracle")?;
    let n = g.vertex_count();
    let total = 1u64 << n;
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK) as usize;
    let best = opts.execution.map_range(chunks, |c| {
        let lo = c as u64 * CHUNK;
        let hi = (lo + CHUNK).min(total);
        let mut best: Option<(Rational, u64)> = None;
        for s in lo..hi {
            if (0..n).any(|v| s >> v & 1 == 1 && (masks[v] & s).count_ones() > 2) {
                continue;
            }
            let w = (0..n)
                .filter(|&v| s >> v & 1 == 1)
                .fold(Rational::zero(), |acc, v| acc + g.weight(v));
            best = pick_better(best, (w, s));
        }
        best
    });
    let (value, mask) = best
        .into_iter()
        .flatten()
        .fold(None, pick_better)
        .expect("the empty set is always a co-3-plex");
    let plex = Co3Plex::from_set(g, VertexSet::from_mask(mask))?;
    Ok((plex, value))
}

fn pick_better(current: Option<(Rational, u64)>, cand: (Rational, u64)) -> Option<(Rational, u64)> {
    match current {
        None => Some(cand),
        Some(cur) => match cand.0.cmp(&cur.0) {
            Ordering::Greater => Some(cand),
            Ordering::Equal if mask_lex_cmp(cand.1, cur.1) == Ordering::Less => Some(cand),
            _ => Some(cur),
        },
    }
}

/// Every co-3-plex, by scanning all subsets. Requires `2^n <= opts.cap`.
pub fn enumerate_co3plexes(g: &Graph, opts: SearchOptions) -> Result<Vec<VertexSet>> {
    let masks = subset_budget(g, opts.cap, "subsets for co-3-plex enumeration")?;
    let n = g.vertex_count();
    let mut out: Vec<VertexSet> = (0..1u64 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || (masks[v] & s).count_ones() <= 2))
        .map(VertexSet::from_mask)
        .collect();
    out.sort();
    Ok(out)
}

/// Induced paths by brute force over all subsets (test oracle).
pub fn brute_force_induced_path_sets(g: &Graph, opts: SearchOptions) -> Result<BTreeSet<VertexSet>> {
    subset_budget(g, opts.cap, "subsets for the path oracle")?;
    Ok((0..1u64 << g.vertex_count())
        .map(VertexSet::from_mask)
        .filter(|s| induces_path(g, s))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }

    fn star3() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn co3plex_examples() {
        assert!(is_co3plex(&Graph::cycle(4), &Graph::cycle(4).all_vertices()));
        assert!(!is_co3plex(&Graph::complete(4), &Graph::complete(4).all_vertices()));
        assert!(!is_co3plex(&star3(), &star3().all_vertices()));
        assert!(is_co3plex(&star3(), &VertexSet::new()));
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(enumerate_triangles(&Graph::complete(4)).len(), 4);
        assert!(enumerate_triangles(&Graph::path(3)).is_empty());
        assert_eq!(enumerate_triangles(&paw()), vec![VertexSet::from([0, 1, 2])]);
    }

    #[test]
    fn path_examples() {
        let keys = |g: &Graph| -> Vec<VertexSet> {
            enumerate_induced_paths(g, opts()).unwrap().into_iter().map(|p| p.key().clone()).collect()
        };
        assert_eq!(
            keys(&Graph::path(3)),
            vec![VertexSet::from([0, 1]), [0, 1, 2].into(), [1, 2].into()]
        );
        assert_eq!(keys(&Graph::complete(3)), vec![VertexSet::from([0, 1]), [0, 2].into(), [1, 2].into()]);
        assert!(keys(&Graph::new(1)).is_empty());
        let p = enumerate_induced_paths(&Graph::path(3), opts()).unwrap();
        assert_eq!(p[1].sequence(), &[0, 1, 2]);
        // C4 has four edges and four 3-vertex paths.
        assert_eq!(keys(&Graph::cycle(4)).len(), 8);
    }

    #[test]
    fn path_cap() {
        let e = enumerate_induced_paths(&Graph::path(6), opts().with_cap(5)).unwrap_err();
        assert_eq!(e, Error::CapExceeded { what: "induced paths", cap: 5 });
    }

    #[test]
    fn stable_set_examples() {
        assert_eq!(enumerate_stable_sets(&Graph::complete(3), opts()).unwrap().len(), 4);
        assert_eq!(enumerate_stable_sets(&Graph::new(2), opts()).unwrap().len(), 4);
        let mut g = Graph::new(6);
        for u in 0..6 {
            for v in u + 1..6 {
                if (u, v) != (0, 2) {
                    g.insert_edge(u, v).unwrap();
                }
            }
        }
        let s = enumerate_stable_sets(&g, opts()).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.contains(&[0, 2].into()));
        assert!(enumerate_stable_sets(&Graph::new(5), opts().with_cap(10)).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let (s, v) = brute_force_max_co3plex(&Graph::path(3), opts()).unwrap();
        assert_eq!((s.set, v), (VertexSet::from([0, 1, 2]), int(3)));

        let (s, v) = brute_force_max_co3plex(&Graph::complete(4), opts()).unwrap();
        assert_eq!(v, int(3));
        assert_eq!(s.set, VertexSet::from([0, 1, 2]));

        let k4 = Graph::complete(4).with_weights(vec![int(5), int(1), int(1), int(1)]).unwrap();
        let (s, v) = brute_force_max_co3plex(&k4, opts()).unwrap();
        assert_eq!(v, int(7));
        assert_eq!(s.set, VertexSet::from([0, 1, 2]));
        assert_eq!(s.components, vec![VertexSet::from([0, 1, 2])]);

        assert!(brute_force_max_co3plex(&Graph::new(25), opts()).is_err());
    }

    #[test]
    fn co3plex_components() {
        let c = Co3Plex::from_set(&Graph::path(3), [0, 2].into()).unwrap();
        assert_eq!(c.components, vec![VertexSet::from([0]), [2].into()]);
        assert!(matches!(
            Co3Plex::from_set(&star3(), star3().all_vertices()),
            Err(Error::NotCo3Plex(_))
        ));
    }
}
