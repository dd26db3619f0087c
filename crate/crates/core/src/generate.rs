//! Seeded random instances.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Graph, Rational, VertexSet};

/// Connected chordal graph on `n` vertices with unit weights.
///
/// Starting from one vertex, each new vertex is attached to a random
/// nonempty subset of a random current maximal clique: every member is kept
/// with probability `density`, and one is forced if none was kept. The new
/// vertex is simplicial when inserted, so the reverse insertion order is a
/// perfect elimination ordering. `n == 0` yields the empty graph.
pub fn generate_random_chordal(n: usize, density: f64, seed: u64) -> Graph {
    let density = density.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    if n == 0 {
        return g;
    }
    let mut cliques: Vec<VertexSet> = vec![VertexSet::singleton(0)];
    for v in 1..n {
        let k = rng.random_range(0..cliques.len());
        let clique = &cliques[k];
        let mut attach: Vec<usize> = clique
            .iter()
            .filter(|_| rng.random_bool(density))
            .collect();
        if attach.is_empty() {
            attach.push(*clique.as_slice().choose(&mut rng).expect("cliques are nonempty"));
        }
        for &u in &attach {
            g.insert_edge(u, v).expect("new vertex edges are fresh");
        }
        let new_clique: VertexSet = attach.iter().copied().chain([v]).collect();
        if attach.len() == clique.len() {
            cliques[k] = new_clique;
        } else {
            cliques.push(new_clique);
        }
    }
    g
}

/// Same graph with independent uniform integer weights in `lo..=hi`.
pub fn with_random_weights(g: Graph, lo: i64, hi: i64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..g.vertex_count())
        .map(|_| Rational::from_integer(rng.random_range(lo..=hi).into()))
        .collect();
    g.with_weights(weights).expect("one weight per vertex")
}

/// All labeled trees on `n` vertices, via Prüfer sequences (`n^(n-2)` of
/// them for `n >= 2`).
pub fn all_labeled_trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return vec![Graph::new(0)],
        1 => return vec![Graph::new(1)],
        2 => return vec![Graph::path(2)],
        _ => {}
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            prufer_tree(n, &seq)
        })
        .collect()
}

fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).expect("Prüfer decoding yields a simple tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::is_chordal;

    #[test]
    fn single_vertex() {
        let g = generate_random_chordal(1, 0.5, 3);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn chordal_connected_and_deterministic() {
        for seed in 0..20 {
            let g = generate_random_chordal(30, 0.5, seed);
            assert!(is_chordal(&g));
            assert!(g.is_connected());
            assert_eq!(g, generate_random_chordal(30, 0.5, seed));
        }
    }

    #[test]
    fn density_extremes() {
        // Density 1 always extends the chosen clique: a complete graph.
        assert_eq!(generate_random_chordal(6, 1.0, 1).edge_count(), 15);
        // Density 0 attaches to exactly one vertex: a tree.
        assert_eq!(generate_random_chordal(9, 0.0, 1).edge_count(), 8);
    }

    #[test]
    fn tree_counts() {
        assert_eq!(all_labeled_trees(4).len(), 16);
        for t in all_labeled_trees(5) {
            assert_eq!(t.edge_count(), 4);
            assert!(t.is_connected());
        }
    }
}
