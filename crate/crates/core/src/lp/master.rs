//! The master LP over vertex, triangle and path columns.
//!
//! Rows, all of the form `· ≤ rhs`:
//!
//! * one clique row per maximal clique `K`, right-hand side 1: `+1` on `x_v`
//!   for `v ∈ K`, and `-(|S ∩ K| - 1)` on every triangle or path column `S`
//!   meeting `K`;
//! * one star row per vertex `v`, right-hand side 0: `-1` on `x_v` and `+1`
//!   on every triangle or path column containing `v`.
//!
//! Every column is nonnegative. The `x` columns carry the vertex weights;
//! triangle and path columns have objective 0 unless overridden.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::simplex::{LinearProgram, LpSolution};
use crate::chordal::CliqueSet;
use crate::{int, Error, Graph, Rational, Result, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnKind {
    X,
    T,
    P,
}

impl ColumnKind {
    pub fn prefix(self) -> &'static str {
        match self {
            ColumnKind::X => "x",
            ColumnKind::T => "t",
            ColumnKind::P => "p",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub kind: ColumnKind,
    pub set: VertexSet,
    pub objective: Rational,
    /// Nonzero `(row, coefficient)` pairs in row order.
    pub coeffs: Vec<(usize, i64)>,
}

impl Column {
    pub fn name(&self) -> String {
        let body: Vec<String> = self.set.iter().map(|v| (v + 1).to_string()).collect();
        format!("{}_{}", self.kind.prefix(), body.join("_"))
    }
}

/// Dual values split by row family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualValues {
    /// One per maximal clique, in clique order.
    pub clique: Vec<Rational>,
    /// One per vertex.
    pub star: Vec<Rational>,
}

impl DualValues {
    pub fn zero(cliques: usize, vertices: usize) -> Self {
        DualValues {
            clique: vec![Rational::zero(); cliques],
            star: vec![Rational::zero(); vertices],
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.clique.iter().chain(&self.star).all(|d| !d.is_negative())
    }
}

#[derive(Debug, Clone)]
pub struct MasterModel {
    cliques: CliqueSet,
    vertices: usize,
    columns: Vec<Column>,
    keys: HashMap<(ColumnKind, VertexSet), usize>,
}

impl MasterModel {
    /// Empty model (no columns) over the given clique rows.
    pub fn empty(g: &Graph, cliques: CliqueSet) -> Self {
        MasterModel {
            cliques,
            vertices: g.vertex_count(),
            columns: Vec::new(),
            keys: HashMap::new(),
        }
    }

    pub fn cliques(&self) -> &CliqueSet {
        &self.cliques
    }

    pub fn row_count(&self) -> usize {
        self.cliques.len() + self.vertices
    }

    pub fn clique_row(&self, k: usize) -> usize {
        k
    }

    pub fn star_row(&self, v: usize) -> usize {
        self.cliques.len() + v
    }

    pub fn rhs(&self, row: usize) -> Rational {
        if row < self.cliques.len() { Rational::one() } else { Rational::zero() }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Column {
        &self.columns[j]
    }

    pub fn find(&self, kind: ColumnKind, set: &VertexSet) -> Option<usize> {
        self.keys.get(&(kind, set.clone())).copied()
    }

    pub fn contains(&self, kind: ColumnKind, set: &VertexSet) -> bool {
        self.keys.contains_key(&(kind, set.clone()))
    }

    /// Column for a component set, with coefficients derived from the rows.
    /// A set meeting some clique in three or more vertices cannot be an
    /// induced path, so a `P` column like that is rejected.
    pub fn derive_column(&self, kind: ColumnKind, set: &VertexSet, objective: Rational) -> Result<Column> {
        let mut coeffs = Vec::new();
        match kind {
            ColumnKind::X => {
                let v = match set.as_slice() {
                    [v] if *v < self.vertices => *v,
                    _ => return Err(Error::Model(format!("x column needs a single vertex, got {set}"))),
                };
                for (k, c) in self.cliques.iter().enumerate() {
                    if c.contains(v) {
                        coeffs.push((self.clique_row(k), 1));
                    }
                }
                coeffs.push((self.star_row(v), -1));
            }
            ColumnKind::T | ColumnKind::P => {
                if set.len() < 2 || set.max().is_some_and(|m| m >= self.vertices) {
                    return Err(Error::Model(format!("invalid component {set}")));
                }
                for (k, c) in self.cliques.iter().enumerate() {
                    let hits = set.intersection_len(c);
                    if kind == ColumnKind::P && hits > 2 {
                        return Err(Error::Model(format!(
                            "path {set} meets clique {c} in {hits} vertices"
                        )));
                    }
                    if hits >= 2 {
                        coeffs.push((self.clique_row(k), -(hits as i64 - 1)));
                    }
                }
                for v in set.iter() {
                    coeffs.push((self.star_row(v), 1));
                }
            }
        }
        Ok(Column {
            kind,
            set: set.clone(),
            objective,
            coeffs,
        })
    }

    /// Adds a column, refusing duplicates. Returns its index.
    pub fn push(&mut self, column: Column) -> Result<usize> {
        let key = (column.kind, column.set.clone());
        if self.keys.contains_key(&key) {
            return Err(Error::Model(format!("duplicate column {}", column.name())));
        }
        let j = self.columns.len();
        self.keys.insert(key, j);
        self.columns.push(column);
        Ok(j)
    }

    pub fn add(&mut self, kind: ColumnKind, set: &VertexSet, objective: Rational) -> Result<usize> {
        let c = self.derive_column(kind, set, objective)?;
        self.push(c)
    }

    pub fn set_objective(&mut self, j: usize, objective: Rational) {
        self.columns[j].objective = objective;
    }

    pub fn to_linear_program(&self) -> LinearProgram {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.row_count()];
        for (j, c) in self.columns.iter().enumerate() {
            for &(r, a) in &c.coeffs {
                rows[r].push((j, int(a)));
            }
        }
        let mut lp = LinearProgram::new(self.columns.iter().map(|c| c.objective.clone()).collect());
        for (r, coeffs) in rows.into_iter().enumerate() {
            lp.add_row(coeffs, self.rhs(r));
        }
        lp
    }

    /// Splits LP row duals into clique and star parts.
    pub fn dual_values(&self, solution: &LpSolution) -> DualValues {
        let k = self.cliques.len();
        DualValues {
            clique: solution.duals[..k].to_vec(),
            star: solution.duals[k..].to_vec(),
        }
    }

    /// Row activity `a_r · y` for a full primal vector.
    pub fn row_activity(&self, primal: &[Rational]) -> Vec<Rational> {
        let mut act = vec![Rational::zero(); self.row_count()];
        for (c, y) in self.columns.iter().zip(primal) {
            if y.is_zero() {
                continue;
            }
            for &(r, a) in &c.coeffs {
                act[r] += int(a) * y;
            }
        }
        act
    }
}

/// Builds the model with one `x` column per vertex (objective `w_v`), one
/// `t` column per triangle and one `p` column per given path set.
pub fn build_master(g: &Graph, cliques: &CliqueSet, triangles: &[VertexSet], paths: &[VertexSet]) -> Result<MasterModel> {
    let mut m = MasterModel::empty(g, cliques.clone());
    for v in g.vertices() {
        m.add(ColumnKind::X, &VertexSet::singleton(v), g.weight(v).clone())?;
    }
    for t in triangles {
        m.add(ColumnKind::T, t, Rational::zero())?;
    }
    for p in paths {
        m.add(ColumnKind::P, p, Rational::zero())?;
    }
    Ok(m)
}

/// `c − Σ_rows dual · coefficient` for a candidate column.
pub fn reduced_cost(model: &MasterModel, duals: &DualValues, candidate: &Column) -> Rational {
    let k = model.cliques().len();
    candidate.coeffs.iter().fold(candidate.objective.clone(), |acc, &(r, a)| {
        let d = if r < k { &duals.clique[r] } else { &duals.star[r - k] };
        acc - int(a) * d
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::chordal_cliques;
    use crate::lp::simplex::solve_lp;
    use crate::structures::enumerate_triangles;

    fn row_of(m: &MasterModel, row: usize) -> Vec<(String, i64)> {
        let mut out: Vec<(String, i64)> = m
            .columns()
            .iter()
            .filter_map(|c| c.coeffs.iter().find(|(r, _)| *r == row).map(|&(_, a)| (c.name(), a)))
            .collect();
        out.sort();
        out
    }

    fn s(v: &[(&str, i64)]) -> Vec<(String, i64)> {
        let mut out: Vec<_> = v.iter().map(|&(n, a)| (n.to_string(), a)).collect();
        out.sort();
        out
    }

    fn edge_model() -> MasterModel {
        let g = Graph::path(2);
        let k = chordal_cliques(&g).unwrap();
        build_master(&g, &k, &[], &[[0, 1].into()]).unwrap()
    }

    #[test]
    fn single_edge_rows() {
        let m = edge_model();
        assert_eq!(m.row_count(), 3);
        assert_eq!(row_of(&m, 0), s(&[("x_1", 1), ("x_2", 1), ("p_1_2", -1)]));
        assert_eq!(row_of(&m, m.star_row(0)), s(&[("x_1", -1), ("p_1_2", 1)]));
        assert_eq!(row_of(&m, m.star_row(1)), s(&[("x_2", -1), ("p_1_2", 1)]));
    }

    #[test]
    fn p3_clique_row() {
        let g = Graph::path(3);
        let k = chordal_cliques(&g).unwrap();
        let m = build_master(&g, &k, &[], &[[0, 1].into(), [1, 2].into(), [0, 1, 2].into()]).unwrap();
        let k12 = k.iter().position(|c| c == &VertexSet::from([0, 1])).unwrap();
        assert_eq!(
            row_of(&m, m.clique_row(k12)),
            s(&[("x_1", 1), ("x_2", 1), ("p_1_2", -1), ("p_1_2_3", -1)])
        );
    }

    #[test]
    fn k3_triangle_coefficient() {
        let g = Graph::complete(3);
        let k = chordal_cliques(&g).unwrap();
        let m = build_master(&g, &k, &enumerate_triangles(&g), &[]).unwrap();
        assert!(row_of(&m, 0).contains(&("t_1_2_3".to_string(), -2)));
    }

    #[test]
    fn rejects_long_clique_hit() {
        let g = Graph::complete(3);
        let k = chordal_cliques(&g).unwrap();
        assert!(matches!(build_master(&g, &k, &[], &[[0, 1, 2].into()]), Err(Error::Model(_))));
        let mut m = edge_model();
        assert!(m.add(ColumnKind::P, &[0, 1].into(), Rational::zero()).is_err());
    }

    #[test]
    fn edge_master_optimum() {
        let m = edge_model();
        let s = solve_lp(&m.to_linear_program()).unwrap();
        assert_eq!(s.objective, int(2));
        assert_eq!(s.primal, vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn reduced_cost_examples() {
        let m = edge_model();
        let cand = m.column(2).clone();
        assert_eq!(reduced_cost(&m, &DualValues::zero(1, 2), &cand), int(0));
        let d = DualValues { clique: vec![int(1)], star: vec![int(0), int(0)] };
        assert_eq!(reduced_cost(&m, &d, &cand), int(1));
        let d = DualValues { clique: vec![int(1)], star: vec![int(1), int(1)] };
        assert_eq!(reduced_cost(&m, &d, &cand), int(-1));
    }
}
