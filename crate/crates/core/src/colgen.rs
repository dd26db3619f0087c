//! Column generation driver.
//!
//! The restricted master starts with every vertex, every triangle and every
//! single-edge path. Each round solves it exactly, turns the duals into
//! pricing weights, and appends the best absent path columns with positive
//! reduced cost. The loop stops when no such path exists; the final basic
//! solution is then checked to be 0/1 and decoded into a co-3-plex.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::chordal::{chordal_cliques, is_chordal};
use crate::lp::{build_master, reduced_cost, ColumnKind, DualValues, LpSolution, LpStatus, MasterModel, Simplex};
use crate::pricing::{best_induced_paths, edge_weights_from_duals, PricingConvention};
use crate::structures::{enumerate_induced_paths, enumerate_triangles, is_co3plex, Co3Plex};
use crate::{int, Error, Graph, Rational, Result, SearchOptions, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColgenConfig {
    pub pricing: PricingConvention,
    /// Path columns admitted per round (the best ones first).
    pub columns_per_iteration: usize,
    /// Components with at most this many vertices are additionally
    /// certified by enumerating every induced path.
    pub enumeration_certify_limit: usize,
    pub search: SearchOptions,
}

impl Default for ColgenConfig {
    fn default() -> Self {
        ColgenConfig {
            pricing: PricingConvention::Dual,
            columns_per_iteration: 1,
            enumeration_certify_limit: 10,
            search: SearchOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// The exact pricing oracle found no improving column.
    DualityCertified,
    /// Every absent path column was enumerated and has reduced cost `<= 0`.
    EnumerationCertified,
}

impl Certificate {
    pub fn name(self) -> &'static str {
        match self {
            Certificate::DualityCertified => "duality",
            Certificate::EnumerationCertified => "enumeration",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationLog {
    pub component: usize,
    pub iteration: usize,
    pub objective: Rational,
    /// Best reduced cost among absent paths; `None` when the component has
    /// no absent path left.
    pub best_reduced_cost: Option<Rational>,
    pub added: Vec<VertexSet>,
}

/// Final state of one connected component's column generation.
#[derive(Debug, Clone)]
pub struct ComponentRun {
    pub model: MasterModel,
    pub solution: LpSolution,
    pub duals: DualValues,
    pub log: Vec<IterationLog>,
    pub columns_added: usize,
}

impl ComponentRun {
    pub fn iterations(&self) -> usize {
        self.log.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColgenReport {
    pub iterations: usize,
    pub columns_added: usize,
    pub objective: Rational,
    pub solution: Co3Plex,
    pub certificate: Certificate,
    pub log: Vec<IterationLog>,
}

/// Runs column generation on a connected chordal graph and returns the
/// converged master.
pub fn run_component(g: &Graph, config: &ColgenConfig) -> Result<ComponentRun> {
    let cliques = chordal_cliques(g)?;
    let edges: Vec<VertexSet> = g.edges().map(|(u, v)| VertexSet::from([u, v])).collect();
    let mut model = build_master(g, &cliques, &enumerate_triangles(g), &edges)?;
    let mut simplex = Simplex::new(&model.to_linear_program())?;
    let mut paths: HashSet<VertexSet> = edges.into_iter().collect();
    let mut log = Vec::new();
    let mut columns_added = 0;
    let mut previous: Option<Rational> = None;

    loop {
        let solution = simplex.solve()?;
        if solution.status == LpStatus::Unbounded {
            return Err(Error::Internal("restricted master is unbounded".into()));
        }
        if previous.as_ref().is_some_and(|p| solution.objective < *p) {
            return Err(Error::Internal("restricted master objective decreased".into()));
        }
        previous = Some(solution.objective.clone());
        let duals = model.dual_values(&solution);
        if !duals.is_nonnegative() {
            return Err(Error::Internal("negative dual at optimality".into()));
        }

        let (admitted, best) = price(g, &model, &duals, &paths, config)?;
        log.push(IterationLog {
            component: 0,
            iteration: log.len(),
            objective: solution.objective.clone(),
            best_reduced_cost: best,
            added: admitted.iter().map(|c| c.set.clone()).collect(),
        });
        if admitted.is_empty() {
            return Ok(ComponentRun {
                model,
                solution,
                duals,
                log,
                columns_added,
            });
        }
        for column in admitted {
            let coeffs: Vec<(usize, Rational)> = column.coeffs.iter().map(|&(r, a)| (r, int(a))).collect();
            simplex.add_column(column.objective.clone(), &coeffs)?;
            paths.insert(column.set.clone());
            model.push(column)?;
            columns_added += 1;
        }
    }
}

/// Candidate columns with positive reduced cost, and the best reduced cost
/// seen among absent paths.
fn price(
    g: &Graph,
    model: &MasterModel,
    duals: &DualValues,
    present: &HashSet<VertexSet>,
    config: &ColgenConfig,
) -> Result<(Vec<crate::lp::Column>, Option<Rational>)> {
    let limit = config.columns_per_iteration.max(1);
    let mut conventions = vec![config.pricing];
    if config.pricing != PricingConvention::Dual {
        // Other conventions only steer the search; an exact round under the
        // dual convention decides convergence.
        conventions.push(PricingConvention::Dual);
    }
    let mut best = None;
    for convention in conventions {
        let pw = edge_weights_from_duals(g, model.cliques(), duals, convention);
        let candidates = best_induced_paths(g, &pw, limit, present, config.search)?;
        let mut admitted = Vec::new();
        for cand in candidates {
            let column = model.derive_column(ColumnKind::P, cand.path.key(), Rational::zero())?;
            let rc = reduced_cost(model, duals, &column);
            if convention == PricingConvention::Dual && rc != cand.value {
                return Err(Error::Internal(format!(
                    "pricing value {} differs from reduced cost {} for {}",
                    cand.value, rc, column.name()
                )));
            }
            if best.as_ref().is_none_or(|b| rc > *b) {
                best = Some(rc.clone());
            }
            if rc.is_positive() {
                admitted.push(column);
            }
        }
        if !admitted.is_empty() {
            return Ok((admitted, best));
        }
    }
    Ok((Vec::new(), best))
}

/// Checks that the final basic solution is 0/1 and decodes it. The
/// components of `G[S]` must be exactly the triangle and path columns at 1.
pub fn extract_solution(g: &Graph, run: &ComponentRun) -> Result<(Co3Plex, Rational)> {
    let one = Rational::one();
    for (c, y) in run.model.columns().iter().zip(&run.solution.primal) {
        if !y.is_zero() && *y != one {
            return Err(Error::NonIntegral {
                column: c.name(),
                value: crate::fraction(y),
            });
        }
    }
    let chosen = |kind| {
        run.model
            .columns()
            .iter()
            .zip(&run.solution.primal)
            .filter(move |(c, y)| c.kind == kind && y.is_one())
            .map(|(c, _)| c.set.clone())
    };
    let set: VertexSet = chosen(ColumnKind::X).flat_map(|s| s.as_slice().to_vec()).collect();
    if !is_co3plex(g, &set) {
        return Err(Error::Internal(format!("extracted set {set} is not a co-3-plex")));
    }
    let plex = Co3Plex::from_set(g, set)?;
    let weight = plex.weight(g);
    if weight != run.solution.objective {
        return Err(Error::Internal(format!(
            "weight {} of the extracted set differs from the LP objective {}",
            weight, run.solution.objective
        )));
    }
    let mut components: Vec<VertexSet> = chosen(ColumnKind::T).chain(chosen(ColumnKind::P)).collect();
    components.sort();
    let mut expected: Vec<VertexSet> = plex.components.iter().filter(|c| c.len() >= 2).cloned().collect();
    expected.sort();
    if components != expected {
        return Err(Error::Internal("component columns do not match the extracted set".into()));
    }
    Ok((plex, weight))
}

/// Enumerates every induced path and checks that each one absent from the
/// model has reduced cost `<= 0` under `duals`.
pub fn certify_optimality(g: &Graph, model: &MasterModel, duals: &DualValues, opts: SearchOptions) -> Result<bool> {
    for path in enumerate_induced_paths(g, opts)? {
        if model.contains(ColumnKind::P, path.key()) {
            continue;
        }
        let column = model.derive_column(ColumnKind::P, path.key(), Rational::zero())?;
        if reduced_cost(model, duals, &column).is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximum-weight co-3-plex of a chordal graph. Components are solved
/// independently and merged.
pub fn solve_co3plex(g: &Graph, config: &ColgenConfig) -> Result<ColgenReport> {
    if !is_chordal(g) {
        return Err(Error::NotChordal);
    }
    let components = g.connected_components();
    let results = config.search.execution.map(&components, |comp| -> Result<_> {
        let sub = g.induced_subgraph(comp)?;
        let run = run_component(&sub, config)?;
        let (plex, weight) = extract_solution(&sub, &run)?;
        let certificate = if sub.vertex_count() <= config.enumeration_certify_limit {
            if !certify_optimality(&sub, &run.model, &run.duals, config.search)? {
                return Err(Error::Internal("a positive reduced-cost path survived convergence".into()));
            }
            Certificate::EnumerationCertified
        } else {
            Certificate::DualityCertified
        };
        let set: Vec<usize> = plex.set.iter().map(|i| comp.as_slice()[i]).collect();
        Ok((run, set, weight, certificate))
    });

    let mut set = Vec::new();
    let mut objective = Rational::zero();
    let mut log = Vec::new();
    let mut columns_added = 0;
    let mut certificate = Certificate::EnumerationCertified;
    for (i, r) in results.into_iter().enumerate() {
        let (run, vertices, weight, cert) = r?;
        set.extend(vertices);
        objective += weight;
        columns_added += run.columns_added;
        if cert == Certificate::DualityCertified {
            certificate = cert;
        }
        log.extend(run.log.into_iter().map(|mut entry| {
            entry.component = i;
            entry
        }));
    }
    let solution = Co3Plex::from_set(g, set.into_iter().collect())?;
    Ok(ColgenReport {
        iterations: log.len(),
        columns_added,
        objective,
        solution,
        certificate,
        log,
    })
}
