//! Executable checks: integrality of the master LP, the fractional vertex
//! on the 4-cycle, and per-instance checks of the auxiliary graph.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::auxgraph::{aux_cliques_by_formula, build_aux_by_twins, build_aux_direct, co3plex_to_stable, stable_to_co3plex};
use crate::chordal::{chordal_cliques, is_chordal, maximal_cliques_general, CliqueSet};
use crate::colgen::{solve_co3plex, ColgenConfig};
use crate::generate::{generate_random_chordal, with_random_weights};
use crate::lp::{build_master, solve_lp, ColumnKind, LpStatus, MasterModel};
use crate::structures::{brute_force_max_co3plex, enumerate_co3plexes, enumerate_stable_sets, ComponentCatalog};
use crate::{ratio, Error, Graph, Rational, Result, SearchOptions, VertexSet};

/// Master model with every vertex, triangle and induced path as a column.
/// Chordal hosts use the clique rows from the elimination ordering, others
/// the general maximal cliques.
pub fn full_model(g: &Graph, opts: SearchOptions) -> Result<MasterModel> {
    let cliques = if is_chordal(g) { chordal_cliques(g)? } else { maximal_cliques_general(g) };
    let cat = ComponentCatalog::enumerate(g, opts)?;
    let paths: Vec<VertexSet> = cat.paths.iter().map(|p| p.key().clone()).collect();
    build_master(g, &cliques, &cat.triangles, &paths)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalPointReport {
    /// Column name and value, in model column order.
    pub values: Vec<(String, Rational)>,
    pub feasible: bool,
    /// Names of the rows and nonnegativity bounds holding with equality.
    pub tight_rows: Vec<String>,
    pub rank: usize,
    pub variables: usize,
    pub fractional: bool,
    pub failures: Vec<String>,
}

impl FractionalPointReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The 4-cycle `a b c d` with vertices 0..4 and the point `x = 1/2`,
/// `p_{cd} = 1/2`, everything else 0.
pub fn c4_model() -> Result<(Graph, MasterModel, Vec<Rational>)> {
    let g = Graph::cycle(4);
    let model = build_master(&g, &maximal_cliques_general(&g), &[], &c4_paths(&g)?)?;
    let half = ratio(1, 2);
    let cd = VertexSet::from([2, 3]);
    let point = model
        .columns()
        .iter()
        .map(|c| match c.kind {
            ColumnKind::X => half.clone(),
            ColumnKind::P if c.set == cd => half.clone(),
            _ => Rational::zero(),
        })
        .collect();
    Ok((g, model, point))
}

fn c4_paths(g: &Graph) -> Result<Vec<VertexSet>> {
    let cat = ComponentCatalog::enumerate(g, SearchOptions::default())?;
    Ok(cat.paths.iter().map(|p| p.key().clone()).collect())
}

/// Tight constraints at `point` as `(name, normal)` pairs. Nonnegativity of
/// column `j` has normal `-e_j`.
fn tight_system(model: &MasterModel, point: &[Rational]) -> Vec<(String, Vec<Rational>)> {
    let n = model.columns().len();
    let mut normals = vec![vec![Rational::zero(); n]; model.row_count()];
    for (j, c) in model.columns().iter().enumerate() {
        for &(r, a) in &c.coeffs {
            normals[r][j] = Rational::from_integer(a.into());
        }
    }
    let activity = model.row_activity(point);
    let k = model.cliques().len();
    let mut out = Vec::new();
    for (r, normal) in normals.into_iter().enumerate() {
        if activity[r] == model.rhs(r) {
            let name = if r < k {
                format!("clique {}", model.cliques().get(r))
            } else {
                format!("star {}", r - k + 1)
            };
            out.push((name, normal));
        }
    }
    for (j, c) in model.columns().iter().enumerate() {
        if point[j].is_zero() {
            let mut e = vec![Rational::zero(); n];
            e[j] = -Rational::one();
            out.push((format!("{} >= 0", c.name()), e));
        }
    }
    out
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            let (top, bottom) = rows.split_at_mut(i);
            for (cell, p) in bottom[0][c..].iter_mut().zip(&top[r][c..]) {
                *cell -= &f * p;
            }
        }
        r += 1;
    }
    r
}

/// Builds the 4-cycle model and checks that the half point is a fractional
/// extreme point: feasible, fractional, and with a tight system of full rank.
pub fn check_c4_fractional_point() -> Result<FractionalPointReport> {
    let (_, model, point) = c4_model()?;
    let variables = model.columns().len();
    let activity = model.row_activity(&point);
    let rows_ok = (0..model.row_count()).all(|r| activity[r] <= model.rhs(r));
    let feasible = rows_ok && point.iter().all(|y| !y.is_negative());
    let tight = tight_system(&model, &point);
    let rank = rank(tight.iter().map(|(_, n)| n.clone()).collect());
    let fractional = point.iter().any(|y| !y.is_integer());

    let mut failures = Vec::new();
    if variables != 12 {
        failures.push(format!("expected 12 variables, model has {variables}"));
    }
    if !feasible {
        failures.push("point violates the model".into());
    }
    if rank != variables {
        failures.push(format!("tight system has rank {rank}, need {variables}"));
    }
    if !fractional {
        failures.push("point is integral".into());
    }
    Ok(FractionalPointReport {
        values: model.columns().iter().map(|c| c.name()).zip(point).collect(),
        feasible,
        tight_rows: tight.into_iter().map(|(name, _)| name).collect(),
        rank,
        variables,
        fractional,
        failures,
    })
}

/// Sum of the tight normals at `point`. When the tight system has full rank
/// the point is the unique maximizer of this objective.
pub fn supporting_objective(model: &MasterModel, point: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); model.columns().len()];
    for (_, normal) in tight_system(model, point) {
        for (acc, a) in c.iter_mut().zip(normal) {
            *acc += a;
        }
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressReport {
    pub trials: usize,
    pub chordal: bool,
    /// Trial indices whose basic optimum had a fractional coordinate.
    pub fractional_trials: Vec<usize>,
}

impl StressReport {
    pub fn all_integral(&self) -> bool {
        self.fractional_trials.is_empty()
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.random_range(-10..=10), rng.random_range(1..=4))
}

/// Solves the full model under `trials` random objectives and records every
/// trial whose basic optimum is fractional. Objectives are random on `x`,
/// and also on the triangle and path columns when `component_objectives`.
pub fn integrality_stress(
    g: &Graph,
    trials: usize,
    seed: u64,
    component_objectives: bool,
    opts: SearchOptions,
) -> Result<StressReport> {
    let base = full_model(g, opts)?;
    let outcomes = opts.execution.map_range(trials, |t| -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(t as u64));
        let mut model = base.clone();
        for j in 0..model.columns().len() {
            if model.column(j).kind == ColumnKind::X || component_objectives {
                model.set_objective(j, random_rational(&mut rng));
            }
        }
        let s = solve_lp(&model.to_linear_program())?;
        if s.status != LpStatus::Optimal {
            return Err(Error::Internal("full master is unbounded".into()));
        }
        Ok(s.primal.iter().all(Rational::is_integer))
    });
    let mut fractional_trials = Vec::new();
    for (t, ok) in outcomes.into_iter().enumerate() {
        if !ok? {
            fractional_trials.push(t);
        }
    }
    Ok(StressReport {
        trials,
        chordal: is_chordal(g),
        fractional_trials,
    })
}

/// Stable sets of the auxiliary graph and co-3-plexes of the host are in
/// bijection under the two maps, which are mutually inverse.
pub fn check_bijection(g: &Graph, opts: SearchOptions) -> Result<bool> {
    let a = build_aux_direct(g, &ComponentCatalog::enumerate(g, opts)?)?;
    let stables = enumerate_stable_sets(a.graph(), opts)?;
    let plexes = enumerate_co3plexes(g, opts)?;
    if stables.len() != plexes.len() {
        return Ok(false);
    }
    let mut images = Vec::with_capacity(stables.len());
    for s in &stables {
        let plex = stable_to_co3plex(&a, s.as_slice())?;
        if co3plex_to_stable(&a, g, &plex.set)? != s.as_slice() {
            return Ok(false);
        }
        images.push(plex.set);
    }
    images.sort();
    if images != plexes {
        return Ok(false);
    }
    for p in &plexes {
        if stable_to_co3plex(&a, &co3plex_to_stable(&a, g, p)?)?.set != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The clique family predicted from the host cliques equals the maximal
/// cliques of the auxiliary graph found by general enumeration.
pub fn check_clique_correspondence(g: &Graph, opts: SearchOptions) -> Result<bool> {
    let a = build_aux_direct(g, &ComponentCatalog::enumerate(g, opts)?)?;
    let formula = aux_cliques_by_formula(g, &chordal_cliques(g)?, &a)?;
    Ok(formula.sorted_family() == maximal_cliques_general(a.graph()).sorted_family())
}

pub fn check_chordality_preservation(g: &Graph, opts: SearchOptions) -> Result<bool> {
    let a = build_aux_direct(g, &ComponentCatalog::enumerate(g, opts)?)?;
    Ok(is_chordal(a.graph()) == is_chordal(g))
}

pub fn check_constructions_agree(g: &Graph, opts: SearchOptions) -> Result<bool> {
    let cat = ComponentCatalog::enumerate(g, opts)?;
    let direct = build_aux_direct(g, &cat)?;
    let twins = build_aux_by_twins(g, &cat)?;
    let mut a = direct.nodes().to_vec();
    let mut b = twins.nodes().to_vec();
    a.sort();
    b.sort();
    Ok(a == b && direct.labeled_edges() == twins.labeled_edges())
}

pub fn check_clique_bound(cliques: &CliqueSet, n: usize) -> bool {
    cliques.len() <= n
}

/// Column generation optimum equals the brute-force optimum.
pub fn check_exactness(g: &Graph, config: &ColgenConfig) -> Result<bool> {
    let report = solve_co3plex(g, config)?;
    let (_, best) = brute_force_max_co3plex(g, config.search)?;
    Ok(report.objective == best && report.solution.weight(g) == best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, result: Result<(usize, usize)>) -> CheckOutcome {
    match result {
        Ok((good, total)) => CheckOutcome {
            name,
            passed: good == total,
            detail: format!("{good}/{total}"),
        },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn count<F>(graphs: &[Graph], opts: SearchOptions, f: F) -> Result<(usize, usize)>
where
    F: Fn(&Graph) -> Result<bool> + Sync + Send,
{
    let results = opts.execution.map(graphs, f);
    let mut good = 0;
    for r in results {
        good += usize::from(r?);
    }
    Ok((good, graphs.len()))
}

/// A reduced version of the full acceptance suite, sized for the command
/// line: `trials` random graphs per check.
pub fn run_battery(seed: u64, trials: usize, opts: SearchOptions) -> Vec<CheckOutcome> {
    let graphs = |max_n: usize, salt: u64| -> Vec<Graph> {
        (0..trials as u64)
            .map(|i| {
                let s = seed.wrapping_add(salt.wrapping_mul(1_000_003)).wrapping_add(i);
                let n = 1 + (s % max_n as u64) as usize;
                let density = 0.15 + 0.7 * ((s / 7) % 10) as f64 / 10.0;
                with_random_weights(generate_random_chordal(n, density, s), 1, 10, s)
            })
            .collect()
    };
    let inner = opts.sequential();
    let config = ColgenConfig { search: inner, ..Default::default() };
    let mut out = Vec::new();

    out.push(outcome("exactness", count(&graphs(10, 1), opts, |g| check_exactness(g, &config))));
    out.push(outcome(
        "integrality",
        count(&graphs(7, 2), opts, |g| Ok(integrality_stress(g, 5, seed, true, inner)?.all_integral())),
    ));
    out.push(match check_c4_fractional_point() {
        Ok(r) => CheckOutcome {
            name: "c4-fractional-point",
            passed: r.passed(),
            detail: format!("feasible={} rank={} fractional={}", r.feasible, r.rank, r.fractional),
        },
        Err(e) => CheckOutcome { name: "c4-fractional-point", passed: false, detail: e.to_string() },
    });
    out.push(outcome("bijection", count(&graphs(7, 3), opts, |g| check_bijection(g, inner))));
    out.push(outcome("clique-correspondence", count(&graphs(7, 4), opts, |g| check_clique_correspondence(g, inner))));
    let mut corpus: Vec<Graph> = (4..=6).map(Graph::cycle).collect();
    corpus.extend((1..=5).map(Graph::complete));
    corpus.extend(graphs(7, 5));
    out.push(outcome("chordality-preservation", count(&corpus, opts, |g| check_chordality_preservation(g, inner))));
    out.push(outcome("construction-equivalence", count(&graphs(6, 6), opts, |g| check_constructions_agree(g, inner))));
    out.push(outcome(
        "clique-bound",
        count(&graphs(12, 7), opts, |g| Ok(check_clique_bound(&chordal_cliques(g)?, g.vertex_count()))),
    ));
    out
}
