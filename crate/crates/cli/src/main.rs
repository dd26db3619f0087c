use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use co3plex::auxgraph::{build_aux_by_twins, build_aux_direct};
use co3plex::chordal::{chordal_cliques, is_chordal, maximal_cliques_general, peo};
use co3plex::colgen::{solve_co3plex, ColgenConfig};
use co3plex::dimacs::{parse_graph, write_graph};
use co3plex::generate::{generate_random_chordal, with_random_weights};
use co3plex::pricing::PricingConvention;
use co3plex::structures::{enumerate_induced_paths, ComponentCatalog};
use co3plex::verify::{
    check_bijection, check_chordality_preservation, check_clique_correspondence, check_constructions_agree,
    check_exactness, integrality_stress, run_battery, CheckOutcome,
};
use co3plex::{fraction, Error, Execution, Graph, SearchOptions};

/// Maximum-weight co-3-plexes in chordal graphs.
#[derive(Parser)]
#[command(name = "co3plex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve by column generation.
    Solve(Opts),
    /// Test chordality and print an elimination ordering.
    Check(Opts),
    /// List the maximal cliques.
    Cliques(Opts),
    /// Build the auxiliary graph on vertices, triangles and induced paths.
    Aux(AuxOpts),
    /// Run the verification battery, plus instance checks on an input graph.
    Verify(Opts),
    /// Write a random chordal graph in DIMACS format.
    Gen(GenOpts),
    /// Time the pipeline stages in sequential and parallel mode.
    Bench(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// DIMACS graph file.
    #[arg(long, value_name = "PATH", conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Random chordal graph with unit weights.
    #[arg(long, value_name = "N,DENSITY,SEED", value_parser = parse_gen_spec)]
    gen: Option<GenSpec>,
    #[arg(long, value_enum, default_value_t = Pricing::Dual)]
    pricing: Pricing,
    /// Enumeration cap; overrides COPLEX_CAP.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Print the iteration log in text output.
    #[arg(short, long)]
    verbose: bool,
    /// Run without the thread pool.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Clone)]
struct AuxOpts {
    #[command(flatten)]
    opts: Opts,
    #[arg(long, value_enum, default_value_t = Construction::Direct)]
    construction: Construction,
}

#[derive(Args, Clone)]
struct GenOpts {
    #[command(flatten)]
    opts: Opts,
    /// Random integer weights in LO..=HI.
    #[arg(long, value_name = "LO,HI", value_parser = parse_range)]
    weights: Option<(i64, i64)>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pricing {
    Dual,
    Paper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Direct,
    Twins,
}

#[derive(Clone, Copy)]
struct GenSpec {
    n: usize,
    density: f64,
    seed: u64,
}

fn parse_gen_spec(s: &str) -> Result<GenSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, density, seed] = parts.as_slice() else {
        return Err("expected N,DENSITY,SEED".into());
    };
    let n = n.parse().map_err(|_| format!("invalid vertex count `{n}`"))?;
    let density: f64 = density.parse().map_err(|_| format!("invalid density `{density}`"))?;
    if !(0.0..=1.0).contains(&density) {
        return Err("density must be in [0, 1]".into());
    }
    let seed = seed.parse().map_err(|_| format!("invalid seed `{seed}`"))?;
    Ok(GenSpec { n, density, seed })
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("invalid bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("invalid bound `{hi}`"))?;
    if lo > hi {
        return Err("LO must not exceed HI".into());
    }
    Ok((lo, hi))
}

enum Failure {
    /// Bad input or flags.
    Usage(String),
    /// A check failed or the input is outside the solver's domain.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::VertexOutOfRange { .. }
            | Error::DuplicateEdge(..)
            | Error::SelfLoop(..)
            | Error::WeightCount { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

impl Opts {
    fn search(&self) -> SearchOptions {
        let mut s = SearchOptions::from_env();
        if let Some(cap) = self.cap {
            s = s.with_cap(usize::try_from(cap).unwrap_or(usize::MAX));
        }
        if self.sequential {
            s = s.sequential();
        }
        s
    }

    fn colgen(&self) -> ColgenConfig {
        ColgenConfig {
            pricing: match self.pricing {
                Pricing::Dual => PricingConvention::Dual,
                Pricing::Paper => PricingConvention::Paper,
            },
            search: self.search(),
            ..Default::default()
        }
    }

    fn graph(&self) -> Result<Option<Graph>, Failure> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            return Ok(Some(parse_graph(&text)?));
        }
        Ok(self.gen.map(|g| generate_random_chordal(g.n, g.density, g.seed)))
    }

    fn require_graph(&self) -> Result<Graph, Failure> {
        self.graph()?
            .ok_or_else(|| Failure::Usage("one of --input or --gen is required".into()))
    }

    fn kv(&self) -> bool {
        self.format == Format::Kv
    }
}

fn cmd_solve(o: &Opts) -> Outcome {
    let g = o.require_graph()?;
    let report = match solve_co3plex(&g, &o.colgen()) {
        Err(Error::NotChordal) => {
            return Err(Failure::Check(if o.kv() { "status=not-chordal".into() } else { "not chordal".into() }));
        }
        r => r?,
    };
    let mut out = String::new();
    let components: Vec<String> = report.solution.components.iter().map(|c| c.to_string()).collect();
    if o.kv() {
        let set: Vec<String> = report.solution.set.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "status=optimal").unwrap();
        writeln!(out, "objective={}", fraction(&report.objective)).unwrap();
        writeln!(out, "set={}", set.join(",")).unwrap();
        writeln!(out, "components={}", components.join(" ")).unwrap();
        writeln!(out, "iterations={}", report.iterations).unwrap();
        writeln!(out, "columns_added={}", report.columns_added).unwrap();
        writeln!(out, "certificate={}", report.certificate.name()).unwrap();
        for (i, entry) in report.log.iter().enumerate() {
            let best = entry.best_reduced_cost.as_ref().map_or("none".into(), fraction);
            writeln!(out, "log.{i}.component={}", entry.component).unwrap();
            writeln!(out, "log.{i}.objective={}", fraction(&entry.objective)).unwrap();
            writeln!(out, "log.{i}.best_reduced_cost={best}").unwrap();
        }
    } else {
        writeln!(out, "optimum {}; S = {}", report.objective, report.solution.set).unwrap();
        writeln!(out, "components: {}", components.join(" ")).unwrap();
        writeln!(
            out,
            "{} iterations, {} columns added, {} certificate",
            report.iterations,
            report.columns_added,
            report.certificate.name()
        )
        .unwrap();
        if o.verbose {
            for entry in &report.log {
                let best = entry.best_reduced_cost.as_ref().map_or("none".into(), |b| b.to_string());
                let added: Vec<String> = entry.added.iter().map(|s| s.to_string()).collect();
                writeln!(
                    out,
                    "  component {} iteration {}: objective {}, best reduced cost {}, added [{}]",
                    entry.component,
                    entry.iteration,
                    entry.objective,
                    best,
                    added.join(" ")
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

fn cmd_check(o: &Opts) -> Outcome {
    let g = o.require_graph()?;
    let ordering = peo(&g);
    let order = ordering.as_ref().map(|p| {
        p.order().iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
    });
    let mut out = String::new();
    if o.kv() {
        writeln!(out, "n={}", g.vertex_count()).unwrap();
        writeln!(out, "m={}", g.edge_count()).unwrap();
        writeln!(out, "chordal={}", ordering.is_some()).unwrap();
        if let Some(order) = order {
            writeln!(out, "peo={order}").unwrap();
        }
    } else {
        match order {
            Some(order) => writeln!(out, "chordal; perfect elimination ordering {order}").unwrap(),
            None => writeln!(out, "not chordal").unwrap(),
        }
    }
    Ok(out)
}

fn cmd_cliques(o: &Opts) -> Outcome {
    let g = o.require_graph()?;
    let chordal = is_chordal(&g);
    let cliques = if chordal { chordal_cliques(&g)? } else { maximal_cliques_general(&g) };
    let mut out = String::new();
    if o.kv() {
        writeln!(out, "method={}", if chordal { "elimination-ordering" } else { "bron-kerbosch" }).unwrap();
        writeln!(out, "count={}", cliques.len()).unwrap();
        for (i, k) in cliques.iter().enumerate() {
            writeln!(out, "clique.{i}={k}").unwrap();
        }
    } else {
        writeln!(out, "{} maximal cliques{}", cliques.len(), if chordal { "" } else { " (graph is not chordal)" }).unwrap();
        for k in cliques.iter() {
            writeln!(out, "{k}").unwrap();
        }
    }
    Ok(out)
}

fn cmd_aux(a: &AuxOpts) -> Outcome {
    let o = &a.opts;
    let g = o.require_graph()?;
    let cat = ComponentCatalog::enumerate(&g, o.search())?;
    let aux = match a.construction {
        Construction::Direct => build_aux_direct(&g, &cat)?,
        Construction::Twins => build_aux_by_twins(&g, &cat)?,
    };
    let mut out = String::new();
    if o.kv() {
        writeln!(out, "nodes={}", aux.node_count()).unwrap();
        writeln!(out, "edges={}", aux.graph().edge_count()).unwrap();
        writeln!(out, "chordal={}", is_chordal(aux.graph())).unwrap();
        for i in 0..aux.node_count() {
            writeln!(out, "node.{}={} {}", i + 1, aux.kind(i).name(), aux.node(i)).unwrap();
        }
        for (u, v) in aux.graph().edges() {
            writeln!(out, "edge={},{}", u + 1, v + 1).unwrap();
        }
    } else {
        out.push_str(&aux.to_dimacs());
    }
    Ok(out)
}

fn table(rows: &[CheckOutcome]) -> (String, bool) {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let line = format!("{:<width$}  {}  {}", r.name, if r.passed { "PASS" } else { "FAIL" }, r.detail);
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    (out, rows.iter().all(|r| r.passed))
}

fn instance_checks(g: &Graph, o: &Opts) -> Vec<CheckOutcome> {
    let s = o.search();
    let run = |name: &'static str, r: co3plex::Result<bool>| match r {
        Ok(passed) => CheckOutcome { name, passed, detail: String::new() },
        Err(e) => CheckOutcome { name, passed: false, detail: e.to_string() },
    };
    let mut rows = vec![run("input: chordality preservation", check_chordality_preservation(g, s))];
    if is_chordal(g) {
        rows.push(run("input: exactness", check_exactness(g, &o.colgen())));
        rows.push(run(
            "input: integrality",
            integrality_stress(g, o.trials as usize, o.seed, true, s).map(|r| r.all_integral()),
        ));
        rows.push(run("input: bijection", check_bijection(g, s)));
        rows.push(run("input: clique correspondence", check_clique_correspondence(g, s)));
        rows.push(run("input: construction equivalence", check_constructions_agree(g, s)));
    }
    rows
}

fn cmd_verify(o: &Opts) -> Outcome {
    let mut rows = run_battery(o.seed, o.trials as usize, o.search());
    if let Some(g) = o.graph()? {
        rows.extend(instance_checks(&g, o));
    }
    let (text, passed) = if o.kv() {
        let mut out = String::new();
        for r in &rows {
            let key = r.name.replace(": ", ".").replace(' ', "-");
            writeln!(out, "{key}={}", if r.passed { "pass" } else { "fail" }).unwrap();
        }
        (out, rows.iter().all(|r| r.passed))
    } else {
        table(&rows)
    };
    if passed { Ok(text) } else { Err(Failure::Check(text)) }
}

fn cmd_gen(a: &GenOpts) -> Outcome {
    let Some(spec) = a.opts.gen else {
        return Err(Failure::Usage("gen needs --gen N,DENSITY,SEED".into()));
    };
    let mut g = generate_random_chordal(spec.n, spec.density, spec.seed);
    if let Some((lo, hi)) = a.weights {
        g = with_random_weights(g, lo, hi, spec.seed);
    }
    Ok(write_graph(&g))
}

fn cmd_bench(o: &Opts) -> Outcome {
    let g = o.require_graph()?;
    let text = write_graph(&g);
    // FNV-1a over the canonical DIMACS text identifies the instance.
    let fingerprint = text.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    let mut out = String::new();
    writeln!(out, "graph n={} m={} fingerprint={fingerprint:016x}", g.vertex_count(), g.edge_count()).unwrap();
    if !o.kv() {
        writeln!(out, "{:<12} {:>8} {:>14} {:>14}", "stage", "result", "sequential_ms", "parallel_ms").unwrap();
    }
    type Stage<'a> = Box<dyn Fn(SearchOptions) -> String + 'a>;
    let colgen = o.colgen();
    let stages: Vec<(&str, Stage)> = vec![
        ("chordal", Box::new(|_| is_chordal(&g).to_string())),
        ("cliques", Box::new(|_| if is_chordal(&g) { chordal_cliques(&g).map_or(0, |k| k.len()) } else { maximal_cliques_general(&g).len() }.to_string())),
        ("paths", Box::new(|s| enumerate_induced_paths(&g, s).map_or_else(|_| "cap".into(), |p| p.len().to_string()))),
        ("solve", Box::new(|s| {
            let config = ColgenConfig { search: s, ..colgen };
            solve_co3plex(&g, &config).map_or_else(|e| match e {
                Error::NotChordal => "n/a".into(),
                _ => "error".into(),
            }, |r| r.objective.to_string())
        })),
    ];
    for (name, stage) in &stages {
        let mut times = Vec::new();
        let mut result = String::new();
        for execution in [Execution::Sequential, Execution::Parallel] {
            let start = Instant::now();
            result = stage(o.search().with_execution(execution));
            times.push(start.elapsed().as_secs_f64() * 1e3);
        }
        if o.kv() {
            writeln!(out, "{name}.result={result}").unwrap();
            writeln!(out, "{name}.sequential_ms={:.3}", times[0]).unwrap();
            writeln!(out, "{name}.parallel_ms={:.3}", times[1]).unwrap();
        } else {
            writeln!(out, "{name:<12} {result:>8} {:>14.3} {:>14.3}", times[0], times[1]).unwrap();
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(o) => cmd_solve(o),
        Command::Check(o) => cmd_check(o),
        Command::Cliques(o) => cmd_cliques(o),
        Command::Aux(a) => cmd_aux(a),
        Command::Verify(o) => cmd_verify(o),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(o) => cmd_bench(o),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(text)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
