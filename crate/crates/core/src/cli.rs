//! Subcommands of the `girth` binary: generation, solving, comparison with
//! the exact oracles, and benchmark sweeps.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ansc::{self, AnscAlgorithm, AnscResult};
use crate::dist::{Dist, Finite, Inf};
use crate::error::{invalid, Error, Result};
use crate::gadgets::{self, Base, GadgetInstance, Hypergraph, LayeredKind};
use crate::graph::{gen_connected, gen_random, Graph};
use crate::npsp::{self, NpspAlgorithm, NpspResult, PairQuerySet, StInstance};
use crate::seed::split_seed;

#[derive(Parser, Debug)]
#[command(name = "girth", version, about = "Approximate shortest cycles and pair distances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a random graph, pair set or reduction instance.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Run one algorithm and write its per-item CSV.
    Solve(SolveArgs),
    /// Run an algorithm and the exact oracle, with ratios.
    Compare(SolveArgs),
    /// Sweep sizes, parameters and seeds; one CSV row per run.
    Bench(BenchArgs),
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long)]
        directed: bool,
        /// Add a spanning tree first (undirected only).
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    Pairs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Writes `<prefix>.graph`, `<prefix>.meta` and, for pair queries,
    /// `<prefix>.pairs`.
    Gadget {
        #[arg(long, value_enum)]
        kind: GadgetChoice,
        /// Base vertices (blocks for disjointness).
        #[arg(long, default_value_t = 6)]
        n0: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Edge (or hyperedge, or bit) probability of the random base.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Force a yes-instance.
        #[arg(long)]
        plant: bool,
        /// Add the isolated padding vertices of the 3-layer triangle instance.
        #[arg(long)]
        pad: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GadgetChoice {
    Clique,
    Triangle3,
    Triangle4,
    SimplicialPairs,
    Kcycle,
    EdgeSubdivTriangle,
    SimplicialCycle,
    Disjointness,
}

#[derive(Args, Debug, Clone)]
pub struct AlgoArgs {
    /// Algorithm id: exact, exact-directed, 2approx, k-approx, near-opt, 6-1,
    /// 2eps, small-cycles, k2, npsp-exact, tz, spanner-tz, npsp-2eps, st.
    #[arg(long)]
    pub algo: String,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for per-source loops.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Exit nonzero if any item breaks the algorithm's guarantee.
    #[arg(long)]
    pub assert_bounds: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[arg(long)]
    pub graph: PathBuf,
    /// Pair file for pair-distance algorithms.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Source set of `st`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sources: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub targets: Vec<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// Comma separated algorithm ids.
    #[arg(long, value_delimiter = ',', required = true)]
    pub algo: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "200")]
    pub n: Vec<usize>,
    /// Edges as a power of `n`.
    #[arg(long, default_value_t = 1.3)]
    pub m_exp: f64,
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub eps: Vec<f64>,
    /// Number of seeds per grid point, derived from `--seed`.
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub assert_bounds: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// One answered item: a vertex or a query pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub item: String,
    pub estimate: Dist,
    pub exact: Option<Dist>,
    pub violation: bool,
}

impl ReportRow {
    pub fn ratio(&self) -> Option<f64> {
        match (self.estimate, self.exact?) {
            (Finite(e), Finite(x)) if x > 0 => Some(e as f64 / x as f64),
            _ => None,
        }
    }

    pub fn surplus(&self) -> Option<u64> {
        match (self.estimate, self.exact?) {
            (Finite(e), Finite(x)) => Some(e.saturating_sub(x)),
            _ => None,
        }
    }
}

/// Outcome of one run with aggregates derived from its rows.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub algorithm: String,
    pub params: String,
    pub seed: u64,
    pub rows: Vec<ReportRow>,
    pub scanned: u64,
    pub wall: Duration,
}

impl RunReport {
    pub fn from_ansc(r: &AnscResult, wall: Duration) -> RunReport {
        let bad = r.violations();
        let rows = (0..r.n())
            .map(|v| ReportRow {
                item: v.to_string(),
                estimate: r.estimates[v],
                exact: r.exact.as_ref().map(|e| e[v]),
                violation: bad.binary_search(&v).is_ok(),
            })
            .collect();
        RunReport {
            algorithm: r.algorithm.id().into(),
            params: r.params.describe(),
            seed: r.params.seed,
            rows,
            scanned: r.scanned,
            wall,
        }
    }

    pub fn from_npsp(r: &NpspResult, wall: Duration) -> RunReport {
        let bad = r.violations();
        let rows = r
            .queries
            .pairs()
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| ReportRow {
                item: format!("{s}-{t}"),
                estimate: r.estimates[i],
                exact: r.exact.as_ref().map(|e| e[i]),
                violation: bad.binary_search(&i).is_ok(),
            })
            .collect();
        RunReport {
            algorithm: r.algorithm.id().into(),
            params: r.params.describe(),
            seed: r.params.seed,
            rows,
            scanned: r.work,
            wall,
        }
    }

    pub fn max_ratio(&self) -> Option<f64> {
        self.rows.iter().filter_map(ReportRow::ratio).reduce(f64::max)
    }

    pub fn mean_ratio(&self) -> Option<f64> {
        let r: Vec<f64> = self.rows.iter().filter_map(ReportRow::ratio).collect();
        (!r.is_empty()).then(|| r.iter().sum::<f64>() / r.len() as f64)
    }

    pub fn surplus_max(&self) -> Option<u64> {
        self.rows.iter().filter_map(ReportRow::surplus).max()
    }

    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.violation).count()
    }

    pub fn min_estimate(&self) -> Dist {
        self.rows.iter().map(|r| r.estimate).min().unwrap_or(Inf)
    }

    pub fn max_estimate(&self) -> Dist {
        self.rows.iter().map(|r| r.estimate).max().unwrap_or(Inf)
    }

    /// Per-item CSV; contains nothing that varies between identical runs.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["item", "estimate", "exact", "ratio", "surplus", "violation", "algorithm", "params", "seed"])?;
        for r in &self.rows {
            w.write_record([
                r.item.clone(),
                r.estimate.to_string(),
                r.exact.map(|d| d.to_string()).unwrap_or_default(),
                fmt_opt(r.ratio()),
                r.surplus().map(|s| s.to_string()).unwrap_or_default(),
                u8::from(r.violation).to_string(),
                self.algorithm.clone(),
                self.params.clone(),
                self.seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// `key=value` summary, wall time included.
    pub fn summary(&self) -> String {
        format!(
            "algorithm={} params={} seed={} items={} min={} max={} max_ratio={} mean_ratio={} surplus_max={} violations={} scanned={} wall_ms={}",
            self.algorithm,
            if self.params.is_empty() { "-" } else { &self.params },
            self.seed,
            self.rows.len(),
            self.min_estimate(),
            self.max_estimate(),
            fmt_opt(self.max_ratio()),
            fmt_opt(self.mean_ratio()),
            self.surplus_max().map(|s| s.to_string()).unwrap_or_default(),
            self.violations(),
            self.scanned,
            self.wall.as_millis(),
        )
    }

    pub fn check(&self) -> Result<()> {
        match self.rows.iter().find(|r| r.violation) {
            Some(r) => Err(Error::BoundViolation(format!(
                "{}: item {} has estimate {} against exact {}",
                self.algorithm,
                r.item,
                r.estimate,
                r.exact.unwrap_or(Inf)
            ))),
            None => Ok(()),
        }
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|r| format!("{r:.6}")).unwrap_or_default()
}

/// An algorithm id resolved to its family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Ansc(AnscAlgorithm),
    Npsp(NpspAlgorithm),
}

impl std::str::FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algo> {
        s.parse()
            .map(Algo::Ansc)
            .or_else(|_| s.parse().map(Algo::Npsp))
            .map_err(|_| invalid(format!("unknown algorithm '{s}'")))
    }
}

/// Runs an ANSC algorithm with the given knobs; knobs it does not take are ignored.
pub fn run_ansc(algo: AnscAlgorithm, g: &Graph, k: usize, eps: f64, seed: u64) -> Result<AnscResult> {
    match algo {
        AnscAlgorithm::Exact => ansc::exact_ansc(g),
        AnscAlgorithm::ExactDirected => ansc::exact_ansc_directed(g),
        AnscAlgorithm::TwoApprox => ansc::ansc_2approx(g, seed),
        AnscAlgorithm::KApprox => ansc::ansc_k_approx(g, k, eps, seed),
        AnscAlgorithm::NearOpt => ansc::ansc_near_opt(g, k, seed),
        AnscAlgorithm::SixOne => ansc::ansc_6_1(g, seed),
        AnscAlgorithm::TwoEps => ansc::ansc_2eps(g, eps, seed),
        AnscAlgorithm::SmallCycles => ansc::ansc_small_cycles(g, k, seed),
        AnscAlgorithm::KSquared => ansc::ansc_k2(g, k, seed),
    }
}

pub fn exact_for(g: &Graph) -> Result<AnscResult> {
    if g.is_directed() {
        ansc::exact_ansc_directed(g)
    } else {
        ansc::exact_ansc(g)
    }
}

/// Pair queries of a run: a pair file, an explicit `S × T`, or both absent.
#[derive(Clone, Debug)]
pub enum Queries {
    Pairs(PairQuerySet),
    SetToSet(StInstance),
}

pub fn run_npsp(algo: NpspAlgorithm, g: &Graph, q: &Queries, k: usize, eps: f64, seed: u64) -> Result<NpspResult> {
    let pairs = |q: &Queries| match q {
        Queries::Pairs(p) => Ok(p.clone()),
        Queries::SetToSet(st) => st.pairs(g.n()),
    };
    match algo {
        NpspAlgorithm::SetToSet => match q {
            Queries::SetToSet(st) => npsp::st_shortest_paths(g, st, seed),
            Queries::Pairs(_) => Err(invalid("st needs --sources and --targets")),
        },
        NpspAlgorithm::Exact => npsp::exact_npsp(g, &pairs(q)?),
        NpspAlgorithm::Tz => npsp::npsp_tz(g, &pairs(q)?, k, seed),
        NpspAlgorithm::SpannerCompose => npsp::npsp_spanner_compose(g, &pairs(q)?, k, seed),
        NpspAlgorithm::TwoEps => npsp::npsp_2eps(g, &pairs(q)?, eps, seed),
    }
}

/// Runs `algo` and, when `exact` is set, the matching oracle.
pub fn run_report(algo: Algo, g: &Graph, q: Option<&Queries>, a: &AlgoArgs, exact: bool) -> Result<RunReport> {
    let start = Instant::now();
    match algo {
        Algo::Ansc(id) => {
            let mut r = run_ansc(id, g, a.k, a.eps, a.seed)?;
            let wall = start.elapsed();
            if exact {
                r = r.with_exact(exact_for(g)?.estimates)?;
            }
            Ok(RunReport::from_ansc(&r, wall))
        }
        Algo::Npsp(id) => {
            let q = q.ok_or_else(|| invalid(format!("{id} needs --pairs")))?;
            let mut r = run_npsp(id, g, q, a.k, a.eps, a.seed)?;
            let wall = start.elapsed();
            if exact {
                let truth = npsp::exact_npsp(g, &r.queries)?;
                r = r.with_exact(truth.estimates)?;
            }
            Ok(RunReport::from_npsp(&r, wall))
        }
    }
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| invalid(e.to_string()))?;
    pool.install(f)
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write + Send>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn load_queries(args: &SolveArgs, g: &Graph) -> Result<Option<Queries>> {
    if !args.sources.is_empty() || !args.targets.is_empty() {
        let st = StInstance::new(g.n(), args.sources.clone(), args.targets.clone())?;
        return Ok(Some(Queries::SetToSet(st)));
    }
    match &args.pairs {
        Some(p) => Ok(Some(Queries::Pairs(PairQuerySet::load(BufReader::new(File::open(p)?), g.n())?))),
        None => Ok(None),
    }
}

pub fn cmd_solve(args: &SolveArgs, exact: bool) -> Result<RunReport> {
    let algo: Algo = args.algo.algo.parse()?;
    let g = Graph::load_path(&args.graph)?;
    let q = load_queries(args, &g)?;
    let exact = exact || args.algo.assert_bounds;
    let report = with_threads(args.algo.threads, || run_report(algo, &g, q.as_ref(), &args.algo, exact))?;
    report.write_csv(sink(args.output.as_deref())?)?;
    Ok(report)
}

/// Column order of the bench CSV.
pub const BENCH_HEADER: [&str; 14] = [
    "n",
    "m",
    "k",
    "eps",
    "seed",
    "algorithm",
    "params",
    "items",
    "scanned",
    "exact_scanned",
    "max_ratio",
    "mean_ratio",
    "surplus_max",
    "violations",
];

pub fn cmd_bench(args: &BenchArgs) -> Result<Vec<RunReport>> {
    let algos: Vec<Algo> = args.algo.iter().map(|a| a.parse()).collect::<Result<_>>()?;
    let mut w = csv::Writer::from_writer(sink(args.output.as_deref())?);
    w.write_record(BENCH_HEADER)?;
    let mut reports = Vec::new();
    with_threads(args.threads, || {
        for &n in &args.n {
            let m = ((n as f64).powf(args.m_exp).round() as usize).clamp(n.saturating_sub(1), n * (n - 1) / 2);
            for s in 0..args.seeds {
                let seed = split_seed(args.seed, s);
                let g = gen_connected(n, m, 1, seed)?;
                let exact_ansc = exact_for(&g)?;
                let pairs = PairQuerySet::random(n, 4 * n, split_seed(seed, 1))?;
                let exact_pairs = npsp::exact_npsp(&g, &pairs)?;
                let size = ((n as f64).sqrt() as usize).min(n / 2).max(1);
                let st = StInstance::random(n, size, split_seed(seed, 2))?;
                let exact_st = npsp::exact_npsp(&g, &st.pairs(n)?)?;
                for &k in &args.k {
                    for &eps in &args.eps {
                        for &algo in &algos {
                            let start = Instant::now();
                            let (report, exact_scanned) = match algo {
                                Algo::Ansc(id) => {
                                    let r = run_ansc(id, &g, k, eps, seed)?.with_exact(exact_ansc.estimates.clone())?;
                                    (RunReport::from_ansc(&r, start.elapsed()), exact_ansc.scanned)
                                }
                                Algo::Npsp(NpspAlgorithm::SetToSet) => {
                                    let q = Queries::SetToSet(st.clone());
                                    let r = run_npsp(NpspAlgorithm::SetToSet, &g, &q, k, eps, seed)?
                                        .with_exact(exact_st.estimates.clone())?;
                                    (RunReport::from_npsp(&r, start.elapsed()), exact_st.work)
                                }
                                Algo::Npsp(id) => {
                                    let q = Queries::Pairs(pairs.clone());
                                    let r = run_npsp(id, &g, &q, k, eps, seed)?
                                        .with_exact(exact_pairs.estimates.clone())?;
                                    (RunReport::from_npsp(&r, start.elapsed()), exact_pairs.work)
                                }
                            };
                            w.write_record([
                                n.to_string(),
                                g.m().to_string(),
                                k.to_string(),
                                eps.to_string(),
                                seed.to_string(),
                                report.algorithm.clone(),
                                report.params.clone(),
                                report.rows.len().to_string(),
                                report.scanned.to_string(),
                                exact_scanned.to_string(),
                                fmt_opt(report.max_ratio()),
                                fmt_opt(report.mean_ratio()),
                                report.surplus_max().map(|s| s.to_string()).unwrap_or_default(),
                                report.violations().to_string(),
                            ])?;
                            reports.push(report);
                        }
                    }
                }
            }
        }
        Ok(())
    })?;
    w.flush()?;
    if args.assert_bounds {
        for r in &reports {
            r.check()?;
        }
    }
    Ok(reports)
}

/// Builds the instance `gen gadget` writes.
#[allow(clippy::too_many_arguments)]
pub fn build_gadget(
    kind: GadgetChoice,
    n0: usize,
    k: usize,
    t: usize,
    r: usize,
    p: f64,
    plant: bool,
    pad: bool,
    seed: u64,
) -> Result<GadgetInstance> {
    let layered = match kind {
        GadgetChoice::Clique => {
            let mut h = Hypergraph::random(n0, r, p, seed)?;
            if plant {
                if n0 < k {
                    return Err(invalid(format!("cannot plant a {k}-clique on {n0} vertices")));
                }
                let mut rng = crate::seed::rng(seed, 0x70);
                h.plant_clique(&rand::seq::index::sample(&mut rng, n0, k).into_vec());
            }
            return gadgets::gadget_clique_reduction(&h, k, t, r);
        }
        GadgetChoice::Triangle3 => LayeredKind::Triangle3,
        GadgetChoice::Triangle4 => LayeredKind::Triangle4,
        GadgetChoice::SimplicialPairs => LayeredKind::SimplicialPairs,
        GadgetChoice::Kcycle => LayeredKind::KCycle(k),
        GadgetChoice::EdgeSubdivTriangle => LayeredKind::EdgeSubdivTriangle,
        GadgetChoice::SimplicialCycle => LayeredKind::SimplicialCycle,
        GadgetChoice::Disjointness => LayeredKind::Disjointness,
    };
    let base: Base = gadgets::random_base(layered, n0, p, plant, seed)?;
    gadgets::gadget_layered(layered, &base, pad)
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

pub fn cmd_gen(what: &GenCommand) -> Result<()> {
    match what {
        GenCommand::Graph { n, m, max_weight, directed, connected, seed, output } => {
            let g = if *connected {
                if *directed {
                    return Err(invalid("--connected applies to undirected graphs"));
                }
                gen_connected(*n, *m, *max_weight, *seed)?
            } else {
                gen_random(*n, *m, *max_weight, *directed, *seed)?
            };
            g.save(sink(output.as_deref())?)
        }
        GenCommand::Pairs { n, count, seed, output } => PairQuerySet::random(*n, *count, *seed)?.save(sink(output.as_deref())?),
        GenCommand::Gadget { kind, n0, k, t, r, p, plant, pad, seed, output } => {
            let inst = build_gadget(*kind, *n0, *k, *t, *r, *p, *plant, *pad, *seed)?;
            inst.graph.save(BufWriter::new(File::create(with_ext(output, "graph"))?))?;
            if let Some(q) = &inst.pairs {
                q.save(BufWriter::new(File::create(with_ext(output, "pairs"))?))?;
            }
            inst.write_metadata(BufWriter::new(File::create(with_ext(output, "meta"))?))
        }
    }
}

/// Dispatches a parsed command line; the summary of each run goes to stderr.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { what } => cmd_gen(&what),
        Command::Solve(args) => finish(cmd_solve(&args, false)?, args.algo.assert_bounds),
        Command::Compare(args) => finish(cmd_solve(&args, true)?, args.algo.assert_bounds),
        Command::Bench(args) => {
            let reports = cmd_bench(&args)?;
            eprintln!("runs={}", reports.len());
            Ok(())
        }
    }
}

fn finish(report: RunReport, assert_bounds: bool) -> Result<()> {
    eprintln!("{}", report.summary());
    if assert_bounds {
        report.check()?;
    }
    Ok(())
}
