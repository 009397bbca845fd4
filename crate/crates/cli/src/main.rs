mod table;

use clap::{Args, Parser, Subcommand};
use countdown_core::bench::run_bench;
use countdown_core::canon::{count_distinct_solutions, DEFAULT_TREE_BUDGET};
use countdown_core::database::{build_database, GameDatabase};
use countdown_core::dfs::DfsSolver;
use countdown_core::enumeration::{
    complexity_bounds, standard_instance_count, standard_instances, standard_instances_sample,
    Complexity,
};
use countdown_core::parallel::default_workers;
use countdown_core::square::{bound_sweep, solve_with_square, SquareConfig};
use countdown_core::stats;
use countdown_core::{Algorithm, Engine, Error, Pool, Solution, SolveReport, TargetRange};
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use table::{join, percent, Format, Table};

#[derive(Parser)]
#[command(
    name = "countdown",
    version,
    about = "Exhaustive solvers and statistics for the Countdown numbers game"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one target, or every target of a range.
    Solve(SolveArgs),
    /// Solve with squaring of numbers up to a bound allowed.
    Square(SquareArgs),
    /// Count distinct solutions of one problem.
    CountSolutions(CountArgs),
    /// Solve every standard draw and write the database.
    BuildDb(BuildArgs),
    /// Query a database.
    Stats(StatsArgs),
    /// Time engines over a sample of draws.
    Bench(BenchArgs),
    /// Unsolved problems of the standard draws for several square bounds.
    #[command(name = "sweep-A")]
    SweepA(SweepArgs),
    /// Count or list the standard draws.
    Instances(InstancesArgs),
    /// Operation-count formulas for each algorithm family.
    Complexity(ComplexityArgs),
}

#[derive(Args)]
struct Problem {
    /// Starting numbers, comma separated.
    #[arg(short = 'n', long, value_delimiter = ',', required = true)]
    numbers: Vec<u64>,
    #[arg(short = 't', long, conflicts_with = "range")]
    target: Option<u64>,
    /// Target range `lo:hi`.
    #[arg(long, value_parser = parse_range)]
    range: Option<TargetRange>,
}

impl Problem {
    fn pool(&self) -> Result<Pool, Error> {
        Pool::from_u64s(&self.numbers)
    }

    fn range(&self) -> Result<TargetRange, Error> {
        match (self.target, self.range) {
            (Some(t), _) => TargetRange::single(t),
            (None, Some(r)) => Ok(r),
            (None, None) => Ok(TargetRange::STANDARD),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: Problem,
    #[arg(long, default_value = "dfs-hash")]
    algo: Algorithm,
    #[arg(long, default_value_t = 15)]
    hash_bits: u32,
}

#[derive(Args)]
struct SquareArgs {
    #[command(flatten)]
    problem: Problem,
    /// Largest value that may be squared.
    #[arg(short = 'A', long = "square-bound")]
    bound: u64,
    /// Accept bounds above 45000.
    #[arg(long)]
    allow_large_bound: bool,
}

#[derive(Args)]
struct CountArgs {
    #[arg(short = 'n', long, value_delimiter = ',', required = true)]
    numbers: Vec<u64>,
    #[arg(short = 't', long)]
    target: u64,
    /// Print every canonical solution.
    #[arg(long)]
    list: bool,
    /// Raw trees examined before giving up.
    #[arg(long, default_value_t = DEFAULT_TREE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct BuildArgs {
    /// Tiles per draw.
    #[arg(short = 'N', long, default_value_t = 6)]
    size: usize,
    #[arg(long, value_parser = parse_range, default_value = "101:999")]
    range: TargetRange,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value = "dfs-hash")]
    algo: Algorithm,
    #[arg(long, default_value_t = 15)]
    hash_bits: u32,
    #[arg(long)]
    db: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    db: PathBuf,
    #[command(subcommand)]
    query: StatsQuery,
}

#[derive(Subcommand)]
enum StatsQuery {
    /// Problems per distance to the nearest reachable target.
    Distances,
    /// Instances solving each target.
    PerTarget,
    /// Success when each tile value is in the draw.
    PerNumberPresence,
    /// Success by number of large tiles.
    LargeCount,
    /// Success of draws containing a tuple, or tuples ranked by success.
    Tuples {
        /// One tuple to report, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "size")]
        tuple: Option<Vec<u64>>,
        /// Rank every tuple of this size.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        /// Rank worst first.
        #[arg(long)]
        worst: bool,
    },
    /// Draws solving every target.
    SolveAll,
    /// Draws ranked by targets solved.
    Rank {
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Problems matching every given criterion.
    Select {
        /// Solved, needing at least this many operations.
        #[arg(long)]
        min_ops: Option<u8>,
        /// Unsolved, nearest reachable target at least this far.
        #[arg(long)]
        min_distance: Option<u64>,
        /// Unsolved, nearest reachable target needing at least this many operations.
        #[arg(long)]
        nearest_min_ops: Option<u8>,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(short = 'N', long, default_value_t = 6)]
    size: usize,
    /// Draws to sample; all of them when omitted.
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "dfs-naive,dfs,dfs-hash,bfs-array,bfs-set"
    )]
    algos: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "15")]
    hash_bits_sweep: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    #[arg(long, value_parser = parse_range, default_value = "101:999")]
    range: TargetRange,
}

#[derive(Args)]
struct SweepArgs {
    /// Square bounds to try.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<u64>,
    #[arg(short = 'N', long, default_value_t = 6)]
    size: usize,
    /// Only this many sampled draws.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_parser = parse_range, default_value = "101:999")]
    range: TargetRange,
    #[arg(long)]
    workers: Option<usize>,
    /// Print the unsolved problems left at the last bound.
    #[arg(long)]
    holdouts: bool,
}

#[derive(Args)]
struct InstancesArgs {
    #[arg(short = 'N', long, default_value_t = 6)]
    size: usize,
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct ComplexityArgs {
    #[arg(long, default_value_t = 1)]
    from: u64,
    #[arg(long, default_value_t = 10)]
    to: u64,
}

fn parse_range(s: &str) -> Result<TargetRange, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{e}"))?;
    TargetRange::new(lo, hi).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Io(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } | Error::Corrupt { .. } => Failure::Io(e.to_string()),
            Error::BudgetExceeded(_)
            | Error::Worker { .. }
            | Error::MemoryBudgetExceeded { .. } => Failure::Other(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    let f = cli.format;
    match cli.command {
        Command::Solve(a) => solve(a, f, out),
        Command::Square(a) => square(a, f, out),
        Command::CountSolutions(a) => count_solutions(a, f, out),
        Command::BuildDb(a) => build_db(a, f, out),
        Command::Stats(a) => stats_cmd(a, f, out),
        Command::Bench(a) => bench(a, f, out),
        Command::SweepA(a) => sweep(a, f, out),
        Command::Instances(a) => instances(a, f, out),
        Command::Complexity(a) => complexity(a, f, out),
    }
}

/// Nearest reachable value to `t` over all positive values, using a
/// window wide enough to include every starting number.
fn nearest_anywhere(pool: &Pool, t: u64, engine: Engine) -> Result<Option<(u64, u64, u8)>, Error> {
    const MAX_WINDOW: u64 = 1 << 22;
    let reach = t.abs_diff(pool.max()).max(t.abs_diff(pool.as_slice()[0]));
    let half = reach.min(MAX_WINDOW);
    let range = TargetRange::new(t.saturating_sub(half).max(1), t + half)?;
    let report = engine.recording(false).solve(pool, range)?;
    Ok(report
        .nearest(t)
        .map(|(v, d)| (v, d, report.min_ops_for(v).unwrap())))
}

fn listing_of(report: &SolveReport, pool: &Pool, t: u64) -> Option<Solution> {
    report.solution(t).cloned().or_else(|| {
        // engines without solution recording: replay with the pruned search
        let r = DfsSolver::pruned()
            .recording(true)
            .solve(pool, TargetRange::single(t).ok()?);
        r.solution(t).cloned()
    })
}

fn solve(a: SolveArgs, f: Format, out: &mut dyn Write) -> Outcome {
    let pool = a.problem.pool()?;
    let range = a.problem.range()?;
    let engine = Engine::new(a.algo).hash_bits(a.hash_bits).recording(true);
    let report = engine.solve(&pool, range)?;
    if let Some(t) = a.problem.target {
        let nearest = match report.min_ops_for(t) {
            Some(_) => None,
            None => nearest_anywhere(&pool, t, engine)?,
        };
        let solution = report
            .min_ops_for(t)
            .and_then(|_| listing_of(&report, &pool, t));
        match f {
            Format::Text => {
                writeln!(out, "{pool} -> {t}")?;
                match (&solution, nearest) {
                    (Some(s), _) => {
                        for line in s.listing(&pool) {
                            writeln!(out, "{line}")?;
                        }
                        let ops = report.min_ops_for(t).unwrap();
                        writeln!(
                            out,
                            "solved in {ops} operations ({} nodes, {})",
                            report.nodes_visited, a.algo
                        )?;
                    }
                    (None, Some((v, d, ops))) => writeln!(
                        out,
                        "unsolvable; nearest {v} at distance {d} ({ops} operations)"
                    )?,
                    (None, None) => writeln!(out, "unsolvable; nothing reachable")?,
                }
            }
            Format::Csv => {
                let mut tab = Table::new(&[
                    "target", "solved", "min_ops", "nearest", "distance", "nodes", "solution",
                ]);
                let ops = report.min_ops_for(t);
                let (nv, nd) = match (ops, nearest) {
                    (Some(_), _) => (t.to_string(), "0".into()),
                    (None, Some((v, d, _))) => (v.to_string(), d.to_string()),
                    (None, None) => (String::new(), String::new()),
                };
                tab.push(vec![
                    t.to_string(),
                    ops.is_some().to_string(),
                    ops.map_or(String::new(), |o| o.to_string()),
                    nv,
                    nd,
                    report.nodes_visited.to_string(),
                    solution.map_or(String::new(), |s| join(&s.steps, "; ")),
                ]);
                tab.write(f, out)?;
            }
        }
        return Ok(());
    }
    let mut tab = Table::new(&["target", "solved", "min_ops", "nearest", "distance"]);
    for t in range.targets() {
        let ops = report.min_ops_for(t);
        let near = report.nearest(t);
        tab.push(vec![
            t.to_string(),
            ops.is_some().to_string(),
            ops.map_or(String::new(), |o| o.to_string()),
            near.map_or(String::new(), |(v, _)| v.to_string()),
            near.map_or(String::new(), |(_, d)| d.to_string()),
        ]);
    }
    tab.write(f, out)?;
    if f == Format::Text {
        writeln!(
            out,
            "{} of {} targets solved ({} nodes, {})",
            report.solved_count(),
            range.len(),
            report.nodes_visited,
            a.algo
        )?;
    }
    Ok(())
}

fn square(a: SquareArgs, f: Format, out: &mut dyn Write) -> Outcome {
    let pool = a.problem.pool()?;
    let range = a.problem.range()?;
    let cfg = if a.allow_large_bound {
        SquareConfig::unchecked(a.bound)?
    } else {
        SquareConfig::new(a.bound)?
    };
    let report = solve_with_square(&pool, range, cfg);
    if let (Some(t), Format::Text) = (a.problem.target, f) {
        writeln!(out, "{pool} -> {t}, squares up to {}", cfg.bound())?;
        match report.solution(t) {
            Some(s) => {
                for line in s.listing(&pool) {
                    writeln!(out, "{line}")?;
                }
                writeln!(out, "solved in {} operations", s.len())?;
            }
            None => writeln!(out, "unsolvable")?,
        }
        return Ok(());
    }
    let mut tab = Table::new(&["target", "solved", "min_ops", "solution"]);
    for t in range.targets() {
        let ops = report.min_ops_for(t);
        tab.push(vec![
            t.to_string(),
            ops.is_some().to_string(),
            ops.map_or(String::new(), |o| o.to_string()),
            report
                .solution(t)
                .map_or(String::new(), |s| join(&s.steps, "; ")),
        ]);
    }
    tab.write(f, out)?;
    Ok(())
}

fn count_solutions(a: CountArgs, f: Format, out: &mut dyn Write) -> Outcome {
    let pool = Pool::from_u64s(&a.numbers)?;
    let count = count_distinct_solutions(&pool, a.target, a.budget)?;
    match (f, a.list) {
        (Format::Text, _) => {
            writeln!(
                out,
                "{pool} -> {}: {} distinct solutions ({} raw trees)",
                a.target,
                count.count(),
                count.raw
            )?;
            if a.list {
                for s in &count.solutions {
                    writeln!(out, "{s}")?;
                }
            }
        }
        (Format::Csv, false) => {
            let mut tab = Table::new(&["target", "solutions", "raw_trees"]);
            tab.push(vec![
                a.target.to_string(),
                count.count().to_string(),
                count.raw.to_string(),
            ]);
            tab.write(f, out)?;
        }
        (Format::Csv, true) => {
            let mut tab = Table::new(&["index", "operations", "solution"]);
            for (i, s) in count.solutions.iter().enumerate() {
                let ops = s.size() / 2;
                tab.push(vec![(i + 1).to_string(), ops.to_string(), s.to_string()]);
            }
            tab.write(f, out)?;
        }
    }
    Ok(())
}

fn build_db(a: BuildArgs, f: Format, out: &mut dyn Write) -> Outcome {
    let workers = a.workers.unwrap_or_else(default_workers);
    let start = Instant::now();
    let db = build_database(
        a.size,
        a.range,
        workers,
        Engine::new(a.algo).hash_bits(a.hash_bits),
    )?;
    db.write(&a.db)?;
    let mut tab = Table::new(&["path", "records", "problems", "solved", "seconds"]);
    tab.push(vec![
        a.db.display().to_string(),
        db.records.len().to_string(),
        db.problem_count().to_string(),
        db.solved_count().to_string(),
        format!("{:.2}", start.elapsed().as_secs_f64()),
    ]);
    tab.write(f, out)?;
    Ok(())
}

fn stats_cmd(a: StatsArgs, f: Format, out: &mut dyn Write) -> Outcome {
    let db = GameDatabase::read(&a.db)?;
    let tab = match a.query {
        StatsQuery::Distances => {
            let h = stats::distance_histogram(&db);
            let total = h.total();
            let mut tab = Table::new(&["distance", "problems", "percent", "cumulative"]);
            let mut cum = 0;
            for (&d, &c) in &h.counts {
                cum += c;
                tab.push(vec![
                    d.to_string(),
                    c.to_string(),
                    percent(c, total),
                    percent(cum, total),
                ]);
            }
            if h.unreachable > 0 {
                cum += h.unreachable;
                tab.push(vec![
                    "none".into(),
                    h.unreachable.to_string(),
                    percent(h.unreachable, total),
                    percent(cum, total),
                ]);
            }
            tab
        }
        StatsQuery::PerTarget => {
            let n = db.records.len() as u64;
            let mut tab = Table::new(&["target", "instances", "percent"]);
            for (t, c) in stats::per_target_success(&db) {
                tab.push(vec![t.to_string(), c.to_string(), percent(c, n)]);
            }
            tab
        }
        StatsQuery::PerNumberPresence => {
            let mut tab = Table::new(&["number", "instances", "problems", "solved", "percent"]);
            for (v, r) in stats::presence(&db) {
                tab.push(success_cells(v.to_string(), r));
            }
            tab
        }
        StatsQuery::LargeCount => {
            let mut tab = Table::new(&["large", "instances", "problems", "solved", "percent"]);
            let rows = stats::large_count_breakdown(&db);
            for &(k, r) in &rows {
                tab.push(success_cells(k.to_string(), r));
            }
            let total = rows.iter().fold(
                stats::SuccessRow {
                    instances: 0,
                    problems: 0,
                    solved: 0,
                },
                |acc, (_, r)| stats::SuccessRow {
                    instances: acc.instances + r.instances,
                    problems: acc.problems + r.problems,
                    solved: acc.solved + r.solved,
                },
            );
            tab.push(success_cells("total".into(), total));
            tab
        }
        StatsQuery::Tuples {
            tuple,
            size,
            limit,
            worst,
        } => {
            let mut tab = Table::new(&["tuple", "instances", "problems", "solved", "percent"]);
            match (tuple, size) {
                (Some(t), _) => {
                    tab.push(success_cells(join(&t, " "), stats::tuple_success(&db, &t)))
                }
                (None, Some(k)) => {
                    let mut ranked = stats::rank_tuples(&db, k);
                    if worst {
                        ranked.reverse();
                    }
                    for (t, r) in ranked.into_iter().take(limit) {
                        tab.push(success_cells(join(&t, " "), r));
                    }
                }
                (None, None) => return Err(Failure::Usage("give --tuple or --size".into())),
            }
            tab
        }
        StatsQuery::SolveAll => {
            let mut tab = Table::new(&["instance", "sum"]);
            for p in stats::instances_solving_all(&db) {
                tab.push(vec![
                    join(p.as_slice(), " "),
                    p.as_slice().iter().sum::<u64>().to_string(),
                ]);
            }
            tab
        }
        StatsQuery::Rank { limit } => {
            let mut tab = Table::new(&["instance", "solved"]);
            for (p, c) in stats::rank_instances(&db).into_iter().take(limit) {
                tab.push(vec![join(p.as_slice(), " "), c.to_string()]);
            }
            tab
        }
        StatsQuery::Select {
            min_ops,
            min_distance,
            nearest_min_ops,
            limit,
        } => {
            let sel = stats::Selection {
                min_ops,
                min_distance,
                nearest_min_ops,
            };
            let mut tab = Table::new(&[
                "instance",
                "target",
                "min_ops",
                "nearest",
                "distance",
                "nearest_ops",
            ]);
            let found = stats::select_problems(&db, sel);
            for p in found.into_iter().take(limit.unwrap_or(usize::MAX)) {
                let (nv, nd, no) = match p.nearest {
                    Some((v, d, o)) => (v.to_string(), d.to_string(), o.to_string()),
                    None => Default::default(),
                };
                tab.push(vec![
                    join(p.instance.as_slice(), " "),
                    p.target.to_string(),
                    p.min_ops.map_or(String::new(), |o| o.to_string()),
                    nv,
                    nd,
                    no,
                ]);
            }
            tab
        }
    };
    tab.write(f, out)?;
    Ok(())
}

fn success_cells(key: String, r: stats::SuccessRow) -> Vec<String> {
    vec![
        key,
        r.instances.to_string(),
        r.problems.to_string(),
        r.solved.to_string(),
        percent(r.solved, r.problems),
    ]
}

fn bench(a: BenchArgs, f: Format, out: &mut dyn Write) -> Outcome {
    let sample = match a.instances {
        Some(k) => standard_instances_sample(a.size, k, a.seed)?,
        None => standard_instances(a.size)?,
    };
    let rows = run_bench(
        &sample,
        a.range,
        &a.algos,
        &a.hash_bits_sweep,
        a.repetitions,
    )?;
    let mut tab = Table::new(&[
        "algorithm",
        "hash_bits",
        "instances",
        "repetitions",
        "total_ms_min",
        "total_ms_median",
        "per_instance_us",
        "nodes_total",
        "nodes_min",
        "nodes_max",
        "solved",
    ]);
    for r in rows {
        tab.push(vec![
            r.algorithm.to_string(),
            r.hash_bits.map_or(String::new(), |b| b.to_string()),
            r.instances.to_string(),
            r.repetitions.to_string(),
            format!("{:.3}", r.min.as_secs_f64() * 1e3),
            format!("{:.3}", r.median.as_secs_f64() * 1e3),
            format!("{:.1}", r.per_instance().as_secs_f64() * 1e6),
            r.nodes_total.to_string(),
            r.nodes_min.to_string(),
            r.nodes_max.to_string(),
            r.solved.to_string(),
        ]);
    }
    tab.write(f, out)?;
    Ok(())
}

fn sweep(a: SweepArgs, f: Format, out: &mut dyn Write) -> Outcome {
    let sets = match a.sample {
        Some(k) => standard_instances_sample(a.size, k, a.seed)?,
        None => standard_instances(a.size)?,
    };
    for &b in &a.values {
        SquareConfig::new(b)?;
    }
    let workers = a.workers.unwrap_or_else(default_workers);
    let rows = bound_sweep(&sets, a.range, &a.values, workers)?;
    let mut tab = Table::new(&["bound", "sets", "unsolved"]);
    for r in &rows {
        tab.push(vec![
            r.bound.to_string(),
            r.sets.to_string(),
            r.unsolved.to_string(),
        ]);
    }
    tab.write(f, out)?;
    if a.holdouts {
        if let Some(last) = rows.last() {
            let mut tab = Table::new(&["instance", "targets"]);
            for (p, targets) in &last.holdouts {
                tab.push(vec![join(p.as_slice(), " "), join(targets, " ")]);
            }
            if f == Format::Text {
                writeln!(out)?;
            }
            tab.write(f, out)?;
        }
    }
    Ok(())
}

fn instances(a: InstancesArgs, f: Format, out: &mut dyn Write) -> Outcome {
    if a.list {
        let mut tab = Table::new(&["instance"]);
        for p in standard_instances(a.size)? {
            tab.push(vec![join(p.as_slice(), " ")]);
        }
        tab.write(f, out)?;
    } else {
        let mut tab = Table::new(&["size", "instances"]);
        tab.push(vec![
            a.size.to_string(),
            standard_instance_count(a.size)?.to_string(),
        ]);
        tab.write(f, out)?;
    }
    Ok(())
}

fn complexity(a: ComplexityArgs, f: Format, out: &mut dyn Write) -> Outcome {
    use Complexity::*;
    let mut tab = Table::new(&[
        "n",
        "dfs_max",
        "dfs_min",
        "bfs_max",
        "bfs_min",
        "backward_max",
        "backward_min",
    ]);
    for n in a.from..=a.to {
        let mut row = vec![n.to_string()];
        for c in [DfsMax, DfsMin, BfsMax, BfsMin, BackwardMax, BackwardMin] {
            row.push(complexity_bounds(c, n)?.to_string());
        }
        tab.push(row);
    }
    tab.write(f, out)?;
    Ok(())
}
