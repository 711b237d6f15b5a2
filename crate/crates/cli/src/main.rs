use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use planetrees::geom::{default_wheel_seed, make_wheel, random_convex, regular_polygon};
use planetrees::halving::{
    all_lines, check_theorem3_hypothesis, check_theorem4_hypothesis, h_labeling, incidence_table, k_halving_lines,
    w_labeling,
};
use planetrees::halving_partition::{
    theorem2_partition, theorem3_construct, theorem3_partition, theorem4_construct, theorem4_partition,
    ConstructionChoices, ExtendSide, StarSide, WType,
};
use planetrees::io::{emit_edge_list, emit_partition, emit_pointset, parse_edge_list, parse_partition, parse_pointset};
use planetrees::presets::{halving_preset, preset_points, Construction, HALVING_PRESETS};
use planetrees::svg::{render_partition, SvgStyle};
use planetrees::taxonomy::classify;
use planetrees::verify::{brute_force_partitions, partition_from_canonical, verify_partition};
use planetrees::wheel::{analyze_wheel_partition, build_wheel_partition, check_note1};
use planetrees::{AbstractTree, Error, Partition, PointSet};

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {
        stdout_write(format_args!($($arg)*))
    };
}

macro_rules! outln {
    () => { out!("\n") };
    ($($arg:tt)*) => {{
        out!($($arg)*);
        out!("\n");
    }};
}

fn stdout_write(args: std::fmt::Arguments) {
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing stdout: {e}");
        std::process::exit(2);
    }
}

#[derive(Parser)]
#[command(name = "planetrees", version, about = "Partition complete geometric graphs into plane spanning trees")]
struct Cli {
    /// Emit machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Input point set file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file or directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Regular wheel with `--n`.
    Wheel,
    /// Regular convex polygon with `--count` vertices.
    Regular,
    /// Random convex-position set with `--count` points.
    Convex,
    /// A shipped figure preset named by `--name`.
    Preset,
}

/// Halving-line construction, selected by `--theorem`.
#[derive(Clone, Copy)]
enum Method {
    /// Star-pair trees S_{2t}(m,m) (needs `--t`).
    Doublestar,
    /// Symmetric caterpillars (needs `--r`).
    Symmetric,
    /// w-caterpillars (needs `--r`).
    Wcaterpillar,
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s {
        "2" => Ok(Method::Doublestar),
        "3" => Ok(Method::Symmetric),
        "4" => Ok(Method::Wcaterpillar),
        other => {
            Err(format!("expected 2 (star pairs), 3 (symmetric caterpillars) or 4 (w-caterpillars), got `{other}`"))
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Low,
    High,
}

#[derive(Subcommand)]
enum Command {
    /// Write a point set.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Report halving lines, incidences and labelings of a point set.
    Halving {
        /// Print only the k-halving lines, one `i j k` triple per line.
        #[arg(long)]
        k: Option<usize>,
        /// Also check both hypotheses for this r.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Classify an abstract tree given as an edge list.
    Classify {
        #[arg(long)]
        tree: PathBuf,
    },
    /// Partition a regular wheel into copies of a w-caterpillar plus one caterpillar.
    WheelPartition {
        #[arg(long)]
        n: usize,
        /// Edge-list file, `builtin:fig2i` or `builtin:doublestar`.
        #[arg(long)]
        tree: String,
        /// Also write partition.svg.
        #[arg(long)]
        svg: bool,
    },
    /// Partition from halving lines.
    HalvingPartition {
        /// Construction: 2 star pairs, 3 symmetric caterpillars, 4 w-caterpillars.
        #[arg(long, value_parser = parse_method)]
        theorem: Option<Method>,
        /// A shipped preset (fig6, fig7, fig8: points, r and choices) or a JSON
        /// choices file; the flags below override individual fields.
        #[arg(long)]
        choices: Option<String>,
        /// Star-pair index t (0 or 1).
        #[arg(long)]
        t: Option<usize>,
        /// Balance r of the fan line.
        #[arg(long)]
        r: Option<usize>,
        /// Fan line labels `s,t`.
        #[arg(long, value_parser = parse_pair)]
        fan: Option<(usize, usize)>,
        /// Fan-line endpoint that carries the star (low = v_s, high = v_t).
        #[arg(long, value_enum)]
        star: Option<Side>,
        /// Extension steps, e.g. `LLR`.
        #[arg(long)]
        extend: Option<String>,
        /// w-caterpillar type, 1 or 2.
        #[arg(long)]
        wtype: Option<u8>,
        /// Point index to label v_0.
        #[arg(long)]
        anchor: Option<usize>,
        /// Skip the hypothesis check.
        #[arg(long)]
        unchecked: bool,
        /// Also write partition.svg.
        #[arg(long)]
        svg: bool,
    },
    /// Verify a partition file against a point set.
    Verify {
        #[arg(long)]
        partition: PathBuf,
    },
    /// Enumerate partitions by exhaustive search.
    Oracle {
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Draw a partition as SVG.
    Render {
        #[arg(long)]
        partition: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `s,t`")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

/// Failure categories mapped onto exit codes.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err.chain().any(|c| {
                matches!(
                    c.downcast_ref::<Error>(),
                    Some(
                        Error::Parse { .. }
                            | Error::InvariantViolation(_)
                            | Error::InvalidParameter(_)
                            | Error::InvalidChoices(_)
                            | Error::DegenerateInput(_)
                    )
                ) || c.downcast_ref::<std::io::Error>().is_some()
                    || c.downcast_ref::<UsageError>().is_some()
            });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_points(cli: &Cli) -> anyhow::Result<PointSet> {
    let path = cli.input.as_ref().ok_or_else(|| usage("--input <pointset> is required"))?;
    parse_pointset(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to `--out` if given, otherwise prints.
fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn partition_json(p: &Partition) -> Value {
    let trees: Vec<Vec<[usize; 2]>> =
        p.trees().iter().map(|t| t.edges().iter().map(|e| [e.a, e.b]).collect()).collect();
    json!({ "points": p.point_set().len(), "trees": trees })
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Generate { kind, n, count, name } => {
            let need = |v: &Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required")));
            let ps = match kind {
                Kind::Wheel => {
                    let n = need(n, "n")?;
                    make_wheel(n, 1.0, default_wheel_seed(n))?
                }
                Kind::Regular => regular_polygon(need(count, "count")?, 1.0, 0.0)?,
                Kind::Convex => random_convex(need(count, "count")?, &mut ChaCha8Rng::seed_from_u64(cli.seed))?,
                Kind::Preset => preset_points(name.as_deref().ok_or_else(|| usage("--name is required"))?)?,
            };
            if cli.json {
                emit(cli, &format!("{}\n", serde_json::to_string_pretty(&ps)?))?;
            } else {
                emit(cli, &emit_pointset(&ps))?;
            }
            Ok(Outcome::Pass)
        }
        Command::Halving { k: Some(k), .. } => {
            let ps = load_points(cli)?;
            let lines = k_halving_lines(&ps, *k)?;
            if cli.json {
                outln!("{}", serde_json::to_string_pretty(&lines)?);
            } else {
                for l in &lines {
                    outln!("{} {} {}", l.i, l.j, l.k);
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Halving { k: None, r } => {
            let ps = load_points(cli)?;
            halving_report(cli, &ps, *r)
        }
        Command::Classify { tree } => {
            let edges = parse_edge_list(&read(tree)?)?;
            let n = edges.iter().map(|e| e.b + 1).max().unwrap_or(1);
            let pairs: Vec<_> = edges.iter().map(|e| (e.a, e.b)).collect();
            let t = AbstractTree::from_edges(n, &pairs)?;
            let report = classify(&t);
            if cli.json {
                outln!("{}", serde_json::to_string_pretty(&report)?);
            } else if let Value::Object(fields) = serde_json::to_value(&report)? {
                for (key, value) in fields {
                    outln!("{key}: {value}");
                }
            }
            Ok(Outcome::Pass)
        }
        Command::WheelPartition { n, tree, svg } => wheel_partition(cli, *n, tree, *svg),
        Command::HalvingPartition { .. } => halving_partition(cli),
        Command::Verify { partition } => {
            let ps = Arc::new(load_points(cli)?);
            let p = parse_partition(&read(partition)?, ps)?;
            let report = verify_partition(&p)?;
            if cli.json {
                outln!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                match &report.failure {
                    None => outln!("PASS: {} trees on {} points", report.trees, report.points),
                    Some(f) => outln!("FAIL: {f}"),
                }
            }
            Ok(if report.ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Oracle { limit } => {
            let ps = Arc::new(load_points(cli)?);
            let found = brute_force_partitions(&ps, *limit)?;
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir)?;
                for (i, canon) in found.iter().enumerate() {
                    let p = partition_from_canonical(ps.clone(), canon)?;
                    fs::write(dir.join(format!("partition_{i:04}.txt")), emit_partition(&p))?;
                }
            }
            let mut analyzed = 0;
            if ps.wheel_n().is_some() {
                for canon in &found {
                    analyze_wheel_partition(&partition_from_canonical(ps.clone(), canon)?)?;
                    analyzed += 1;
                }
            }
            if cli.json {
                outln!("{}", json!({ "partitions": found.len(), "limit": limit, "wheel_analyzed": analyzed }));
            } else {
                outln!("partitions found: {}", found.len());
                if analyzed > 0 {
                    outln!("wheel structure checks passed on all {analyzed}");
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Render { partition } => {
            let ps = Arc::new(load_points(cli)?);
            let p = parse_partition(&read(partition)?, ps)?;
            emit(cli, &render_partition(&p, &SvgStyle::default()))?;
            Ok(Outcome::Pass)
        }
    }
}

fn halving_report(cli: &Cli, ps: &PointSet, r: Option<usize>) -> anyhow::Result<Outcome> {
    let lines = all_lines(ps)?;
    let table = incidence_table(ps)?;
    let h = h_labeling(ps).ok();
    let w = w_labeling(ps).ok();
    let hyp = match r {
        Some(r) => Some((check_theorem3_hypothesis(ps, r)?, check_theorem4_hypothesis(ps, r)?)),
        None => None,
    };
    if cli.json {
        let out = json!({
            "lines": lines,
            "incidence": table,
            "h_labeling": h,
            "w_labeling": w,
            "hypothesis": hyp.as_ref().map(|(a, b)| json!({ "symmetric": a, "w": b })),
        });
        outln!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(Outcome::Pass);
    }
    outln!("halving lines (k = 0):");
    for l in lines.iter().filter(|l| l.k == 0) {
        outln!("  {}-{}", l.i, l.j);
    }
    outln!("incidences per point (k = 0, 1, ...):");
    for (v, row) in table.iter().enumerate() {
        outln!("  {v}: {row:?}");
    }
    match &h {
        Some(h) => outln!("h-labeling v_0..: {:?}", h.order),
        None => outln!("h-labeling: none"),
    }
    match &w {
        Some(w) => outln!("w-labeling: w = {}, v_0..: {:?}", w.w, w.order),
        None => outln!("w-labeling: none"),
    }
    if let Some((a, b)) = hyp {
        outln!("symmetric-caterpillar hypothesis: {} {:?}", a.holds, a.violation);
        outln!("w-caterpillar hypothesis: {} {:?}", b.holds, b.violation);
    }
    Ok(Outcome::Pass)
}

fn builtin_tree(name: &str, n: usize) -> anyhow::Result<AbstractTree> {
    match name {
        "fig2i" => {
            if n != 3 {
                bail!(usage("builtin:fig2i has 6 vertices; use --n 3"));
            }
            Ok(AbstractTree::from_edges(6, &[(5, 2), (2, 0), (0, 3), (3, 4), (0, 1)])?)
        }
        "doublestar" => Ok(AbstractTree::double_star_subdivided(0, n - 1, n - 1)),
        other => Err(usage(format!("unknown builtin tree `{other}`"))),
    }
}

fn write_partition_dir(dir: &Path, p: &Partition, svg: bool) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (i, t) in p.trees().iter().enumerate() {
        fs::write(dir.join(format!("tree_{i}.edges")), emit_edge_list(t.edges()))?;
    }
    fs::write(dir.join("partition.txt"), emit_partition(p))?;
    fs::write(dir.join("points.txt"), emit_pointset(p.point_set()))?;
    if svg {
        fs::write(dir.join("partition.svg"), render_partition(p, &SvgStyle::default()))?;
    }
    Ok(())
}

fn wheel_partition(cli: &Cli, n: usize, tree: &str, svg: bool) -> anyhow::Result<Outcome> {
    if n < 2 {
        bail!(usage("--n must be at least 2"));
    }
    let t = match tree.strip_prefix("builtin:") {
        Some(name) => builtin_tree(name, n)?,
        None => {
            let edges = parse_edge_list(&read(Path::new(tree))?)?;
            let pairs: Vec<_> = edges.iter().map(|e| (e.a, e.b)).collect();
            AbstractTree::from_edges(2 * n, &pairs)?
        }
    };
    let ps = Arc::new(make_wheel(n, 1.0, default_wheel_seed(n))?);
    let p = build_wheel_partition(ps, &t)?;
    let report = verify_partition(&p)?;
    let analysis = analyze_wheel_partition(&p)?;
    let note1 = check_note1(&p)?;
    if let Some(dir) = &cli.out {
        write_partition_dir(dir, &p, svg)?;
        fs::write(
            dir.join("analysis.json"),
            serde_json::to_string_pretty(&json!({ "verify": report, "analysis": analysis, "note1": note1 }))?,
        )?;
    }
    if cli.json {
        outln!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "partition": partition_json(&p), "verify": report, "analysis": analysis, "note1": note1
            }))?
        );
    } else {
        out!("{}", emit_partition(&p));
        outln!("verify: {}", if report.ok { "PASS" } else { "FAIL" });
        outln!("one-boundary tree: {}", analysis.one_boundary_tree);
        outln!("case: {:?}", analysis.case);
    }
    Ok(if report.ok { Outcome::Pass } else { Outcome::Fail })
}

fn halving_partition(cli: &Cli) -> anyhow::Result<Outcome> {
    let Command::HalvingPartition {
        theorem,
        choices: choices_arg,
        t,
        r: r_flag,
        fan,
        star,
        extend,
        wtype,
        anchor,
        unchecked: skip_check,
        svg,
    } = &cli.command
    else {
        unreachable!()
    };
    let (mut points, mut method, mut r, mut choices, mut unchecked) =
        (None, None, None, ConstructionChoices::default(), false);
    match choices_arg.as_deref() {
        Some(name) if HALVING_PRESETS.contains(&name) => {
            let pre = halving_preset(name)?;
            method = Some(match pre.construction {
                Construction::SymmetricCaterpillar => Method::Symmetric,
                Construction::WCaterpillar => Method::Wcaterpillar,
            });
            points = Some(pre.points);
            r = Some(pre.r);
            choices = pre.choices;
            unchecked = !pre.hypothesis_holds;
        }
        Some(file) => {
            choices = serde_json::from_str(&read(Path::new(file))?).map_err(|e| usage(format!("{file}: {e}")))?;
        }
        None => {}
    }
    if theorem.is_some() {
        method = *theorem;
    }
    let method = method.ok_or_else(|| usage("--theorem or a preset --choices is required"))?;
    let ps = match (&cli.input, points) {
        (None, Some(points)) => points,
        _ => load_points(cli)?,
    };
    if r_flag.is_some() {
        r = *r_flag;
    }
    if let Some(f) = fan {
        choices.fan_line = Some(*f);
    }
    if let Some(s) = star {
        choices.star_side = match s {
            Side::Low => StarSide::Low,
            Side::High => StarSide::High,
        };
    }
    if let Some(e) = extend {
        choices.extend_side = e
            .chars()
            .map(|c| match c {
                'L' | 'l' => Ok(ExtendSide::Left),
                'R' | 'r' => Ok(ExtendSide::Right),
                other => Err(usage(format!("extension step `{other}` is not L or R"))),
            })
            .collect::<anyhow::Result<_>>()?;
    }
    if let Some(k) = wtype {
        choices.type4 = match k {
            1 => WType::Type1,
            2 => WType::Type2,
            other => bail!(usage(format!("--wtype must be 1 or 2, got {other}"))),
        };
    }
    if anchor.is_some() {
        choices.anchor = *anchor;
    }
    unchecked |= *skip_check;
    let ps = Arc::new(ps);
    let need_r = || r.ok_or_else(|| usage("--r is required"));
    let p = match method {
        Method::Doublestar => theorem2_partition(ps, t.ok_or_else(|| usage("--t is required"))?)?,
        Method::Symmetric if unchecked => theorem3_construct(ps, need_r()?, &choices)?,
        Method::Symmetric => theorem3_partition(ps, need_r()?, &choices)?,
        Method::Wcaterpillar if unchecked => theorem4_construct(ps, need_r()?, &choices)?,
        Method::Wcaterpillar => theorem4_partition(ps, need_r()?, &choices)?,
    };
    let report = verify_partition(&p)?;
    let classes: Vec<_> =
        p.trees().iter().map(|t| t.abstract_tree().map(|a| classify(&a))).collect::<Result<_, _>>()?;
    if let Some(dir) = &cli.out {
        write_partition_dir(dir, &p, *svg)?;
    }
    if cli.json {
        outln!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "partition": partition_json(&p), "verify": report, "classes": classes
            }))?
        );
    } else {
        out!("{}", emit_partition(&p));
        outln!("verify: {}", if report.ok { "PASS" } else { "FAIL" });
    }
    Ok(if report.ok { Outcome::Pass } else { Outcome::Fail })
}
