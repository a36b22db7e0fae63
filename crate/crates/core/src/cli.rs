//! `distgame` command-line front end.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::corpus::{run_corpus, CorpusSpec, RunOptions};
use crate::dot::{gadget_vertices, to_dot};
use crate::error::{Error, Result};
use crate::format::{parse_graph, serialize, GameFile};
use crate::gadgets::{check_gadget_lemma, GadgetFactory};
use crate::generate::{gen_complete_bipartite, gen_cycle, gen_gnp, gen_path, gen_random_bipartite};
use crate::reductions::{Reduction, SVariant};
use crate::rules::{is_interval, parse_set, set_max, validate_position, Board, Player, Position, Ruleset, Stones};
use crate::solver::{BestMove, Solver};
use crate::verifier::DepthCap;

#[derive(Parser, Debug)]
#[command(name = "distgame", version, about = "Distance games on graphs: solve, reduce, verify")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Path,
    Cycle,
    Kpq,
    Gnp,
    Bipartite,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph file.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Vertex count, or the left side size for kpq/bipartite.
        #[arg(long)]
        n: usize,
        /// Right side size for kpq/bipartite.
        #[arg(long)]
        q: Option<usize>,
        /// Edge probability for gnp/bipartite.
        #[arg(long)]
        prob: Option<f64>,
        /// Required for gnp/bipartite.
        #[arg(long)]
        seed: Option<u64>,
        /// Ruleset for non-bipartite kinds.
        #[arg(long, default_value = "D=1 S=")]
        ruleset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the outcome class and each player's best first move.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Apply the reduction selected by the source and target rulesets.
    Reduce {
        /// snort, col, node-kayles, bgnk, or `D=.. S=..`
        #[arg(long)]
        from: String,
        /// Target ruleset `D=.. S=..`
        #[arg(long)]
        to: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Mapping sidecar; defaults to `<out>.map` when --out is given.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Build the BiGraph window reduction even when k >= 2n.
        #[arg(long)]
        allow_out_of_range: bool,
    },
    /// Emit F(r) or FP(t, r) and optionally check its guarantees.
    Gadget {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: Option<u32>,
        /// Ruleset `D=.. S=..` to check the gadget against.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value_t = 2)]
        probes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a reduction over a graph corpus.
    Verify {
        #[arg(long)]
        reduction: String,
        /// `exhaustive:N` or `random:COUNT:SIZE[-MAX]:PROB:SEED`; repeatable.
        #[arg(long, required = true)]
        corpus: Vec<String>,
        /// `key=values` tokens, e.g. `n=2,3 S=empty|1`.
        #[arg(long, num_args = 0..)]
        params: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// `full` or a ply count; default depends on graph size.
        #[arg(long)]
        depth: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Export a graph file as Graphviz DOT.
    Dot {
        #[arg(long = "in")]
        input: PathBuf,
        /// `gadgets` dashes every `g<id>.<role>` vertex.
        #[arg(long)]
        highlight: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status: 0 success, 1 verification failure, 2 usage or input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("{}: {e}", path.display()))
}

fn read_game(path: &Path) -> Result<GameFile> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_graph(&text)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::InvalidParameter(e.to_string())),
    }
}

fn line(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::InvalidParameter(e.to_string()))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Gen {
            kind,
            n,
            q,
            prob,
            seed,
            ruleset,
            out: path,
        } => {
            let need = |x: Option<f64>, what: &str| {
                x.ok_or_else(|| Error::InvalidParameter(format!("--{what} is required for this kind")))
            };
            let need_seed = || seed.ok_or_else(|| Error::InvalidParameter("--seed is required for random kinds".into()));
            let side = || q.ok_or_else(|| Error::InvalidParameter("--q is required for this kind".into()));
            let (graph, rs) = match kind {
                GenKind::Path => (gen_path(n), ruleset.parse()?),
                GenKind::Cycle => (gen_cycle(n), ruleset.parse()?),
                GenKind::Gnp => (gen_gnp(n, need(prob, "prob")?, need_seed()?)?, ruleset.parse()?),
                GenKind::Kpq => {
                    let (g, part) = gen_complete_bipartite(n, side()?);
                    (g, Ruleset::bigraph_node_kayles(part))
                }
                GenKind::Bipartite => {
                    let (g, part) = gen_random_bipartite(n, side()?, need(prob, "prob")?, need_seed()?)?;
                    (g, Ruleset::bigraph_node_kayles(part))
                }
            };
            let pos = Position::empty(graph.vertex_count());
            emit(&serialize(&graph, &pos, &rs), path.as_deref(), out)?;
            Ok(true)
        }
        Command::Solve { input } => {
            let f = read_game(&input)?;
            validate_position(&f.graph, &f.ruleset, &f.position)?;
            let board = Board::new(&f.graph, &f.ruleset)?;
            let stones = Stones::from_position(&f.position);
            let mut solver = Solver::new(&board);
            let outcome = solver.outcome(&stones);
            line(out, &format!("outcome {outcome}"))?;
            for p in Player::BOTH {
                let best = match solver.best_move(&stones, p) {
                    BestMove::Winning(v) => f.graph.name(v).to_string(),
                    BestMove::NoWinningMove => "no-winning-move".into(),
                    BestMove::NoMove => "no-move".into(),
                };
                line(
                    out,
                    &format!(
                        "{} wins_first={} best={best}",
                        p.to_string().to_lowercase(),
                        outcome.wins_moving_first(p)
                    ),
                )?;
            }
            let stats = solver.stats();
            line(out, &format!("stats nodes={} hits={} peak_entries={}", stats.nodes, stats.hits, stats.peak_entries))?;
            Ok(true)
        }
        Command::Reduce {
            from,
            to,
            input,
            out: path,
            map,
            allow_out_of_range,
        } => {
            let f = read_game(&input)?;
            let target: Ruleset = to.parse()?;
            let reduction = select_reduction(&from, &target, &f.ruleset, allow_out_of_range)?;
            validate_position(&f.graph, &f.ruleset, &f.position)?;
            let part = f.ruleset.ownership().cloned();
            let ri = reduction.apply(&f.graph, part.as_ref())?;
            let start = ri.map_position(&f.position);
            emit(&serialize(&ri.target_graph, &start, &ri.target_ruleset), path.as_deref(), out)?;
            let map = map.or_else(|| path.as_ref().map(|p| PathBuf::from(format!("{}.map", p.display()))));
            if let Some(map) = map {
                fs::write(&map, ri.mapping_text()).map_err(|e| io_err(&map, e))?;
            }
            Ok(true)
        }
        Command::Gadget {
            r,
            t,
            check,
            probes,
            out: path,
        } => {
            let mut factory = GadgetFactory::new();
            let gadget = match t {
                Some(t) => factory.forbidden_path(t, r)?,
                None => factory.forbidden_vertex(r)?,
            };
            let rs: Ruleset = match &check {
                Some(text) => text.parse()?,
                None => Ruleset::n_snort(r)?,
            };
            let (g, pos) = gadget.to_board();
            emit(&serialize(&g, &pos, &rs), path.as_deref(), out)?;
            if check.is_none() {
                return Ok(true);
            }
            let report = check_gadget_lemma(&gadget, rs.d(), rs.s(), probes)?;
            for c in &report.checks {
                if c.passed {
                    line(out, &format!("PASS gadget {}", c.name))?;
                } else {
                    line(out, &format!("FAIL gadget {} :: {}", c.name, c.detail))?;
                }
            }
            Ok(report.passed())
        }
        Command::Verify {
            reduction,
            corpus,
            params,
            jobs,
            depth,
            format,
        } => {
            let grid = parse_grid(&reduction, &params)?;
            let corpus = corpus.iter().map(|c| c.parse()).collect::<Result<Vec<CorpusSpec>>>()?;
            let depth = match depth.as_deref() {
                None => None,
                Some("full") => Some(DepthCap::Full),
                Some(n) => Some(DepthCap::Plies(
                    n.parse().map_err(|_| Error::InvalidParameter(format!("bad depth `{n}`")))?,
                )),
            };
            let report = run_corpus(&grid, &corpus, RunOptions { depth, jobs: jobs.max(1) })?;
            let text = match format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Kv => report.to_kv(),
            };
            emit(&text, None, out)?;
            Ok(report.passed())
        }
        Command::Dot {
            input,
            highlight,
            out: path,
        } => {
            let f = read_game(&input)?;
            let marks = match highlight.as_deref() {
                None => BTreeSet::new(),
                Some("gadgets") => gadget_vertices(&f.graph),
                Some(other) => {
                    return Err(Error::InvalidParameter(format!("unknown highlight `{other}`")));
                }
            };
            emit(&to_dot(&f.graph, &f.position, &marks), path.as_deref(), out)?;
            Ok(true)
        }
    }
}

fn named_source(from: &str) -> Result<Ruleset> {
    match from {
        "snort" => Ok(Ruleset::snort()),
        "col" => Ok(Ruleset::col()),
        "node-kayles" => Ok(Ruleset::node_kayles()),
        "bgnk" | "bigraph-node-kayles" => Ok(Ruleset::node_kayles()),
        other => other.parse(),
    }
}

/// Picks the reduction whose source/target shape matches.
fn select_reduction(from: &str, target: &Ruleset, file: &Ruleset, allow_out_of_range: bool) -> Result<Reduction> {
    let bigraph = matches!(from, "bgnk" | "bigraph-node-kayles");
    let source = named_source(from)?;
    if !source.same_sets(file) || bigraph != file.ownership().is_some() {
        return Err(Error::InvalidParameter(format!(
            "--from {from} does not match the input file's ruleset ({file}{})",
            if file.ownership().is_some() { ", bigraph" } else { "" }
        )));
    }
    let (d, s) = (target.d().clone(), target.s().clone());
    let unsupported = || Error::InvalidParameter(format!("no reduction from {from} to {target}"));
    if bigraph {
        if d == BTreeSet::from([1, 2]) && set_max(&s) <= 1 {
            let variant = if s.is_empty() { SVariant::Empty } else { SVariant::One };
            return Ok(Reduction::BgnkD12 { variant });
        }
        if is_interval(&s) {
            return Ok(Reduction::BgnkWindow {
                d,
                k: set_max(&s),
                allow_out_of_range,
            });
        }
        return Err(unsupported());
    }
    if source == Ruleset::snort() && is_interval(&d) {
        return Ok(Reduction::SnortFamily { n: set_max(&d), s });
    }
    if source == Ruleset::col() && is_interval(&s) {
        return Ok(Reduction::ColFamily { k: set_max(&s), d });
    }
    if source == Ruleset::node_kayles() {
        return Ok(Reduction::NodeKaylesEqualMax { d, s });
    }
    Err(unsupported())
}

fn parse_scalars(key: &str, text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad value `{t}` for {key}")))
        })
        .collect()
}

fn parse_sets(text: &str) -> Result<Vec<BTreeSet<u32>>> {
    text.split('|').map(parse_set).collect()
}

/// Expands `key=values` tokens into the cartesian grid of reductions.
/// Scalars (`n`, `k`) list alternatives with commas; sets (`S`, `D`) list
/// alternatives with `|`, each set written as a comma list or `empty`.
pub fn parse_grid(name: &str, params: &[String]) -> Result<Vec<Reduction>> {
    let mut n = None;
    let mut k = None;
    let mut d = None;
    let mut s = None;
    let mut allow = false;
    for tok in params.iter().flat_map(|p| p.split_whitespace()) {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("bad parameter `{tok}`")))?;
        match key {
            "n" => n = Some(parse_scalars(key, value)?),
            "k" => k = Some(parse_scalars(key, value)?),
            "D" => d = Some(parse_sets(value)?),
            "S" => s = Some(parse_sets(value)?),
            "override" => {
                allow = value
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad override `{value}`")))?
            }
            _ => return Err(Error::InvalidParameter(format!("unknown parameter `{key}`"))),
        }
    }
    let required = |x: Option<Vec<u32>>, key: &str| {
        x.ok_or_else(|| Error::InvalidParameter(format!("{name} needs {key}=")))
    };
    let required_sets = |x: Option<Vec<BTreeSet<u32>>>, key: &str| {
        x.ok_or_else(|| Error::InvalidParameter(format!("{name} needs {key}=")))
    };
    let empty = || vec![BTreeSet::new()];
    let mut grid = Vec::new();
    match name {
        "bgnk-d12" => {
            for set in s.unwrap_or_else(|| vec![BTreeSet::new(), BTreeSet::from([1])]) {
                let variant = match set_max(&set) {
                    0 => SVariant::Empty,
                    1 => SVariant::One,
                    _ => return Err(Error::ParameterViolation("bgnk-d12 needs S = {} or S = {1}".into())),
                };
                grid.push(Reduction::BgnkD12 { variant });
            }
        }
        "snort-family" => {
            for n in required(n, "n")? {
                for s in s.clone().unwrap_or_else(empty) {
                    grid.push(Reduction::SnortFamily { n, s });
                }
            }
        }
        "node-kayles-equalmax" => {
            for d in required_sets(d, "D")? {
                for s in required_sets(s.clone(), "S")? {
                    grid.push(Reduction::NodeKaylesEqualMax { d: d.clone(), s });
                }
            }
        }
        "col-family" => {
            for k in required(k, "k")? {
                for d in d.clone().unwrap_or_else(empty) {
                    grid.push(Reduction::ColFamily { k, d });
                }
            }
        }
        "bgnk-window" => {
            for d in required_sets(d, "D")? {
                for &k in &required(k.clone(), "k")? {
                    grid.push(Reduction::BgnkWindow {
                        d: d.clone(),
                        k,
                        allow_out_of_range: allow,
                    });
                }
            }
        }
        other => return Err(Error::InvalidParameter(format!("unknown reduction `{other}`"))),
    }
    Ok(grid)
}
