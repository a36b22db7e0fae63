//! Runs the verifier over exhaustive and random graph corpora.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generate::{all_labelled_bipartite, all_labelled_graphs, gen_gnp, gen_random_bipartite};
use crate::graph::Graph;
use crate::reductions::Reduction;
use crate::rules::Bipartition;
use crate::solver::Outcome;
use crate::verifier::{outcomes, verify, CheckKind, Counterexample, DepthCap, TraversalStats, VerificationReport};

#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSpec {
    /// Every labelled graph with at most `max` vertices; for bipartite
    /// reductions, every labelled bipartite graph with both sides `<= max`.
    Exhaustive { max: usize },
    /// `count` random graphs with sizes cycling through `min_size..=max_size`.
    Random {
        count: usize,
        min_size: usize,
        max_size: usize,
        prob: f64,
        seed: u64,
    },
}

/// `exhaustive:N` or `random:COUNT:SIZE[-MAX]:PROB:SEED`.
impl FromStr for CorpusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Syntax(format!("bad corpus spec `{s}`"));
        match parts.as_slice() {
            ["exhaustive", n] => Ok(CorpusSpec::Exhaustive {
                max: n.parse().map_err(|_| bad())?,
            }),
            ["random", count, size, prob, seed] => {
                let (min_size, max_size) = match size.split_once('-') {
                    Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
                    None => {
                        let n = size.parse().map_err(|_| bad())?;
                        (n, n)
                    }
                };
                if min_size > max_size {
                    return Err(bad());
                }
                Ok(CorpusSpec::Random {
                    count: count.parse().map_err(|_| bad())?,
                    min_size,
                    max_size,
                    prob: prob.parse().map_err(|_| bad())?,
                    seed: seed.parse().map_err(|_| bad())?,
                })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusInstance {
    pub graph: Graph,
    pub part: Option<Bipartition>,
}

impl CorpusInstance {
    /// Compact one-token description: `V=<n>;E=a-b,c-d`.
    pub fn describe(&self) -> String {
        let edges: Vec<String> = self
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| format!("{}-{}", self.graph.name(u), self.graph.name(v)))
            .collect();
        format!("V={};E={}", self.graph.vertex_count(), edges.join(","))
    }
}

/// Expands corpus specs into concrete instances, in a fixed order.
pub fn corpus_instances(specs: &[CorpusSpec], bipartite: bool) -> Result<Vec<CorpusInstance>> {
    let mut out = Vec::new();
    for spec in specs {
        match *spec {
            CorpusSpec::Exhaustive { max } if bipartite => {
                if max * max > crate::generate::MAX_LABELLED_BIPARTITE_EDGES {
                    return Err(Error::CorpusTooLarge(format!("bipartite sides up to {max}")));
                }
                for p in 0..=max {
                    for q in 0..=max {
                        out.extend(all_labelled_bipartite(p, q)?.map(|(graph, part)| CorpusInstance {
                            graph,
                            part: Some(part),
                        }));
                    }
                }
            }
            CorpusSpec::Exhaustive { max } => {
                if max > crate::generate::MAX_LABELLED_VERTICES {
                    return Err(Error::CorpusTooLarge(format!("graphs up to {max} vertices")));
                }
                for n in 0..=max {
                    out.extend(all_labelled_graphs(n)?.map(|graph| CorpusInstance { graph, part: None }));
                }
            }
            CorpusSpec::Random {
                count,
                min_size,
                max_size,
                prob,
                seed,
            } => {
                let mut seeds = ChaCha8Rng::seed_from_u64(seed);
                let span = max_size - min_size + 1;
                for i in 0..count {
                    let size = min_size + i % span;
                    let s = seeds.next_u64();
                    out.push(if bipartite {
                        let (graph, part) = gen_random_bipartite(size / 2, size - size / 2, prob, s)?;
                        CorpusInstance {
                            graph,
                            part: Some(part),
                        }
                    } else {
                        CorpusInstance {
                            graph: gen_gnp(size, prob, s)?,
                            part: None,
                        }
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// `None` picks [`DepthCap::default_for`] per instance.
    pub depth: Option<DepthCap>,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { depth: None, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceRecord {
    pub index: usize,
    pub reduction: String,
    pub graph: String,
    pub target_vertices: usize,
    pub report: VerificationReport,
    pub stats: TraversalStats,
    pub outcomes: (Outcome, Outcome),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub records: Vec<InstanceRecord>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub instances: usize,
    pub passed: BTreeMap<CheckKind, usize>,
    pub failed: BTreeMap<CheckKind, usize>,
    pub first_failure: BTreeMap<CheckKind, (usize, Counterexample)>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.report.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records.iter().filter(|r| !r.report.passed())
    }

    /// Per-reduction pass/fail counts and the first counterexample for each
    /// failing check.
    pub fn tally(&self) -> BTreeMap<String, Tally> {
        let mut out: BTreeMap<String, Tally> = BTreeMap::new();
        for rec in &self.records {
            let t = out.entry(rec.reduction.clone()).or_default();
            t.instances += 1;
            for c in &rec.report.checks {
                if c.passed {
                    *t.passed.entry(c.kind).or_default() += 1;
                } else {
                    *t.failed.entry(c.kind).or_default() += 1;
                    if let Some(cx) = &c.counterexample {
                        t.first_failure.entry(c.kind).or_insert((rec.index, cx.clone()));
                    }
                }
            }
        }
        out
    }

    /// One `PASS`/`FAIL` line per check per instance, then one `SUMMARY`
    /// line per reduction.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rec in &self.records {
            out.push_str(&rec.report.to_text());
        }
        for (red, t) in self.tally() {
            let failed: usize = t.failed.values().sum();
            let passed: usize = t.passed.values().sum();
            writeln!(
                out,
                "SUMMARY {} instances={} checks_passed={passed} checks_failed={failed}",
                red.replace(' ', ":"),
                t.instances
            )
            .unwrap();
        }
        out
    }

    /// One `key=value` record per instance.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for rec in &self.records {
            write!(
                out,
                "index={} reduction={} graph={} target_vertices={}",
                rec.index,
                rec.reduction.replace(' ', ":"),
                rec.graph,
                rec.target_vertices
            )
            .unwrap();
            for c in &rec.report.checks {
                write!(out, " {}={}", c.kind, if c.passed { "pass" } else { "fail" }).unwrap();
                if let Some(cx) = &c.counterexample {
                    write!(out, " {}.trace={}", c.kind, cx.trace_text()).unwrap();
                }
            }
            writeln!(
                out,
                " source_outcome={} target_outcome={} nodes={} source_moves={} target_moves={}",
                rec.outcomes.0, rec.outcomes.1, rec.stats.nodes, rec.stats.source_moves, rec.stats.target_moves
            )
            .unwrap();
        }
        out
    }
}

fn run_one(index: usize, red: &Reduction, inst: &CorpusInstance, opts: &RunOptions) -> Result<InstanceRecord> {
    let ri = red.apply(&inst.graph, inst.part.as_ref())?;
    let cap = opts
        .depth
        .unwrap_or_else(|| DepthCap::default_for(inst.graph.vertex_count()));
    let (mut report, stats) = verify(&ri, cap)?;
    let graph = inst.describe();
    report.instance = format!("{}#{index}[{graph}]", red.to_string().replace(' ', ":"));
    Ok(InstanceRecord {
        index,
        reduction: red.to_string(),
        graph,
        target_vertices: ri.target_graph.vertex_count(),
        stats,
        outcomes: outcomes(&ri)?,
        report,
    })
}

/// Verifies every reduction in `grid` on every corpus instance. Records are
/// ordered by (grid position, instance position) whatever `jobs` is.
pub fn run_corpus(grid: &[Reduction], corpus: &[CorpusSpec], opts: RunOptions) -> Result<CorpusReport> {
    let mut work = Vec::new();
    for red in grid {
        // reject bad parameters once, up front
        let probe = CorpusInstance {
            graph: Graph::new(),
            part: Some(Bipartition::new(Vec::new())),
        };
        red.apply(&probe.graph, probe.part.as_ref())?;
        for inst in corpus_instances(corpus, red.needs_bipartition())? {
            work.push((red, inst));
        }
    }
    let run = |(i, (red, inst)): (usize, &(&Reduction, CorpusInstance))| run_one(i, red, inst, &opts);
    let records: Result<Vec<InstanceRecord>> = if opts.jobs <= 1 {
        work.iter().enumerate().map(run).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| work.par_iter().enumerate().map(run).collect())
    };
    Ok(CorpusReport { records: records? })
}
