//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{all_pairs, random_instance, Oracle};
use distance_games::corpus::{run_corpus, CorpusReport, CorpusSpec, RunOptions};
use distance_games::format::{parse_graph, serialize};
use distance_games::gadgets::{check_gadget_lemma, forbidden_vertex_gadget, replace_all_edges, replace_edge};
use distance_games::generate::{gen_complete_bipartite, gen_cycle, gen_gnp, gen_path, gen_random_bipartite};
use distance_games::reductions::reduce_bgnk_window;
use distance_games::solver::wins_moving_first;
use distance_games::verifier::{check_play_for_play, CheckKind, Violation};
use distance_games::{Bipartition, DepthCap, Error, Graph, Player, Position, Reduction, Ruleset, SVariant, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned parameters and tolerances.
const GADGET_MAX_R: u32 = 8;
const GADGET_PROBES: usize = 2;
const GADGET_BUDGET: Duration = Duration::from_secs(30);
const FP_T: [u32; 3] = [1, 2, 3];
const FP_R: [u32; 3] = [2, 3, 4];
const FP_BUDGET: Duration = Duration::from_secs(10);
const EXHAUSTIVE_PLAIN_MAX: usize = 4;
const EXHAUSTIVE_BIPARTITE_SIDE: usize = 2;
const ALLOWED_FAILURES: usize = 0;
const RANDOM_PER_REDUCTION: usize = 30;
const RANDOM_SIZES: (usize, usize) = (6, 7);
const RANDOM_PROB: f64 = 0.4;
const RANDOM_SEED: u64 = 20_240_607;
const RANDOM_PLY_CAP: u32 = 6;
const RANDOM_BUDGET: Duration = Duration::from_secs(600);
const ORACLE_INSTANCES: usize = 50;
const ORACLE_MAX_N: usize = 6;
const ORACLE_MAX_RADIUS: u32 = 3;
const ORACLE_SEED: u64 = 66;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const ROUND_TRIP_FILES: usize = 100;
const ROUND_TRIP_SEED: u64 = 7;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took <= budget, || format!("took {took:.1?}, budget {budget:?}"))?;
    Ok(format!("{took:.1?}"))
}

fn interval(r: u32) -> BTreeSet<u32> {
    (1..=r).collect()
}

fn set(xs: &[u32]) -> BTreeSet<u32> {
    xs.iter().copied().collect()
}

fn gadget_suite() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for r in 1..=GADGET_MAX_R {
        let gad = forbidden_vertex_gadget(r).map_err(|e| e.to_string())?;
        let mut g = Graph::new();
        gad.embed(&mut g).map_err(|e| e.to_string())?;
        let d = all_pairs(&g);
        let red = g.id("g0.R").map_err(|e| e.to_string())?.0;
        let blue = g.id("g0.B").map_err(|e| e.to_string())?.0;
        ensure(d[red][blue] == r + 1, || format!("F({r}): dist(R,B) = {} != {}", d[red][blue], r + 1))?;
        let menu = [BTreeSet::new(), set(&[1]), interval(r / 2), interval(r)];
        let mut pairs: Vec<(BTreeSet<u32>, BTreeSet<u32>)> = Vec::new();
        for other in menu {
            pairs.push((interval(r), other.clone()));
            pairs.push((other, interval(r)));
        }
        pairs.sort();
        pairs.dedup();
        for (ds, ss) in pairs {
            let report = check_gadget_lemma(&gad, &ds, &ss, GADGET_PROBES).map_err(|e| e.to_string())?;
            ensure(report.passed(), || format!("F({r}) D={ds:?} S={ss:?}: {:?}", report.checks))?;
            cases += 1;
        }
    }
    let took = within(start, GADGET_BUDGET)?;
    Ok(format!("{cases} (r, D, S) cases, dist(R,B) = r+1 for r=1..{GADGET_MAX_R} ({took})"))
}

fn forbidden_path_distances() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for t in FP_T {
        for r in FP_R {
            let k2 = gen_path(2);
            let (g, _) = replace_edge(&k2, (VertexId(0), VertexId(1)), t, r).map_err(|e| e.to_string())?;
            let d = all_pairs(&g);
            ensure(d[0][1] == t + 1, || format!("FP({t},{r}) probes at {} not {}", d[0][1], t + 1))?;
            let tri = gen_cycle(3);
            let (g, _) = replace_all_edges(&tri, t, r).map_err(|e| e.to_string())?;
            let d = all_pairs(&g);
            for u in 0..3 {
                for v in 0..3 {
                    if u != v {
                        ensure(d[u][v] == t + 1, || format!("triangle FP({t},{r}): d({u},{v}) = {}", d[u][v]))?;
                    }
                }
            }
            checked += 1;
        }
    }
    let took = within(start, FP_BUDGET)?;
    Ok(format!("{checked} (t, r) pairs exact ({took})"))
}

fn exhaustive_grid() -> Vec<(Reduction, CorpusSpec)> {
    let plain = CorpusSpec::Exhaustive { max: EXHAUSTIVE_PLAIN_MAX };
    let bip = CorpusSpec::Exhaustive { max: EXHAUSTIVE_BIPARTITE_SIDE };
    grid().into_iter().map(|r| {
        let c = if r.needs_bipartition() { bip.clone() } else { plain.clone() };
        (r, c)
    }).collect()
}

/// Every parameter combination named by the reduction-equivalence criterion.
fn grid() -> Vec<Reduction> {
    let mut out = vec![
        Reduction::BgnkD12 { variant: SVariant::Empty },
        Reduction::BgnkD12 { variant: SVariant::One },
    ];
    for n in [2, 3] {
        for s in [BTreeSet::new(), set(&[1])] {
            out.push(Reduction::SnortFamily { n, s });
        }
    }
    for m in 1..=3u32 {
        let mut others = vec![set(&[m]), set(&[1, m]), interval(m)];
        others.sort();
        others.dedup();
        for other in others {
            out.push(Reduction::NodeKaylesEqualMax { d: interval(m), s: other.clone() });
            out.push(Reduction::NodeKaylesEqualMax { d: other, s: interval(m) });
        }
    }
    for k in [2, 3] {
        for d in [BTreeSet::new(), set(&[1])] {
            out.push(Reduction::ColFamily { k, d });
        }
    }
    for (n, k) in [(2, 3), (3, 4), (3, 5)] {
        let mut ds = vec![interval(n), set(&[1, n])];
        ds.dedup();
        for d in ds {
            out.push(Reduction::BgnkWindow { d, k, allow_out_of_range: false });
        }
    }
    out.sort_by_key(|r| r.to_string());
    out.dedup();
    out
}

fn summarize(report: &CorpusReport, require: &[CheckKind]) -> Result<(usize, usize), String> {
    let failures = report.failures().count();
    if failures > ALLOWED_FAILURES {
        let first = report.failures().next().unwrap();
        return Err(format!("{failures} failing instances; first: {}", first.report.to_text().trim_end()));
    }
    for rec in &report.records {
        for kind in require {
            ensure(rec.report.check(*kind).is_some(), || format!("{} missing {kind}", rec.report.instance))?;
        }
    }
    Ok((report.records.len(), grid_size(report)))
}

fn grid_size(report: &CorpusReport) -> usize {
    report.records.iter().map(|r| r.reduction.as_str()).collect::<BTreeSet<_>>().len()
}

fn reduction_equivalence() -> Outcome {
    let start = Instant::now();
    let mut instances = 0;
    let mut combos = 0;
    for (red, corpus) in exhaustive_grid() {
        let report = run_corpus(&[red], &[corpus], RunOptions { depth: Some(DepthCap::Full), jobs: 4 })
            .map_err(|e| e.to_string())?;
        let (n, c) = summarize(
            &report,
            &[CheckKind::VertexCondition, CheckKind::PlayForPlay, CheckKind::Winnability],
        )?;
        instances += n;
        combos += c;
    }
    Ok(format!(
        "{combos} parameter sets, {instances} instances, 0 failures at full depth ({:.1?})",
        start.elapsed()
    ))
}

fn randomized_spot_check() -> Outcome {
    let start = Instant::now();
    let corpus = CorpusSpec::Random {
        count: RANDOM_PER_REDUCTION,
        min_size: RANDOM_SIZES.0,
        max_size: RANDOM_SIZES.1,
        prob: RANDOM_PROB,
        seed: RANDOM_SEED,
    };
    let report = run_corpus(&grid(), &[corpus], RunOptions { depth: Some(DepthCap::Plies(RANDOM_PLY_CAP)), jobs: 4 })
        .map_err(|e| e.to_string())?;
    let (instances, combos) = summarize(
        &report,
        &[CheckKind::VertexCondition, CheckKind::PlayForPlay, CheckKind::Winnability],
    )?;
    ensure(instances == combos * RANDOM_PER_REDUCTION, || format!("{instances} instances for {combos} sets"))?;
    let took = within(start, RANDOM_BUDGET)?;
    Ok(format!(
        "{combos} parameter sets x {RANDOM_PER_REDUCTION} graphs on {}-{} vertices, seed {RANDOM_SEED}, 0 failures ({took})",
        RANDOM_SIZES.0, RANDOM_SIZES.1
    ))
}

fn out_of_range_window() -> Outcome {
    let g = Graph::from_edges(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).map_err(|e| e.to_string())?;
    let part = Bipartition::new(vec![Player::Left, Player::Right, Player::Left]);
    let d = set(&[1, 2]);
    let refused = reduce_bgnk_window(&g, &part, &d, 4, false);
    ensure(matches!(refused, Err(Error::ParameterViolation(_))), || {
        format!("out-of-range build not refused: {refused:?}")
    })?;
    let ri = reduce_bgnk_window(&g, &part, &d, 4, true).map_err(|e| e.to_string())?;
    ensure(ri.target_ruleset.s() == &interval(4), || "target S is not {1..4}".into())?;
    let dist = all_pairs(&ri.target_graph);
    ensure(dist[0][2] == 4, || format!("d(x,z) = {} in target", dist[0][2]))?;
    let (report, _) = check_play_for_play(&ri, DepthCap::Full).map_err(|e| e.to_string())?;
    let check = report.check(CheckKind::PlayForPlay).ok_or("no play-for-play check")?;
    ensure(!check.passed, || "play-for-play passed".into())?;
    let cx = check.counterexample.as_ref().ok_or("no counterexample")?;
    ensure(cx.trace == vec![(Player::Left, "x".to_string())], || format!("trace {}", cx.trace_text()))?;
    let want = Violation::SourceOnly { vertex: "z".into(), player: Player::Left };
    ensure(cx.violation == want, || format!("violation {}", cx.violation))?;
    ensure(cx.replay(&ri).map_err(|e| e.to_string())?, || "trace does not replay".into())?;
    Ok(report.to_text().trim_end().to_string())
}

fn solver_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut mismatches = Vec::new();
    for i in 0..ORACLE_INSTANCES {
        let (g, rs, pos) = random_instance(&mut rng, ORACLE_MAX_N, ORACLE_MAX_RADIUS);
        let oracle = Oracle::new(&g, &rs);
        for p in Player::BOTH {
            let (fast, _) = wins_moving_first(&g, &rs, &pos, p).map_err(|e| e.to_string())?;
            let slow = oracle.wins(&mut pos.cells().to_vec(), p);
            if fast != slow {
                mismatches.push(format!("#{i} {p} {rs}"));
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("mismatches: {}", mismatches.join("; ")))?;
    let took = within(start, ORACLE_BUDGET)?;
    Ok(format!("{ORACLE_INSTANCES} instances, seed {ORACLE_SEED}, 0 mismatches ({took})"))
}

fn random_file(rng: &mut ChaCha8Rng) -> (Graph, Position, Ruleset) {
    let seed = rng.gen();
    let n = rng.gen_range(1..=9);
    let (g, rs) = match rng.gen_range(0..5) {
        0 => (gen_path(n), None),
        1 => (gen_cycle(n.max(3)), None),
        2 => (gen_gnp(n, rng.gen(), seed).unwrap(), None),
        3 => {
            let (g, part) = gen_complete_bipartite(n / 2 + 1, n - n / 2);
            (g, Some(Ruleset::bigraph_node_kayles(part)))
        }
        _ => {
            let (g, part) = gen_random_bipartite(n / 2, n - n / 2, rng.gen(), seed).unwrap();
            (g, Some(Ruleset::bigraph_node_kayles(part)))
        }
    };
    let rs = rs.unwrap_or_else(|| {
        let pick = |rng: &mut ChaCha8Rng| -> BTreeSet<u32> { (1..=4).filter(|_| rng.gen_bool(0.4)).collect() };
        let (d, s) = (pick(rng), pick(rng));
        Ruleset::distance_game(d, s).unwrap()
    });
    let oracle = Oracle::new(&g, &rs);
    let mut cells = vec![None; g.vertex_count()];
    let mut p = Player::Left;
    for _ in 0..rng.gen_range(0..4) {
        let Some(&v) = oracle.moves(&cells, p).choose(rng) else { break };
        cells[v] = Some(p.colour());
        p = p.opponent();
    }
    (g, Position::from_cells(cells), rs)
}

fn verify_run(jobs: &str) -> Result<(Option<i32>, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_distgame"))
        .args([
            "verify", "--reduction", "bgnk-window", "--corpus", "random:12:4-6:0.5:99", "--corpus", "exhaustive:1",
            "--params", "D=1,2|1,3", "k=4", "override=true", "--jobs", jobs, "--format", "kv",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn determinism_and_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ROUND_TRIP_SEED);
    for i in 0..ROUND_TRIP_FILES {
        let (g, pos, rs) = random_file(&mut rng);
        let text = serialize(&g, &pos, &rs);
        let parsed = parse_graph(&text).map_err(|e| format!("file {i}: {e}"))?;
        ensure(parsed.graph == g && parsed.position == pos && parsed.ruleset == rs, || format!("file {i} changed"))?;
        let again = parsed.serialize();
        ensure(again == text, || format!("file {i} not a fixpoint"))?;
        ensure(parse_graph(&again).map_err(|e| e.to_string())?.serialize() == again, || format!("file {i}"))?;
    }
    let (c1, one) = verify_run("1")?;
    let (c4, four) = verify_run("4")?;
    let (c1b, again) = verify_run("1")?;
    ensure(!one.is_empty(), || "empty verify report".into())?;
    ensure(one == four && one == again && c1 == c4 && c1 == c1b, || "verify reports differ across runs".into())?;
    Ok(format!(
        "{ROUND_TRIP_FILES} files fixpoint; verify --jobs 1 vs 4 identical ({} records, exit {:?})",
        one.lines().count(),
        c1
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("gadget-lemma-suite", gadget_suite),
        ("forbidden-path-distances", forbidden_path_distances),
        ("reduction-equivalence-exhaustive", reduction_equivalence),
        ("randomized-spot-check", randomized_spot_check),
        ("out-of-range-window-negative", out_of_range_window),
        ("solver-oracle", solver_oracle),
        ("determinism-round-trip", determinism_and_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("PASS criterion {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
