//! Executable correctness checks for a [`ReducedInstance`].
//!
//! * vertex condition: no added vertex is playable by either player in the
//!   initial target position;
//! * play-for-play: the source and target game trees are walked together and
//!   at every node each player's legal moves must correspond one-to-one
//!   through the embedding;
//! * winnability: both games have the same outcome class.

use std::collections::HashMap;
use std::fmt;

use crate::error::Result;
use crate::graph::VertexId;
use crate::reductions::ReducedInstance;
use crate::rules::{apply_move, is_legal, validate_position, Board, Player, Position, Stones};
use crate::solver::{Outcome, Solver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    VertexCondition,
    PlayForPlay,
    Winnability,
    /// A full-depth play-for-play pass must come with equal outcomes.
    Consistency,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::VertexCondition => "vertex-condition",
            CheckKind::PlayForPlay => "play-for-play",
            CheckKind::Winnability => "winnability",
            CheckKind::Consistency => "consistency",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The initial target position breaks the target ruleset.
    IllegalStart(String),
    /// A vertex outside the embedded image is playable in the target.
    GadgetPlayable { vertex: String, player: Player },
    /// Legal in the source, illegal at the image vertex in the target.
    SourceOnly { vertex: String, player: Player },
    /// Illegal in the source, legal at the image vertex in the target.
    TargetOnly { vertex: String, player: Player },
    OutcomeMismatch { source: Outcome, target: Outcome },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IllegalStart(msg) => write!(f, "initial position illegal: {msg}"),
            Violation::GadgetPlayable { vertex, player } => {
                write!(f, "{vertex} {player} gadget vertex playable")
            }
            Violation::SourceOnly { vertex, player } => {
                write!(f, "{vertex} {player} source=legal target=illegal")
            }
            Violation::TargetOnly { vertex, player } => {
                write!(f, "{vertex} {player} source=illegal target=legal")
            }
            Violation::OutcomeMismatch { source, target } => {
                write!(f, "source={source} target={target}")
            }
        }
    }
}

/// Moves (by source vertex name) from the start position to the node where
/// the violation shows up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trace: Vec<(Player, String)>,
    pub violation: Violation,
}

fn player_tag(p: Player) -> &'static str {
    match p {
        Player::Left => "L",
        Player::Right => "R",
    }
}

impl Counterexample {
    pub fn trace_text(&self) -> String {
        if self.trace.is_empty() {
            return "-".into();
        }
        self.trace
            .iter()
            .map(|(p, v)| format!("{}:{v}", player_tag(*p)))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Replays the trace through the public rules API on both games and
    /// reports whether the violation is reproduced.
    pub fn replay(&self, ri: &ReducedInstance) -> Result<bool> {
        let (sg, tg) = (&ri.source_graph, &ri.target_graph);
        let (srs, trs) = (&ri.source_ruleset, &ri.target_ruleset);
        let mut src = Position::empty(sg.vertex_count());
        let mut tgt = ri.initial_position.clone();
        for (p, name) in &self.trace {
            let v = sg.id(name)?;
            src = apply_move(sg, srs, &src, v, *p)?;
            tgt = apply_move(tg, trs, &tgt, ri.embedded[v.0], *p)?;
        }
        let image = ri.preimage();
        Ok(match &self.violation {
            Violation::IllegalStart(_) => validate_position(tg, trs, &ri.initial_position).is_err(),
            Violation::GadgetPlayable { vertex, player } => {
                let t = tg.id(vertex)?;
                image[t.0].is_none() && is_legal(tg, trs, &tgt, t, *player)?
            }
            Violation::SourceOnly { vertex, player } => {
                let s = sg.id(vertex)?;
                is_legal(sg, srs, &src, s, *player)? && !is_legal(tg, trs, &tgt, ri.embedded[s.0], *player)?
            }
            Violation::TargetOnly { vertex, player } => {
                let s = sg.id(vertex)?;
                !is_legal(sg, srs, &src, s, *player)? && is_legal(tg, trs, &tgt, ri.embedded[s.0], *player)?
            }
            Violation::OutcomeMismatch { .. } => {
                let so = crate::solver::outcome(sg, srs, &src)?;
                let to = crate::solver::outcome(tg, trs, &tgt)?;
                so != to
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub kind: CheckKind,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    /// Free-form facts about the run, e.g. the two outcomes.
    pub note: String,
}

impl CheckResult {
    fn pass(kind: CheckKind, note: String) -> Self {
        CheckResult {
            kind,
            passed: true,
            counterexample: None,
            note,
        }
    }

    fn fail(kind: CheckKind, cx: Counterexample, note: String) -> Self {
        CheckResult {
            kind,
            passed: false,
            counterexample: Some(cx),
            note,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, kind: CheckKind) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.kind == kind)
    }

    /// `PASS <instance> <check>` or `FAIL <instance> <check> <trace> :: <violation>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match &c.counterexample {
                None => out.push_str(&format!("PASS {} {}\n", self.instance, c.kind)),
                Some(cx) => out.push_str(&format!(
                    "FAIL {} {} {} :: {}\n",
                    self.instance,
                    c.kind,
                    cx.trace_text(),
                    cx.violation
                )),
            }
        }
        out
    }

    fn merge(mut self, other: VerificationReport) -> Self {
        self.checks.extend(other.checks);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DepthCap {
    Full,
    Plies(u32),
}

impl DepthCap {
    /// Full depth for sources with at most six vertices, else six plies.
    pub fn default_for(source_vertices: usize) -> DepthCap {
        if source_vertices <= 6 {
            DepthCap::Full
        } else {
            DepthCap::Plies(6)
        }
    }

    fn budget(self) -> u32 {
        match self {
            DepthCap::Full => u32::MAX,
            DepthCap::Plies(n) => n,
        }
    }
}

fn report(ri: &ReducedInstance, check: CheckResult) -> VerificationReport {
    VerificationReport {
        instance: ri.label.replace(' ', ":"),
        checks: vec![check],
    }
}

pub fn check_vertex_condition(ri: &ReducedInstance) -> Result<VerificationReport> {
    let kind = CheckKind::VertexCondition;
    let (tg, trs) = (&ri.target_graph, &ri.target_ruleset);
    if let Err(e) = validate_position(tg, trs, &ri.initial_position) {
        let cx = Counterexample {
            trace: Vec::new(),
            violation: Violation::IllegalStart(e.to_string()),
        };
        return Ok(report(ri, CheckResult::fail(kind, cx, String::new())));
    }
    let board = Board::new(tg, trs)?;
    let stones = Stones::from_position(&ri.initial_position);
    let image = ri.preimage();
    let added = image.iter().filter(|x| x.is_none()).count();
    for (t, pre) in image.iter().enumerate() {
        if pre.is_some() {
            continue;
        }
        for p in Player::BOTH {
            if board.is_legal(&stones, t, p) {
                let cx = Counterexample {
                    trace: Vec::new(),
                    violation: Violation::GadgetPlayable {
                        vertex: tg.name(VertexId(t)).to_string(),
                        player: p,
                    },
                };
                return Ok(report(ri, CheckResult::fail(kind, cx, String::new())));
            }
        }
    }
    Ok(report(ri, CheckResult::pass(kind, format!("added={added}"))))
}

/// Edge counts of the paired traversal: legal moves seen on each side,
/// summed over every visited node and both players.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraversalStats {
    pub nodes: u64,
    pub source_moves: u64,
    pub target_moves: u64,
}

struct PairedWalk<'a> {
    ri: &'a ReducedInstance,
    source: Board,
    target: Board,
    image: Vec<Option<VertexId>>,
    // source position -> largest remaining budget already explored from it
    seen: HashMap<Stones, u32>,
    trace: Vec<(Player, usize)>,
    stats: TraversalStats,
}

impl PairedWalk<'_> {
    fn counterexample(&self, violation: Violation) -> Counterexample {
        let sg = &self.ri.source_graph;
        Counterexample {
            trace: self
                .trace
                .iter()
                .map(|&(p, v)| (p, sg.name(VertexId(v)).to_string()))
                .collect(),
            violation,
        }
    }

    fn compare(&self, src_moves: &[usize], tgt_moves: &[usize], p: Player) -> Option<Violation> {
        let sg = &self.ri.source_graph;
        let tg = &self.ri.target_graph;
        if let Some(&t) = tgt_moves.iter().find(|&&t| self.image[t].is_none()) {
            return Some(Violation::GadgetPlayable {
                vertex: tg.name(VertexId(t)).to_string(),
                player: p,
            });
        }
        let mut mapped: Vec<usize> = tgt_moves
            .iter()
            .filter_map(|&t| self.image[t].map(|s| s.0))
            .collect();
        mapped.sort_unstable();
        let (mut i, mut j) = (0, 0);
        loop {
            match (src_moves.get(i), mapped.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a < b => {
                    return Some(Violation::SourceOnly {
                        vertex: sg.name(VertexId(a)).to_string(),
                        player: p,
                    })
                }
                (Some(&a), None) => {
                    return Some(Violation::SourceOnly {
                        vertex: sg.name(VertexId(a)).to_string(),
                        player: p,
                    })
                }
                (_, Some(&b)) => {
                    return Some(Violation::TargetOnly {
                        vertex: sg.name(VertexId(b)).to_string(),
                        player: p,
                    })
                }
                (None, None) => return None,
            }
        }
    }

    fn visit(&mut self, src: &Stones, tgt: &Stones, budget: u32) -> Option<Counterexample> {
        if self.seen.get(src).is_some_and(|&b| b >= budget) {
            return None;
        }
        self.seen.insert(src.clone(), budget);
        self.stats.nodes += 1;

        let mut children: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for p in Player::BOTH {
            let src_moves = self.source.legal_moves(src, p);
            let tgt_moves = self.target.legal_moves(tgt, p);
            self.stats.source_moves += src_moves.len() as u64;
            self.stats.target_moves += tgt_moves.len() as u64;
            if let Some(v) = self.compare(&src_moves, &tgt_moves, p) {
                return Some(self.counterexample(v));
            }
            children[p.slot()] = src_moves;
        }
        if budget == 0 {
            return None;
        }
        for p in Player::BOTH {
            let colour = p.colour();
            for &v in &children[p.slot()] {
                let t = self.ri.embedded[v].0;
                self.trace.push((p, v));
                let found = self.visit(&src.with(v, colour), &tgt.with(t, colour), budget.saturating_sub(1));
                self.trace.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
}

/// Walks both game trees in lockstep from the start positions, down to
/// `cap` plies, stopping at the first node whose move sets disagree.
pub fn check_play_for_play(ri: &ReducedInstance, cap: DepthCap) -> Result<(VerificationReport, TraversalStats)> {
    let kind = CheckKind::PlayForPlay;
    let mut walk = PairedWalk {
        ri,
        source: Board::new(&ri.source_graph, &ri.source_ruleset)?,
        target: Board::new(&ri.target_graph, &ri.target_ruleset)?,
        image: ri.preimage(),
        seen: HashMap::new(),
        trace: Vec::new(),
        stats: TraversalStats::default(),
    };
    let src = Stones::from_position(&Position::empty(ri.source_graph.vertex_count()));
    let tgt = Stones::from_position(&ri.initial_position);
    let found = walk.visit(&src, &tgt, cap.budget());
    let stats = walk.stats;
    let depth = match cap {
        DepthCap::Full => "full".to_string(),
        DepthCap::Plies(n) => n.to_string(),
    };
    let note = format!("depth={depth} nodes={}", stats.nodes);
    let check = match found {
        Some(cx) => CheckResult::fail(kind, cx, note),
        None => CheckResult::pass(kind, note),
    };
    Ok((report(ri, check), stats))
}

/// Outcome classes of the source (from the empty board) and the target (from
/// the gadget stones).
pub fn outcomes(ri: &ReducedInstance) -> Result<(Outcome, Outcome)> {
    let source = Board::new(&ri.source_graph, &ri.source_ruleset)?;
    let target = Board::new(&ri.target_graph, &ri.target_ruleset)?;
    let empty = Stones::from_position(&Position::empty(ri.source_graph.vertex_count()));
    let start = Stones::from_position(&ri.initial_position);
    Ok((
        Solver::new(&source).outcome(&empty),
        Solver::new(&target).outcome(&start),
    ))
}

pub fn check_winnability(ri: &ReducedInstance) -> Result<VerificationReport> {
    let kind = CheckKind::Winnability;
    let (source, target) = outcomes(ri)?;
    let note = format!("source={source} target={target}");
    let check = if source == target {
        CheckResult::pass(kind, note)
    } else {
        let cx = Counterexample {
            trace: Vec::new(),
            violation: Violation::OutcomeMismatch { source, target },
        };
        CheckResult::fail(kind, cx, note)
    };
    Ok(report(ri, check))
}

/// All three checks, plus the consistency cross-check when play-for-play
/// ran at full depth.
pub fn verify(ri: &ReducedInstance, cap: DepthCap) -> Result<(VerificationReport, TraversalStats)> {
    let vertex = check_vertex_condition(ri)?;
    let (play, stats) = check_play_for_play(ri, cap)?;
    let win = check_winnability(ri)?;
    let play_passed = play.passed();
    let win_passed = win.passed();
    let mut out = vertex.merge(play).merge(win);
    if cap == DepthCap::Full {
        let kind = CheckKind::Consistency;
        let check = if !play_passed || win_passed {
            CheckResult::pass(kind, String::new())
        } else {
            let cx = out
                .check(CheckKind::Winnability)
                .and_then(|c| c.counterexample.clone())
                .expect("failed winnability carries a counterexample");
            CheckResult::fail(kind, cx, "identical trees with different outcomes".into())
        };
        out.checks.push(check);
    }
    Ok((out, stats))
}
