//! Gadget reductions from Snort, Col, Node-Kayles and BiGraph-Node-Kayles
//! to distance games ⟨D,S⟩.
//!
//! Every reduction keeps the source vertices as an index prefix of the target
//! graph, with the same names, and only adds gadget vertices that are meant to
//! be unplayable for both players.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gadgets::{
    forbidden_vertex_order, replace_all_edges_with, splice, GadgetFactory, GadgetInstance, GadgetKind,
};
use crate::graph::{Graph, VertexId};
use crate::rules::{is_interval, set_max, Bipartition, Colour, Player, Position, Ruleset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub label: String,
    pub source_graph: Graph,
    pub source_ruleset: Ruleset,
    pub target_graph: Graph,
    pub target_ruleset: Ruleset,
    pub initial_position: Position,
    /// Target vertex of each source vertex, indexed by source index.
    pub embedded: Vec<VertexId>,
    pub gadget_log: Vec<GadgetInstance>,
}

impl ReducedInstance {
    /// Target position for a source position: the gadget stones plus every
    /// source stone moved through the embedding.
    pub fn map_position(&self, source: &Position) -> Position {
        let mut out = self.initial_position.clone();
        for (v, c) in source.stones() {
            out.set(self.embedded[v.0], Some(c));
        }
        out
    }

    /// Inverse of the embedding, as a dense lookup over target indices.
    pub fn preimage(&self) -> Vec<Option<VertexId>> {
        let mut out = vec![None; self.target_graph.vertex_count()];
        for (i, &t) in self.embedded.iter().enumerate() {
            out[t.0] = Some(VertexId(i));
        }
        out
    }

    /// `<source name> -> <target name>`, one line per source vertex.
    pub fn mapping_text(&self) -> String {
        self.embedded
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                format!(
                    "{} -> {}\n",
                    self.source_graph.name(VertexId(i)),
                    self.target_graph.name(t)
                )
            })
            .collect()
    }

    fn identity(label: String, g: &Graph, source: Ruleset, target: Ruleset) -> Self {
        ReducedInstance {
            label,
            source_graph: g.clone(),
            source_ruleset: source,
            target_ruleset: target,
            target_graph: g.clone(),
            initial_position: Position::empty(g.vertex_count()),
            embedded: g.vertices().collect(),
            gadget_log: Vec::new(),
        }
    }
}

/// Incrementally grows the target graph and its precoloured stones.
struct Builder {
    graph: Graph,
    position: Position,
    log: Vec<GadgetInstance>,
    factory: GadgetFactory,
}

impl Builder {
    fn new(g: &Graph) -> Self {
        Builder {
            graph: g.clone(),
            position: Position::empty(g.vertex_count()),
            log: Vec::new(),
            factory: GadgetFactory::fresh_for(g),
        }
    }

    fn place(&mut self, stones: Vec<(VertexId, Colour)>) {
        self.position.grow(self.graph.vertex_count());
        for (v, c) in stones {
            self.position.set(v, Some(c));
        }
    }

    fn add(&mut self, gadget: GadgetInstance) -> Result<()> {
        let stones = gadget.embed(&mut self.graph)?;
        self.place(stones);
        self.log.push(gadget);
        Ok(())
    }

    fn replace_all_edges(&mut self, t: u32, r: u32) -> Result<()> {
        let (graph, log) = replace_all_edges_with(&self.graph, t, r, &mut self.factory)?;
        self.graph = graph;
        for (_, gadget) in log {
            let stones = gadget
                .precoloured
                .iter()
                .map(|(name, &c)| (self.graph.id(name).expect("embedded"), c))
                .collect();
            self.place(stones);
            self.log.push(gadget);
        }
        Ok(())
    }

    fn finish(mut self, label: String, g: &Graph, source: Ruleset, target: Ruleset) -> ReducedInstance {
        self.position.grow(self.graph.vertex_count());
        ReducedInstance {
            label,
            source_graph: g.clone(),
            source_ruleset: source,
            target_graph: self.graph,
            target_ruleset: target,
            initial_position: self.position,
            embedded: g.vertices().collect(),
            gadget_log: self.log,
        }
    }
}

fn fmt_set(set: &BTreeSet<u32>) -> String {
    crate::rules::format_set(set)
}

/// Which ⟨{1,2},S⟩ target the BiGraph-Node-Kayles reduction builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SVariant {
    /// S = ∅: hub `v2`, own-colour stone on the hub, and a path `v2 - v1 - X`
    /// ending in an opposite-colour stone.
    Empty,
    /// S = {1}: hub `v` with a single own-colour stone.
    One,
}

/// BiGraph-Node-Kayles to ⟨{1,2},∅⟩ or ⟨{1,2},{1}⟩. Each side gets a hub
/// adjacent to all of its vertices; a stone of the side's own colour next to
/// the hub keeps the opponent off the whole side.
pub fn reduce_bgnk_to_d12(g: &Graph, part: &Bipartition, variant: SVariant) -> Result<ReducedInstance> {
    part.validate(g)?;
    let mut b = Builder::new(g);
    for side in Player::BOTH {
        let members = part.members(side);
        if members.is_empty() {
            continue;
        }
        let own = side.colour();
        let own_role = if own == Colour::Blue { "B" } else { "R" };
        let other_role = if own == Colour::Blue { "R" } else { "B" };
        let gadget = match variant {
            SVariant::Empty => b.factory.custom(
                GadgetKind::OwnershipHub,
                &[
                    ("v2", None),
                    (own_role, Some(own)),
                    ("v1", None),
                    (other_role, Some(own.opposite())),
                ],
                &[("v2", own_role), ("v2", "v1"), ("v1", other_role)],
                &[("hub", "v2")],
            ),
            SVariant::One => b.factory.custom(
                GadgetKind::OwnershipHub,
                &[("v", None), (own_role, Some(own))],
                &[("v", own_role)],
                &[("hub", "v")],
            ),
        };
        let hub = gadget.port("hub").unwrap().to_string();
        b.add(gadget)?;
        let hub = b.graph.id(&hub)?;
        for u in members {
            b.graph.add_edge(u, hub)?;
        }
    }
    let s: &[u32] = match variant {
        SVariant::Empty => &[],
        SVariant::One => &[1],
    };
    let target = Ruleset::distance_game([1, 2], s.iter().copied())?;
    let label = format!("bgnk-d12 S={}", fmt_set(target.s()));
    Ok(b.finish(label, g, Ruleset::bigraph_node_kayles(part.clone()), target))
}

/// Snort to ⟨{1..n},S⟩ with `max(S) < n`: every edge becomes `FP(n-1, n)`.
pub fn reduce_snort_family(g: &Graph, n: u32, s: &BTreeSet<u32>) -> Result<ReducedInstance> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if set_max(s) >= n {
        return Err(Error::ParameterViolation(format!(
            "max(S) = {} must be below n = {n}; with max(S) = n an original neighbour becomes unplayable for both colours",
            set_max(s)
        )));
    }
    let target = Ruleset::distance_game(1..=n, s.iter().copied())?;
    let label = format!("snort-family n={n} S={}", fmt_set(s));
    if n == 1 {
        return Ok(ReducedInstance::identity(label, g, Ruleset::snort(), target));
    }
    let mut b = Builder::new(g);
    b.replace_all_edges(n - 1, n)?;
    Ok(b.finish(label, g, Ruleset::snort(), target))
}

/// Node-Kayles to ⟨D,S⟩ with `max(D) = max(S) = m` and one of the sets equal
/// to `{1..m}`: every edge becomes `FP(m-1, m)`.
pub fn reduce_node_kayles_equalmax(g: &Graph, d: &BTreeSet<u32>, s: &BTreeSet<u32>) -> Result<ReducedInstance> {
    let m = set_max(d);
    if m == 0 || set_max(s) != m {
        return Err(Error::ParameterViolation(format!(
            "need max(D) = max(S) >= 1; got max(D) = {m}, max(S) = {}",
            set_max(s)
        )));
    }
    if !is_interval(d) && !is_interval(s) {
        return Err(Error::ParameterViolation(format!("neither D nor S equals {{1..{m}}}")));
    }
    let target = Ruleset::distance_game(d.iter().copied(), s.iter().copied())?;
    let label = format!("node-kayles-equalmax D={} S={}", fmt_set(d), fmt_set(s));
    if m == 1 {
        return Ok(ReducedInstance::identity(label, g, Ruleset::node_kayles(), target));
    }
    let mut b = Builder::new(g);
    b.replace_all_edges(m - 1, m)?;
    Ok(b.finish(label, g, Ruleset::node_kayles(), target))
}

/// Col to ⟨D,{1..k}⟩ with `max(D) < k`: every edge becomes `FP(k-1, k)`.
pub fn reduce_col_family(g: &Graph, k: u32, d: &BTreeSet<u32>) -> Result<ReducedInstance> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if set_max(d) >= k {
        return Err(Error::ParameterViolation(format!(
            "max(D) = {} must be below k = {k}",
            set_max(d)
        )));
    }
    let target = Ruleset::distance_game(d.iter().copied(), 1..=k)?;
    let label = format!("col-family k={k} D={}", fmt_set(d));
    if k == 1 {
        return Ok(ReducedInstance::identity(label, g, Ruleset::col(), target));
    }
    let mut b = Builder::new(g);
    b.replace_all_edges(k - 1, k)?;
    Ok(b.finish(label, g, Ruleset::col(), target))
}

/// BiGraph-Node-Kayles to ⟨D,{1..k}⟩ with `n = max(D)` and `1 < n < k < 2n`.
///
/// Edges become `FP(n-1, k)`. Each left vertex is joined by its own
/// `FP(k-1, k)` to one shared Red stone (right vertices to a shared Blue
/// stone), which puts it at distance `k` from that stone.
///
/// `allow_out_of_range` lifts only the `k < 2n` bound. With `k >= 2n` two
/// same-side vertices at distance 2 in the source end up `2n <= k` apart and
/// block each other, so the reduction is no longer play-for-play.
pub fn reduce_bgnk_window(
    g: &Graph,
    part: &Bipartition,
    d: &BTreeSet<u32>,
    k: u32,
    allow_out_of_range: bool,
) -> Result<ReducedInstance> {
    part.validate(g)?;
    let n = set_max(d);
    if n < 2 || k <= n {
        return Err(Error::ParameterViolation(format!(
            "need 1 < n < k with n = max(D); got n = {n}, k = {k}"
        )));
    }
    if k >= 2 * n && !allow_out_of_range {
        return Err(Error::ParameterViolation(format!(
            "k = {k} >= 2n = {}: same-side vertices at source distance 2 would be {} apart, inside S, and block each other",
            2 * n,
            2 * n
        )));
    }
    let mut b = Builder::new(g);
    b.replace_all_edges(n - 1, k)?;
    for side in Player::BOTH {
        let members = part.members(side);
        if members.is_empty() {
            continue;
        }
        let colour = side.colour().opposite();
        let role = if colour == Colour::Red { "R" } else { "B" };
        let terminal = b
            .factory
            .custom(GadgetKind::Terminal, &[(role, Some(colour))], &[], &[("stone", role)]);
        let stone_name = terminal.port("stone").unwrap().to_string();
        b.add(terminal)?;
        let stone = b.graph.id(&stone_name)?;
        for u in members {
            let fp = b.factory.forbidden_path(k - 1, k)?;
            let stones = splice(&mut b.graph, &fp, u, stone)?;
            b.place(stones);
            b.log.push(fp);
        }
    }
    let target = Ruleset::distance_game(d.iter().copied(), 1..=k)?;
    let label = format!("bgnk-window D={} k={k}", fmt_set(d));
    Ok(b.finish(label, g, Ruleset::bigraph_node_kayles(part.clone()), target))
}

/// A reduction together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Reduction {
    BgnkD12 { variant: SVariant },
    SnortFamily { n: u32, s: BTreeSet<u32> },
    NodeKaylesEqualMax { d: BTreeSet<u32>, s: BTreeSet<u32> },
    ColFamily { k: u32, d: BTreeSet<u32> },
    BgnkWindow { d: BTreeSet<u32>, k: u32, allow_out_of_range: bool },
}

impl Reduction {
    pub fn name(&self) -> &'static str {
        match self {
            Reduction::BgnkD12 { .. } => "bgnk-d12",
            Reduction::SnortFamily { .. } => "snort-family",
            Reduction::NodeKaylesEqualMax { .. } => "node-kayles-equalmax",
            Reduction::ColFamily { .. } => "col-family",
            Reduction::BgnkWindow { .. } => "bgnk-window",
        }
    }

    /// Whether the source game is BiGraph-Node-Kayles.
    pub fn needs_bipartition(&self) -> bool {
        matches!(self, Reduction::BgnkD12 { .. } | Reduction::BgnkWindow { .. })
    }

    pub fn apply(&self, g: &Graph, part: Option<&Bipartition>) -> Result<ReducedInstance> {
        let need_part = || {
            part.ok_or_else(|| Error::InvalidParameter(format!("{} needs a bipartition", self.name())))
        };
        match self {
            Reduction::BgnkD12 { variant } => reduce_bgnk_to_d12(g, need_part()?, *variant),
            Reduction::SnortFamily { n, s } => reduce_snort_family(g, *n, s),
            Reduction::NodeKaylesEqualMax { d, s } => reduce_node_kayles_equalmax(g, d, s),
            Reduction::ColFamily { k, d } => reduce_col_family(g, *k, d),
            Reduction::BgnkWindow {
                d,
                k,
                allow_out_of_range,
            } => reduce_bgnk_window(g, need_part()?, d, *k, *allow_out_of_range),
        }
    }

    /// Vertex count of the target graph predicted from the construction.
    pub fn expected_target_order(&self, g: &Graph, part: Option<&Bipartition>) -> usize {
        let v = g.vertex_count();
        let e = g.edge_count();
        let path = |t: u32, r: u32| t as usize * forbidden_vertex_order(r);
        let nonempty_sides = |part: Option<&Bipartition>| {
            part.map_or(0, |p| Player::BOTH.iter().filter(|&&s| !p.members(s).is_empty()).count())
        };
        match self {
            Reduction::BgnkD12 { variant } => {
                let per_side = match variant {
                    SVariant::Empty => 4,
                    SVariant::One => 2,
                };
                v + per_side * nonempty_sides(part)
            }
            Reduction::SnortFamily { n, .. } if *n >= 2 => v + e * path(n - 1, *n),
            Reduction::ColFamily { k, .. } if *k >= 2 => v + e * path(k - 1, *k),
            Reduction::NodeKaylesEqualMax { d, .. } if set_max(d) >= 2 => {
                let m = set_max(d);
                v + e * path(m - 1, m)
            }
            Reduction::BgnkWindow { d, k, .. } => {
                let n = set_max(d);
                v + e * path(n - 1, *k) + v * path(k - 1, *k) + nonempty_sides(part)
            }
            _ => v,
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduction::BgnkD12 { variant } => write!(
                f,
                "bgnk-d12 S={}",
                if *variant == SVariant::One { "1" } else { "" }
            ),
            Reduction::SnortFamily { n, s } => write!(f, "snort-family n={n} S={}", fmt_set(s)),
            Reduction::NodeKaylesEqualMax { d, s } => {
                write!(f, "node-kayles-equalmax D={} S={}", fmt_set(d), fmt_set(s))
            }
            Reduction::ColFamily { k, d } => write!(f, "col-family k={k} D={}", fmt_set(d)),
            Reduction::BgnkWindow {
                d,
                k,
                allow_out_of_range,
            } => write!(
                f,
                "bgnk-window D={} k={k}{}",
                fmt_set(d),
                if *allow_out_of_range { " override" } else { "" }
            ),
        }
    }
}
