//! Forbidden-vertex and forbidden-path gadgets, and edge replacement.
//!
//! `F(r)` has a port vertex `v` at distance exactly `r` from one Red and one
//! Blue stone, with the two stones `r + 1` apart. Shape: a lower path
//! `v = c0 - c1 - … - cm`, then two branches of length `q` from the split
//! vertex `cm`, ending in `R` and `B`.
//!
//! * odd `r`:  `q = (r+1)/2`, `m = (r-1)/2`
//! * even `r`: `q = r/2 + 1`, `m = r/2 - 1`, plus an edge `r1 - b1` joining
//!   the first vertex of each branch
//!
//! When `D` or `S` is `{1..r}` and the other set is a subset of it, every
//! uncoloured gadget vertex sees both stones within distance `r` and is dead
//! for both players, while anything attached to the port by one edge is at
//! distance `r + 1` from both stones and is unconstrained by them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, VertexId};
use crate::rules::{
    apply_move, is_interval, is_legal, set_max, validate_position, Colour, Player, Position, Ruleset,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    /// `F(r)`
    ForbiddenVertex { r: u32 },
    /// `FP(t, r)`
    ForbiddenPath { t: u32, r: u32 },
    /// Hub of the ⟨{1,2},S⟩ ownership gadgets.
    OwnershipHub,
    /// A single precoloured stone shared by several paths.
    Terminal,
}

/// A gadget with namespaced vertex names (`g<id>.<role>`), ready to be
/// embedded into a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub id: usize,
    pub kind: GadgetKind,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub precoloured: BTreeMap<String, Colour>,
    pub ports: Vec<(String, String)>,
}

impl GadgetInstance {
    pub fn port(&self, role: &str) -> Option<&str> {
        self.ports
            .iter()
            .find(|(r, _)| r == role)
            .map(|(_, name)| name.as_str())
    }

    /// Distinct port vertex names, in port order.
    pub fn port_vertices(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for (_, name) in &self.ports {
            if !out.contains(&name.as_str()) {
                out.push(name);
            }
        }
        out
    }

    /// The `r` the gadget was built for, if it is `F(r)` or `FP(t, r)`.
    pub fn size(&self) -> Option<u32> {
        match self.kind {
            GadgetKind::ForbiddenVertex { r } | GadgetKind::ForbiddenPath { r, .. } => Some(r),
            _ => None,
        }
    }

    /// Adds the gadget's vertices and edges to `g`. Returns the stones to
    /// place, as host vertex ids.
    pub fn embed(&self, g: &mut Graph) -> Result<Vec<(VertexId, Colour)>> {
        for name in &self.vertices {
            g.add_vertex(name)?;
        }
        for (a, b) in &self.edges {
            let (a, b) = (g.id(a)?, g.id(b)?);
            g.add_edge(a, b)?;
        }
        self.precoloured
            .iter()
            .map(|(name, &c)| Ok((g.id(name)?, c)))
            .collect()
    }

    /// The gadget alone as a board with its stones.
    pub fn to_board(&self) -> (Graph, Position) {
        let mut g = Graph::new();
        let stones = self.embed(&mut g).expect("gadget names are unique");
        let mut pos = Position::empty(g.vertex_count());
        for (v, c) in stones {
            pos.set(v, Some(c));
        }
        (g, pos)
    }
}

/// `(m, q, dashed)` for `F(r)`: lower path length, branch length, and whether
/// the two branches are joined next to the split vertex.
pub fn forbidden_vertex_shape(r: u32) -> (u32, u32, bool) {
    if r % 2 == 1 {
        ((r - 1) / 2, r.div_ceil(2), false)
    } else {
        (r / 2 - 1, r / 2 + 1, true)
    }
}

/// Vertex count of `F(r)`: `m + 1` lower vertices plus two branches of `q`.
pub fn forbidden_vertex_order(r: u32) -> usize {
    let (m, q, _) = forbidden_vertex_shape(r);
    (m + 2 * q + 1) as usize
}

pub fn forbidden_vertex_edge_count(r: u32) -> usize {
    let (m, q, dashed) = forbidden_vertex_shape(r);
    (m + 2 * q) as usize + usize::from(dashed)
}

#[derive(Default)]
struct Parts {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    precoloured: BTreeMap<String, Colour>,
}

impl Parts {
    fn push_forbidden_vertex(&mut self, prefix: &str, r: u32) -> String {
        let (m, q, dashed) = forbidden_vertex_shape(r);
        let port = format!("{prefix}v");
        self.vertices.push(port.clone());
        let mut split = port.clone();
        for i in 1..=m {
            let c = format!("{prefix}c{i}");
            self.vertices.push(c.clone());
            self.edges.push((split, c.clone()));
            split = c;
        }
        for (branch, stone, colour) in [("r", "R", Colour::Red), ("b", "B", Colour::Blue)] {
            let mut prev = split.clone();
            for j in 1..=q {
                let name = if j == q {
                    format!("{prefix}{stone}")
                } else {
                    format!("{prefix}{branch}{j}")
                };
                self.vertices.push(name.clone());
                self.edges.push((prev, name.clone()));
                prev = name;
            }
            self.precoloured.insert(prev, colour);
        }
        if dashed {
            self.edges.push((format!("{prefix}r1"), format!("{prefix}b1")));
        }
        port
    }
}

/// Hands out gadget instance ids so that names never collide in one host.
#[derive(Debug, Clone, Default)]
pub struct GadgetFactory {
    next_id: usize,
}

impl GadgetFactory {
    pub fn new() -> Self {
        Self::default()
    }

    /// A factory whose ids are above every `g<id>.` name already in `g`.
    pub fn fresh_for(g: &Graph) -> Self {
        let next_id = g
            .names()
            .iter()
            .filter_map(|n| n.strip_prefix('g')?.split_once('.')?.0.parse::<usize>().ok())
            .max()
            .map_or(0, |m| m + 1);
        GadgetFactory { next_id }
    }

    fn take_id(&mut self) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    pub fn forbidden_vertex(&mut self, r: u32) -> Result<GadgetInstance> {
        if r == 0 {
            return Err(Error::InvalidParameter("F(r) needs r >= 1".into()));
        }
        let id = self.take_id();
        let mut parts = Parts::default();
        let port = parts.push_forbidden_vertex(&format!("g{id}."), r);
        Ok(GadgetInstance {
            id,
            kind: GadgetKind::ForbiddenVertex { r },
            vertices: parts.vertices,
            edges: parts.edges,
            precoloured: parts.precoloured,
            ports: vec![("v".into(), port)],
        })
    }

    pub fn forbidden_path(&mut self, t: u32, r: u32) -> Result<GadgetInstance> {
        if t == 0 || r == 0 {
            return Err(Error::InvalidParameter("FP(t, r) needs t >= 1 and r >= 1".into()));
        }
        let id = self.take_id();
        let mut parts = Parts::default();
        let ports: Vec<String> = (0..t)
            .map(|j| parts.push_forbidden_vertex(&format!("g{id}.f{j}."), r))
            .collect();
        for w in ports.windows(2) {
            parts.edges.push((w[0].clone(), w[1].clone()));
        }
        Ok(GadgetInstance {
            id,
            kind: GadgetKind::ForbiddenPath { t, r },
            vertices: parts.vertices,
            edges: parts.edges,
            precoloured: parts.precoloured,
            ports: vec![
                ("left".into(), ports[0].clone()),
                ("right".into(), ports[ports.len() - 1].clone()),
            ],
        })
    }

    /// A gadget from explicit roles; names get the `g<id>.` prefix.
    pub(crate) fn custom(
        &mut self,
        kind: GadgetKind,
        roles: &[(&str, Option<Colour>)],
        edges: &[(&str, &str)],
        ports: &[(&str, &str)],
    ) -> GadgetInstance {
        let id = self.take_id();
        let name = |role: &str| format!("g{id}.{role}");
        GadgetInstance {
            id,
            kind,
            vertices: roles.iter().map(|(r, _)| name(r)).collect(),
            edges: edges.iter().map(|(a, b)| (name(a), name(b))).collect(),
            precoloured: roles
                .iter()
                .filter_map(|(r, c)| c.map(|c| (name(r), c)))
                .collect(),
            ports: ports.iter().map(|(p, r)| (p.to_string(), name(r))).collect(),
        }
    }
}

pub fn forbidden_vertex_gadget(r: u32) -> Result<GadgetInstance> {
    GadgetFactory::new().forbidden_vertex(r)
}

pub fn forbidden_path(t: u32, r: u32) -> Result<GadgetInstance> {
    GadgetFactory::new().forbidden_path(t, r)
}

/// Embeds `gadget` and wires its left port to `u` and its right port to `v`.
pub(crate) fn splice(g: &mut Graph, gadget: &GadgetInstance, u: VertexId, v: VertexId) -> Result<Vec<(VertexId, Colour)>> {
    let stones = gadget.embed(g)?;
    let left = g.id(gadget.port("left").expect("path gadget has a left port"))?;
    let right = g.id(gadget.port("right").expect("path gadget has a right port"))?;
    g.add_edge(u, left)?;
    g.add_edge(right, v)?;
    Ok(stones)
}

/// Replaces the edge `u`--`v` by a fresh `FP(t, r)`. Existing vertices keep
/// their indices; gadget vertices are appended.
pub fn replace_edge(g: &Graph, e: (VertexId, VertexId), t: u32, r: u32) -> Result<(Graph, GadgetInstance)> {
    let mut out = g.clone();
    out.remove_edge(e.0, e.1)?;
    let gadget = GadgetFactory::fresh_for(g).forbidden_path(t, r)?;
    splice(&mut out, &gadget, e.0, e.1)?;
    Ok((out, gadget))
}

pub type EdgeGadgets = Vec<((VertexId, VertexId), GadgetInstance)>;

/// Replaces every edge by its own `FP(t, r)`, in edge order.
pub fn replace_all_edges(g: &Graph, t: u32, r: u32) -> Result<(Graph, EdgeGadgets)> {
    replace_all_edges_with(g, t, r, &mut GadgetFactory::fresh_for(g))
}

pub(crate) fn replace_all_edges_with(
    g: &Graph,
    t: u32,
    r: u32,
    factory: &mut GadgetFactory,
) -> Result<(Graph, EdgeGadgets)> {
    let mut out = g.clone();
    let mut log = Vec::new();
    for (u, v) in g.edges() {
        out.remove_edge(u, v)?;
        let gadget = factory.forbidden_path(t, r)?;
        splice(&mut out, &gadget, u, v)?;
        log.push(((u, v), gadget));
    }
    Ok((out, log))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetReport {
    pub gadget: String,
    pub checks: Vec<GadgetCheck>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn lemma_hypothesis(r: u32, d: &BTreeSet<u32>, s: &BTreeSet<u32>) -> bool {
    let full = |x: &BTreeSet<u32>| is_interval(x) && set_max(x) == r;
    (full(d) && set_max(s) <= r) || (full(s) && set_max(d) <= r)
}

/// Embeds `gad` into a host with `probes` fresh vertices attached by single
/// edges to each port, then checks under ⟨D,S⟩ that:
///
/// 1. the gadget stones form a legal position;
/// 2. every uncoloured gadget vertex is illegal for both players;
/// 3. this persists after any single legal move on a probe;
/// 4. each probe's legality is the same with and without the gadget stones,
///    and each probe is farther than `max(D ∪ S)` from every stone.
pub fn check_gadget_lemma(gad: &GadgetInstance, d: &BTreeSet<u32>, s: &BTreeSet<u32>, probes: usize) -> Result<GadgetReport> {
    let r = gad
        .size()
        .ok_or_else(|| Error::HypothesisViolated("only F(r) and FP(t, r) can be checked".into()))?;
    if !lemma_hypothesis(r, d, s) {
        let fmt = |x: &BTreeSet<u32>| x.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        return Err(Error::HypothesisViolated(format!(
            "need D or S = {{1..{r}}} and the other a subset; got D={{{}}} S={{{}}}",
            fmt(d),
            fmt(s)
        )));
    }
    let rs = Ruleset::distance_game(d.iter().copied(), s.iter().copied())?;

    let mut host = Graph::new();
    let stones = gad.embed(&mut host)?;
    let gadget_count = host.vertex_count();
    let mut probe_ids = Vec::new();
    for (pi, port) in gad.port_vertices().into_iter().enumerate() {
        let port = host.id(port)?;
        for i in 0..probes {
            let p = host.add_vertex(&format!("probe{pi}.{i}"))?;
            host.add_edge(port, p)?;
            probe_ids.push(p);
        }
    }
    let mut start = Position::empty(host.vertex_count());
    for &(v, c) in &stones {
        start.set(v, Some(c));
    }
    let bare = Position::empty(host.vertex_count());
    let uncoloured: Vec<VertexId> = (0..gadget_count)
        .map(VertexId)
        .filter(|&v| start.get(v).is_none())
        .collect();

    let first_playable = |pos: &Position| -> Result<Option<(VertexId, Player)>> {
        for &v in &uncoloured {
            for p in Player::BOTH {
                if is_legal(&host, &rs, pos, v, p)? {
                    return Ok(Some((v, p)));
                }
            }
        }
        Ok(None)
    };

    let mut checks = Vec::new();
    let stones_ok = validate_position(&host, &rs, &start);
    checks.push(GadgetCheck {
        name: "stones-legal",
        passed: stones_ok.is_ok(),
        detail: stones_ok.err().map(|e| e.to_string()).unwrap_or_default(),
    });

    let playable = first_playable(&start)?;
    checks.push(GadgetCheck {
        name: "gadget-unplayable",
        passed: playable.is_none(),
        detail: playable
            .map(|(v, p)| format!("{} playable by {p}", host.name(v)))
            .unwrap_or_default(),
    });

    let mut persist = None;
    'probes: for &x in &probe_ids {
        for p in Player::BOTH {
            if is_legal(&host, &rs, &start, x, p)? {
                let after = apply_move(&host, &rs, &start, x, p)?;
                if let Some((v, q)) = first_playable(&after)? {
                    persist = Some(format!(
                        "after {p} plays {}: {} playable by {q}",
                        host.name(x),
                        host.name(v)
                    ));
                    break 'probes;
                }
            }
        }
    }
    checks.push(GadgetCheck {
        name: "unplayable-after-probe-moves",
        passed: persist.is_none(),
        detail: persist.unwrap_or_default(),
    });

    let mut affected = None;
    'outer: for &x in &probe_ids {
        for p in Player::BOTH {
            if is_legal(&host, &rs, &start, x, p)? != is_legal(&host, &rs, &bare, x, p)? {
                affected = Some(format!("{} legality for {p} changed by gadget stones", host.name(x)));
                break 'outer;
            }
        }
        for &(stone, _) in &stones {
            if let Distance::Finite(dist) = host.distance(x, stone)? {
                if dist <= rs.radius() {
                    affected = Some(format!(
                        "{} within distance {dist} of stone {}",
                        host.name(x),
                        host.name(stone)
                    ));
                    break 'outer;
                }
            }
        }
    }
    checks.push(GadgetCheck {
        name: "probes-unaffected",
        passed: affected.is_none(),
        detail: affected.unwrap_or_default(),
    });

    Ok(GadgetReport {
        gadget: format!("{:?}", gad.kind),
        checks,
    })
}
