//! Rulesets ⟨D,S⟩, positions, and move legality.
//!
//! A distance game is played by colouring empty vertices: Left places Blue
//! stones, Right places Red stones. A stone may not be placed at a distance in
//! `D` from any stone of the other colour, nor at a distance in `S` from any
//! stone of its own colour. BiGraph-Node-Kayles is ⟨{1},{1}⟩ with an extra
//! ownership filter on which vertices each player may pick.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::Left, Player::Right];

    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }

    pub fn colour(self) -> Colour {
        match self {
            Player::Left => Colour::Blue,
            Player::Right => Colour::Red,
        }
    }

    pub(crate) fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Left => "Left",
            Player::Right => "Right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Blue,
    Red,
}

impl Colour {
    pub fn opposite(self) -> Colour {
        match self {
            Colour::Blue => Colour::Red,
            Colour::Red => Colour::Blue,
        }
    }

    pub fn owner(self) -> Player {
        match self {
            Colour::Blue => Player::Left,
            Colour::Red => Player::Right,
        }
    }
}

/// Which side of a bipartition each vertex belongs to, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition(Vec<Player>);

impl Bipartition {
    pub fn new(sides: Vec<Player>) -> Self {
        Bipartition(sides)
    }

    pub fn from_left_mask(left: &[bool]) -> Self {
        Bipartition(
            left.iter()
                .map(|&l| if l { Player::Left } else { Player::Right })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn side(&self, v: VertexId) -> Player {
        self.0[v.0]
    }

    pub fn sides(&self) -> &[Player] {
        &self.0
    }

    pub fn members(&self, side: Player) -> Vec<VertexId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == side)
            .map(|(i, _)| VertexId(i))
            .collect()
    }

    pub fn swapped(&self) -> Self {
        Bipartition(self.0.iter().map(|p| p.opponent()).collect())
    }

    /// `NotBipartite` unless every edge of `g` joins the two sides.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.len() != g.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "bipartition covers {} vertices, graph has {}",
                self.len(),
                g.vertex_count()
            )));
        }
        for (u, v) in g.edges() {
            if self.side(u) == self.side(v) {
                return Err(Error::NotBipartite(
                    g.name(u).to_string(),
                    g.name(v).to_string(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    DistanceGame,
    BiGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ruleset {
    d: BTreeSet<u32>,
    s: BTreeSet<u32>,
    ownership: Option<Bipartition>,
}

fn interval(max: u32) -> BTreeSet<u32> {
    (1..=max).collect()
}

/// `max(∅) = 0`.
pub fn set_max(set: &BTreeSet<u32>) -> u32 {
    set.iter().next_back().copied().unwrap_or(0)
}

/// True iff `set` is exactly `{1, …, max(set)}` and non-empty.
pub fn is_interval(set: &BTreeSet<u32>) -> bool {
    !set.is_empty() && set.len() as u32 == set_max(set)
}

impl Ruleset {
    pub fn distance_game<I, J>(d: I, s: J) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
        J: IntoIterator<Item = u32>,
    {
        let d: BTreeSet<u32> = d.into_iter().collect();
        let s: BTreeSet<u32> = s.into_iter().collect();
        if d.contains(&0) || s.contains(&0) {
            return Err(Error::InvalidParameter(
                "forbidden distances must be at least 1".into(),
            ));
        }
        Ok(Ruleset {
            d,
            s,
            ownership: None,
        })
    }

    pub fn snort() -> Self {
        Self::distance_game([1], []).unwrap()
    }

    pub fn col() -> Self {
        Self::distance_game([], [1]).unwrap()
    }

    pub fn node_kayles() -> Self {
        Self::distance_game([1], [1]).unwrap()
    }

    pub fn bigraph_node_kayles(ownership: Bipartition) -> Self {
        Ruleset {
            ownership: Some(ownership),
            ..Self::node_kayles()
        }
    }

    pub fn n_snort(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("nSnort needs n >= 1".into()));
        }
        Self::distance_game(interval(n), [])
    }

    pub fn k_col(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("kCol needs k >= 1".into()));
        }
        Self::distance_game([], interval(k))
    }

    pub fn d(&self) -> &BTreeSet<u32> {
        &self.d
    }

    pub fn s(&self) -> &BTreeSet<u32> {
        &self.s
    }

    pub fn ownership(&self) -> Option<&Bipartition> {
        self.ownership.as_ref()
    }

    pub fn variant(&self) -> Variant {
        if self.ownership.is_some() {
            Variant::BiGraph
        } else {
            Variant::DistanceGame
        }
    }

    /// Largest forbidden distance of either kind; stones farther away than
    /// this never constrain each other.
    pub fn radius(&self) -> u32 {
        set_max(&self.d).max(set_max(&self.s))
    }

    /// Same ⟨D,S⟩ with the ownership bipartition dropped.
    pub fn without_ownership(&self) -> Self {
        Ruleset {
            ownership: None,
            ..self.clone()
        }
    }

    /// Colour-swap dual: only the ownership changes, D and S are symmetric.
    pub fn swapped(&self) -> Self {
        Ruleset {
            ownership: self.ownership.as_ref().map(Bipartition::swapped),
            ..self.clone()
        }
    }

    /// Same D and S (ownership ignored).
    pub fn same_sets(&self, other: &Ruleset) -> bool {
        self.d == other.d && self.s == other.s
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if let Some(own) = &self.ownership {
            if own.len() != g.vertex_count() {
                return Err(Error::InvalidParameter(format!(
                    "ownership covers {} vertices, graph has {}",
                    own.len(),
                    g.vertex_count()
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn format_set(set: &BTreeSet<u32>) -> String {
    set.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_set(text: &str) -> Result<BTreeSet<u32>> {
    let text = text.trim();
    if text.is_empty() || text == "empty" {
        return Ok(BTreeSet::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Syntax(format!("bad distance `{t}`")))
        })
        .collect()
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D={} S={}", format_set(&self.d), format_set(&self.s))
    }
}

/// Parses `D=<list> S=<list>` (either order, both required). The result is
/// always a plain distance game; ownership comes from the graph file.
impl FromStr for Ruleset {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut d = None;
        let mut s = None;
        for tok in text.split_whitespace() {
            if let Some(rest) = tok.strip_prefix("D=") {
                d = Some(parse_set(rest)?);
            } else if let Some(rest) = tok.strip_prefix("S=") {
                s = Some(parse_set(rest)?);
            } else {
                return Err(Error::Syntax(format!("unexpected ruleset token `{tok}`")));
            }
        }
        match (d, s) {
            (Some(d), Some(s)) => Ruleset::distance_game(d, s),
            _ => Err(Error::Syntax("ruleset needs both D= and S=".into())),
        }
    }
}

/// A partial 2-colouring of the vertices. Positions are values; moves
/// produce new positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    cells: Vec<Option<Colour>>,
}

impl Position {
    pub fn empty(vertex_count: usize) -> Self {
        Position {
            cells: vec![None; vertex_count],
        }
    }

    pub fn from_cells(cells: Vec<Option<Colour>>) -> Self {
        Position { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<Colour> {
        self.cells[v.0]
    }

    pub fn cells(&self) -> &[Option<Colour>] {
        &self.cells
    }

    /// Copy with `v` set to `colour`; no legality check.
    pub fn with(&self, v: VertexId, colour: Colour) -> Position {
        let mut next = self.clone();
        next.cells[v.0] = Some(colour);
        next
    }

    pub(crate) fn set(&mut self, v: VertexId, colour: Option<Colour>) {
        self.cells[v.0] = colour;
    }

    pub(crate) fn grow(&mut self, vertex_count: usize) {
        self.cells.resize(vertex_count, None);
    }

    pub fn stones(&self) -> impl Iterator<Item = (VertexId, Colour)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (VertexId(i), c)))
    }

    pub fn stone_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn swapped_colours(&self) -> Position {
        Position {
            cells: self.cells.iter().map(|c| c.map(Colour::opposite)).collect(),
        }
    }
}

fn check_position(g: &Graph, pos: &Position) -> Result<()> {
    if pos.len() != g.vertex_count() {
        return Err(Error::InvalidPosition(format!(
            "position has {} cells, graph has {} vertices",
            pos.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Whether `p` may place a stone on `v`. Checks only stones inside the ball
/// of radius `max(D ∪ S)` around `v`.
pub fn is_legal(g: &Graph, rs: &Ruleset, pos: &Position, v: VertexId, p: Player) -> Result<bool> {
    g.check(v)?;
    check_position(g, pos)?;
    rs.check_graph(g)?;
    Ok(legal_unchecked(g, rs, pos, v, p))
}

fn legal_unchecked(g: &Graph, rs: &Ruleset, pos: &Position, v: VertexId, p: Player) -> bool {
    if pos.get(v).is_some() {
        return false;
    }
    if let Some(own) = rs.ownership() {
        if own.side(v) != p {
            return false;
        }
    }
    let mine = p.colour();
    for (w, d) in g.ball_list(v, rs.radius()) {
        match pos.get(w) {
            Some(c) if c == mine && rs.s.contains(&d) => return false,
            Some(c) if c != mine && rs.d.contains(&d) => return false,
            _ => {}
        }
    }
    true
}

pub fn legal_moves(g: &Graph, rs: &Ruleset, pos: &Position, p: Player) -> Result<Vec<VertexId>> {
    check_position(g, pos)?;
    rs.check_graph(g)?;
    Ok(g.vertices()
        .filter(|&v| legal_unchecked(g, rs, pos, v, p))
        .collect())
}

pub fn apply_move(g: &Graph, rs: &Ruleset, pos: &Position, v: VertexId, p: Player) -> Result<Position> {
    if !is_legal(g, rs, pos, v, p)? {
        return Err(Error::IllegalMove {
            player: p.to_string(),
            vertex: g.name(v).to_string(),
        });
    }
    Ok(pos.with(v, p.colour()))
}

/// `InvalidPosition` if any pair of stones violates D or S, or a stone sits
/// on a vertex its owner may not use.
pub fn validate_position(g: &Graph, rs: &Ruleset, pos: &Position) -> Result<()> {
    check_position(g, pos)?;
    rs.check_graph(g)?;
    for (v, c) in pos.stones() {
        if let Some(own) = rs.ownership() {
            if own.side(v) != c.owner() {
                return Err(Error::InvalidPosition(format!(
                    "{:?} stone on `{}` owned by {}",
                    c,
                    g.name(v),
                    own.side(v)
                )));
            }
        }
        for (w, d) in g.ball_list(v, rs.radius()) {
            if w <= v {
                continue;
            }
            if let Some(cw) = pos.get(w) {
                let forbidden = if cw == c { &rs.s } else { &rs.d };
                if forbidden.contains(&d) {
                    return Err(Error::InvalidPosition(format!(
                        "stones on `{}` and `{}` at forbidden distance {d}",
                        g.name(v),
                        g.name(w)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Blue and Red stone sets as bitsets over dense vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stones {
    pub(crate) blue: FixedBitSet,
    pub(crate) red: FixedBitSet,
}

impl Stones {
    pub fn from_position(pos: &Position) -> Self {
        let mut stones = Stones {
            blue: FixedBitSet::with_capacity(pos.len()),
            red: FixedBitSet::with_capacity(pos.len()),
        };
        for (v, c) in pos.stones() {
            stones.place(v.0, c);
        }
        stones
    }

    pub(crate) fn place(&mut self, v: usize, colour: Colour) {
        match colour {
            Colour::Blue => self.blue.insert(v),
            Colour::Red => self.red.insert(v),
        }
    }

    pub(crate) fn with(&self, v: usize, colour: Colour) -> Stones {
        let mut next = self.clone();
        next.place(v, colour);
        next
    }

    pub fn to_position(&self) -> Position {
        let n = self.blue.len();
        Position::from_cells(
            (0..n)
                .map(|i| {
                    if self.blue.contains(i) {
                        Some(Colour::Blue)
                    } else if self.red.contains(i) {
                        Some(Colour::Red)
                    } else {
                        None
                    }
                })
                .collect(),
        )
    }

    fn own_other(&self, p: Player) -> (&FixedBitSet, &FixedBitSet) {
        match p {
            Player::Left => (&self.blue, &self.red),
            Player::Right => (&self.red, &self.blue),
        }
    }
}

/// A graph and ruleset frozen for play: for each vertex the sets of vertices
/// whose opposite-colour (resp. same-colour) stones would block it are
/// precomputed from balls of radius `max(D ∪ S)`.
#[derive(Debug, Clone)]
pub struct Board {
    vertex_count: usize,
    opp_block: Vec<FixedBitSet>,
    same_block: Vec<FixedBitSet>,
    allowed: [FixedBitSet; 2],
}

impl Board {
    pub fn new(g: &Graph, rs: &Ruleset) -> Result<Self> {
        rs.check_graph(g)?;
        let n = g.vertex_count();
        let radius = rs.radius();
        let mut opp_block = Vec::with_capacity(n);
        let mut same_block = Vec::with_capacity(n);
        for v in g.vertices() {
            let mut opp = FixedBitSet::with_capacity(n);
            let mut same = FixedBitSet::with_capacity(n);
            for (w, d) in g.ball_list(v, radius) {
                if rs.d.contains(&d) {
                    opp.insert(w.0);
                }
                if rs.s.contains(&d) {
                    same.insert(w.0);
                }
            }
            opp_block.push(opp);
            same_block.push(same);
        }
        let mut allowed = [FixedBitSet::with_capacity(n), FixedBitSet::with_capacity(n)];
        for p in Player::BOTH {
            match rs.ownership() {
                Some(own) => {
                    for v in own.members(p) {
                        allowed[p.slot()].insert(v.0);
                    }
                }
                None => allowed[p.slot()].insert_range(..),
            }
        }
        Ok(Board {
            vertex_count: n,
            opp_block,
            same_block,
            allowed,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn is_legal(&self, stones: &Stones, v: usize, p: Player) -> bool {
        let (own, other) = stones.own_other(p);
        self.allowed[p.slot()].contains(v)
            && !own.contains(v)
            && !other.contains(v)
            && self.opp_block[v].is_disjoint(other)
            && self.same_block[v].is_disjoint(own)
    }

    pub fn legal_moves(&self, stones: &Stones, p: Player) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.is_legal(stones, v, p))
            .collect()
    }

    pub fn has_move(&self, stones: &Stones, p: Player) -> bool {
        (0..self.vertex_count).any(|v| self.is_legal(stones, v, p))
    }
}
