//! Exhaustive normal-play search with a transposition table.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rules::{validate_position, Board, Player, Position, Ruleset, Stones};

/// Outcome class under optimal play, last player to move wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    LeftWins,
    RightWins,
    FirstWins,
    SecondWins,
}

impl Outcome {
    /// Combines "Left wins moving first" and "Right wins moving first".
    pub fn from_first_player_wins(left_first: bool, right_first: bool) -> Outcome {
        match (left_first, right_first) {
            (true, false) => Outcome::LeftWins,
            (false, true) => Outcome::RightWins,
            (true, true) => Outcome::FirstWins,
            (false, false) => Outcome::SecondWins,
        }
    }

    pub fn wins_moving_first(self, p: Player) -> bool {
        match (self, p) {
            (Outcome::FirstWins, _) => true,
            (Outcome::SecondWins, _) => false,
            (Outcome::LeftWins, p) => p == Player::Left,
            (Outcome::RightWins, p) => p == Player::Right,
        }
    }

    /// Outcome after exchanging the roles of Left and Right.
    pub fn swapped(self) -> Outcome {
        match self {
            Outcome::LeftWins => Outcome::RightWins,
            Outcome::RightWins => Outcome::LeftWins,
            other => other,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::LeftWins => "LeftWins",
            Outcome::RightWins => "RightWins",
            Outcome::FirstWins => "FirstWins",
            Outcome::SecondWins => "SecondWins",
        })
    }
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LeftWins" => Ok(Outcome::LeftWins),
            "RightWins" => Ok(Outcome::RightWins),
            "FirstWins" => Ok(Outcome::FirstWins),
            "SecondWins" => Ok(Outcome::SecondWins),
            _ => Err(Error::Syntax(format!("unknown outcome `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub hits: u64,
    pub peak_entries: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BestMove {
    Winning(VertexId),
    NoWinningMove,
    NoMove,
}

/// One search context over a frozen board. The table is keyed by the
/// blue/red bitsets, one map per player to move.
pub struct Solver<'b> {
    board: &'b Board,
    tables: [HashMap<Stones, bool>; 2],
    stats: SearchStats,
}

impl<'b> Solver<'b> {
    pub fn new(board: &'b Board) -> Self {
        Solver {
            board,
            tables: [HashMap::new(), HashMap::new()],
            stats: SearchStats::default(),
        }
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Whether `p`, moving next from `stones`, can force making the last move.
    pub fn wins_moving_first(&mut self, stones: &Stones, p: Player) -> bool {
        self.stats.nodes += 1;
        if let Some(&known) = self.tables[p.slot()].get(stones) {
            self.stats.hits += 1;
            return known;
        }
        let colour = p.colour();
        let mut win = false;
        for v in 0..self.board.vertex_count() {
            if self.board.is_legal(stones, v, p) {
                let next = stones.with(v, colour);
                if !self.wins_moving_first(&next, p.opponent()) {
                    win = true;
                    break;
                }
            }
        }
        self.tables[p.slot()].insert(stones.clone(), win);
        let entries = self.tables[0].len() + self.tables[1].len();
        self.stats.peak_entries = self.stats.peak_entries.max(entries);
        win
    }

    pub fn outcome(&mut self, stones: &Stones) -> Outcome {
        let left = self.wins_moving_first(stones, Player::Left);
        let right = self.wins_moving_first(stones, Player::Right);
        Outcome::from_first_player_wins(left, right)
    }

    /// Lowest-index move after which the opponent, moving next, loses.
    pub fn best_move(&mut self, stones: &Stones, p: Player) -> BestMove {
        let mut any = false;
        for v in 0..self.board.vertex_count() {
            if self.board.is_legal(stones, v, p) {
                any = true;
                let next = stones.with(v, p.colour());
                if !self.wins_moving_first(&next, p.opponent()) {
                    return BestMove::Winning(VertexId(v));
                }
            }
        }
        if any {
            BestMove::NoWinningMove
        } else {
            BestMove::NoMove
        }
    }
}

fn prepare(g: &Graph, rs: &Ruleset, pos: &Position) -> Result<(Board, Stones)> {
    validate_position(g, rs, pos)?;
    Ok((Board::new(g, rs)?, Stones::from_position(pos)))
}

pub fn wins_moving_first(g: &Graph, rs: &Ruleset, pos: &Position, p: Player) -> Result<(bool, SearchStats)> {
    let (board, stones) = prepare(g, rs, pos)?;
    let mut solver = Solver::new(&board);
    let win = solver.wins_moving_first(&stones, p);
    Ok((win, solver.stats()))
}

pub fn outcome(g: &Graph, rs: &Ruleset, pos: &Position) -> Result<Outcome> {
    let (board, stones) = prepare(g, rs, pos)?;
    Ok(Solver::new(&board).outcome(&stones))
}

pub fn best_move(g: &Graph, rs: &Ruleset, pos: &Position, p: Player) -> Result<BestMove> {
    let (board, stones) = prepare(g, rs, pos)?;
    Ok(Solver::new(&board).best_move(&stones, p))
}
