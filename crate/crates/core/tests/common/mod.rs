//! Reference implementations that share no code with the library's search
//! paths: Floyd–Warshall distances, a direct legality test and an
//! unmemoized game-tree recursion.

#![allow(dead_code)]

use std::collections::BTreeSet;

use distance_games::{Colour, Graph, Player, Position, Ruleset, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX;

pub fn all_pairs(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u.0][v.0] = 1;
        d[v.0][u.0] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub struct Oracle<'a> {
    pub dist: Vec<Vec<u32>>,
    pub rs: &'a Ruleset,
}

impl<'a> Oracle<'a> {
    pub fn new(g: &Graph, rs: &'a Ruleset) -> Self {
        Oracle { dist: all_pairs(g), rs }
    }

    pub fn legal(&self, cells: &[Option<Colour>], v: usize, p: Player) -> bool {
        if cells[v].is_some() {
            return false;
        }
        if let Some(part) = self.rs.ownership() {
            if part.side(VertexId(v)) != p {
                return false;
            }
        }
        let mine = p.colour();
        cells.iter().enumerate().all(|(w, c)| {
            let Some(c) = c else { return true };
            let d = self.dist[v][w];
            if d == INF {
                return true;
            }
            let forbidden = if *c == mine { self.rs.s() } else { self.rs.d() };
            !forbidden.contains(&d)
        })
    }

    pub fn moves(&self, cells: &[Option<Colour>], p: Player) -> Vec<usize> {
        (0..cells.len()).filter(|&v| self.legal(cells, v, p)).collect()
    }

    /// Plain minimax, no transposition table.
    pub fn wins(&self, cells: &mut Vec<Option<Colour>>, p: Player) -> bool {
        for v in self.moves(cells, p) {
            cells[v] = Some(p.colour());
            let opp_wins = self.wins(cells, p.opponent());
            cells[v] = None;
            if !opp_wins {
                return true;
            }
        }
        false
    }
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = Graph::new();
    for name in &names {
        g.add_vertex(name).unwrap();
    }
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(VertexId(i), VertexId(j)).unwrap();
            }
            bit += 1;
        }
    }
    g
}

pub fn random_set(rng: &mut ChaCha8Rng, max: u32) -> BTreeSet<u32> {
    (1..=max).filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random graph on at most `max_n` vertices, a ruleset with radius at
/// most `max_r`, and a position reached by random legal play.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, max_r: u32) -> (Graph, Ruleset, Position) {
    let n = rng.gen_range(1..=max_n);
    let pairs = n * (n - 1) / 2;
    let g = graph_from_mask(n, rng.gen_range(0..1u64 << pairs));
    let rs = Ruleset::distance_game(random_set(rng, max_r), random_set(rng, max_r)).unwrap();
    let oracle = Oracle::new(&g, &rs);
    let mut cells = vec![None; n];
    let plies = rng.gen_range(0..=n / 2);
    let mut p = if rng.gen_bool(0.5) { Player::Left } else { Player::Right };
    for _ in 0..plies {
        let moves = oracle.moves(&cells, p);
        let Some(&v) = moves.choose(rng) else { break };
        cells[v] = Some(p.colour());
        p = p.opponent();
    }
    (g, rs, Position::from_cells(cells))
}
