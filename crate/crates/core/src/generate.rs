//! Graph generators and exhaustive labelled corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rules::{Bipartition, Player};

/// Largest vertex count accepted by [`all_labelled_graphs`].
pub const MAX_LABELLED_VERTICES: usize = 6;
/// Largest `p * q` accepted by [`all_labelled_bipartite`]; matches the edge
/// count of the complete graph on six vertices.
pub const MAX_LABELLED_BIPARTITE_EDGES: usize = 15;

fn with_vertices(names: impl IntoIterator<Item = String>) -> Graph {
    let mut g = Graph::new();
    for name in names {
        g.add_vertex(&name).expect("generated names are unique");
    }
    g
}

fn numbered(n: usize) -> Graph {
    with_vertices((0..n).map(|i| format!("v{i}")))
}

fn two_sided(p: usize, q: usize) -> (Graph, Bipartition) {
    let g = with_vertices(
        (0..p)
            .map(|i| format!("l{i}"))
            .chain((0..q).map(|j| format!("r{j}"))),
    );
    let sides = (0..p)
        .map(|_| Player::Left)
        .chain((0..q).map(|_| Player::Right))
        .collect();
    (g, Bipartition::new(sides))
}

fn link(g: &mut Graph, u: usize, v: usize) {
    g.add_edge(VertexId(u), VertexId(v)).expect("generated edges are valid");
}

pub fn gen_path(n: usize) -> Graph {
    let mut g = numbered(n);
    for i in 1..n {
        link(&mut g, i - 1, i);
    }
    g
}

/// Cycle on `n` vertices; for `n < 3` this degenerates to a path.
pub fn gen_cycle(n: usize) -> Graph {
    let mut g = gen_path(n);
    if n >= 3 {
        link(&mut g, n - 1, 0);
    }
    g
}

pub fn gen_complete_bipartite(p: usize, q: usize) -> (Graph, Bipartition) {
    let (mut g, part) = two_sided(p, q);
    for i in 0..p {
        for j in 0..q {
            link(&mut g, i, p + j);
        }
    }
    (g, part)
}

fn check_prob(prob: f64) -> Result<()> {
    if (0.0..=1.0).contains(&prob) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("edge probability {prob} outside [0, 1]")))
    }
}

/// Erdős–Rényi G(n, p); deterministic for a fixed seed.
pub fn gen_gnp(n: usize, prob: f64, seed: u64) -> Result<Graph> {
    check_prob(prob)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = numbered(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob) {
                link(&mut g, u, v);
            }
        }
    }
    Ok(g)
}

/// Random bipartite graph: each of the `p * q` cross edges independently.
pub fn gen_random_bipartite(p: usize, q: usize, prob: f64, seed: u64) -> Result<(Graph, Bipartition)> {
    check_prob(prob)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut g, part) = two_sided(p, q);
    for i in 0..p {
        for j in 0..q {
            if rng.gen_bool(prob) {
                link(&mut g, i, p + j);
            }
        }
    }
    Ok((g, part))
}

/// Iterates every subset of `slots` as a graph built on a copy of `base`.
struct SubsetIter {
    base: Graph,
    slots: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for SubsetIter {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut g = self.base.clone();
        for (bit, &(u, v)) in self.slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                link(&mut g, u, v);
            }
        }
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

/// Every labelled graph on vertices `v0..v{n-1}`, one per edge subset, in
/// increasing order of the subset bitmask.
pub fn all_labelled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > MAX_LABELLED_VERTICES {
        return Err(Error::CorpusTooLarge(format!(
            "labelled graphs on {n} vertices (max {MAX_LABELLED_VERTICES})"
        )));
    }
    let slots: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(SubsetIter {
        base: numbered(n),
        end: 1u64 << slots.len(),
        slots,
        next: 0,
    })
}

/// Every labelled bipartite graph with sides `l0..l{p-1}` and `r0..r{q-1}`.
pub fn all_labelled_bipartite(p: usize, q: usize) -> Result<impl Iterator<Item = (Graph, Bipartition)>> {
    if p * q > MAX_LABELLED_BIPARTITE_EDGES {
        return Err(Error::CorpusTooLarge(format!(
            "labelled bipartite graphs with sides {p}x{q} (max {MAX_LABELLED_BIPARTITE_EDGES} edge slots)"
        )));
    }
    let (base, part) = two_sided(p, q);
    let slots: Vec<_> = (0..p).flat_map(|i| (0..q).map(move |j| (i, p + j))).collect();
    let graphs = SubsetIter {
        base,
        end: 1u64 << slots.len(),
        slots,
        next: 0,
    };
    Ok(graphs.map(move |g| (g, part.clone())))
}
