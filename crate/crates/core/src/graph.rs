//! Undirected simple graphs with named vertices and BFS distance queries.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Dense index of a vertex inside one [`Graph`]. Indices are assigned in
/// insertion order and never change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Graph distance. `Unreachable` is its own value so that membership tests
/// against forbidden-distance sets can never match it by accident.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    lookup: HashMap<String, VertexId>,
    // sorted, symmetric
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from vertex names and edges given by name.
    pub fn from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (a, b) in edges {
            let a = g.id(a.as_ref())?;
            let b = g.id(b.as_ref())?;
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.lookup.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        let id = VertexId(self.names.len());
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        self.adj.push(Vec::new());
        Ok(id)
    }

    /// Adds the undirected edge `u`--`v`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(self.names[u.0].clone()));
        }
        if let Err(pos) = self.adj[u.0].binary_search(&v.0) {
            self.adj[u.0].insert(pos, v.0);
            let pos = self.adj[v.0].binary_search(&u.0).unwrap_err();
            self.adj[v.0].insert(pos, u.0);
            self.edge_count += 1;
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        match self.adj[u.0].binary_search(&v.0) {
            Ok(pos) => {
                self.adj[u.0].remove(pos);
                let pos = self.adj[v.0].binary_search(&u.0).unwrap();
                self.adj[v.0].remove(pos);
                self.edge_count -= 1;
                Ok(())
            }
            Err(_) => Err(Error::UnknownEdge(
                self.names[u.0].clone(),
                self.names[v.0].clone(),
            )),
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u.0 < self.adj.len() && self.adj[u.0].binary_search(&v.0).is_ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs.iter().filter(|&&v| v > u) {
                out.push((VertexId(u), VertexId(v)));
            }
        }
        out
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v.0].iter().map(|&w| VertexId(w))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.lookup.get(name).copied()
    }

    /// Like [`Graph::vertex`] but returns `UnknownVertex` on a miss.
    pub fn id(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub(crate) fn check(&self, v: VertexId) -> Result<()> {
        if v.0 < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Distance> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Ok(Distance::Finite(0));
        }
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[u.0] = 0;
        queue.push_back(u.0);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v.0 {
                        return Ok(Distance::Finite(dist[y]));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Distance::Unreachable)
    }

    /// Every vertex within `radius` of `u`, with its exact distance.
    pub fn ball(&self, u: VertexId, radius: u32) -> Result<BTreeMap<VertexId, u32>> {
        self.check(u)?;
        Ok(self.ball_list(u, radius).into_iter().collect())
    }

    /// Truncated BFS; the result is in BFS order, starting with `(u, 0)`.
    pub(crate) fn ball_list(&self, u: VertexId, radius: u32) -> Vec<(VertexId, u32)> {
        let mut seen: HashMap<usize, u32> = HashMap::new();
        let mut out = vec![(u, 0)];
        seen.insert(u.0, 0);
        let mut head = 0;
        while head < out.len() {
            let (x, d) = out[head];
            head += 1;
            if d == radius {
                continue;
            }
            for &y in &self.adj[x.0] {
                if let Entry::Vacant(e) = seen.entry(y) {
                    e.insert(d + 1);
                    out.push((VertexId(y), d + 1));
                }
            }
        }
        out
    }

    /// Single-source distances to every vertex.
    pub fn distances_from(&self, u: VertexId) -> Result<Vec<Distance>> {
        self.check(u)?;
        let all = self.ball_list(u, u32::MAX);
        let mut out = vec![Distance::Unreachable; self.vertex_count()];
        for (v, d) in all {
            out[v.0] = Distance::Finite(d);
        }
        Ok(out)
    }

    /// Checks that every edge joins the two sides of `left_side`.
    pub fn is_bipartition(&self, left_side: &[bool]) -> bool {
        left_side.len() == self.vertex_count()
            && self.edges().iter().all(|&(u, v)| left_side[u.0] != left_side[v.0])
    }
}
