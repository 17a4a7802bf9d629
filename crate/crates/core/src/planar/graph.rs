use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::laurent::Vertex;

/// Undirected edge, endpoints stored in ascending id order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Shared table of vertex names; a [`Vertex`] indexes into it.
pub type Names = Arc<Vec<String>>;

/// Simple undirected graph over a shared vertex-name universe.
///
/// Subgraphs produced by deletion or splitting keep the universe of their
/// parent, so vertex ids and monomials stay comparable across the pieces.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Names,
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    /// Graph on all names with the given edges, by name.
    pub fn from_names<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || "^,-=:;".contains(c)) {
                return Err(Error::Invalid(format!("vertex name {n:?} is not a plain identifier")));
            }
            if index.insert(n.clone(), Vertex(i as u32)).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex {n}")));
            }
        }
        let mut g = Graph {
            names: Arc::new(names),
            adj: (0..index.len()).map(|i| (Vertex(i as u32), BTreeSet::new())).collect(),
        };
        for (u, v) in edges {
            let lookup = |s: &str| {
                index.get(s).copied().ok_or_else(|| Error::Invalid(format!("edge endpoint {s} is not a vertex")))
            };
            let (u, v) = (lookup(u.as_ref())?, lookup(v.as_ref())?);
            if u == v {
                return Err(Error::DegenerateEdge(g.name(u).to_string()));
            }
            if !g.adj.get_mut(&u).unwrap().insert(v) {
                return Err(Error::Invalid(format!(
                    "duplicate edge {}-{} (graph must be simple)",
                    g.name(u),
                    g.name(v)
                )));
            }
            g.adj.get_mut(&v).unwrap().insert(u);
        }
        Ok(g)
    }

    /// Graph on a subset of an existing universe.
    pub fn from_parts(
        names: Names,
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = vertices.into_iter().map(|v| (v, BTreeSet::new())).collect();
        for e in edges {
            adj.entry(e.lo()).or_default().insert(e.hi());
            adj.entry(e.hi()).or_default().insert(e.lo());
        }
        Graph { names, adj }
    }

    pub fn names(&self) -> &Names {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name).map(|i| Vertex(i as u32)).filter(|v| self.adj.contains_key(v))
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.lookup(name).ok_or_else(|| Error::Invalid(format!("unknown vertex {name}")))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().flat_map(|(&u, ns)| ns.range(u..).map(move |&v| Edge(u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    pub fn remove_vertex(&self, v: Vertex) -> Graph {
        let mut g = self.clone();
        if let Some(ns) = g.adj.remove(&v) {
            for u in ns {
                g.adj.get_mut(&u).unwrap().remove(&v);
            }
        }
        g
    }

    pub fn remove_edges<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Graph {
        let mut g = self.clone();
        for e in edges {
            if let Some(ns) = g.adj.get_mut(&e.lo()) {
                ns.remove(&e.hi());
            }
            if let Some(ns) = g.adj.get_mut(&e.hi()) {
                ns.remove(&e.lo());
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(&BTreeSet::new())
    }

    /// Connectivity after deleting `removed` (vacuously true when empty).
    pub fn is_connected_without(&self, removed: &BTreeSet<Vertex>) -> bool {
        let mut rest = self.vertices().filter(|v| !removed.contains(v));
        let Some(start) = rest.next() else {
            return true;
        };
        let total = 1 + rest.count();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if !removed.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == total
    }

    pub fn render_edge(&self, e: Edge) -> String {
        format!("{}-{}", self.name(e.lo()), self.name(e.hi()))
    }

    /// Parses `u-v`, `u,v`, or (for single-character names) `uv`.
    pub fn parse_edge(&self, s: &str) -> Result<Edge> {
        let s = s.trim();
        let parts: Vec<&str> = if s.contains('-') {
            s.splitn(2, '-').collect()
        } else if s.contains(',') {
            s.splitn(2, ',').collect()
        } else if s.chars().count() == 2 {
            let mid = s.char_indices().nth(1).unwrap().0;
            vec![&s[..mid], &s[mid..]]
        } else {
            return Err(Error::Parse(format!("cannot read edge {s:?}; use u-v")));
        };
        let (u, v) = (self.vertex(parts[0].trim())?, self.vertex(parts[1].trim())?);
        if u == v {
            return Err(Error::DegenerateEdge(s.to_string()));
        }
        Ok(Edge::new(u, v))
    }

    /// Short content hash over names of present vertices and edges.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for v in self.vertices() {
            h.update(self.name(v).as_bytes());
            h.update(b"\n");
        }
        h.update(b"--\n");
        let mut edges: Vec<(String, String)> = self
            .edges()
            .map(|e| {
                let (a, b) = (self.name(e.lo()).to_string(), self.name(e.hi()).to_string());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort();
        for (a, b) in edges {
            h.update(format!("{a} {b}\n").as_bytes());
        }
        h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|e| self.render_edge(e)).collect();
        write!(f, "Graph[{}]", edges.join(" "))
    }
}
