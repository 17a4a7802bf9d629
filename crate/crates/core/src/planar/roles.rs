use std::collections::BTreeSet;

use crate::laurent::Vertex;

use super::graph::{Edge, Graph};
use super::near::NearTriangulation;

/// Matching `r_i g_i` with its red/green colouring.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleAssignment {
    /// `(red, green)` pairs, kept sorted.
    pairs: Vec<(Vertex, Vertex)>,
}

impl RoleAssignment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort();
        RoleAssignment { pairs }
    }

    pub fn with_pair(&self, red: Vertex, green: Vertex) -> Self {
        Self::new(self.pairs.iter().copied().chain([(red, green)]))
    }

    pub fn union(&self, other: &RoleAssignment) -> Self {
        Self::new(self.pairs.iter().chain(&other.pairs).copied())
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn red(&self) -> BTreeSet<Vertex> {
        self.pairs.iter().map(|&(r, _)| r).collect()
    }

    pub fn green(&self) -> BTreeSet<Vertex> {
        self.pairs.iter().map(|&(_, g)| g).collect()
    }

    pub fn is_red(&self, v: Vertex) -> bool {
        self.pairs.iter().any(|&(r, _)| r == v)
    }

    pub fn is_green(&self, v: Vertex) -> bool {
        self.pairs.iter().any(|&(_, g)| g == v)
    }

    pub fn is_matched(&self, v: Vertex) -> bool {
        self.is_red(v) || self.is_green(v)
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.pairs.iter().map(|&(r, g)| Edge::new(r, g)).collect()
    }

    /// Pairs are edges of `g` with no shared endpoints.
    pub fn check_matching(&self, g: &Graph) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for &(r, gr) in &self.pairs {
            if !g.has_edge(r, gr) {
                return Err(format!("{}-{} is not an edge", g.name(r), g.name(gr)));
            }
            for v in [r, gr] {
                if !seen.insert(v) {
                    return Err(format!("{} is matched twice", g.name(v)));
                }
            }
        }
        Ok(())
    }

    /// Matching conditions for the near-triangulation strengthening: the
    /// matched vertices avoid `a` and `b`, and no red vertex is on the outer
    /// cycle.
    pub fn check_planar(&self, g: &NearTriangulation) -> Result<(), String> {
        self.check_matching(g.graph())?;
        for &(r, gr) in &self.pairs {
            for v in [r, gr] {
                if v == g.a() || v == g.b() {
                    return Err(format!("{} is matched but is an endpoint of the distinguished edge", g.name(v)));
                }
            }
            if g.is_outer(r) {
                return Err(format!("red vertex {} lies on the outer cycle", g.name(r)));
            }
        }
        Ok(())
    }

    pub fn render(&self, g: &Graph) -> String {
        if self.pairs.is_empty() {
            return "none".into();
        }
        self.pairs.iter().map(|&(r, gr)| format!("r={} g={}", g.name(r), g.name(gr))).collect::<Vec<_>>().join("; ")
    }

    /// Re-expresses the pairs in another graph with the same vertex names.
    pub fn translate(&self, from: &Graph, to: &Graph) -> Option<RoleAssignment> {
        let map = |v: Vertex| to.lookup(from.name(v));
        self.pairs.iter().map(|&(r, g)| Some((map(r)?, map(g)?))).collect::<Option<Vec<_>>>().map(Self::new)
    }
}
