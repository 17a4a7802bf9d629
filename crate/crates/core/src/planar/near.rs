use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::laurent::Vertex;

use super::embedding::inner_faces;
use super::format::RawGraph;
use super::graph::{Edge, Graph};

/// Validated planar near-triangulation with a distinguished outer edge.
///
/// The outer cycle is stored starting `a, b, …` where `ab` is the
/// distinguished edge, so the two vertices following `a` and `b` are
/// `outer[2]` and `outer[3]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearTriangulation {
    graph: Graph,
    outer: Vec<Vertex>,
    faces: Vec<[Vertex; 3]>,
}

/// One vertex-deletion step of the induction.
///
/// `green_candidates` and `other_neighbors` together are the neighbours of
/// `removed` strictly between `b_neighbor` and `t_neighbor` in rotation
/// order. [`NearTriangulation::peel`] puts all of them in
/// `green_candidates`; [`PeelStep::classify`] splits them by colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelStep {
    pub removed: Vertex,
    pub b_neighbor: Vertex,
    pub t_neighbor: Vertex,
    pub green_candidates: Vec<Vertex>,
    pub other_neighbors: Vec<Vertex>,
    /// All link vertices between `b` and `t`, in rotation order.
    pub link: Vec<Vertex>,
}

impl PeelStep {
    /// Green link vertices become `x`s, everything else a `y`.
    pub fn classify(&self, greens: &BTreeSet<Vertex>) -> PeelStep {
        let (xs, ys): (Vec<Vertex>, Vec<Vertex>) = self.link.iter().copied().partition(|v| greens.contains(v));
        PeelStep { green_candidates: xs, other_neighbors: ys, ..self.clone() }
    }
}

impl NearTriangulation {
    pub fn validate(raw: &RawGraph) -> Result<Self> {
        let graph = raw.graph()?;
        let cycle = raw.outer_cycle.as_ref().ok_or_else(|| Error::OuterCycle("no outer_cycle given".into()))?;
        let outer: Vec<Vertex> = cycle.iter().map(|n| graph.vertex(n)).collect::<Result<_>>()?;
        let [a, b] = raw
            .distinguished_edge
            .as_ref()
            .ok_or_else(|| Error::DistinguishedEdge("no distinguished_edge given".into()))?;
        let (a, b) = (graph.vertex(a)?, graph.vertex(b)?);
        Self::from_graph(graph, outer, (a, b))
    }

    /// Validates `graph` against the outer cycle and orients the cycle so it
    /// reads `a, b, …`.
    pub fn from_graph(graph: Graph, outer: Vec<Vertex>, (a, b): (Vertex, Vertex)) -> Result<Self> {
        let s = outer.len();
        let render = |vs: &[Vertex]| vs.iter().map(|&v| graph.name(v)).collect::<Vec<_>>().join(",");
        if s < 3 {
            return Err(Error::OuterCycle(format!("length {s} < 3")));
        }
        if outer.iter().collect::<BTreeSet<_>>().len() != s {
            return Err(Error::OuterCycle(format!("repeated vertex in ({})", render(&outer))));
        }
        for i in 0..s {
            let (u, v) = (outer[i], outer[(i + 1) % s]);
            if !graph.has_edge(u, v) {
                return Err(Error::OuterCycle(format!("{}-{} is not an edge", graph.name(u), graph.name(v))));
            }
        }
        let pa = outer.iter().position(|&v| v == a);
        let pb = outer.iter().position(|&v| v == b);
        let mut oriented = match (pa, pb) {
            (Some(i), Some(j)) if (i + 1) % s == j => {
                let mut o = outer.clone();
                o.rotate_left(i);
                o
            }
            (Some(i), Some(j)) if (j + 1) % s == i => {
                let mut o = outer.clone();
                o.reverse();
                let i = o.iter().position(|&v| v == a).unwrap();
                o.rotate_left(i);
                o
            }
            _ => {
                return Err(Error::DistinguishedEdge(format!(
                    "{}-{} is not on ({})",
                    graph.name(a),
                    graph.name(b),
                    render(&outer)
                )))
            }
        };
        debug_assert_eq!((oriented[0], oriented[1]), (a, b));
        if !graph.is_connected() {
            return Err(Error::Invalid("graph is disconnected".into()));
        }
        let faces = inner_faces(&graph, &oriented)?;
        oriented.shrink_to_fit();
        Ok(NearTriangulation { graph, outer: oriented, faces })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn outer_cycle(&self) -> &[Vertex] {
        &self.outer
    }

    pub fn a(&self) -> Vertex {
        self.outer[0]
    }

    pub fn b(&self) -> Vertex {
        self.outer[1]
    }

    pub fn distinguished_edge(&self) -> Edge {
        Edge::new(self.a(), self.b())
    }

    pub fn faces(&self) -> &[[Vertex; 3]] {
        &self.faces
    }

    pub fn n(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn s(&self) -> usize {
        self.outer.len()
    }

    pub fn is_outer(&self, v: Vertex) -> bool {
        self.outer.contains(&v)
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.graph.vertices().filter(move |v| !self.is_outer(*v))
    }

    pub fn is_triangle(&self) -> bool {
        self.n() == 3
    }

    pub fn name(&self, v: Vertex) -> &str {
        self.graph.name(v)
    }

    pub fn to_raw(&self) -> RawGraph {
        let name = |v: Vertex| self.name(v).to_string();
        RawGraph {
            vertices: self.graph.vertices().map(name).collect(),
            edges: self.graph.edges().map(|e| [name(e.lo()), name(e.hi())]).collect(),
            outer_cycle: Some(self.outer.iter().map(|&v| name(v)).collect()),
            distinguished_edge: Some([name(self.a()), name(self.b())]),
            matching: None,
        }
    }

    fn outer_position(&self, v: Vertex) -> Option<usize> {
        self.outer.iter().position(|&w| w == v)
    }

    /// Lexicographically least edge joining two non-consecutive outer vertices.
    pub fn find_chord(&self) -> Option<Edge> {
        self.graph.edges().find(|&e| self.is_chord(e))
    }

    pub fn is_chord(&self, e: Edge) -> bool {
        let s = self.s();
        match (self.outer_position(e.lo()), self.outer_position(e.hi())) {
            (Some(i), Some(j)) => {
                let d = i.abs_diff(j);
                d != 1 && d != s - 1 && self.graph.has_edge(e.lo(), e.hi())
            }
            _ => false,
        }
    }

    /// Splits along the chord `f`. The first part keeps the distinguished
    /// edge; the second has `f` as its distinguished edge, oriented so both
    /// parts traverse the shared boundary in the same rotational sense.
    pub fn split_at_chord(&self, f: Edge) -> Result<(NearTriangulation, NearTriangulation)> {
        if !self.is_chord(f) {
            return Err(Error::NotAChord(self.graph.render_edge(f)));
        }
        let (p, q) = (self.outer_position(f.lo()).unwrap(), self.outer_position(f.hi()).unwrap());
        let (i, j) = (p.min(q), p.max(q));
        let s = self.s();
        let arc1: Vec<Vertex> = self.outer[i..=j].to_vec();
        let arc2: Vec<Vertex> = self.outer[j..].iter().chain(&self.outer[..=i]).copied().collect();

        let region = |arc: &[Vertex]| -> NearTriangulation {
            let seed = Edge::new(arc[0], arc[1]);
            let faces = self.face_region(seed, f);
            let vertices: BTreeSet<Vertex> = faces.iter().flatten().copied().collect();
            let edges: BTreeSet<Edge> = faces
                .iter()
                .flat_map(|t| [Edge::new(t[0], t[1]), Edge::new(t[1], t[2]), Edge::new(t[0], t[2])])
                .collect();
            let graph = Graph::from_parts(self.graph.names().clone(), vertices, edges);
            NearTriangulation { graph, outer: arc.to_vec(), faces }
        };

        let (with_e, with_f_arc) = if i == 0 { (&arc1, &arc2) } else { (&arc2, &arc1) };
        let mut g1 = region(with_e);
        let a_pos = g1.outer.iter().position(|&v| v == self.a()).unwrap();
        g1.outer.rotate_left(a_pos);
        debug_assert_eq!(g1.outer[1], self.b());

        let mut g2 = region(with_f_arc);
        g2.outer.rotate_right(1);
        debug_assert!(s > 3);
        Ok((g1.checked()?, g2.checked()?))
    }

    /// Faces reachable from the face on `seed` without crossing `wall`.
    fn face_region(&self, seed: Edge, wall: Edge) -> Vec<[Vertex; 3]> {
        let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (k, t) in self.faces.iter().enumerate() {
            for e in [Edge::new(t[0], t[1]), Edge::new(t[1], t[2]), Edge::new(t[0], t[2])] {
                by_edge.entry(e).or_default().push(k);
            }
        }
        let start = by_edge[&seed][0];
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let t = self.faces[k];
            for e in [Edge::new(t[0], t[1]), Edge::new(t[1], t[2]), Edge::new(t[0], t[2])] {
                if e == wall {
                    continue;
                }
                for &other in &by_edge[&e] {
                    if seen.insert(other) {
                        queue.push_back(other);
                    }
                }
            }
        }
        seen.into_iter().map(|k| self.faces[k]).collect()
    }

    /// Re-runs full validation on a derived instance.
    fn checked(self) -> Result<Self> {
        let (a, b) = (self.a(), self.b());
        NearTriangulation::from_graph(self.graph, self.outer, (a, b))
    }

    /// Neighbours of `v` in rotation order from `from` to `to`, exclusive,
    /// read off the inner faces around `v`.
    fn link_path(&self, v: Vertex, from: Vertex, to: Vertex) -> Result<Vec<Vertex>> {
        let mut link: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for t in self.faces.iter().filter(|t| t.contains(&v)) {
            let o: Vec<Vertex> = t.iter().copied().filter(|&w| w != v).collect();
            link.entry(o[0]).or_default().push(o[1]);
            link.entry(o[1]).or_default().push(o[0]);
        }
        let mut path = Vec::new();
        let (mut prev, mut cur) = (from, from);
        while cur != to {
            let next = link
                .get(&cur)
                .and_then(|ns| ns.iter().copied().find(|&w| w != prev || cur == from))
                .ok_or_else(|| Error::Internal(format!("broken link around {}", self.name(v))))?;
            prev = cur;
            cur = next;
            if cur != to {
                path.push(cur);
            }
            if path.len() > link.len() {
                return Err(Error::Internal(format!("link around {} is not a path", self.name(v))));
            }
        }
        Ok(path)
    }

    /// Deletes `v`, the outer neighbour of `b` other than `a`.
    pub fn peel(&self) -> Result<(NearTriangulation, PeelStep)> {
        if self.is_triangle() {
            return Err(Error::BaseCase);
        }
        if let Some(c) = self.find_chord() {
            return Err(Error::ChordPresent(self.graph.render_edge(c)));
        }
        let s = self.s();
        let (a, b, v) = (self.a(), self.b(), self.outer[2]);
        let t = self.outer[3 % s];
        let link = self.link_path(v, b, t)?;

        let mut outer = vec![a, b];
        outer.extend(&link);
        outer.extend(self.outer[3..].iter().copied());
        if t == a {
            debug_assert_eq!(s, 3);
        }
        let graph = self.graph.remove_vertex(v);
        let reduced = NearTriangulation::from_graph(graph, outer, (a, b))?;
        let step = PeelStep {
            removed: v,
            b_neighbor: b,
            t_neighbor: t,
            green_candidates: link.clone(),
            other_neighbors: Vec::new(),
            link,
        };
        Ok((reduced, step))
    }

    /// Inverse of [`peel`](Self::peel).
    pub fn reattach(&self, step: &PeelStep) -> Result<NearTriangulation> {
        let k = step.link.len();
        if self.outer.get(2..2 + k) != Some(&step.link[..]) {
            return Err(Error::Precondition("peel step does not match this graph".into()));
        }
        let v = step.removed;
        let mut vertices: Vec<Vertex> = self.graph.vertices().collect();
        vertices.push(v);
        let mut edges: Vec<Edge> = self.graph.edges().collect();
        edges.push(Edge::new(v, step.b_neighbor));
        edges.push(Edge::new(v, step.t_neighbor));
        edges.extend(step.link.iter().map(|&w| Edge::new(v, w)));
        let graph = Graph::from_parts(self.graph.names().clone(), vertices, edges);

        let mut outer = vec![self.a(), self.b(), v];
        outer.extend(self.outer[2 + k..].iter().copied());
        if step.t_neighbor != self.a() && outer.get(3) != Some(&step.t_neighbor) {
            return Err(Error::Precondition("peel step does not match this graph".into()));
        }
        NearTriangulation::from_graph(graph, outer, (self.a(), self.b()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nt(vertices: &[&str], edges: &[(&str, &str)], outer: &[&str], e: (&str, &str)) -> Result<NearTriangulation> {
        NearTriangulation::validate(&RawGraph::new(vertices, edges).with_outer(outer, e))
    }

    fn triangle() -> NearTriangulation {
        nt(&["a", "b", "c"], &[("a", "b"), ("a", "c"), ("b", "c")], &["a", "b", "c"], ("a", "b")).unwrap()
    }

    fn k4() -> NearTriangulation {
        nt(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"), ("c", "d")],
            &["a", "b", "c"],
            ("a", "b"),
        )
        .unwrap()
    }

    fn square_chord() -> NearTriangulation {
        nt(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")],
            &["a", "b", "c", "d"],
            ("a", "b"),
        )
        .unwrap()
    }

    fn names(g: &NearTriangulation, vs: &[Vertex]) -> Vec<String> {
        vs.iter().map(|&v| g.name(v).to_string()).collect()
    }

    #[test]
    fn validate_examples() {
        let t = triangle();
        assert_eq!((t.s(), t.graph().num_edges()), (3, 3));
        let k = k4();
        assert_eq!(k.graph().num_edges(), 3 * 4 - 3 - 3);
        assert_eq!(k.faces().len(), 3);
        let err = nt(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
            &["a", "b", "c", "d"],
            ("a", "b"),
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "inner face of size 4");
    }

    #[test]
    fn validate_errors() {
        let edges = [("a", "b"), ("a", "c"), ("b", "c")];
        assert!(matches!(nt(&["a", "b", "c"], &edges, &["a", "b", "c"], ("c", "c")), Err(Error::DistinguishedEdge(_))));
        assert!(matches!(
            nt(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("a", "d")], &["a", "b", "c"], ("a", "b")),
            Err(Error::OuterCycle(_))
        ));
        // K5 cannot be drawn with any triangle as outer face.
        let k5: Vec<(&str, &str)> = vec![
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("a", "e"),
            ("b", "c"),
            ("b", "d"),
            ("b", "e"),
            ("c", "d"),
            ("c", "e"),
            ("d", "e"),
        ];
        assert!(matches!(nt(&["a", "b", "c", "d", "e"], &k5, &["a", "b", "c"], ("a", "b")), Err(Error::NonPlanar(_))));
        // K4 with a 4-cycle declared as outer boundary: d-b is interior, so the cycle bounds no face.
        let k4e = [("a", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"), ("c", "d")];
        assert!(nt(&["a", "b", "c", "d"], &k4e, &["a", "b", "c", "d"], ("a", "b")).is_err());
    }

    #[test]
    fn orientation_follows_distinguished_edge() {
        let g = nt(&["a", "b", "c"], &[("a", "b"), ("a", "c"), ("b", "c")], &["c", "b", "a"], ("a", "b")).unwrap();
        assert_eq!(names(&g, g.outer_cycle()), vec!["a", "b", "c"]);
    }

    #[test]
    fn chords() {
        let sq = square_chord();
        assert_eq!(sq.graph().render_edge(sq.find_chord().unwrap()), "a-c");
        assert_eq!(triangle().find_chord(), None);
        assert_eq!(k4().find_chord(), None);
    }

    #[test]
    fn split_square() {
        let sq = square_chord();
        let (g1, g2) = sq.split_at_chord(sq.find_chord().unwrap()).unwrap();
        assert_eq!(names(&g1, g1.outer_cycle()), vec!["a", "b", "c"]);
        assert_eq!(names(&g2, g2.outer_cycle()), vec!["a", "c", "d"]);
        assert_eq!(g2.distinguished_edge(), sq.find_chord().unwrap());
        assert_eq!(g1.graph().num_edges() + g2.graph().num_edges(), sq.graph().num_edges() + 1);
        let ab = sq.distinguished_edge();
        assert!(matches!(sq.split_at_chord(ab), Err(Error::NotAChord(_))));
    }

    #[test]
    fn peel_k4() {
        let k = k4();
        let (reduced, step) = k.peel().unwrap();
        assert_eq!(k.name(step.removed), "c");
        assert_eq!(k.name(step.t_neighbor), "a");
        assert_eq!(names(&k, &step.link), vec!["d"]);
        assert_eq!(names(&reduced, reduced.outer_cycle()), vec!["a", "b", "d"]);
        assert_eq!(reduced.reattach(&step).unwrap(), k);
        assert!(matches!(triangle().peel(), Err(Error::BaseCase)));
        assert!(matches!(square_chord().peel(), Err(Error::ChordPresent(_))));
    }

    #[test]
    fn classify_splits_link() {
        let step = PeelStep {
            removed: Vertex(9),
            b_neighbor: Vertex(1),
            t_neighbor: Vertex(2),
            green_candidates: vec![Vertex(3), Vertex(4), Vertex(5)],
            other_neighbors: vec![],
            link: vec![Vertex(3), Vertex(4), Vertex(5)],
        };
        let c = step.classify(&BTreeSet::from([Vertex(4)]));
        assert_eq!(c.green_candidates, vec![Vertex(4)]);
        assert_eq!(c.other_neighbors, vec![Vertex(3), Vertex(5)]);
    }
}
