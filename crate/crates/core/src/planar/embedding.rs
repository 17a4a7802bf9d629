//! Face enumeration for near-triangulations.
//!
//! Cone the outer cycle to an apex. The input is a near-triangulation with
//! that outer cycle exactly when the coned graph is a triangulated sphere.
//! In a triangulation on at least four vertices (which is 3-connected) the
//! faces are precisely the non-separating triangles, so candidate faces are
//! enumerated that way and then checked to form a closed surface of Euler
//! characteristic two. A sphere check that passes is a planarity proof.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::laurent::Vertex;

use super::graph::Graph;

/// Compact copy of the coned graph: indices `0..n` are the graph's vertices in
/// ascending id order, index `n` is the apex.
struct Coned {
    ids: Vec<Vertex>,
    adj: Vec<BTreeSet<usize>>,
}

impl Coned {
    fn new(g: &Graph, outer: &[Vertex]) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let pos: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut adj = vec![BTreeSet::new(); n + 1];
        for e in g.edges() {
            let (u, v) = (pos[&e.lo()], pos[&e.hi()]);
            adj[u].insert(v);
            adj[v].insert(u);
        }
        for v in outer {
            adj[n].insert(pos[v]);
            adj[pos[v]].insert(n);
        }
        Coned { ids, adj }
    }

    fn apex(&self) -> usize {
        self.ids.len()
    }

    fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for u in 0..self.adj.len() {
            for &v in self.adj[u].range(u + 1..) {
                for &w in self.adj[v].range(v + 1..) {
                    if self.adj[u].contains(&w) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    fn separates(&self, tri: &[usize; 3]) -> bool {
        let total = self.adj.len();
        let Some(start) = (0..total).find(|x| !tri.contains(x)) else {
            return false;
        };
        let mut seen = vec![false; total];
        for &t in tri {
            seen[t] = true;
        }
        seen[start] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count < total - 3
    }

    /// Opposite edges of the faces around `x`.
    fn link(&self, faces: &[[usize; 3]], x: usize) -> BTreeMap<usize, Vec<usize>> {
        let mut link: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for f in faces.iter().filter(|f| f.contains(&x)) {
            let others: Vec<usize> = f.iter().copied().filter(|&y| y != x).collect();
            link.entry(others[0]).or_default().push(others[1]);
            link.entry(others[1]).or_default().push(others[0]);
        }
        link
    }

    fn link_is_single_cycle(&self, faces: &[[usize; 3]], x: usize) -> bool {
        let link = self.link(faces, x);
        if link.len() != self.adj[x].len() || link.values().any(|ns| ns.len() != 2) {
            return false;
        }
        let Some((&start, _)) = link.iter().next() else {
            return false;
        };
        let (mut prev, mut cur, mut steps) = (start, link[&start][0], 1);
        while cur != start {
            let ns = &link[&cur];
            let next = if ns[0] == prev { ns[1] } else { ns[0] };
            prev = cur;
            cur = next;
            steps += 1;
            if steps > link.len() {
                return false;
            }
        }
        steps == link.len()
    }

    /// Walks around one missing region starting from a boundary edge and
    /// returns its length, if the partial surface is regular enough to walk.
    fn hole_size(&self, faces: &[[usize; 3]], start: (usize, usize)) -> Option<usize> {
        let count = edge_face_counts(faces);
        let (mut u, mut w) = start;
        let mut len = 0;
        loop {
            let link = self.link(faces, w);
            if link.get(&u).is_none_or(|ns| ns.len() != 1) {
                return None;
            }
            let (mut prev, mut cur, mut steps) = (usize::MAX, u, 0);
            loop {
                let ns = link.get(&cur)?;
                if ns.len() > 2 {
                    return None;
                }
                if cur != u && ns.len() == 1 {
                    break;
                }
                let next = ns.iter().copied().find(|&y| y != prev)?;
                prev = cur;
                cur = next;
                steps += 1;
                if steps > link.len() {
                    return None;
                }
            }
            let x = cur;
            if count.get(&key(w, x)) != Some(&1) {
                return None;
            }
            len += 1;
            u = w;
            w = x;
            if (u, w) == start {
                return Some(len);
            }
            if len > self.adj.len() * self.adj.len() {
                return None;
            }
        }
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn edge_face_counts(faces: &[[usize; 3]]) -> BTreeMap<(usize, usize), usize> {
    let mut count = BTreeMap::new();
    for f in faces {
        for (p, q) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            *count.entry(key(p, q)).or_default() += 1;
        }
    }
    count
}

/// Inner faces of the near-triangulation `g` with outer cycle `outer`
/// (already known to be a cycle of `g`), or the reason it is not one.
pub(crate) fn inner_faces(g: &Graph, outer: &[Vertex]) -> Result<Vec<[Vertex; 3]>> {
    let n = g.num_vertices();
    let s = outer.len();
    let m = g.num_edges();
    let expected = 3 * n - 3 - s;
    if m > expected {
        return Err(Error::NonPlanar(format!(
            "{m} edges exceed the {expected} a near-triangulation with {n} vertices and outer cycle of length {s} can have"
        )));
    }

    let h = Coned::new(g, outer);
    let faces: Vec<[usize; 3]> = h.triangles().into_iter().filter(|t| !h.separates(t)).collect();

    let counts = edge_face_counts(&faces);
    let every_edge_twice = (0..h.adj.len()).all(|u| h.adj[u].iter().all(|&v| counts.get(&key(u, v)) == Some(&2)));
    let sphere = every_edge_twice
        && (0..h.adj.len()).all(|x| h.link_is_single_cycle(&faces, x))
        && (n + 1) + faces.len() == (m + s) + 2;

    if sphere {
        let apex = h.apex();
        let apex_link: BTreeSet<(usize, usize)> =
            h.link(&faces, apex).into_iter().flat_map(|(x, ns)| ns.into_iter().map(move |y| key(x, y))).collect();
        let pos: BTreeMap<Vertex, usize> = h.ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let cycle: BTreeSet<(usize, usize)> = (0..s).map(|i| key(pos[&outer[i]], pos[&outer[(i + 1) % s]])).collect();
        if apex_link != cycle {
            return Err(Error::NonPlanar("the outer cycle does not bound a face".into()));
        }
        let mut inner: Vec<[Vertex; 3]> =
            faces.iter().filter(|f| !f.contains(&apex)).map(|f| [h.ids[f[0]], h.ids[f[1]], h.ids[f[2]]]).collect();
        inner.sort();
        return Ok(inner);
    }

    if m < expected {
        let boundary =
            counts.iter().filter(|(&(u, v), &c)| c == 1 && u != h.apex() && v != h.apex()).map(|(&e, _)| e).next();
        if let Some((u, v)) = boundary {
            let size = h.hole_size(&faces, (u, v)).or_else(|| h.hole_size(&faces, (v, u)));
            if let Some(k) = size.filter(|&k| k > 3) {
                return Err(Error::InnerFace(k.to_string()));
            }
        }
        return Err(Error::InnerFace(format!("> 3 ({} edges short of a near-triangulation)", expected - m)));
    }
    Err(Error::NonPlanar("no planar embedding with the given outer cycle".into()))
}
