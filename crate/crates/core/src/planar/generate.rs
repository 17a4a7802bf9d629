//! Deterministic test families.
//!
//! Near-triangulation families come with an outer cycle and a default
//! distinguished edge (the first two outer vertices). `v8` and clique sums
//! are plain graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::format::RawGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Triangle,
    K4,
    /// Four-cycle with the chord `ac`.
    SquareChord,
    /// Four-cycle without a chord; not a near-triangulation.
    Square,
    /// Two `K4`s sharing the outer edge `ac`.
    DoubleStacked,
    /// Hub joined to a path of `m` vertices; everything on the outer cycle.
    Fan(usize),
    /// Hub inside a rim of `m` vertices.
    Wheel(usize),
    /// Stacked triangulation: every inner face subdivided `depth` times.
    Stacked(usize),
    Octahedron,
    V8,
    /// Glue the first `k` outer (or listed) vertices of both parts.
    CliqueSum(Box<Family>, Box<Family>, usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Triangle => write!(f, "triangle"),
            Family::K4 => write!(f, "k4"),
            Family::SquareChord => write!(f, "square-chord"),
            Family::Square => write!(f, "square"),
            Family::DoubleStacked => write!(f, "double-stacked"),
            Family::Fan(m) => write!(f, "fan:{m}"),
            Family::Wheel(m) => write!(f, "wheel:{m}"),
            Family::Stacked(d) => write!(f, "stacked:{d}"),
            Family::Octahedron => write!(f, "octahedron"),
            Family::V8 => write!(f, "v8"),
            Family::CliqueSum(l, r, k) => write!(f, "clique-sum({l},{r},{k})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parameters(format!("unknown family {s:?}"));
        if let Some(inner) = s.strip_prefix("clique-sum(").and_then(|r| r.strip_suffix(')')) {
            let parts = split_top_level(inner);
            let [l, r, k] = parts.as_slice() else {
                return Err(Error::Parameters("clique-sum takes (left,right,k)".into()));
            };
            let k = k.trim().parse().map_err(|_| bad())?;
            return Ok(Family::CliqueSum(Box::new(l.parse()?), Box::new(r.parse()?), k));
        }
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        Ok(match (name, arg) {
            ("triangle", None) => Family::Triangle,
            ("k4", None) => Family::K4,
            ("square-chord", None) => Family::SquareChord,
            ("square", None) => Family::Square,
            ("double-stacked", None) => Family::DoubleStacked,
            ("fan", Some(m)) => Family::Fan(m),
            ("wheel", Some(m)) => Family::Wheel(m),
            ("stacked", Some(d)) => Family::Stacked(d),
            ("octahedron", None) => Family::Octahedron,
            ("v8", None) => Family::V8,
            _ => return Err(bad()),
        })
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn raw(vertices: Vec<String>, edges: Vec<(String, String)>) -> RawGraph {
    RawGraph { vertices, edges: edges.into_iter().map(|(u, v)| [u, v]).collect(), ..Default::default() }
}

fn with_outer(mut g: RawGraph, outer: Vec<String>) -> RawGraph {
    g.distinguished_edge = Some([outer[0].clone(), outer[1].clone()]);
    g.outer_cycle = Some(outer);
    g
}

fn names(prefix: &str, range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn s(x: &str) -> String {
    x.to_string()
}

fn letters(edges: &[(&str, &str)]) -> Vec<(String, String)> {
    edges.iter().map(|&(u, v)| (s(u), s(v))).collect()
}

pub fn generate(family: &Family) -> Result<RawGraph> {
    Ok(match family {
        Family::Triangle => with_outer(
            raw(vec![s("a"), s("b"), s("c")], letters(&[("a", "b"), ("a", "c"), ("b", "c")])),
            vec![s("a"), s("b"), s("c")],
        ),
        Family::K4 => with_outer(
            raw(
                vec![s("a"), s("b"), s("c"), s("d")],
                letters(&[("a", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"), ("c", "d")]),
            ),
            vec![s("a"), s("b"), s("c")],
        ),
        Family::SquareChord => with_outer(
            raw(
                vec![s("a"), s("b"), s("c"), s("d")],
                letters(&[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d"), ("a", "c")]),
            ),
            vec![s("a"), s("b"), s("c"), s("d")],
        ),
        Family::Square => with_outer(
            raw(vec![s("a"), s("b"), s("c"), s("d")], letters(&[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])),
            vec![s("a"), s("b"), s("c"), s("d")],
        ),
        Family::DoubleStacked => with_outer(
            raw(
                vec![s("a"), s("b"), s("c"), s("e"), s("d"), s("f")],
                letters(&[
                    ("a", "b"),
                    ("b", "c"),
                    ("a", "c"),
                    ("a", "d"),
                    ("b", "d"),
                    ("c", "d"),
                    ("c", "e"),
                    ("a", "e"),
                    ("a", "f"),
                    ("c", "f"),
                    ("e", "f"),
                ]),
            ),
            vec![s("a"), s("b"), s("c"), s("e")],
        ),
        Family::Fan(m) => {
            if *m < 2 {
                return Err(Error::Parameters("fan needs m >= 2".into()));
            }
            let path = names("p", 1..=*m);
            let mut vertices = vec![s("h")];
            vertices.extend(path.iter().cloned());
            let mut edges: Vec<(String, String)> = path.iter().map(|p| (s("h"), p.clone())).collect();
            edges.extend(path.windows(2).map(|w| (w[0].clone(), w[1].clone())));
            with_outer(raw(vertices.clone(), edges), vertices)
        }
        Family::Wheel(m) => {
            if *m < 3 {
                return Err(Error::Parameters("wheel needs m >= 3".into()));
            }
            let rim = names("r", 1..=*m);
            let mut vertices = rim.clone();
            vertices.push(s("h"));
            let mut edges: Vec<(String, String)> =
                (0..*m).map(|i| (rim[i].clone(), rim[(i + 1) % m].clone())).collect();
            edges.extend(rim.iter().map(|r| (r.clone(), s("h"))));
            with_outer(raw(vertices, edges), rim)
        }
        Family::Stacked(depth) => {
            if *depth > 5 {
                return Err(Error::Parameters("stacked depth above 5 is not a desk-scale instance".into()));
            }
            let mut vertices = vec![s("a"), s("b"), s("c")];
            let mut edges = letters(&[("a", "b"), ("a", "c"), ("b", "c")]);
            let mut faces = vec![[s("a"), s("b"), s("c")]];
            for _ in 0..*depth {
                let mut next = Vec::new();
                for [x, y, z] in faces {
                    let v = format!("s{}", vertices.len() - 2);
                    vertices.push(v.clone());
                    edges.extend([(x.clone(), v.clone()), (y.clone(), v.clone()), (z.clone(), v.clone())]);
                    next.push([x.clone(), y.clone(), v.clone()]);
                    next.push([y, z.clone(), v.clone()]);
                    next.push([x, z, v]);
                }
                faces = next;
            }
            with_outer(raw(vertices, edges), vec![s("a"), s("b"), s("c")])
        }
        Family::Octahedron => with_outer(
            raw(
                vec![s("a"), s("b"), s("c"), s("d"), s("e"), s("f")],
                letters(&[
                    ("a", "b"),
                    ("b", "c"),
                    ("a", "c"),
                    ("a", "d"),
                    ("b", "d"),
                    ("b", "e"),
                    ("c", "e"),
                    ("c", "f"),
                    ("a", "f"),
                    ("d", "e"),
                    ("e", "f"),
                    ("d", "f"),
                ]),
            ),
            vec![s("a"), s("b"), s("c")],
        ),
        Family::V8 => {
            let vs = names("v", 0..8);
            let mut edges: Vec<(String, String)> = (0..8).map(|i| (vs[i].clone(), vs[(i + 1) % 8].clone())).collect();
            edges.extend((0..4).map(|i| (vs[i].clone(), vs[i + 4].clone())));
            raw(vs, edges)
        }
        Family::CliqueSum(left, right, k) => {
            let (l, r) = (generate(left)?, generate(right)?);
            let shared = default_shared(&l, &r, *k)?;
            clique_sum(&l, &r, &shared)?.0
        }
    })
}

fn glue_order(g: &RawGraph) -> &[String] {
    g.outer_cycle.as_deref().unwrap_or(&g.vertices)
}

/// Pairs the first `k` outer (or listed) vertices of both parts.
pub fn default_shared(left: &RawGraph, right: &RawGraph, k: usize) -> Result<Vec<(String, String)>> {
    let (lo, ro) = (glue_order(left), glue_order(right));
    if k > lo.len() || k > ro.len() {
        return Err(Error::Parameters(format!("cannot share {k} vertices")));
    }
    Ok(lo.iter().cloned().zip(ro.iter().cloned()).take(k).collect())
}

/// Glues `right` onto `left` along `shared` (`(left name, right name)`
/// pairs), which must be a clique of at most 3 vertices in both parts.
///
/// Returns the sum and the renaming applied to `right`. Non-shared vertices
/// of `right` whose names collide with `left` get primes appended.
pub fn clique_sum(
    left: &RawGraph,
    right: &RawGraph,
    shared: &[(String, String)],
) -> Result<(RawGraph, BTreeMap<String, String>)> {
    if shared.len() > 3 {
        return Err(Error::Parameters("clique sums glue along at most 3 vertices".into()));
    }
    let (lg, rg) = (left.graph()?, right.graph()?);
    for (g, side, pick) in [(&lg, "left", 0usize), (&rg, "right", 1)] {
        let vs: Vec<_> = shared.iter().map(|p| g.vertex(if pick == 0 { &p.0 } else { &p.1 })).collect::<Result<_>>()?;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if u == v || !g.has_edge(u, v) {
                    return Err(Error::Parameters(format!("shared set is not a clique in the {side} part")));
                }
            }
        }
    }

    let mut taken: BTreeSet<String> = left.vertices.iter().cloned().collect();
    let mut rename: BTreeMap<String, String> = shared.iter().map(|(l, r)| (r.clone(), l.clone())).collect();
    for v in &right.vertices {
        if rename.contains_key(v) {
            continue;
        }
        let mut name = v.clone();
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        rename.insert(v.clone(), name);
    }

    let mut vertices = left.vertices.clone();
    vertices.extend(right.vertices.iter().map(|v| rename[v].clone()).filter(|v| !left.vertices.contains(v)));
    let key = |u: &str, v: &str| if u <= v { (u.to_string(), v.to_string()) } else { (v.to_string(), u.to_string()) };
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for [u, v] in
        left.edges.iter().cloned().chain(right.edges.iter().map(|[u, v]| [rename[u].clone(), rename[v].clone()]))
    {
        if seen.insert(key(&u, &v)) {
            edges.push([u, v]);
        }
    }
    Ok((RawGraph { vertices, edges, ..Default::default() }, rename))
}
