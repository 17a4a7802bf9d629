use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Vertex identifier, doubling as the polynomial variable of that vertex.
///
/// Ids index the vertex name table of the graph they came from; ascending id
/// is the tie-breaking and edge-orientation order everywhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Multidegree of a Laurent monomial.
///
/// Stored as `(vertex, exponent)` pairs sorted by vertex with no zero
/// exponents, so structural equality is equality of monomials and the
/// derived order is lexicographic by vertex id, then exponent.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    entries: Vec<(Vertex, i32)>,
}

impl ExponentVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(v: Vertex, exponent: i32) -> Self {
        Self::from_pairs([(v, exponent)])
    }

    /// Builds a canonical vector; repeated vertices are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, i32)>) -> Self {
        let mut entries: Vec<(Vertex, i32)> = pairs.into_iter().collect();
        entries.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Vertex, i32)> = Vec::with_capacity(entries.len());
        for (v, e) in entries {
            match out.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        ExponentVector { entries: out }
    }

    pub fn get(&self, v: Vertex) -> i32 {
        match self.entries.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, i32)> + '_ {
        self.entries.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_degree(&self) -> i64 {
        self.entries.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.entries.iter().map(|&(v, _)| v)
    }

    /// Monomial product: exponents add.
    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ExponentVector { entries: out }
    }

    pub fn neg(&self) -> ExponentVector {
        ExponentVector { entries: self.entries.iter().map(|&(v, e)| (v, -e)).collect() }
    }

    /// Monomial quotient `self / other`.
    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        self.add(&other.neg())
    }

    pub fn with(&self, v: Vertex, delta: i32) -> ExponentVector {
        self.add(&ExponentVector::var(v, delta))
    }

    pub fn restrict(&self, keep: impl Fn(Vertex) -> bool) -> ExponentVector {
        ExponentVector { entries: self.entries.iter().copied().filter(|&(v, _)| keep(v)).collect() }
    }

    /// Renders with `name` for each vertex: `a^2 c^-1`, `d` for exponent one,
    /// and `1` for the constant monomial; factors joined by `sep`.
    pub fn render(&self, name: &dyn Fn(Vertex) -> String, sep: &str) -> String {
        if self.entries.is_empty() {
            return "1".to_string();
        }
        self.entries
            .iter()
            .map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|v| v.to_string(), "·"))
    }
}

impl FromIterator<(Vertex, i32)> for ExponentVector {
    fn from_iter<I: IntoIterator<Item = (Vertex, i32)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

/// `m1 ⪰ m2`: the quotient `m1 / m2` has no negative exponent.
pub fn niceness_ge(m1: &ExponentVector, m2: &ExponentVector) -> bool {
    is_nice(&m1.sub(m2))
}

/// No negative exponents.
pub fn is_nice(m: &ExponentVector) -> bool {
    m.entries.iter().all(|&(_, e)| e >= 0)
}
