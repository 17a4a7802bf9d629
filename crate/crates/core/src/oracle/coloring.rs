//! List colouring by backtracking, and an exhaustive adversary that tries
//! every list assignment from a bounded colour universe up to relabelling.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::laurent::Vertex;
use crate::planar::Graph;

pub type ListAssignment = BTreeMap<Vertex, BTreeSet<u32>>;

/// Dense copy of a graph for the inner loops.
struct Dense {
    vertices: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let vertices: Vec<Vertex> = g.vertices().collect();
        let index: BTreeMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = vertices.iter().map(|&v| g.neighbors(v).map(|w| index[&w]).collect()).collect();
        Dense { vertices, adj }
    }

    /// Colours as bitmasks over colour indices `< 64`.
    fn color(&self, lists: &[u64]) -> Option<Vec<u32>> {
        let mut colors = vec![u32::MAX; self.vertices.len()];
        self.extend(lists, &mut colors, 0).then_some(colors)
    }

    fn available(&self, lists: &[u64], colors: &[u32], v: usize) -> u64 {
        let used = self.adj[v].iter().filter(|&&w| colors[w] != u32::MAX).fold(0u64, |acc, &w| acc | 1 << colors[w]);
        lists[v] & !used
    }

    fn extend(&self, lists: &[u64], colors: &mut [u32], done: usize) -> bool {
        if done == colors.len() {
            return true;
        }
        // Most constrained uncoloured vertex; ties go to the lowest index.
        let (v, avail) = (0..colors.len())
            .filter(|&v| colors[v] == u32::MAX)
            .map(|v| (v, self.available(lists, colors, v)))
            .min_by_key(|&(v, a)| (a.count_ones(), v))
            .expect("an uncoloured vertex remains");
        let mut rest = avail;
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            colors[v] = c;
            if self.extend(lists, colors, done + 1) {
                return true;
            }
        }
        colors[v] = u32::MAX;
        false
    }
}

/// A proper colouring choosing each vertex's colour from its list, or
/// `None`. Vertices without a list cannot be coloured.
pub fn solve_list_coloring(g: &Graph, lists: &ListAssignment) -> Option<BTreeMap<Vertex, u32>> {
    let dense = Dense::new(g);
    let palette: Vec<u32> = lists
        .iter()
        .filter(|(v, _)| g.contains(**v))
        .flat_map(|(_, l)| l.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<u32, usize> = palette.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    if palette.len() > 64 {
        return solve_wide(g, lists);
    }
    let masks: Vec<u64> =
        dense.vertices.iter().map(|v| lists.get(v).map_or(0, |l| l.iter().fold(0, |m, c| m | 1 << index[c]))).collect();
    let colors = dense.color(&masks)?;
    Some(dense.vertices.iter().zip(colors).map(|(&v, c)| (v, palette[c as usize])).collect())
}

/// Plain backtracking for palettes beyond 64 colours.
fn solve_wide(g: &Graph, lists: &ListAssignment) -> Option<BTreeMap<Vertex, u32>> {
    fn go(g: &Graph, lists: &ListAssignment, order: &[Vertex], out: &mut BTreeMap<Vertex, u32>) -> bool {
        let Some((&v, rest)) = order.split_first() else {
            return true;
        };
        for &c in lists.get(&v).into_iter().flatten() {
            if g.neighbors(v).all(|w| out.get(&w) != Some(&c)) {
                out.insert(v, c);
                if go(g, lists, rest, out) {
                    return true;
                }
                out.remove(&v);
            }
        }
        false
    }
    let order: Vec<Vertex> = g.vertices().collect();
    let mut out = BTreeMap::new();
    go(g, lists, &order, &mut out).then_some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversaryOptions {
    pub universe: u32,
    /// Maximum number of canonical assignments to colour.
    pub max_assignments: u64,
}

impl AdversaryOptions {
    pub fn new(universe: u32) -> Self {
        AdversaryOptions { universe, max_assignments: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoosabilityVerdict {
    pub colorable_for_all: bool,
    /// First canonical assignment with no colouring.
    pub failing: Option<ListAssignment>,
    /// Canonical assignments coloured (up to relabelling).
    pub assignments_checked: u64,
    pub universe: u32,
    /// Universe size beyond which more colours cannot create new cases:
    /// the sum of list sizes.
    pub adversary_bound: u32,
}

impl ChoosabilityVerdict {
    /// The universe was too small to cover every possible assignment.
    pub fn is_partial(&self) -> bool {
        self.universe < self.adversary_bound
    }

    pub fn render(&self, g: &Graph) -> String {
        let scope = if self.is_partial() {
            format!("partial check: universe {} below adversary bound {}", self.universe, self.adversary_bound)
        } else {
            format!("complete check: universe {} covers all assignments", self.universe)
        };
        let head = if self.colorable_for_all {
            format!("colorable for all {} canonical list assignments", self.assignments_checked)
        } else {
            format!("not colorable after {} canonical list assignments", self.assignments_checked)
        };
        let mut out = format!("{head}\n{scope}\n");
        if let Some(f) = &self.failing {
            for (v, l) in f {
                let l: Vec<_> = l.iter().map(u32::to_string).collect();
                out.push_str(&format!("  {}: {}\n", g.name(*v), l.join(" ")));
            }
        }
        out
    }
}

/// All `k`-subsets of `0..u` as bitmasks, ascending.
fn subsets(u: u32, k: u32) -> Vec<u64> {
    (0u64..1 << u).filter(|m| m.count_ones() == k).collect()
}

fn permutations(u: u32) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, left: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let c = left.remove(i);
            prefix.push(c);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, c);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..u as u8).collect(), &mut out);
    out
}

struct Adversary<'a> {
    dense: Dense,
    options: &'a [Vec<u64>],
    /// `images[p][mask]`: the mask relabelled by permutation `p`.
    images: Vec<Vec<u16>>,
    lists: Vec<u64>,
    checked: u64,
    max: u64,
}

impl Adversary<'_> {
    /// Orderly generation: a prefix is kept only if no relabelling makes it
    /// lexicographically smaller. Only relabellings fixing the prefix so far
    /// (`stabilizer`) can still make a longer prefix smaller.
    fn search(&mut self, depth: usize, stabilizer: &[u32]) -> Result<bool> {
        if depth == self.lists.len() {
            self.checked += 1;
            if self.checked > self.max {
                return Err(Error::Budget(format!("more than {} list assignments", self.max)));
            }
            return Ok(self.dense.color(&self.lists).is_some());
        }
        for i in 0..self.options[depth].len() {
            let list = self.options[depth][i];
            let mut next = Vec::new();
            let mut canonical = true;
            for &p in stabilizer {
                let image = self.images[p as usize][list as usize] as u64;
                if image < list {
                    canonical = false;
                    break;
                }
                if image == list {
                    next.push(p);
                }
            }
            if !canonical {
                continue;
            }
            self.lists[depth] = list;
            if !self.search(depth + 1, &next)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Tries every assignment of lists of the given sizes drawn from
/// `0..universe`, one representative per colour relabelling class, and
/// reports the first one admitting no colouring.
pub fn adversarial_choosability(
    g: &Graph,
    list_size: &BTreeMap<Vertex, u32>,
    opts: &AdversaryOptions,
) -> Result<ChoosabilityVerdict> {
    let u = opts.universe;
    let dense = Dense::new(g);
    let sizes: Vec<u32> = dense
        .vertices
        .iter()
        .map(|v| list_size.get(v).copied().ok_or_else(|| Error::Parameters(format!("no list size for {}", g.name(*v)))))
        .collect::<Result<_>>()?;
    if let Some(&k) = sizes.iter().max() {
        if k > u {
            return Err(Error::Parameters(format!("universe {u} is smaller than list size {k}")));
        }
    }
    if u > 8 {
        return Err(Error::Parameters(format!("universe {u} exceeds the supported maximum of 8")));
    }
    let bound: u32 = sizes.iter().sum();
    let options: Vec<Vec<u64>> = sizes.iter().map(|&k| subsets(u, k)).collect();
    let perms = permutations(u);
    let images = perms
        .iter()
        .map(|p| {
            (0u64..1 << u)
                .map(|m| (0..u).filter(|&c| m >> c & 1 == 1).fold(0u16, |acc, c| acc | 1 << p[c as usize]))
                .collect()
        })
        .collect();
    let stabilizer: Vec<u32> = (0..perms.len() as u32).collect();
    let mut adv = Adversary {
        lists: vec![0; dense.vertices.len()],
        dense,
        options: &options,
        images,
        checked: 0,
        max: opts.max_assignments,
    };
    let ok = adv.search(0, &stabilizer)?;
    let failing = (!ok).then(|| {
        adv.dense
            .vertices
            .iter()
            .zip(&adv.lists)
            .map(|(&v, &m)| (v, (0..u).filter(|&c| m >> c & 1 == 1).map(|c| c + 1).collect()))
            .collect()
    });
    Ok(ChoosabilityVerdict {
        colorable_for_all: ok,
        failing,
        assignments_checked: adv.checked,
        universe: u,
        adversary_bound: bound,
    })
}
