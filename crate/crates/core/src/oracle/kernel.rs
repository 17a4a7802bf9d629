//! Capped expansion of `∏ (u - v)` over an edge list.
//!
//! Each live term is a dense exponent key plus its coefficient. A branch is
//! cut as soon as it exceeds a cap, or once its *deficit* can no longer be
//! paid: the final total degree is fixed at `|E|`, so the caps leave a slack
//! `S = Σ caps - |E|`, and a vertex `w` with `r_w` unprocessed edges ends at
//! least `cap_w - exp_w - r_w` below its cap. A term whose summed deficit
//! exceeds `S` cannot finish within caps.

use std::collections::{BTreeMap, VecDeque};
use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, Vertex};
use crate::planar::Edge;
use crate::scalar::Coefficient;

/// Live-term guard used when nothing else is configured.
pub const DEFAULT_MAX_TERMS: usize = 10_000_000;

/// Edge processing order. Results never depend on it; speed does.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Edges at low-cap vertices first, then breadth-first from there.
    #[default]
    CapGuided,
    AsGiven,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandOptions {
    pub max_terms: usize,
    pub workers: usize,
    pub order: EdgeOrder,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions { max_terms: DEFAULT_MAX_TERMS, workers: 1, order: EdgeOrder::CapGuided }
    }
}

impl ExpandOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_order(mut self, order: EdgeOrder) -> Self {
        self.order = order;
        self
    }
}

/// Below this many live terms a step stays on one thread.
const PARALLEL_THRESHOLD: usize = 1 << 12;

trait Key: Clone + Eq + Hash + Send + Sync {
    fn zero(n: usize) -> Self;
    fn get(&self, i: usize) -> u8;
    fn bump(&self, i: usize) -> Self;
}

/// Four bits per vertex, for up to 32 vertices with caps below 16.
impl Key for u128 {
    fn zero(_: usize) -> Self {
        0
    }

    fn get(&self, i: usize) -> u8 {
        ((self >> (4 * i)) & 0xf) as u8
    }

    fn bump(&self, i: usize) -> Self {
        self + (1u128 << (4 * i))
    }
}

impl Key for Box<[u8]> {
    fn zero(n: usize) -> Self {
        vec![0; n].into_boxed_slice()
    }

    fn get(&self, i: usize) -> u8 {
        self[i]
    }

    fn bump(&self, i: usize) -> Self {
        let mut k = self.clone();
        k[i] += 1;
        k
    }
}

/// Dense problem description shared by both key types.
struct Plan {
    vertices: Vec<Vertex>,
    caps: Vec<u8>,
    /// `(lo, hi, remaining-after[lo], remaining-after[hi])` as dense indices.
    steps: Vec<(usize, usize, u32, u32)>,
    initial_deficit: u64,
    slack: u64,
}

fn plan(vertices: &[Vertex], caps: &dyn Fn(Vertex) -> u32, edges: &[Edge], order: EdgeOrder) -> Option<Plan> {
    let index: BTreeMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let cap: Vec<u32> = vertices.iter().map(|&v| caps(v)).collect();
    let total: u64 = cap.iter().map(|&c| c as u64).sum();
    if total < edges.len() as u64 || cap.iter().any(|&c| c > u8::MAX as u32) {
        return None;
    }
    let slack = total - edges.len() as u64;

    let mut ordered: Vec<(usize, usize)> = edges.iter().map(|e| (index[&e.lo()], index[&e.hi()])).collect();
    match order {
        EdgeOrder::AsGiven => {}
        EdgeOrder::Reversed => ordered.reverse(),
        EdgeOrder::CapGuided => {
            let rank = bfs_rank(vertices.len(), &ordered, &cap);
            ordered.sort_by_key(|&(u, v)| (cap[u].min(cap[v]), rank[u].max(rank[v]), rank[u].min(rank[v])));
        }
    }

    let mut remaining = vec![0u32; vertices.len()];
    for &(u, v) in &ordered {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let initial_deficit = (0..vertices.len()).map(|i| (cap[i] as i64 - remaining[i] as i64).max(0) as u64).sum();
    let steps = ordered
        .iter()
        .map(|&(u, v)| {
            remaining[u] -= 1;
            remaining[v] -= 1;
            (u, v, remaining[u], remaining[v])
        })
        .collect();
    Some(Plan {
        vertices: vertices.to_vec(),
        caps: cap.iter().map(|&c| c as u8).collect(),
        steps,
        initial_deficit,
        slack,
    })
}

/// Breadth-first ranks starting from the lowest-cap vertex.
fn bfs_rank(n: usize, edges: &[(usize, usize)], cap: &[u32]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&i| (cap[i], i));
    for s in starts {
        if rank[s] != usize::MAX {
            continue;
        }
        rank[s] = next;
        next += 1;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut ns = adj[u].clone();
            ns.sort_by_key(|&w| (cap[w], w));
            for w in ns {
                if rank[w] == usize::MAX {
                    rank[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    rank
}

type Live<K, C> = FxHashMap<K, (C, u64)>;

fn insert<K: Key, C: Coefficient>(map: &mut Live<K, C>, key: K, coeff: C, deficit: u64) {
    use std::collections::hash_map::Entry;
    match map.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert((coeff, deficit));
        }
        Entry::Occupied(mut slot) => {
            let sum = slot.get().0.clone() + coeff;
            if sum.is_zero() {
                slot.remove();
            } else {
                slot.get_mut().0 = sum;
            }
        }
    }
}

fn advance<'a, K: Key + 'a, C: Coefficient + 'a>(
    plan: &Plan,
    step: (usize, usize, u32, u32),
    terms: impl Iterator<Item = (&'a K, &'a (C, u64))>,
    out: &mut Live<K, C>,
) {
    let (lo, hi, r_lo, r_hi) = step;
    for (key, (coeff, deficit)) in terms {
        for (chosen, other, r_other, negate) in [(lo, hi, r_hi, false), (hi, lo, r_lo, true)] {
            if key.get(chosen) >= plan.caps[chosen] {
                continue;
            }
            // The unchosen endpoint loses one pending edge.
            let gap = plan.caps[other] as i64 - key.get(other) as i64 - r_other as i64;
            let deficit = deficit + u64::from(gap > 0);
            if deficit > plan.slack {
                continue;
            }
            let c = if negate { -coeff.clone() } else { coeff.clone() };
            insert(out, key.bump(chosen), c, deficit);
        }
    }
}

fn run<K: Key, C: Coefficient>(plan: &Plan, opts: &ExpandOptions) -> Result<Vec<(ExponentVector, C)>> {
    let mut live: Live<K, C> = FxHashMap::default();
    if plan.initial_deficit <= plan.slack {
        live.insert(K::zero(plan.vertices.len()), (C::one(), plan.initial_deficit));
    }
    for (i, &step) in plan.steps.iter().enumerate() {
        if live.is_empty() {
            break;
        }
        let workers = opts.workers.max(1);
        live = if workers == 1 || live.len() < PARALLEL_THRESHOLD {
            let mut out = FxHashMap::with_capacity_and_hasher(live.len() * 2, Default::default());
            advance(plan, step, live.iter(), &mut out);
            out
        } else {
            let terms: Vec<_> = live.iter().collect();
            let chunk = terms.len().div_ceil(workers);
            let parts: Vec<Live<K, C>> = std::thread::scope(|scope| {
                let handles: Vec<_> = terms
                    .chunks(chunk)
                    .map(|part| {
                        scope.spawn(move || {
                            let mut out = FxHashMap::default();
                            advance(plan, step, part.iter().copied(), &mut out);
                            out
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("expansion worker panicked")).collect()
            });
            let mut parts = parts.into_iter();
            let mut out = parts.next().unwrap_or_default();
            for part in parts {
                for (k, (c, d)) in part {
                    insert(&mut out, k, c, d);
                }
            }
            out
        };
        if live.len() > opts.max_terms {
            return Err(Error::Budget(format!(
                "{} live terms after {} of {} edges (limit {})",
                live.len(),
                i + 1,
                plan.steps.len(),
                opts.max_terms
            )));
        }
    }
    Ok(live
        .into_iter()
        .map(|(key, (c, _))| {
            let m = ExponentVector::from_pairs(plan.vertices.iter().enumerate().map(|(i, &v)| (v, key.get(i) as i32)));
            (m, c)
        })
        .collect())
}

/// All terms of `∏_{uv ∈ edges} (lo - hi)` whose exponents stay within
/// `caps`, with exact coefficients. Zero coefficients never appear.
pub(crate) fn expand_within_caps<C: Coefficient>(
    vertices: &[Vertex],
    caps: &dyn Fn(Vertex) -> u32,
    edges: &[Edge],
    opts: &ExpandOptions,
) -> Result<BTreeMap<ExponentVector, C>> {
    let Some(plan) = plan(vertices, caps, edges, opts.order) else {
        return Ok(BTreeMap::new());
    };
    let packed = plan.vertices.len() <= 32 && plan.caps.iter().all(|&c| c < 16);
    let terms = if packed { run::<u128, C>(&plan, opts)? } else { run::<Box<[u8]>, C>(&plan, opts)? };
    Ok(terms.into_iter().collect())
}
