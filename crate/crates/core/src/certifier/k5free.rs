//! `K5`-minor-free graphs given with their construction.
//!
//! Triangulations with an outer triangle reuse the outer-triangle
//! certificate and multiply the triangle back in; the Wagner graph needs no
//! matching since every exponent of its polynomial is at most 3. Clique
//! sums have no composition rule, so they are settled by an oracle search
//! over matchings, seeded with the matchings found for the two parts.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, Vertex};
use crate::oracle::{capped_expand_p, DegreeCaps, Star};
use crate::planar::{clique_sum, default_shared, generate, Edge, Family, Graph, NearTriangulation, RoleAssignment};
use crate::scalar::Integer;

use super::certificate::{Certificate, Step};
use super::matched::{certify_theorem3, MatchedCertificates, SearchStats};
use super::{checked, selection_sign, CertifyOptions};

/// How a graph was built; the certifier dispatches on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Planar triangulation with a triangular outer face.
    Triangulation(NearTriangulation),
    /// The Wagner graph `V8`.
    Wagner(Graph),
    /// `right` glued onto `left`; `renaming` maps right-part names to names
    /// in `graph`, left-part names are kept.
    CliqueSum { left: Box<Construction>, right: Box<Construction>, renaming: BTreeMap<String, String>, graph: Graph },
    /// Any other graph; certified by plain search.
    Unstructured(Graph),
}

impl Construction {
    pub fn graph(&self) -> &Graph {
        match self {
            Construction::Triangulation(nt) => nt.graph(),
            Construction::Wagner(g) | Construction::Unstructured(g) => g,
            Construction::CliqueSum { graph, .. } => graph,
        }
    }

    /// Builds a family member together with its construction.
    pub fn from_family(family: &Family) -> Result<Construction> {
        match family {
            Family::V8 => Ok(Construction::Wagner(generate(family)?.graph()?)),
            Family::CliqueSum(l, r, k) => {
                let (lraw, rraw) = (generate(l)?, generate(r)?);
                let shared = default_shared(&lraw, &rraw, *k)?;
                let (raw, renaming) = clique_sum(&lraw, &rraw, &shared)?;
                Ok(Construction::CliqueSum {
                    left: Box::new(Construction::from_family(l)?),
                    right: Box::new(Construction::from_family(r)?),
                    renaming,
                    graph: raw.graph()?,
                })
            }
            _ => {
                let raw = generate(family)?;
                match NearTriangulation::validate(&raw) {
                    Ok(nt) if nt.s() == 3 => Ok(Construction::Triangulation(nt)),
                    _ => Ok(Construction::Unstructured(raw.graph()?)),
                }
            }
        }
    }
}

fn excluded_edges(roles: &RoleAssignment, star: Star) -> Vec<Edge> {
    match star {
        Star::Double => {
            let mut es = roles.edges();
            es.sort();
            es
        }
        Star::Triple => Vec::new(),
    }
}

fn build(
    g: &Graph,
    roles: &RoleAssignment,
    star: Star,
    (monomial, coefficient): (ExponentVector, Integer),
    transcript: Vec<Step>,
) -> Certificate {
    Certificate {
        graph_fingerprint: g.fingerprint(),
        outer_cycle: Vec::new(),
        monomial,
        coefficient,
        caps: DegreeCaps::theorem4(g, roles, star),
        roles: roles.clone(),
        excluded: excluded_edges(roles, star),
        transcript,
    }
}

fn finish(
    g: &Graph,
    roles: RoleAssignment,
    witnesses: [(ExponentVector, Integer); 2],
    transcript: Vec<Step>,
    stats: SearchStats,
    opts: &CertifyOptions,
) -> Result<MatchedCertificates> {
    let [w2, w3] = witnesses;
    let double = checked(g, build(g, &roles, Star::Double, w2, transcript.clone()), &opts.expand)?;
    let triple = checked(g, build(g, &roles, Star::Triple, w3, transcript), &opts.expand)?;
    Ok(MatchedCertificates { roles, double, triple, stats })
}

/// First term of each capped expansion under `roles`, if both exist.
fn witnesses(
    g: &Graph,
    roles: &RoleAssignment,
    opts: &CertifyOptions,
) -> Result<Option<[(ExponentVector, Integer); 2]>> {
    let mut out = Vec::with_capacity(2);
    for star in [Star::Double, Star::Triple] {
        let caps = DegreeCaps::theorem4(g, roles, star);
        let ledger = capped_expand_p::<Integer>(g, &caps, &excluded_edges(roles, star), &opts.expand)?;
        match ledger.first() {
            Some((m, c)) => out.push((m.clone(), c.clone())),
            None => return Ok(None),
        }
    }
    Ok(Some(out.try_into().expect("two variants")))
}

/// A matching with monomials of `P_{G-M}` (all exponents at most 3) and
/// `P_G` (at most 3, red at most 4).
pub fn certify_k5free(construction: &Construction, opts: &CertifyOptions) -> Result<MatchedCertificates> {
    let g = construction.graph();
    match construction {
        Construction::Triangulation(nt) => {
            let inner = certify_theorem3(nt, opts)?;
            let o = nt.outer_cycle();
            let (a, b, c) = (o[0], o[1], o[2]);
            // a from ab and ac, b from bc: the only way to reach a^2 b on
            // the triangle when the rest has degree 0 there.
            let sign = selection_sign(a, b) * selection_sign(a, c) * selection_sign(b, c);
            let lift =
                |cert: &Certificate| (cert.monomial.with(a, 2).with(b, 1), cert.coefficient.clone() * sign.clone());
            let mut transcript = vec![Step::CloseTriangle([a, b, c])];
            transcript.extend(inner.double.transcript.iter().cloned());
            let witnesses = [lift(&inner.double), lift(&inner.triple)];
            finish(g, inner.roles, witnesses, transcript, inner.stats, opts)
        }
        Construction::Wagner(_) => {
            let roles = RoleAssignment::empty();
            let w = witnesses(g, &roles, opts)?
                .ok_or_else(|| Error::Internal("the Wagner graph polynomial has no term within caps".into()))?;
            finish(g, roles, w, vec![Step::Wagner], SearchStats::default(), opts)
        }
        Construction::CliqueSum { left, right, renaming, .. } => {
            let mut seeds = Vec::new();
            let lseed = certify_k5free(left, opts).ok().and_then(|r| r.roles.translate(left.graph(), g));
            let rseed = certify_k5free(right, opts).ok().and_then(|r| {
                let map = |v: Vertex| g.lookup(renaming.get(right.graph().name(v))?);
                r.roles.pairs().iter().map(|&(x, y)| Some((map(x)?, map(y)?))).collect::<Option<Vec<_>>>()
            });
            let rseed = rseed.map(RoleAssignment::new);
            if let (Some(l), Some(r)) = (&lseed, &rseed) {
                seeds.push(("combined", l.union(r)));
            }
            seeds.extend(lseed.map(|l| ("left", l)));
            seeds.extend(rseed.map(|r| ("right", r)));
            search(g, seeds, opts)
        }
        Construction::Unstructured(_) => search(g, Vec::new(), opts),
    }
}

fn search(g: &Graph, seeds: Vec<(&'static str, RoleAssignment)>, opts: &CertifyOptions) -> Result<MatchedCertificates> {
    let mut seen = BTreeSet::new();
    let mut stats = SearchStats::default();
    let seeded = seeds.into_iter().chain([("empty", RoleAssignment::empty())]);
    let enumerated = matchings(g, opts.max_candidates).into_iter().map(|m| ("enumerated", m));
    for (index, (seed, roles)) in seeded.chain(enumerated).enumerate() {
        if stats.candidates as usize >= opts.max_candidates {
            break;
        }
        if roles.check_matching(g).is_err() || !seen.insert(roles.clone()) {
            continue;
        }
        stats.candidates += 1;
        if let Some(w) = witnesses(g, &roles, opts)? {
            let transcript = vec![Step::Search { index, seed: seed.to_string() }];
            return finish(g, roles, w, transcript, stats, opts);
        }
        stats.dead_ends += 1;
    }
    Err(Error::Budget(format!("no matching among {} candidates", stats.candidates)))
}

/// Non-empty matchings by increasing size, each edge in both orientations,
/// in a deterministic order; at most `limit` of them.
fn matchings(g: &Graph, limit: usize) -> Vec<RoleAssignment> {
    fn grow(
        edges: &[Edge],
        from: usize,
        size: usize,
        used: &mut BTreeSet<Vertex>,
        cur: &mut Vec<(Vertex, Vertex)>,
        out: &mut Vec<RoleAssignment>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if cur.len() == size {
            out.push(RoleAssignment::new(cur.iter().copied()));
            return;
        }
        for i in from..edges.len() {
            let e = edges[i];
            if used.contains(&e.lo()) || used.contains(&e.hi()) {
                continue;
            }
            used.insert(e.lo());
            used.insert(e.hi());
            for pair in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
                cur.push(pair);
                grow(edges, i + 1, size, used, cur, out, limit);
                cur.pop();
            }
            used.remove(&e.lo());
            used.remove(&e.hi());
        }
    }
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    for size in 1..=g.num_vertices() / 2 {
        let before = out.len();
        grow(&edges, 0, size, &mut BTreeSet::new(), &mut Vec::new(), &mut out, limit);
        if out.len() == before || out.len() >= limit {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matchings_of_a_triangle() {
        let g = generate(&Family::Triangle).unwrap().graph().unwrap();
        // Three edges, two orientations each; no two edges are disjoint.
        assert_eq!(matchings(&g, 100).len(), 6);
        assert_eq!(matchings(&g, 4).len(), 4);
    }

    #[test]
    fn constructions_from_families() {
        assert!(matches!(Construction::from_family(&Family::K4).unwrap(), Construction::Triangulation(_)));
        assert!(matches!(Construction::from_family(&Family::V8).unwrap(), Construction::Wagner(_)));
        assert!(matches!(Construction::from_family(&Family::Wheel(4)).unwrap(), Construction::Unstructured(_)));
        let sum = Family::CliqueSum(Box::new(Family::K4), Box::new(Family::K4), 3);
        let c = Construction::from_family(&sum).unwrap();
        assert_eq!(c.graph(), &generate(&sum).unwrap().graph().unwrap());
    }

    #[test]
    fn wagner_graph() {
        let c = Construction::from_family(&Family::V8).unwrap();
        let r = certify_k5free(&c, &CertifyOptions::default()).unwrap();
        assert!(r.roles.is_empty());
        assert!(r.triple.monomial.iter().all(|(_, e)| (0..=3).contains(&e)));
    }
}
