//! Matched search: one matching serving both the deleted-matching and the
//! relaxed-red statements.
//!
//! The search follows the induction. A triangle is solved by the empty
//! matching; a chord splits the instance and solutions of the two halves
//! are combined; a peel extends each solution of `G - v` either without
//! touching the matching or by matching `v` (green) with a non-green link
//! vertex `y` (red). Every extension is kept only if both capped
//! expansions of the current instance have a term, and the search
//! backtracks into the sub-instance when no extension survives.

use std::cell::Cell;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::laurent::ExponentVector;
use crate::oracle::{capped_expand_p, DegreeCaps, Star};
use crate::planar::{Edge, NearTriangulation, RoleAssignment};
use crate::scalar::Integer;

use super::certificate::{BranchChoice, BranchKind, Certificate, Step};
use super::{checked, selection_sign, CertifyOptions};

/// Counters describing how much searching a certificate took.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Sub-instances entered.
    pub nodes: u64,
    /// Capped-expansion goodness tests run.
    pub goodness_checks: u64,
    /// Extensions rejected because an expansion had no term.
    pub dead_ends: u64,
    /// Accepted extensions later abandoned because an enclosing instance
    /// could not be completed.
    pub backtracks: u64,
    /// Candidate matchings tried by the `K5`-minor-free search.
    pub candidates: u64,
}

/// A matching with its two certificates: the deleted-matching form
/// (`double`) and the relaxed-red form (`triple`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedCertificates {
    pub roles: RoleAssignment,
    pub double: Certificate,
    pub triple: Certificate,
    pub stats: SearchStats,
}

impl MatchedCertificates {
    pub fn certificates(&self) -> [&Certificate; 2] {
        [&self.double, &self.triple]
    }
}

struct Partial {
    roles: RoleAssignment,
    transcript: Vec<Step>,
}

type Witness = (ExponentVector, Integer);

struct Search<'a> {
    root: &'a NearTriangulation,
    opts: &'a CertifyOptions,
    nodes: Cell<u64>,
    goodness_checks: Cell<u64>,
    dead_ends: Cell<u64>,
    backtracks: Cell<u64>,
}

type Continuation<'k> = dyn FnMut(Partial) -> Result<ControlFlow<()>> + 'k;

fn bump(c: &Cell<u64>) {
    c.set(c.get() + 1);
}

impl<'a> Search<'a> {
    fn new(root: &'a NearTriangulation, opts: &'a CertifyOptions) -> Self {
        Search {
            root,
            opts,
            nodes: Cell::new(0),
            goodness_checks: Cell::new(0),
            dead_ends: Cell::new(0),
            backtracks: Cell::new(0),
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.get(),
            goodness_checks: self.goodness_checks.get(),
            dead_ends: self.dead_ends.get(),
            backtracks: self.backtracks.get(),
            candidates: 0,
        }
    }

    /// First terms of both capped expansions, if both exist.
    fn witnesses(&self, g: &NearTriangulation, roles: &RoleAssignment) -> Result<Option<[Witness; 2]>> {
        bump(&self.goodness_checks);
        let mut out = Vec::with_capacity(2);
        for star in [Star::Double, Star::Triple] {
            let caps = DegreeCaps::theorem2(g, roles, star);
            let excluded = excluded_edges(&[g.distinguished_edge()], roles, star);
            let ledger = capped_expand_p::<Integer>(g.graph(), &caps, &excluded, &self.opts.expand)?;
            match ledger.first() {
                Some((m, c)) => out.push((m.clone(), c.clone())),
                None => return Ok(None),
            }
        }
        Ok(Some(out.try_into().expect("two variants")))
    }

    fn good(&self, g: &NearTriangulation, roles: &RoleAssignment) -> Result<bool> {
        let ok = self.witnesses(g, roles)?.is_some();
        if !ok {
            bump(&self.dead_ends);
        }
        Ok(ok)
    }

    fn offer(&self, k: &mut Continuation<'_>, partial: Partial) -> Result<ControlFlow<()>> {
        let flow = k(partial)?;
        if flow.is_continue() {
            bump(&self.backtracks);
        }
        Ok(flow)
    }

    /// Feeds every surviving solution of `g` to `k` until `k` breaks.
    fn solve(&self, g: &NearTriangulation, k: &mut Continuation<'_>) -> Result<ControlFlow<()>> {
        bump(&self.nodes);
        if self.nodes.get() > self.opts.max_search_nodes {
            return Err(Error::Budget(format!("matched search exceeded {} nodes", self.opts.max_search_nodes)));
        }
        let o = g.outer_cycle();
        if g.is_triangle() {
            return k(Partial { roles: RoleAssignment::empty(), transcript: vec![Step::Base([o[0], o[1], o[2]])] });
        }

        if let Some(f) = g.find_chord() {
            let (g1, g2) = g.split_at_chord(f)?;
            return self.solve(&g1, &mut |p1: Partial| {
                self.solve(&g2, &mut |p2: Partial| {
                    let roles = p1.roles.union(&p2.roles);
                    if !self.good(g, &roles)? {
                        return Ok(ControlFlow::Continue(()));
                    }
                    let mut transcript = vec![Step::Chord(f)];
                    transcript.extend(p1.transcript.iter().cloned());
                    transcript.extend(p2.transcript);
                    self.offer(k, Partial { roles, transcript })
                })
            });
        }

        let (reduced, step) = g.peel()?;
        let v = step.removed;
        let (a, b) = (g.a(), g.b());
        let mut ys = step.link.clone();
        ys.sort();
        self.solve(&reduced, &mut |p: Partial| {
            let eligible = ys
                .iter()
                .copied()
                .filter(|&y| !p.roles.is_matched(y) && y != a && y != b && !self.root.is_outer(y) && !g.is_outer(y));
            let branches = std::iter::once(BranchKind::NoMatch).chain(eligible.map(BranchKind::Match));
            for kind in branches {
                let roles = match kind {
                    BranchKind::NoMatch => p.roles.clone(),
                    BranchKind::Match(y) => p.roles.with_pair(y, v),
                };
                if !self.good(g, &roles)? {
                    continue;
                }
                let mut transcript = vec![Step::Branch(BranchChoice { peeled: v, kind })];
                transcript.extend(p.transcript.iter().cloned());
                if self.offer(k, Partial { roles, transcript })?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            Ok(ControlFlow::Continue(()))
        })
    }
}

fn excluded_edges(frame: &[Edge], roles: &RoleAssignment, star: Star) -> Vec<Edge> {
    let mut out = frame.to_vec();
    if star == Star::Double {
        out.extend(roles.edges());
    }
    out.sort();
    out
}

struct Found {
    roles: RoleAssignment,
    witnesses: [Witness; 2],
    transcript: Vec<Step>,
    stats: SearchStats,
}

fn search(g: &NearTriangulation, opts: &CertifyOptions) -> Result<Found> {
    let s = Search::new(g, opts);
    let mut found: Option<(RoleAssignment, Vec<Step>)> = None;
    let flow = s.solve(g, &mut |p: Partial| {
        found = Some((p.roles, p.transcript));
        Ok(ControlFlow::Break(()))
    })?;
    let (roles, transcript) = match (flow, found) {
        (ControlFlow::Break(()), Some(f)) => f,
        _ => return Err(Error::Internal("matched search exhausted every branch".into())),
    };
    let witnesses =
        s.witnesses(g, &roles)?.ok_or_else(|| Error::Internal("accepted matching lost its witnesses".into()))?;
    Ok(Found { roles, witnesses, transcript, stats: s.stats() })
}

/// One matching satisfying both the deleted-matching caps and the
/// relaxed-red caps on a near-triangulation.
pub fn certify_theorem2(g: &NearTriangulation, opts: &CertifyOptions) -> Result<MatchedCertificates> {
    let found = search(g, opts)?;
    let frame = [g.distinguished_edge()];
    let [(m2, c2), (m3, c3)] = found.witnesses;
    let build = |star: Star, monomial: ExponentVector, coefficient: Integer| Certificate {
        graph_fingerprint: g.graph().fingerprint(),
        outer_cycle: g.outer_cycle().to_vec(),
        monomial,
        coefficient,
        caps: DegreeCaps::theorem2(g, &found.roles, star),
        roles: found.roles.clone(),
        excluded: excluded_edges(&frame, &found.roles, star),
        transcript: found.transcript.clone(),
    };
    let double = checked(g.graph(), build(Star::Double, m2, c2), &opts.expand)?;
    let triple = checked(g.graph(), build(Star::Triple, m3, c3), &opts.expand)?;
    Ok(MatchedCertificates { roles: found.roles, double, triple, stats: found.stats })
}

/// Outer-triangle form: the whole triangle at degree 0 and excluded, every
/// other vertex at most 3 (red at most 4 in the relaxed form).
pub fn certify_theorem3(g: &NearTriangulation, opts: &CertifyOptions) -> Result<MatchedCertificates> {
    if g.s() != 3 {
        return Err(Error::Precondition(format!("outer cycle has length {}, not 3", g.s())));
    }
    let o = g.outer_cycle();
    let (a, b, c) = (o[0], o[1], o[2]);
    let frame = vec![Edge::new(a, b), Edge::new(b, c), Edge::new(a, c)];

    let (roles, lifted, mut transcript, stats) = if g.is_triangle() {
        let one = (ExponentVector::zero(), Integer::from(1));
        (RoleAssignment::empty(), [one.clone(), one], Vec::new(), SearchStats::default())
    } else {
        // Delete c; each of its remaining edges contributes its other end.
        let (reduced, step) = g.peel()?;
        let found = search(&reduced, opts)?;
        let lift = |(m, coef): &Witness| {
            step.link
                .iter()
                .fold((m.clone(), coef.clone()), |(m, coef), &w| (m.with(w, 1), coef * selection_sign(w, c)))
        };
        let lifted = [lift(&found.witnesses[0]), lift(&found.witnesses[1])];
        (found.roles, lifted, found.transcript, found.stats)
    };
    transcript.insert(0, Step::DeleteApex(c));

    let [(m2, c2), (m3, c3)] = lifted;
    let build = |star: Star, monomial: ExponentVector, coefficient: Integer| Certificate {
        graph_fingerprint: g.graph().fingerprint(),
        outer_cycle: o.to_vec(),
        monomial,
        coefficient,
        caps: DegreeCaps::theorem3(g, &roles, star),
        roles: roles.clone(),
        excluded: excluded_edges(&frame, &roles, star),
        transcript: transcript.clone(),
    };
    let double = checked(g.graph(), build(Star::Double, m2, c2), &opts.expand)?;
    let triple = checked(g.graph(), build(Star::Triple, m3, c3), &opts.expand)?;
    Ok(MatchedCertificates { roles, double, triple, stats })
}
