//! Choosability consequences of a matching, checked directly with the list
//! colouring adversary rather than through the nullstellensatz.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::oracle::{adversarial_choosability, AdversaryOptions, ChoosabilityVerdict};
use crate::planar::{Graph, RoleAssignment};

/// `G - M` coloured from every assignment of 4-lists.
pub fn corollary1(g: &Graph, roles: &RoleAssignment, opts: &AdversaryOptions) -> Result<ChoosabilityVerdict> {
    let reduced = g.remove_edges(&roles.edges());
    let sizes = reduced.vertices().map(|v| (v, 4)).collect();
    adversarial_choosability(&reduced, &sizes, opts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corollary2Report {
    pub verdict: ChoosabilityVerdict,
    /// Vertices given 5 colours: the red vertices.
    pub enlarged: usize,
    pub n: usize,
}

impl Corollary2Report {
    /// `|A| < n/2`.
    pub fn below_half(&self) -> bool {
        2 * self.enlarged < self.n
    }
}

/// `G` coloured from every assignment of 5-lists on the red vertices and
/// 4-lists elsewhere.
pub fn corollary2(g: &Graph, roles: &RoleAssignment, opts: &AdversaryOptions) -> Result<Corollary2Report> {
    let sizes: BTreeMap<_, _> = g.vertices().map(|v| (v, if roles.is_red(v) { 5 } else { 4 })).collect();
    let verdict = adversarial_choosability(g, &sizes, opts)?;
    Ok(Corollary2Report { verdict, enlarged: roles.len(), n: g.num_vertices() })
}
