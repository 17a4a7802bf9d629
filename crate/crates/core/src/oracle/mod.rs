//! Independent ground truth: capped expansions of `P` and `Z`, exact and
//! modular coefficient queries, brute-force reference expansion, and list
//! colouring for the choosability checks.

mod brute;
mod caps;
mod coloring;
mod kernel;
mod ledger;

use std::collections::BTreeSet;

pub use brute::{full_expansion, MAX_BRUTE_EDGES};
pub use caps::{CapVariant, DegreeCaps, Star};
pub use coloring::{
    adversarial_choosability, solve_list_coloring, AdversaryOptions, ChoosabilityVerdict, ListAssignment,
};
pub use kernel::{EdgeOrder, ExpandOptions, DEFAULT_MAX_TERMS};
pub use ledger::{parse_monomial, CoefficientLedger, LedgerForm, LEDGER_HEADER};

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, FactorMode, SparsePolynomial, Vertex};
use crate::planar::{Edge, Graph};
use crate::scalar::{is_prime, Coefficient, Integer};

/// Primes used by default in field-robustness reports.
pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// `E(g)` minus `excluded`, which must be edges of `g`.
pub fn remaining_edges(g: &Graph, excluded: &[Edge]) -> Result<Vec<Edge>> {
    let excluded: BTreeSet<Edge> = excluded.iter().copied().collect();
    if let Some(e) = excluded.iter().find(|e| !g.has_edge(e.lo(), e.hi())) {
        return Err(Error::Precondition(format!("excluded pair {} is not an edge", g.render_edge(*e))));
    }
    Ok(g.edges().filter(|e| !excluded.contains(e)).collect())
}

fn sorted(excluded: &[Edge]) -> Vec<Edge> {
    excluded.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Every term of `P_{g - excluded}` within `caps`, with exact coefficients.
pub fn capped_expand_p<C: Coefficient>(
    g: &Graph,
    caps: &DegreeCaps,
    excluded: &[Edge],
    opts: &ExpandOptions,
) -> Result<CoefficientLedger<C>> {
    let edges = remaining_edges(g, excluded)?;
    let vertices: Vec<Vertex> = g.vertices().collect();
    let entries = kernel::expand_within_caps(&vertices, &|v| caps.get(v), &edges, opts)?;
    Ok(CoefficientLedger {
        entries,
        graph: g.clone(),
        caps: caps.clone(),
        excluded: sorted(excluded),
        form: LedgerForm::P,
    })
}

/// Nice terms of `Z = Q_{g - excluded} · R`, built with the Laurent engine:
/// start from `R`, multiply reciprocal edge factors one at a time and drop
/// non-nice terms after each (exponents only fall from then on).
pub fn capped_expand_z<C: Coefficient>(
    g: &Graph,
    caps: &DegreeCaps,
    excluded: &[Edge],
    opts: &ExpandOptions,
) -> Result<CoefficientLedger<C>> {
    let mut edges = remaining_edges(g, excluded)?;
    // Low caps first: those terms die soonest.
    if opts.order != EdgeOrder::AsGiven {
        edges.sort_by_key(|e| (caps.get(e.lo()).min(caps.get(e.hi())), *e));
    }
    if opts.order == EdgeOrder::Reversed {
        edges.reverse();
    }
    let mut z = SparsePolynomial::monomial(caps.monomial(), C::one());
    for e in &edges {
        z = z.mul_edge_factor(e.lo(), e.hi(), FactorMode::Reciprocal)?.prune_nonnice();
        if z.len() > opts.max_terms {
            return Err(Error::Budget(format!("{} live terms (limit {})", z.len(), opts.max_terms)));
        }
    }
    Ok(CoefficientLedger {
        entries: z.terms().map(|(m, c)| (m.clone(), c.clone())).collect(),
        graph: g.clone(),
        caps: caps.clone(),
        excluded: sorted(excluded),
        form: LedgerForm::Z,
    })
}

/// All of `Z = Q_{g - excluded} · R` with no pruning.
pub fn laurent_z<C: Coefficient>(
    g: &Graph,
    caps: &DegreeCaps,
    excluded: &[Edge],
    opts: &ExpandOptions,
) -> Result<CoefficientLedger<C>> {
    let edges = remaining_edges(g, excluded)?;
    let mut z = SparsePolynomial::monomial(caps.monomial(), C::one());
    for e in &edges {
        z = z.mul_edge_factor(e.lo(), e.hi(), FactorMode::Reciprocal)?;
        if z.len() > opts.max_terms {
            return Err(Error::Budget(format!("{} live terms (limit {})", z.len(), opts.max_terms)));
        }
    }
    Ok(CoefficientLedger {
        entries: z.terms().map(|(m, c)| (m.clone(), c.clone())).collect(),
        graph: g.clone(),
        caps: caps.clone(),
        excluded: sorted(excluded),
        form: LedgerForm::ZFull,
    })
}

/// Exact coefficient of `m` in `P_{g - excluded}`; zero when absent.
pub fn coefficient(g: &Graph, excluded: &[Edge], m: &ExponentVector, opts: &ExpandOptions) -> Result<Integer> {
    coefficient_in::<Integer>(g, excluded, m, opts)
}

/// [`coefficient`] over any coefficient ring.
pub fn coefficient_in<C: Coefficient>(
    g: &Graph,
    excluded: &[Edge],
    m: &ExponentVector,
    opts: &ExpandOptions,
) -> Result<C> {
    if m.support().any(|v| !g.contains(v)) {
        return Ok(C::zero());
    }
    let caps = DegreeCaps::exact(g, m)?;
    Ok(capped_expand_p::<C>(g, &caps, excluded, opts)?.coefficient(m))
}

/// The coefficient of `m` reduced into `[0, p)`.
pub fn coefficient_mod(g: &Graph, excluded: &[Edge], m: &ExponentVector, p: u64, opts: &ExpandOptions) -> Result<u64> {
    check_prime(p)?;
    Ok(coefficient(g, excluded, m, opts)?.rem_euclid(p))
}

pub fn check_prime(p: u64) -> Result<()> {
    if p > 1 << 31 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Residue of an exact coefficient modulo one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModStatus {
    pub prime: u64,
    pub residue: u64,
}

impl ModStatus {
    pub fn nonzero(&self) -> bool {
        self.residue != 0
    }

    pub fn render(&self) -> String {
        let word = if self.nonzero() { "nonzero" } else { "zero" };
        format!("mod {}: {word} ({})", self.prime, self.residue)
    }
}

/// Residues of `c` for each prime in `primes`.
pub fn mod_report(c: &Integer, primes: &[u64]) -> Result<Vec<ModStatus>> {
    primes
        .iter()
        .map(|&p| {
            check_prime(p)?;
            Ok(ModStatus { prime: p, residue: c.rem_euclid(p) })
        })
        .collect()
}
