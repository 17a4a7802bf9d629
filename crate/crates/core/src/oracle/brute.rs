//! Reference expansion by enumerating all `2^|E|` endpoint selections.
//!
//! Deliberately naive: no pruning, no merging until the end. It is the
//! yardstick the pruned kernel and the Laurent engine are tested against.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, FactorMode, SparsePolynomial, Vertex};
use crate::planar::Edge;
use crate::scalar::Coefficient;

/// Largest edge count accepted; `2^24` selections is already slow.
pub const MAX_BRUTE_EDGES: usize = 24;

/// Expands `∏ (lo - hi)` (plain) or `∏ (1/lo - 1/hi)` (reciprocal) by
/// summing over every choice of one endpoint per edge.
pub fn full_expansion<C: Coefficient>(edges: &[Edge], mode: FactorMode) -> Result<SparsePolynomial<C>> {
    if edges.len() > MAX_BRUTE_EDGES {
        return Err(Error::Budget(format!("{} edges exceed the brute-force limit of {MAX_BRUTE_EDGES}", edges.len())));
    }
    let unit = match mode {
        FactorMode::Plain => 1,
        FactorMode::Reciprocal => -1,
    };
    let mut acc: BTreeMap<ExponentVector, C> = BTreeMap::new();
    for mask in 0u64..(1u64 << edges.len()) {
        let mut exps: BTreeMap<Vertex, i32> = BTreeMap::new();
        let mut negative = false;
        for (i, e) in edges.iter().enumerate() {
            // Bit set: take the higher endpoint, which carries the minus sign.
            let v = if mask >> i & 1 == 1 {
                negative = !negative;
                e.hi()
            } else {
                e.lo()
            };
            *exps.entry(v).or_default() += unit;
        }
        let c = if negative { -C::one() } else { C::one() };
        let m = ExponentVector::from_pairs(exps);
        let slot = acc.entry(m).or_insert_with(C::zero);
        *slot = slot.clone() + c;
    }
    Ok(SparsePolynomial::from_terms(acc))
}
