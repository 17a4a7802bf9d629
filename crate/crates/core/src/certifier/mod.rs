//! Certificate constructions.
//!
//! * [`certify_theorem1`]: the unmatched induction (chord split, peel with
//!   the lifting lemma) producing a monomial of `P_{G-e}` within
//!   `0/0/2/4` caps.
//! * [`certify_theorem2`]: matched search producing one matching and two
//!   monomials, one for `P_{G-e-M}` and one for `P_{G-e}`.
//! * [`certify_theorem3`]: the outer-triangle form, by deleting the apex.
//! * [`certify_k5free`]: oracle-backed search on clique-sum constructions.
//!
//! Every certificate is checked with [`verify_certificate`] before it is
//! returned.

mod certificate;
mod corollary;
mod k5free;
mod lemma;
mod matched;
mod theorem1;

pub use certificate::{
    expected_excluded, parse_roles, verify_certificate, BranchChoice, BranchKind, Certificate, Check, LemmaPath, Step,
    Verdict, CERTIFICATE_HEADER,
};
pub use corollary::{corollary1, corollary2, Corollary2Report};
pub use k5free::{certify_k5free, Construction};
pub use lemma::{lemma1_witness, lemma1_witness_with, CoefficientLookup, LemmaWitness};
pub use matched::{certify_theorem2, certify_theorem3, MatchedCertificates, SearchStats};
pub use theorem1::certify_theorem1;

use crate::error::{Error, Result};
use crate::laurent::Vertex;
use crate::oracle::ExpandOptions;
use crate::planar::Graph;
use crate::scalar::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub expand: ExpandOptions,
    /// Matchings tried by the `K5`-minor-free search before giving up.
    pub max_candidates: usize,
    /// Nodes visited by the matched search before giving up.
    pub max_search_nodes: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { expand: ExpandOptions::default(), max_candidates: 10_000, max_search_nodes: 1_000_000 }
    }
}

impl CertifyOptions {
    pub fn with_expand(mut self, expand: ExpandOptions) -> Self {
        self.expand = expand;
        self
    }
}

/// Sign of picking `chosen` from the factor `(lo - hi)` of the edge
/// `chosen other`.
pub(crate) fn selection_sign(chosen: Vertex, other: Vertex) -> Integer {
    Integer::from(if chosen < other { 1 } else { -1 })
}

/// Re-checks a freshly built certificate; a failure here is a bug.
pub(crate) fn checked(g: &Graph, cert: Certificate, opts: &ExpandOptions) -> Result<Certificate> {
    let verdict = verify_certificate(g, &cert, opts);
    if let Some(budget) = verdict.failures().find(|c| c.detail.starts_with("size guard exceeded")) {
        return Err(Error::Budget(budget.detail.clone()));
    }
    if !verdict.passed() {
        let failures: Vec<String> = verdict.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        return Err(Error::Internal(format!("constructed certificate failed verification: {}", failures.join("; "))));
    }
    Ok(cert)
}
