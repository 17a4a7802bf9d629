//! Constructive witness for the peeling step.
//!
//! Given a polynomial `U` free of `v` with a term `M`, the product
//! `U·(t + x_1 + … + x_k - v)·(x_1⋯x_k)/t` has a nonvanishing monomial at
//! least as nice as `M` with one more power of each `x_i`, up to one
//! exception that is traded for a `v`:
//!
//! * `M·t` in `U·(t + Σx - v)` has coefficient `c(M) + Σ c(M·t/x_i)`; if
//!   that is nonzero, `M·∏x` is the witness.
//! * Otherwise some `N = M·t/x_i` is a term of `U`, and `N·v` can only come
//!   from `N·(-v)`, so `N·v·∏x/t` has coefficient `-c(N)`.

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, SparsePolynomial, Vertex};
use crate::scalar::Coefficient;

use super::certificate::LemmaPath;

/// Coefficient access to a polynomial that may never be materialised.
pub trait CoefficientLookup<C> {
    fn lookup(&self, m: &ExponentVector) -> Result<C>;
}

impl<C: Coefficient> CoefficientLookup<C> for SparsePolynomial<C> {
    fn lookup(&self, m: &ExponentVector) -> Result<C> {
        Ok(self.coefficient(m))
    }
}

impl<C, F: Fn(&ExponentVector) -> Result<C>> CoefficientLookup<C> for F {
    fn lookup(&self, m: &ExponentVector) -> Result<C> {
        self(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaWitness<C> {
    /// Monomial of `U·(t + Σx - v)·∏x/t`.
    pub monomial: ExponentVector,
    /// The same monomial before the `∏x/t` scaling, a term of
    /// `U·(t + Σx - v)`.
    pub unscaled: ExponentVector,
    pub coefficient: C,
    pub path: LemmaPath,
}

fn check_variables(t: Vertex, xs: &[Vertex], v: Vertex) -> Result<()> {
    let mut all = vec![t, v];
    all.extend_from_slice(xs);
    let n = all.len();
    all.sort();
    all.dedup();
    if all.len() != n {
        return Err(Error::Precondition("t, the x's and v must be distinct variables".into()));
    }
    Ok(())
}

/// Witness for a materialised `u`; checks that `m` is a term and that `v`
/// does not occur.
pub fn lemma1_witness<C: Coefficient>(
    u: &SparsePolynomial<C>,
    m: &ExponentVector,
    t: Vertex,
    xs: &[Vertex],
    v: Vertex,
) -> Result<LemmaWitness<C>> {
    if u.terms().any(|(n, _)| n.get(v) != 0) {
        return Err(Error::Precondition(format!("{v} occurs in u")));
    }
    lemma1_witness_with(u, m, t, xs, v)
}

/// Witness using only coefficient queries on `u`, which must not involve
/// `v`; the caller vouches for that.
pub fn lemma1_witness_with<C: Coefficient, L: CoefficientLookup<C> + ?Sized>(
    u: &L,
    m: &ExponentVector,
    t: Vertex,
    xs: &[Vertex],
    v: Vertex,
) -> Result<LemmaWitness<C>> {
    check_variables(t, xs, v)?;
    let cm = u.lookup(m)?;
    if cm.is_zero() {
        return Err(Error::Precondition("m is not a term of u".into()));
    }
    if m.get(v) != 0 {
        return Err(Error::Precondition(format!("{v} occurs in m")));
    }
    let scale = |w: &ExponentVector| xs.iter().fold(w.with(t, -1), |acc, &x| acc.with(x, 1));

    let candidate = m.with(t, 1);
    let mut total = cm;
    let mut shifted = Vec::with_capacity(xs.len());
    for &x in xs {
        let n = candidate.with(x, -1);
        let c = u.lookup(&n)?;
        total = total + c.clone();
        shifted.push((x, n, c));
    }
    if !total.is_zero() {
        return Ok(LemmaWitness {
            monomial: scale(&candidate),
            unscaled: candidate,
            coefficient: total,
            path: LemmaPath::Candidate,
        });
    }
    let (x, n, c) = shifted
        .into_iter()
        .find(|(_, _, c)| !c.is_zero())
        .ok_or_else(|| Error::Internal("candidate cancelled without a shifted term".into()))?;
    let unscaled = n.with(v, 1);
    Ok(LemmaWitness { monomial: scale(&unscaled), unscaled, coefficient: -c, path: LemmaPath::Fallback(x) })
}
