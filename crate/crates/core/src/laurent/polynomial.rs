use std::collections::BTreeMap;
use std::fmt;

use super::exponent::{is_nice, ExponentVector, Vertex};
use crate::error::Error;
use crate::scalar::Coefficient;

/// Which Laurent factor an edge contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    /// `(u - v)`, a factor of the graph polynomial.
    Plain,
    /// `(1/u - 1/v)`, a factor of the modified polynomial.
    Reciprocal,
}

/// Finite sum of Laurent monomials with nonzero coefficients.
///
/// The empty polynomial is zero; [`SparsePolynomial::one`] is the empty
/// product of edge factors.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial<C> {
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Coefficient> Default for SparsePolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> SparsePolynomial<C> {
    pub fn zero() -> Self {
        SparsePolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(ExponentVector::zero(), C::one())
    }

    pub fn monomial(m: ExponentVector, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ExponentVector, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: ExponentVector, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coefficient(&self, m: &ExponentVector) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SparsePolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact distributive product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.add(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiplies every term by the monomial `c·m`.
    pub fn scale(&self, m: &ExponentVector, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.add(m), v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Multiplies by `(u - v)` or `(1/u - 1/v)`. The caller picks the
    /// orientation; the graph builders always pass ascending ids.
    pub fn mul_edge_factor(&self, u: Vertex, v: Vertex, mode: FactorMode) -> Result<Self, Error> {
        if u == v {
            return Err(Error::DegenerateEdge(format!("{u}")));
        }
        let e = match mode {
            FactorMode::Plain => 1,
            FactorMode::Reciprocal => -1,
        };
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.with(u, e), c.clone());
            out.add_term(m.with(v, e), -c.clone());
        }
        Ok(out)
    }

    /// Drops every term with a negative exponent.
    ///
    /// Only meaningful when all factors still to be multiplied can lower
    /// exponents but never raise them: a term that is already not nice can
    /// then never become nice.
    pub fn prune_nonnice(&self) -> Self {
        self.nice_terms()
    }

    pub fn nice_terms(&self) -> Self {
        SparsePolynomial {
            terms: self.terms.iter().filter(|(m, _)| is_nice(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Has at least one nice monomial.
    pub fn is_good(&self) -> bool {
        self.terms.keys().any(is_nice)
    }

    /// `Some(d)` when every term has total degree `d`; the zero polynomial
    /// reports `None`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(ExponentVector::total_degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SparsePolynomial<D> {
        SparsePolynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Debug rendering `±k·a^2·c^-1`, terms in canonical order.
    pub fn render(&self, name: &dyn Fn(Vertex) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let coeff = signed(c);
                if m.is_zero() {
                    coeff
                } else {
                    format!("{}·{}", coeff, m.render(name, "·"))
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl<C: Coefficient> fmt::Debug for SparsePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|v| v.to_string()))
    }
}

/// Coefficient with an explicit leading sign.
pub(crate) fn signed<C: fmt::Display>(c: &C) -> String {
    let s = c.to_string();
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

/// Free functions mirroring the operation names used across the crate.
pub fn mul<C: Coefficient>(p: &SparsePolynomial<C>, q: &SparsePolynomial<C>) -> SparsePolynomial<C> {
    p.mul(q)
}

pub fn prune_nonnice<C: Coefficient>(p: &SparsePolynomial<C>) -> SparsePolynomial<C> {
    p.prune_nonnice()
}

pub fn is_good<C: Coefficient>(p: &SparsePolynomial<C>) -> bool {
    p.is_good()
}

pub fn nice_terms<C: Coefficient>(p: &SparsePolynomial<C>) -> SparsePolynomial<C> {
    p.nice_terms()
}

pub fn mul_edge_factor<C: Coefficient>(
    p: &SparsePolynomial<C>,
    u: Vertex,
    v: Vertex,
    mode: FactorMode,
) -> Result<SparsePolynomial<C>, Error> {
    p.mul_edge_factor(u, v, mode)
}

/// Product of edge factors in the given mode, starting from `1`.
pub fn edge_product<C: Coefficient>(
    edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    mode: FactorMode,
) -> Result<SparsePolynomial<C>, Error> {
    edges.into_iter().try_fold(SparsePolynomial::one(), |p, (u, v)| p.mul_edge_factor(u, v, mode))
}

impl<C: Coefficient> SparsePolynomial<C> {
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&ExponentVector::zero()).is_some_and(|c| c.is_one())
    }
}
