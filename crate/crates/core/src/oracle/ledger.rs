use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, SparsePolynomial};
use crate::planar::{Edge, Graph};
use crate::scalar::Coefficient;

use super::caps::{CapVariant, DegreeCaps};

pub const LEDGER_HEADER: &str = "atcert-ledger 1";

/// Which polynomial a ledger lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LedgerForm {
    /// Terms of `P` within the caps.
    P,
    /// Nice terms of `Z = Q·R`.
    Z,
    /// Every term of `Z = Q·R`, nice or not.
    ZFull,
}

impl fmt::Display for LedgerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LedgerForm::P => "p",
            LedgerForm::Z => "z",
            LedgerForm::ZFull => "z-full",
        })
    }
}

impl FromStr for LedgerForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(LedgerForm::P),
            "z" => Ok(LedgerForm::Z),
            "z-full" => Ok(LedgerForm::ZFull),
            _ => Err(Error::Parse(format!("unknown ledger form {s:?}"))),
        }
    }
}

/// Result of a capped expansion, tagged with what produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientLedger<C> {
    pub(crate) entries: BTreeMap<ExponentVector, C>,
    pub(crate) graph: Graph,
    pub(crate) caps: DegreeCaps,
    pub(crate) excluded: Vec<Edge>,
    pub(crate) form: LedgerForm,
}

impl<C: Coefficient> CoefficientLedger<C> {
    pub fn entries(&self) -> &BTreeMap<ExponentVector, C> {
        &self.entries
    }

    pub fn into_entries(self) -> BTreeMap<ExponentVector, C> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient(&self, m: &ExponentVector) -> C {
        self.entries.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Canonically first entry.
    pub fn first(&self) -> Option<(&ExponentVector, &C)> {
        self.entries.iter().next()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn fingerprint(&self) -> String {
        self.graph.fingerprint()
    }

    pub fn caps(&self) -> &DegreeCaps {
        &self.caps
    }

    pub fn excluded(&self) -> &[Edge] {
        &self.excluded
    }

    pub fn form(&self) -> LedgerForm {
        self.form
    }

    pub fn to_polynomial(&self) -> SparsePolynomial<C> {
        SparsePolynomial::from_terms(self.entries.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Re-expresses a `P` ledger as the matching `Z` ledger (`m ↦ caps - m`)
    /// and vice versa. Coefficients carry over unchanged.
    pub fn dual(&self) -> Result<CoefficientLedger<C>> {
        let form = match self.form {
            LedgerForm::P => LedgerForm::Z,
            LedgerForm::Z => LedgerForm::P,
            LedgerForm::ZFull => {
                return Err(Error::Precondition("an unpruned Z ledger has no within-caps dual".into()))
            }
        };
        let r = self.caps.monomial();
        Ok(CoefficientLedger {
            entries: self.entries.iter().map(|(m, c)| (r.sub(m), c.clone())).collect(),
            form,
            ..self.clone()
        })
    }

    /// Every entry respects the form's invariant.
    pub fn check(&self) -> Result<()> {
        for (m, c) in &self.entries {
            if c.is_zero() {
                return Err(Error::Internal("zero coefficient stored in ledger".into()));
            }
            let ok = match self.form {
                LedgerForm::P | LedgerForm::Z => self.caps.admits(m),
                LedgerForm::ZFull => true,
            };
            if !ok {
                return Err(Error::Internal(format!("ledger entry {m:?} outside the caps")));
            }
        }
        Ok(())
    }

    pub fn render_monomial(&self, m: &ExponentVector) -> String {
        m.render(&|v| self.graph.name(v).to_string(), " ")
    }

    /// Text export: a header, metadata lines, then `<monomial> <coefficient>`
    /// per entry in canonical order.
    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let excluded = if self.excluded.is_empty() {
            "none".to_string()
        } else {
            self.excluded.iter().map(|&e| g.render_edge(e)).collect::<Vec<_>>().join(" ")
        };
        let mut out = format!(
            "{LEDGER_HEADER}\ngraph: {}\nform: {}\nvariant: {}\ncaps: {}\nexcluded: {excluded}\nterms: {}\n",
            g.fingerprint(),
            self.form,
            self.caps.variant(),
            self.caps.render(g),
            self.entries.len()
        );
        for (m, c) in &self.entries {
            out.push_str(&format!("{} {}\n", self.render_monomial(m), crate::laurent::signed(c)));
        }
        out
    }
}

fn field<'a>(lines: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<&'a str> {
    let line = lines.next().ok_or_else(|| Error::Parse(format!("missing {key} line")))?;
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(": ").or_else(|| r.strip_prefix(':')))
        .ok_or_else(|| Error::Parse(format!("expected {key}: line, found {line:?}")))
}

/// Parses `a^2 c^-1` or `1` against the names of `g`.
pub fn parse_monomial(g: &Graph, s: &str) -> Result<ExponentVector> {
    let s = s.trim();
    if s == "1" {
        return Ok(ExponentVector::zero());
    }
    let mut pairs = Vec::new();
    for factor in s.split(|c: char| c.is_whitespace() || c == '·' || c == '*').filter(|f| !f.is_empty()) {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
            None => (factor, 1),
        };
        pairs.push((g.vertex(name)?, exp));
    }
    let mut seen = std::collections::BTreeSet::new();
    if pairs.iter().any(|(v, _)| !seen.insert(*v)) {
        return Err(Error::Parse(format!("repeated variable in monomial {s:?}")));
    }
    Ok(ExponentVector::from_pairs(pairs))
}

impl<C: Coefficient + FromStr> CoefficientLedger<C> {
    /// Inverse of [`to_text`](Self::to_text) against the graph it was made
    /// from; the fingerprint must match.
    pub fn from_text(text: &str, g: &Graph) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim_end) != Some(LEDGER_HEADER) {
            return Err(Error::Parse(format!("missing header {LEDGER_HEADER:?}")));
        }
        let fp = field(&mut lines, "graph")?;
        if fp != g.fingerprint() {
            return Err(Error::Parse(format!("ledger is for graph {fp}, not {}", g.fingerprint())));
        }
        let form: LedgerForm = field(&mut lines, "form")?.parse()?;
        let variant: CapVariant = field(&mut lines, "variant")?.parse()?;
        let caps = DegreeCaps::parse(g, variant, field(&mut lines, "caps")?)?;
        let excluded = match field(&mut lines, "excluded")? {
            "none" => Vec::new(),
            list => list.split_whitespace().map(|e| g.parse_edge(e)).collect::<Result<_>>()?,
        };
        let count: usize = field(&mut lines, "terms")?.parse().map_err(|_| Error::Parse("bad term count".into()))?;
        let mut entries = BTreeMap::new();
        for line in lines {
            let (m, c) =
                line.trim_end().rsplit_once(' ').ok_or_else(|| Error::Parse(format!("bad ledger line {line:?}")))?;
            let c: C = c.parse().map_err(|_| Error::Parse(format!("bad coefficient in {line:?}")))?;
            if entries.insert(parse_monomial(g, m)?, c).is_some() {
                return Err(Error::Parse(format!("duplicate monomial in {line:?}")));
            }
        }
        if entries.len() != count {
            return Err(Error::Parse(format!("expected {count} terms, found {}", entries.len())));
        }
        let ledger = CoefficientLedger { entries, graph: g.clone(), caps, excluded, form };
        ledger.check().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(ledger)
    }
}
