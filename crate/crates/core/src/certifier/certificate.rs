use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, Vertex};
use crate::oracle::{self, parse_monomial, CapVariant, DegreeCaps, ExpandOptions, ModStatus, Star, DEFAULT_PRIMES};
use crate::planar::{Edge, Graph, NearTriangulation, RoleAssignment};
use crate::scalar::Integer;

pub const CERTIFICATE_HEADER: &str = "atcert-certificate 1";

/// How a peel step was resolved in the matched search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchKind {
    NoMatch,
    /// `v` becomes green, `y` red.
    Match(Vertex),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BranchChoice {
    pub peeled: Vertex,
    pub kind: BranchKind,
}

/// Which of the two witnesses of the lifting lemma was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaPath {
    /// `M·t` survived.
    Candidate,
    /// `M·t` cancelled; the `N·v` witness through this `x`.
    Fallback(Vertex),
}

/// One line of a certificate transcript.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Base([Vertex; 3]),
    Chord(Edge),
    Peel {
        removed: Vertex,
        t: Vertex,
        path: LemmaPath,
    },
    Branch(BranchChoice),
    /// The third outer-triangle vertex deleted before a matched run.
    DeleteApex(Vertex),
    /// The outer triangle's edges multiplied back in.
    CloseTriangle([Vertex; 3]),
    Wagner,
    /// Oracle search over matchings; `index` is the winning candidate.
    Search {
        index: usize,
        seed: String,
    },
}

impl Step {
    pub fn render(&self, g: &Graph) -> String {
        let n = |v: &Vertex| g.name(*v).to_string();
        match self {
            Step::Base(t) => format!("base {} {} {}", n(&t[0]), n(&t[1]), n(&t[2])),
            Step::Chord(f) => format!("chord {}", g.render_edge(*f)),
            Step::Peel { removed, t, path } => {
                let path = match path {
                    LemmaPath::Candidate => "candidate".to_string(),
                    LemmaPath::Fallback(x) => format!("fallback:{}", n(x)),
                };
                format!("peel v={} t={} witness={path}", n(removed), n(t))
            }
            Step::Branch(b) => match b.kind {
                BranchKind::NoMatch => format!("peel v={} no_match", n(&b.peeled)),
                BranchKind::Match(y) => format!("peel v={} match={}", n(&b.peeled), n(&y)),
            },
            Step::DeleteApex(c) => format!("delete-apex {}", n(c)),
            Step::CloseTriangle(t) => format!("close-triangle {} {} {}", n(&t[0]), n(&t[1]), n(&t[2])),
            Step::Wagner => "wagner".to_string(),
            Step::Search { index, seed } => format!("search candidate={index} seed={seed}"),
        }
    }

    pub fn parse<'a>(g: &Graph, line: &'a str) -> Result<Step> {
        let bad = || Error::Parse(format!("bad transcript line {line:?}"));
        let words: Vec<&str> = line.split_whitespace().collect();
        fn kv<'w>(w: &'w str, key: &str) -> Option<&'w str> {
            w.strip_prefix(key).and_then(|r| r.strip_prefix('='))
        }
        let kv = |w: &'a str, key: &str| kv(w, key).ok_or_else(bad);
        let tri = |w: &[&str]| -> Result<[Vertex; 3]> {
            match w {
                [x, y, z] => Ok([g.vertex(x)?, g.vertex(y)?, g.vertex(z)?]),
                _ => Err(bad()),
            }
        };
        Ok(match words.as_slice() {
            ["base", rest @ ..] => Step::Base(tri(rest)?),
            ["chord", f] => Step::Chord(g.parse_edge(f)?),
            ["peel", v, "no_match"] => {
                Step::Branch(BranchChoice { peeled: g.vertex(kv(v, "v")?)?, kind: BranchKind::NoMatch })
            }
            ["peel", v, m] if m.starts_with("match=") => Step::Branch(BranchChoice {
                peeled: g.vertex(kv(v, "v")?)?,
                kind: BranchKind::Match(g.vertex(kv(m, "match")?)?),
            }),
            ["peel", v, t, w] => {
                let path = match kv(w, "witness")? {
                    "candidate" => LemmaPath::Candidate,
                    other => LemmaPath::Fallback(g.vertex(other.strip_prefix("fallback:").ok_or_else(bad)?)?),
                };
                Step::Peel { removed: g.vertex(kv(v, "v")?)?, t: g.vertex(kv(t, "t")?)?, path }
            }
            ["delete-apex", c] => Step::DeleteApex(g.vertex(c)?),
            ["close-triangle", rest @ ..] => Step::CloseTriangle(tri(rest)?),
            ["wagner"] => Step::Wagner,
            ["search", i, s] => Step::Search {
                index: kv(i, "candidate")?.parse().map_err(|_| bad())?,
                seed: kv(s, "seed")?.to_string(),
            },
            _ => return Err(bad()),
        })
    }
}

/// A nonvanishing monomial within caps, with everything needed to re-check
/// it against the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub graph_fingerprint: String,
    /// Oriented outer cycle `a, b, …` for the planar statements; empty for
    /// the `K5`-minor-free statement.
    pub outer_cycle: Vec<Vertex>,
    pub monomial: ExponentVector,
    pub coefficient: Integer,
    pub caps: DegreeCaps,
    pub roles: RoleAssignment,
    pub excluded: Vec<Edge>,
    pub transcript: Vec<Step>,
}

impl Certificate {
    pub fn variant(&self) -> CapVariant {
        self.caps.variant()
    }

    pub fn mod_status(&self) -> Vec<ModStatus> {
        oracle::mod_report(&self.coefficient, &DEFAULT_PRIMES).expect("default primes are prime")
    }

    pub fn render_monomial(&self, g: &Graph) -> String {
        self.monomial.render(&|v| g.name(v).to_string(), " ")
    }

    /// Text record with a stable field order.
    pub fn to_text(&self, g: &Graph) -> String {
        let names = |vs: &[Vertex]| {
            if vs.is_empty() {
                "none".to_string()
            } else {
                vs.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ")
            }
        };
        let excluded = if self.excluded.is_empty() {
            "none".to_string()
        } else {
            self.excluded.iter().map(|&e| g.render_edge(e)).collect::<Vec<_>>().join(" ")
        };
        let mut out = String::new();
        out.push_str(CERTIFICATE_HEADER);
        out.push('\n');
        out.push_str(&format!("graph: {}\n", self.graph_fingerprint));
        out.push_str(&format!("variant: {}\n", self.variant()));
        out.push_str(&format!("outer-cycle: {}\n", names(&self.outer_cycle)));
        out.push_str(&format!("excluded: {excluded}\n"));
        out.push_str(&format!("matching: {}\n", self.roles.render(g)));
        out.push_str(&format!("caps: {}\n", self.caps.render(g)));
        out.push_str(&format!("monomial: {}\n", self.render_monomial(g)));
        out.push_str(&format!("coefficient: {}\n", crate::laurent::signed(&self.coefficient)));
        for s in self.mod_status() {
            out.push_str(&s.render());
            out.push('\n');
        }
        out.push_str("transcript:\n");
        for step in &self.transcript {
            out.push_str(&format!("  {}\n", step.render(g)));
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text). Residue lines are recomputed,
    /// not trusted, but must be present.
    pub fn from_text(text: &str, g: &Graph) -> Result<Certificate> {
        let mut lines = text.lines();
        if lines.next().map(str::trim_end) != Some(CERTIFICATE_HEADER) {
            return Err(Error::Parse(format!("missing header {CERTIFICATE_HEADER:?}")));
        }
        let mut field = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing {key} line")))?;
            line.strip_prefix(key)
                .and_then(|r| r.strip_prefix(':'))
                .map(|r| r.trim().to_string())
                .ok_or_else(|| Error::Parse(format!("expected {key}: line, found {line:?}")))
        };
        let graph_fingerprint = field("graph")?;
        let variant: CapVariant = field("variant")?.parse()?;
        let outer_cycle = match field("outer-cycle")?.as_str() {
            "none" => Vec::new(),
            list => list.split_whitespace().map(|n| g.vertex(n)).collect::<Result<_>>()?,
        };
        let excluded = match field("excluded")?.as_str() {
            "none" => Vec::new(),
            list => list.split_whitespace().map(|e| g.parse_edge(e)).collect::<Result<_>>()?,
        };
        let roles = parse_roles(g, &field("matching")?)?;
        let caps = DegreeCaps::parse(g, variant, &field("caps")?)?;
        let monomial = parse_monomial(g, &field("monomial")?)?;
        let coefficient: Integer =
            field("coefficient")?.parse().map_err(|e| Error::Parse(format!("bad coefficient: {e}")))?;
        for p in DEFAULT_PRIMES {
            field(&format!("mod {p}"))?;
        }
        if !field("transcript")?.is_empty() {
            return Err(Error::Parse("transcript: line must be empty".into()));
        }
        let transcript =
            lines.filter(|l| !l.trim().is_empty()).map(|l| Step::parse(g, l.trim())).collect::<Result<_>>()?;
        Ok(Certificate { graph_fingerprint, outer_cycle, monomial, coefficient, caps, roles, excluded, transcript })
    }
}

/// Parses `r=d g=c; r=… g=…` or `none`.
pub fn parse_roles(g: &Graph, s: &str) -> Result<RoleAssignment> {
    if s.trim() == "none" {
        return Ok(RoleAssignment::empty());
    }
    let pairs = s
        .split(';')
        .map(|pair| {
            let bad = || Error::Parse(format!("bad matching pair {pair:?}"));
            let mut words = pair.split_whitespace();
            let r = words.next().and_then(|w| w.strip_prefix("r=")).ok_or_else(bad)?;
            let gr = words.next().and_then(|w| w.strip_prefix("g=")).ok_or_else(bad)?;
            if words.next().is_some() {
                return Err(bad());
            }
            Ok((g.vertex(r)?, g.vertex(gr)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RoleAssignment::new(pairs))
}

/// Excluded edges each statement prescribes: `e` (or the outer triangle)
/// plus the matching for the double-star forms.
pub fn expected_excluded(variant: CapVariant, frame: &[Edge], roles: &RoleAssignment) -> Option<Vec<Edge>> {
    let mut set: BTreeSet<Edge> = match variant {
        CapVariant::Theorem1 | CapVariant::Theorem2(_) | CapVariant::Theorem3(_) => frame.iter().copied().collect(),
        CapVariant::Theorem4(_) => BTreeSet::new(),
        CapVariant::Exact | CapVariant::Custom => return None,
    };
    if variant.star() == Some(Star::Double) {
        set.extend(roles.edges());
    }
    Some(set.into_iter().collect())
}

/// One named check of a verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub checks: Vec<Check>,
    pub recomputed: Option<Integer>,
    pub mod_status: Vec<ModStatus>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        for s in &self.mod_status {
            writeln!(f, "{}", s.render())?;
        }
        write!(f, "verdict: {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Re-derives everything a certificate claims from the graph alone:
/// structure, role invariants, caps, excluded edges, cap conformance, and
/// the coefficient itself.
pub fn verify_certificate(g: &Graph, cert: &Certificate, opts: &ExpandOptions) -> Verdict {
    let mut checks = Vec::new();
    let mut check = |name: &'static str, result: std::result::Result<String, String>| {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(Check { name, passed, detail });
    };
    let variant = cert.variant();

    check(
        "graph",
        if cert.graph_fingerprint == g.fingerprint() {
            Ok(format!("fingerprint {}", g.fingerprint()))
        } else {
            Err(format!("certificate is for {}, graph is {}", cert.graph_fingerprint, g.fingerprint()))
        },
    );

    let planar = matches!(variant, CapVariant::Theorem1 | CapVariant::Theorem2(_) | CapVariant::Theorem3(_));
    let frame: Option<NearTriangulation> = if planar {
        let built = match cert.outer_cycle.as_slice() {
            [a, b, ..] => NearTriangulation::from_graph(g.clone(), cert.outer_cycle.clone(), (*a, *b)),
            _ => Err(Error::OuterCycle("certificate has no outer cycle".into())),
        };
        let built = built.and_then(|nt| match variant {
            CapVariant::Theorem3(_) if nt.s() != 3 => {
                Err(Error::Precondition(format!("outer cycle has length {}, not 3", nt.s())))
            }
            _ => Ok(nt),
        });
        match built {
            Ok(nt) => {
                check("structure", Ok(format!("near-triangulation, n={} s={}", nt.n(), nt.s())));
                Some(nt)
            }
            Err(e) => {
                check("structure", Err(e.to_string()));
                None
            }
        }
    } else {
        None
    };

    let roles = &cert.roles;
    let role_check = roles.check_matching(g).and_then(|()| match (&frame, variant) {
        (Some(nt), CapVariant::Theorem2(_)) => roles.check_planar(nt),
        (Some(nt), CapVariant::Theorem3(_)) => match roles.red().union(&roles.green()).find(|&&v| nt.is_outer(v)) {
            Some(&v) => Err(format!("{} is matched but lies on the outer triangle", g.name(v))),
            None => Ok(()),
        },
        (_, CapVariant::Theorem1) if !roles.is_empty() => Err("the unmatched statement takes no matching".into()),
        _ => Ok(()),
    });
    check(
        "role invariant",
        role_check.map(|()| format!("{} matched pairs", roles.len())).map_err(|e| format!("role invariant: {e}")),
    );

    let expected_caps = match (&frame, variant) {
        (Some(nt), CapVariant::Theorem1) => Some(DegreeCaps::theorem1(nt)),
        (Some(nt), CapVariant::Theorem2(s)) => Some(DegreeCaps::theorem2(nt, roles, s)),
        (Some(nt), CapVariant::Theorem3(s)) => Some(DegreeCaps::theorem3(nt, roles, s)),
        (_, CapVariant::Theorem4(s)) => Some(DegreeCaps::theorem4(g, roles, s)),
        _ => None,
    };
    if let Some(expected) = &expected_caps {
        check(
            "caps",
            if expected == &cert.caps {
                Ok(format!("{variant} caps"))
            } else {
                Err(format!("expected {}, found {}", expected.render(g), cert.caps.render(g)))
            },
        );
    }

    let frame_edges: Vec<Edge> = match (&frame, variant) {
        (Some(nt), CapVariant::Theorem3(_)) => {
            let o = nt.outer_cycle();
            vec![Edge::new(o[0], o[1]), Edge::new(o[1], o[2]), Edge::new(o[0], o[2])]
        }
        (Some(nt), _) => vec![nt.distinguished_edge()],
        (None, _) => Vec::new(),
    };
    if let Some(expected) = expected_excluded(variant, &frame_edges, roles) {
        if planar && frame.is_none() {
            check("excluded edges", Err("cannot be derived without a valid outer cycle".into()));
        } else {
            let mut found = cert.excluded.clone();
            found.sort();
            let render = |es: &[Edge]| es.iter().map(|&e| g.render_edge(e)).collect::<Vec<_>>().join(" ");
            check(
                "excluded edges",
                if found == expected {
                    Ok(render(&found))
                } else {
                    Err(format!("expected {{{}}}, found {{{}}}", render(&expected), render(&found)))
                },
            );
        }
    }

    check(
        "cap conformance",
        match cert.caps.violation(&cert.monomial) {
            None => Ok(format!("{} within caps", cert.render_monomial(g))),
            Some((v, e, c)) => Err(format!("cap violation: {}^{e} exceeds cap {c}", g.name(v))),
        },
    );

    let recomputed = match oracle::coefficient(g, &cert.excluded, &cert.monomial, opts) {
        Ok(c) => {
            let shown = crate::laurent::signed(&c);
            check(
                "coefficient",
                if c.is_zero() {
                    Err("monomial vanishes".into())
                } else if c != cert.coefficient {
                    Err(format!("claimed {}, oracle gives {shown}", crate::laurent::signed(&cert.coefficient)))
                } else {
                    Ok(format!("{shown} confirmed by oracle"))
                },
            );
            Some(c)
        }
        Err(e) => {
            check("coefficient", Err(e.to_string()));
            None
        }
    };
    let mod_status = oracle::mod_report(&cert.coefficient, &DEFAULT_PRIMES).expect("default primes are prime");
    Verdict { checks, recomputed, mod_status }
}
