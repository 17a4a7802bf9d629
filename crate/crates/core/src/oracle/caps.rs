use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, Vertex};
use crate::planar::{Graph, NearTriangulation, RoleAssignment};

/// Which of the two matched statements a cap vector belongs to: `Double`
/// bounds `P` with the matching deleted, `Triple` bounds `P` with the
/// matching kept but red vertices relaxed to 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Star {
    Double,
    Triple,
}

/// The statement a cap vector was derived from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CapVariant {
    Theorem1,
    Theorem2(Star),
    Theorem3(Star),
    Theorem4(Star),
    /// Point query: caps equal to the queried monomial.
    Exact,
    /// Hand-supplied caps.
    Custom,
}

impl CapVariant {
    pub const ALL: [CapVariant; 9] = [
        CapVariant::Theorem1,
        CapVariant::Theorem2(Star::Double),
        CapVariant::Theorem2(Star::Triple),
        CapVariant::Theorem3(Star::Double),
        CapVariant::Theorem3(Star::Triple),
        CapVariant::Theorem4(Star::Double),
        CapVariant::Theorem4(Star::Triple),
        CapVariant::Exact,
        CapVariant::Custom,
    ];

    pub fn star(self) -> Option<Star> {
        match self {
            CapVariant::Theorem2(s) | CapVariant::Theorem3(s) | CapVariant::Theorem4(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for CapVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = |s: &Star| match s {
            Star::Double => "doublestar",
            Star::Triple => "triplestar",
        };
        match self {
            CapVariant::Theorem1 => write!(f, "theorem1"),
            CapVariant::Theorem2(s) => write!(f, "theorem2_{}", star(s)),
            CapVariant::Theorem3(s) => write!(f, "theorem3_{}", star(s)),
            CapVariant::Theorem4(s) => write!(f, "theorem4_{}", star(s)),
            CapVariant::Exact => write!(f, "exact"),
            CapVariant::Custom => write!(f, "custom"),
        }
    }
}

impl FromStr for CapVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CapVariant::ALL.into_iter().find(|v| v.to_string() == s).ok_or_else(|| {
            let names: Vec<_> = CapVariant::ALL.iter().map(|v| v.to_string()).collect();
            Error::Parse(format!("unknown caps variant {s:?} (expected one of {})", names.join(", ")))
        })
    }
}

/// Per-vertex exponent bounds: the reference monomial `R` in exponent form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCaps {
    caps: BTreeMap<Vertex, u32>,
    variant: CapVariant,
}

impl DegreeCaps {
    pub fn new(variant: CapVariant, caps: impl IntoIterator<Item = (Vertex, u32)>) -> Self {
        DegreeCaps { caps: caps.into_iter().collect(), variant }
    }

    /// Same cap at every vertex of `g`.
    pub fn uniform(g: &Graph, cap: u32, variant: CapVariant) -> Self {
        Self::new(variant, g.vertices().map(|v| (v, cap)))
    }

    /// Caps equal to `m`; `m` must be nice.
    pub fn exact(g: &Graph, m: &ExponentVector) -> Result<Self> {
        if let Some((v, e)) = m.iter().find(|&(_, e)| e < 0) {
            return Err(Error::Precondition(format!("exponent {e} at {v} is negative")));
        }
        Ok(Self::new(CapVariant::Exact, g.vertices().map(|v| (v, m.get(v) as u32))))
    }

    /// `a, b` at 0, other outer vertices at 2, interior vertices at 4.
    pub fn theorem1(g: &NearTriangulation) -> Self {
        let caps = g.graph().vertices().map(|v| {
            let cap = if v == g.a() || v == g.b() {
                0
            } else if g.is_outer(v) {
                2
            } else {
                4
            };
            (v, cap)
        });
        Self::new(CapVariant::Theorem1, caps)
    }

    /// `a, b` at 0, outer greens at 1, other outer at 2, interior at 3, and
    /// red interior vertices at 4 for [`Star::Triple`].
    pub fn theorem2(g: &NearTriangulation, roles: &RoleAssignment, star: Star) -> Self {
        let caps = g.graph().vertices().map(|v| {
            let cap = if v == g.a() || v == g.b() {
                0
            } else if g.is_outer(v) {
                if roles.is_green(v) {
                    1
                } else {
                    2
                }
            } else if star == Star::Triple && roles.is_red(v) {
                4
            } else {
                3
            };
            (v, cap)
        });
        Self::new(CapVariant::Theorem2(star), caps)
    }

    /// Outer triangle at 0, everything else at 3, red vertices at 4 for
    /// [`Star::Triple`].
    pub fn theorem3(g: &NearTriangulation, roles: &RoleAssignment, star: Star) -> Self {
        let caps = g.graph().vertices().map(|v| {
            let cap = if g.is_outer(v) {
                0
            } else if star == Star::Triple && roles.is_red(v) {
                4
            } else {
                3
            };
            (v, cap)
        });
        Self::new(CapVariant::Theorem3(star), caps)
    }

    /// Everything at 3, red vertices at 4 for [`Star::Triple`].
    pub fn theorem4(g: &Graph, roles: &RoleAssignment, star: Star) -> Self {
        let caps = g.vertices().map(|v| {
            let cap = if star == Star::Triple && roles.is_red(v) { 4 } else { 3 };
            (v, cap)
        });
        Self::new(CapVariant::Theorem4(star), caps)
    }

    pub fn variant(&self) -> CapVariant {
        self.variant
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.caps.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.caps.iter().map(|(&v, &c)| (v, c))
    }

    pub fn total(&self) -> u64 {
        self.caps.values().map(|&c| c as u64).sum()
    }

    pub fn max(&self) -> u32 {
        self.caps.values().copied().max().unwrap_or(0)
    }

    /// The reference monomial `R`.
    pub fn monomial(&self) -> ExponentVector {
        ExponentVector::from_pairs(self.iter().map(|(v, c)| (v, c as i32)))
    }

    /// `m` is nice and bounded by the caps componentwise.
    pub fn admits(&self, m: &ExponentVector) -> bool {
        m.iter().all(|(v, e)| e >= 0 && e as u32 <= self.get(v))
    }

    /// First vertex at which `m` exceeds its cap, if any.
    pub fn violation(&self, m: &ExponentVector) -> Option<(Vertex, i32, u32)> {
        m.iter().find(|&(v, e)| e < 0 || e as u32 > self.get(v)).map(|(v, e)| (v, e, self.get(v)))
    }

    /// `a=0 b=0 c=2` in vertex order.
    pub fn render(&self, g: &Graph) -> String {
        self.iter().map(|(v, c)| format!("{}={c}", g.name(v))).collect::<Vec<_>>().join(" ")
    }

    /// Inverse of [`render`](Self::render).
    pub fn parse(g: &Graph, variant: CapVariant, s: &str) -> Result<Self> {
        let caps = s
            .split_whitespace()
            .map(|item| {
                let (name, cap) =
                    item.split_once('=').ok_or_else(|| Error::Parse(format!("bad cap entry {item:?}")))?;
                let cap = cap.parse().map_err(|_| Error::Parse(format!("bad cap entry {item:?}")))?;
                Ok((g.vertex(name)?, cap))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(variant, caps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{generate, Family};

    fn nt(f: Family) -> NearTriangulation {
        NearTriangulation::validate(&generate(&f).unwrap()).unwrap()
    }

    #[test]
    fn theorem1_caps_on_k4() {
        let g = nt(Family::K4);
        let caps = DegreeCaps::theorem1(&g);
        assert_eq!(caps.render(g.graph()), "a=0 b=0 c=2 d=4");
        assert_eq!(caps.total() - 5, 1, "slack is the number of interior vertices");
    }

    #[test]
    fn theorem2_caps_follow_roles() {
        let g = nt(Family::Octahedron);
        let v = |n: &str| g.graph().vertex(n).unwrap();
        let roles = RoleAssignment::new([(v("e"), v("c"))]);
        let dbl = DegreeCaps::theorem2(&g, &roles, Star::Double);
        let tpl = DegreeCaps::theorem2(&g, &roles, Star::Triple);
        assert_eq!(dbl.render(g.graph()), "a=0 b=0 c=1 d=3 e=3 f=3");
        assert_eq!(tpl.render(g.graph()), "a=0 b=0 c=1 d=3 e=4 f=3");
        assert_eq!(DegreeCaps::theorem3(&g, &roles, Star::Triple).render(g.graph()), "a=0 b=0 c=0 d=3 e=4 f=3");
    }

    #[test]
    fn variant_names_round_trip() {
        for v in CapVariant::ALL {
            assert_eq!(v.to_string().parse::<CapVariant>().unwrap(), v);
        }
        assert!("theorem5".parse::<CapVariant>().is_err());
    }

    #[test]
    fn admits_and_parse() {
        let g = nt(Family::K4);
        let caps = DegreeCaps::theorem1(&g);
        let d = g.graph().vertex("d").unwrap();
        assert!(caps.admits(&ExponentVector::var(d, 4)));
        assert!(!caps.admits(&ExponentVector::var(d, 5)));
        assert!(!caps.admits(&ExponentVector::var(d, -1)));
        let back = DegreeCaps::parse(g.graph(), CapVariant::Theorem1, &caps.render(g.graph())).unwrap();
        assert_eq!(back, caps);
    }
}
