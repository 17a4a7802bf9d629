//! The unmatched induction.
//!
//! Works on `P`-monomials throughout and uses the duality
//! `[W] Z = [caps - W] P` to hand the lifting lemma a lookup into
//! `Z_{G'-e}` backed by oracle point queries on `G'`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::laurent::ExponentVector;
use crate::oracle::{self, DegreeCaps, ExpandOptions};
use crate::planar::NearTriangulation;
use crate::scalar::Integer;

use super::certificate::{Certificate, Step};
use super::lemma::lemma1_witness_with;
use super::{checked, selection_sign, CertifyOptions};

/// Nonvanishing monomial of `P_{G-e}` with `a, b` at 0, other outer
/// vertices at most 2 and interior vertices at most 4.
pub fn certify_theorem1(g: &NearTriangulation, opts: &CertifyOptions) -> Result<Certificate> {
    let mut transcript = Vec::new();
    let (monomial, coefficient) = prove(g, &opts.expand, &mut transcript)?;
    let cert = Certificate {
        graph_fingerprint: g.graph().fingerprint(),
        outer_cycle: g.outer_cycle().to_vec(),
        monomial,
        coefficient,
        caps: DegreeCaps::theorem1(g),
        roles: Default::default(),
        excluded: vec![g.distinguished_edge()],
        transcript,
    };
    checked(g.graph(), cert, &opts.expand)
}

fn prove(g: &NearTriangulation, opts: &ExpandOptions, steps: &mut Vec<Step>) -> Result<(ExponentVector, Integer)> {
    let o = g.outer_cycle();
    if g.is_triangle() {
        // (a - c)(b - c) up to orientation: c from both factors.
        let (a, b, c) = (o[0], o[1], o[2]);
        steps.push(Step::Base([a, b, c]));
        return Ok((ExponentVector::var(c, 2), selection_sign(c, a) * selection_sign(c, b)));
    }

    if let Some(f) = g.find_chord() {
        steps.push(Step::Chord(f));
        let (g1, g2) = g.split_at_chord(f)?;
        let (n1, c1) = prove(&g1, opts, steps)?;
        let (n2, c2) = prove(&g2, opts, steps)?;
        // `n2` vanishes on the chord's ends, so the product has a unique
        // preimage under the split.
        return Ok((n1.add(&n2), c1 * c2));
    }

    let (reduced, step) = g.peel()?;
    let at = steps.len();
    steps.push(Step::Base([o[0], o[1], o[2]]));
    let (n_prev, c_prev) = prove(&reduced, opts, steps)?;

    let caps_prev = DegreeCaps::theorem1(&reduced).monomial();
    let e = [reduced.distinguished_edge()];
    let cache: RefCell<HashMap<ExponentVector, Integer>> = RefCell::new(HashMap::new());
    let m = caps_prev.sub(&n_prev);
    cache.borrow_mut().insert(m.clone(), c_prev);
    let lookup = |z: &ExponentVector| -> Result<Integer> {
        if let Some(c) = cache.borrow().get(z) {
            return Ok(c.clone());
        }
        let w = caps_prev.sub(z);
        let c = if w.iter().any(|(_, x)| x < 0) {
            Integer::from(0)
        } else {
            oracle::coefficient(reduced.graph(), &e, &w, opts)?
        };
        cache.borrow_mut().insert(z.clone(), c.clone());
        Ok(c)
    };
    let v = step.removed;
    let witness = lemma1_witness_with(&lookup, &m, step.t_neighbor, &step.link, v)?;
    steps[at] = Step::Peel { removed: v, t: step.t_neighbor, path: witness.path };

    // Z_{G-e} agrees with ±Z_{G'-e}·(t + Σx - v)·∏x/t on nice monomials;
    // the sign collects the factors of v's edges oriented away from v.
    let flips = g.graph().neighbors(v).filter(|&w| v < w).count();
    let sigma = Integer::from(if flips % 2 == 0 { 1 } else { -1 });
    let n = DegreeCaps::theorem1(g).monomial().sub(&witness.monomial);
    if n.iter().any(|(_, x)| x < 0) {
        return Err(Error::Internal("lifted witness exceeds the caps".into()));
    }
    Ok((n, sigma * witness.coefficient))
}
