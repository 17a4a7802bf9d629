//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//!
//! Run with `cargo test --test acceptance`. Exits non-zero if any criterion
//! fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use atcert::certifier::{
    certify_k5free, certify_theorem1, certify_theorem2, certify_theorem3, corollary1, lemma1_witness,
    verify_certificate, CertifyOptions, Construction, LemmaPath,
};
use atcert::laurent::{niceness_ge, FactorMode, SparsePolynomial};
use atcert::oracle::{
    self, capped_expand_p, capped_expand_z, full_expansion, laurent_z, AdversaryOptions, CapVariant, DegreeCaps,
    ExpandOptions, Star,
};
use atcert::planar::{Edge, NearTriangulation, RoleAssignment};
use atcert::{ExponentVector, Integer, Vertex};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{as_near, family, graph, near, planar_corpus, SMALL};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn fail<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{context}: {e}")
}

fn opts() -> CertifyOptions {
    CertifyOptions::default()
}

// 1 ------------------------------------------------------------------------

fn base_case() -> Outcome {
    let g = near("triangle");
    let caps = DegreeCaps::theorem1(&g);
    let e = [g.distinguished_edge()];
    let start = Instant::now();
    let z = laurent_z::<Integer>(g.graph(), &caps, &e, &ExpandOptions::default()).map_err(fail("expand"))?;
    let text = z.to_text();
    let took = start.elapsed();
    let expected = format!(
        "atcert-ledger 1\ngraph: {}\nform: z-full\nvariant: theorem1\ncaps: a=0 b=0 c=2\nexcluded: a-b\nterms: 4\n\
         1 +1\na^-1 b^-1 c^2 +1\na^-1 c -1\nb^-1 c -1\n",
        g.graph().fingerprint()
    );
    ensure!(text == expected, "ledger differs:\n{text}");
    ensure!(took < Duration::from_millis(1), "took {took:?}");
    Ok(format!("4 terms, byte-exact, {took:?}"))
}

// 2 ------------------------------------------------------------------------

fn duality() -> Outcome {
    let mut graphs = 0;
    let mut terms = 0;
    for spec in SMALL {
        let g = graph(spec);
        ensure!(g.num_edges() <= 12, "{spec} has {} edges", g.num_edges());
        let edges: Vec<Edge> = g.edges().collect();
        let p = full_expansion::<Integer>(&edges, FactorMode::Plain).map_err(fail(spec))?;
        let q = full_expansion::<Integer>(&edges, FactorMode::Reciprocal).map_err(fail(spec))?;
        ensure!(p.len() == q.len(), "{spec}: {} terms in P, {} in Q", p.len(), q.len());
        for (m, c) in p.terms() {
            ensure!(&q.coefficient(&m.neg()) == c, "{spec}: coefficient of {m:?} differs");
            ensure!(m.total_degree() == edges.len() as i64, "{spec}: P not homogeneous");
        }
        graphs += 1;
        terms += p.len();
    }
    ensure!(graphs >= 10, "only {graphs} graphs");
    Ok(format!("{graphs} graphs, {terms} coefficient pairs"))
}

// 3 ------------------------------------------------------------------------

/// Cap vectors exercised per graph: the planar statements where they apply,
/// uniform caps otherwise.
fn cap_cases(spec: &str) -> Vec<(DegreeCaps, Vec<Edge>)> {
    let g = graph(spec);
    let mut out = vec![
        (DegreeCaps::theorem4(&g, &RoleAssignment::empty(), Star::Double), Vec::new()),
        (DegreeCaps::uniform(&g, 2, CapVariant::Custom), Vec::new()),
    ];
    if let Some(nt) = as_near(spec) {
        let e = vec![nt.distinguished_edge()];
        let none = RoleAssignment::empty();
        out.push((DegreeCaps::theorem1(&nt), e.clone()));
        out.push((DegreeCaps::theorem2(&nt, &none, Star::Double), e.clone()));
        out.push((DegreeCaps::theorem2(&nt, &none, Star::Triple), e));
    }
    out
}

fn pruning() -> Outcome {
    let mut cases = 0;
    for spec in SMALL {
        let g = graph(spec);
        for (caps, excluded) in cap_cases(spec) {
            let edges = oracle::remaining_edges(&g, &excluded).map_err(fail(spec))?;
            let full = full_expansion::<Integer>(&edges, FactorMode::Plain).map_err(fail(spec))?;
            let filtered: BTreeMap<ExponentVector, Integer> =
                full.terms().filter(|(m, _)| caps.admits(m)).map(|(m, c)| (m.clone(), c.clone())).collect();
            let p = capped_expand_p::<Integer>(&g, &caps, &excluded, &ExpandOptions::default()).map_err(fail(spec))?;
            ensure!(p.entries() == &filtered, "{spec} {}: capped P differs from filtered P", caps.variant());

            let zfull = laurent_z::<Integer>(&g, &caps, &excluded, &ExpandOptions::default()).map_err(fail(spec))?;
            let nice: BTreeMap<ExponentVector, Integer> = zfull
                .entries()
                .iter()
                .filter(|(m, _)| m.iter().all(|(_, e)| e >= 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            let z = capped_expand_z::<Integer>(&g, &caps, &excluded, &ExpandOptions::default()).map_err(fail(spec))?;
            ensure!(z.entries() == &nice, "{spec} {}: capped Z differs from filtered Z", caps.variant());
            cases += 1;
        }
    }
    Ok(format!("{cases} (graph, caps) cases, P and Z"))
}

// 4 ------------------------------------------------------------------------

/// The unmatched caps, read directly off the outer cycle.
fn theorem1_bound(nt: &NearTriangulation, v: Vertex) -> i32 {
    if v == nt.a() || v == nt.b() {
        0
    } else if nt.is_outer(v) {
        2
    } else {
        4
    }
}

fn theorem1() -> Outcome {
    let mut coefficients = BTreeMap::new();
    for spec in planar_corpus() {
        let nt = near(&spec);
        let cert = certify_theorem1(&nt, &opts()).map_err(fail(&spec))?;
        for (v, e) in cert.monomial.iter() {
            ensure!(e >= 0 && e <= theorem1_bound(&nt, v), "{spec}: {}^{e} out of bounds", nt.name(v));
        }
        let c = oracle::coefficient(nt.graph(), &[nt.distinguished_edge()], &cert.monomial, &ExpandOptions::default())
            .map_err(fail(&spec))?;
        ensure!(!c.is_zero() && c == cert.coefficient, "{spec}: oracle gives {c}, certificate {}", cert.coefficient);
        *coefficients.entry(c.to_string()).or_insert(0) += 1;
    }
    Ok(format!("{} graphs; coefficients seen {coefficients:?}", planar_corpus().len()))
}

// 5 ------------------------------------------------------------------------

fn check_matching(nt: &NearTriangulation, roles: &RoleAssignment) -> Result<(), String> {
    let mut seen = vec![nt.a(), nt.b()];
    for &(r, g) in roles.pairs() {
        if !nt.graph().has_edge(r, g) {
            return Err(format!("{}-{} is not an edge", nt.name(r), nt.name(g)));
        }
        if nt.is_outer(r) {
            return Err(format!("red {} on the outer cycle", nt.name(r)));
        }
        for v in [r, g] {
            if seen.contains(&v) {
                return Err(format!("{} repeated among reds, greens, a, b", nt.name(v)));
            }
            seen.push(v);
        }
    }
    Ok(())
}

fn theorem2_bound(nt: &NearTriangulation, roles: &RoleAssignment, star: Star, v: Vertex) -> i32 {
    if v == nt.a() || v == nt.b() {
        0
    } else if nt.is_outer(v) {
        if roles.is_green(v) {
            1
        } else {
            2
        }
    } else if star == Star::Triple && roles.is_red(v) {
        4
    } else {
        3
    }
}

fn theorem2() -> Outcome {
    let (mut matched, mut backtracks, mut pairs) = (0, 0, 0);
    for spec in planar_corpus() {
        let nt = near(&spec);
        let r = certify_theorem2(&nt, &opts()).map_err(fail(&spec))?;
        check_matching(&nt, &r.roles).map_err(fail(&spec))?;
        for (star, cert) in [(Star::Double, &r.double), (Star::Triple, &r.triple)] {
            ensure!(cert.roles == r.roles, "{spec}: certificates use different matchings");
            for (v, e) in cert.monomial.iter() {
                let bound = theorem2_bound(&nt, &r.roles, star, v);
                ensure!(e >= 0 && e <= bound, "{spec} {star:?}: {}^{e} exceeds {bound}", nt.name(v));
            }
            let mut excluded = vec![nt.distinguished_edge()];
            if star == Star::Double {
                excluded.extend(r.roles.edges());
            }
            let c = oracle::coefficient(nt.graph(), &excluded, &cert.monomial, &ExpandOptions::default())
                .map_err(fail(&spec))?;
            ensure!(!c.is_zero() && c == cert.coefficient, "{spec} {star:?}: oracle gives {c}");
        }
        matched += usize::from(!r.roles.is_empty());
        pairs += r.roles.len();
        backtracks += r.stats.backtracks;
    }
    Ok(format!(
        "{} graphs, {matched} with a non-empty matching ({pairs} pairs), {backtracks} backtracks",
        planar_corpus().len()
    ))
}

// 6 ------------------------------------------------------------------------

fn lemma_instance(rng: &mut ChaCha8Rng) -> (SparsePolynomial<Integer>, ExponentVector, Vertex, Vec<Vertex>, Vertex) {
    let t = Vertex(0);
    let k = rng.gen_range(0..=3u32);
    let xs: Vec<Vertex> = (1..=k).map(Vertex).collect();
    let v = Vertex(9);
    // t, the x's and one bystander variable: at most 5 variables.
    let vars: Vec<Vertex> = std::iter::once(t).chain(xs.iter().copied()).chain([Vertex(4)]).collect();
    let random_monomial =
        |rng: &mut ChaCha8Rng| ExponentVector::from_pairs(vars.iter().map(|&x| (x, rng.gen_range(-2..=2))));
    let mut u = SparsePolynomial::<Integer>::zero();
    let m = random_monomial(rng);
    u.add_term(m.clone(), Integer::from(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
    for x in &xs {
        if rng.gen_bool(0.6) {
            u.add_term(m.with(t, 1).with(*x, -1), Integer::from(rng.gen_range(-3..=3)));
        }
    }
    for _ in 0..rng.gen_range(0..4) {
        let n = random_monomial(rng);
        if n != m {
            u.add_term(n, Integer::from(rng.gen_range(-3..=3)));
        }
    }
    // Force the candidate to cancel in about half of the instances.
    if !xs.is_empty() && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..xs.len());
        let target = m.with(t, 1).with(xs[i], -1);
        let others: Integer = xs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(u.coefficient(&m), |acc, (_, &x)| acc + u.coefficient(&m.with(t, 1).with(x, -1)));
        let current = u.coefficient(&target);
        u.add_term(target, -others - current);
    }
    (u, m, t, xs, v)
}

fn lemma1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e44a);
    let mut fallbacks = 0;
    for i in 0..1000 {
        let (u, m, t, xs, v) = lemma_instance(&mut rng);
        let w = lemma1_witness(&u, &m, t, &xs, v).map_err(fail(&format!("instance {i}")))?;
        let mut factor = SparsePolynomial::monomial(ExponentVector::var(t, 1), Integer::from(1));
        for &x in &xs {
            factor.add_term(ExponentVector::var(x, 1), Integer::from(1));
        }
        factor.add_term(ExponentVector::var(v, 1), Integer::from(-1));
        let scale = xs.iter().fold(ExponentVector::var(t, -1), |acc, &x| acc.with(x, 1));
        let product = u.mul(&factor).scale(&scale, &Integer::from(1));
        let c = product.coefficient(&w.monomial);
        ensure!(!c.is_zero(), "instance {i}: witness {:?} vanishes in the product", w.monomial);
        ensure!(c == w.coefficient, "instance {i}: claimed {}, product has {c}", w.coefficient);
        ensure!(niceness_ge(&w.monomial, &m), "instance {i}: {:?} is not at least as nice as {m:?}", w.monomial);
        fallbacks += usize::from(matches!(w.path, LemmaPath::Fallback(_)));
    }
    Ok(format!("1000 instances, {fallbacks} through the cancellation fallback, 0 failures"))
}

// 7 ------------------------------------------------------------------------

fn homogeneity() -> Outcome {
    let mut expansions = 0;
    let mut specs: Vec<String> = SMALL.iter().map(|s| s.to_string()).collect();
    specs.extend(planar_corpus());
    for spec in &specs {
        let g = graph(spec);
        let mut cases = vec![(DegreeCaps::theorem4(&g, &RoleAssignment::empty(), Star::Double), Vec::new())];
        let near = as_near(spec);
        if let Some(nt) = &near {
            cases.push((DegreeCaps::theorem1(nt), vec![nt.distinguished_edge()]));
        }
        for (caps, excluded) in cases {
            let m = (g.num_edges() - excluded.len()) as i64;
            let p = capped_expand_p::<Integer>(&g, &caps, &excluded, &ExpandOptions::default()).map_err(fail(spec))?;
            ensure!(p.entries().keys().all(|t| t.total_degree() == m), "{spec}: P-term of degree != {m}");
            if caps.variant() == CapVariant::Theorem1 {
                let nt = near.as_ref().unwrap();
                let want = (nt.n() - nt.s()) as i64;
                let z =
                    capped_expand_z::<Integer>(&g, &caps, &excluded, &ExpandOptions::default()).map_err(fail(spec))?;
                ensure!(z.entries().keys().all(|t| t.total_degree() == want), "{spec}: Z-term of degree != {want}");
                ensure!(p.dual().map_err(fail(spec))?.entries() == z.entries(), "{spec}: P and Z ledgers not dual");
                expansions += 1;
            }
            expansions += 1;
        }
    }
    Ok(format!("{expansions} capped expansions over {} graphs", specs.len()))
}

// 8 ------------------------------------------------------------------------

fn wagner() -> Outcome {
    let g = graph("v8");
    let edges: Vec<Edge> = g.edges().collect();
    ensure!(edges.len() == 12, "V8 has {} edges", edges.len());
    let p = full_expansion::<Integer>(&edges, FactorMode::Plain).map_err(fail("v8"))?;
    let max = p.terms().flat_map(|(m, _)| m.iter().map(|(_, e)| e)).max().unwrap_or(0);
    ensure!(max == 3, "largest exponent is {max}");
    let caps = DegreeCaps::uniform(&g, 3, CapVariant::Custom);
    let (m, c) = p.terms().find(|(m, _)| caps.admits(m)).ok_or("no term within caps")?;
    let report = oracle::mod_report(c, &oracle::DEFAULT_PRIMES).map_err(fail("mod"))?;
    let residues: Vec<String> = report.iter().map(|s| s.render()).collect();
    Ok(format!(
        "4096 selections, {} terms, max exponent 3; {} has coefficient {c}; {}",
        p.len(),
        m.render(&|v| g.name(v).to_string(), " "),
        residues.join(", ")
    ))
}

// 9 ------------------------------------------------------------------------

fn k5free() -> Outcome {
    let mut out = Vec::new();
    for spec in ["clique-sum(k4,k4,3)", "v8"] {
        let c = Construction::from_family(&family(spec)).map_err(fail(spec))?;
        let g = c.graph();
        let r = certify_k5free(&c, &opts()).map_err(fail(spec))?;
        r.roles.check_matching(g).map_err(fail(spec))?;
        for cert in r.certificates() {
            for (v, e) in cert.monomial.iter() {
                let bound =
                    if cert.variant() == CapVariant::Theorem4(Star::Triple) && r.roles.is_red(v) { 4 } else { 3 };
                ensure!(e >= 0 && e <= bound, "{spec}: {}^{e} exceeds {bound}", g.name(v));
            }
            let verdict = verify_certificate(g, cert, &ExpandOptions::default());
            ensure!(verdict.passed(), "{spec}: verification failed\n{verdict}");
        }
        out.push(format!("{spec}: matching {}, monomial {}", r.roles.render(g), r.triple.render_monomial(g)));
    }
    Ok(out.join("; "))
}

// 10 -----------------------------------------------------------------------

fn corollary_1() -> Outcome {
    let mut specs: Vec<String> = SMALL.iter().map(|s| s.to_string()).collect();
    specs.extend(planar_corpus());
    specs.sort();
    specs.dedup();
    let mut checked = Vec::new();
    let mut assignments = 0;
    for spec in specs {
        let g = graph(&spec);
        if g.num_vertices() > 7 {
            continue;
        }
        let construction = Construction::from_family(&family(&spec)).map_err(fail(&spec))?;
        let roles = match as_near(&spec) {
            Some(nt) => certify_theorem2(&nt, &opts()).map_err(fail(&spec))?.roles,
            None => certify_k5free(&construction, &opts()).map_err(fail(&spec))?.roles,
        };
        let verdict = corollary1(&g, &roles, &AdversaryOptions::new(6)).map_err(fail(&spec))?;
        ensure!(verdict.colorable_for_all, "{spec}: {}", verdict.render(&g));
        ensure!(verdict.is_partial() || g.num_vertices() * 4 <= 6, "{spec}: not marked as universe-limited");
        assignments += verdict.assignments_checked;
        checked.push(spec);
    }
    Ok(format!(
        "{} graphs with n <= 7, {assignments} canonical 4-list assignments over 6 colours, all colourable \
         (universe-limited: 6 colours is below the adversary bound)",
        checked.len()
    ))
}

// 11 -----------------------------------------------------------------------

/// Every export the suite produces, with a given worker count.
fn exports(workers: usize) -> Result<String, String> {
    let expand = ExpandOptions::default().with_workers(workers);
    let opts = CertifyOptions::default().with_expand(expand.clone());
    let mut out = String::new();
    let mut specs: Vec<String> = SMALL.iter().map(|s| s.to_string()).collect();
    specs.extend(planar_corpus());
    for spec in &specs {
        let g = graph(spec);
        for (caps, excluded) in cap_cases(spec) {
            out += &capped_expand_p::<Integer>(&g, &caps, &excluded, &expand).map_err(fail(spec))?.to_text();
            out += &capped_expand_z::<Integer>(&g, &caps, &excluded, &expand).map_err(fail(spec))?.to_text();
        }
        if let Some(nt) = as_near(spec) {
            out += &certify_theorem1(&nt, &opts).map_err(fail(spec))?.to_text(&g);
            let r = certify_theorem2(&nt, &opts).map_err(fail(spec))?;
            out += &r.double.to_text(&g);
            out += &r.triple.to_text(&g);
            if nt.s() == 3 {
                let r = certify_theorem3(&nt, &opts).map_err(fail(spec))?;
                out += &r.double.to_text(&g);
                out += &r.triple.to_text(&g);
            }
        }
    }
    for spec in ["clique-sum(k4,k4,3)", "v8", "octahedron"] {
        let c = Construction::from_family(&family(spec)).map_err(fail(spec))?;
        let r = certify_k5free(&c, &opts).map_err(fail(spec))?;
        out += &r.double.to_text(c.graph());
        out += &r.triple.to_text(c.graph());
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let one = exports(1)?;
    let four = exports(4)?;
    ensure!(one == four, "exports differ between 1 and 4 workers");
    Ok(format!("{} bytes of ledgers and certificates, byte-identical", one.len()))
}

// --------------------------------------------------------------------------

/// Name, time limit in milliseconds, and check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("base case exactness", 1, base_case),
        ("duality bridge", 10_000, duality),
        ("pruning soundness", 10_000, pruning),
        ("theorem 1 reproduction", 120_000, theorem1),
        ("theorem 2 reproduction", 300_000, theorem2),
        ("peel witness property suite", 30_000, lemma1),
        ("homogeneity", u64::MAX, homogeneity),
        ("V8 full expansion", 1_000, wagner),
        ("K5-minor-free desk scale", 60_000, k5free),
        ("corollary 1 desk scale", 600_000, corollary_1),
        ("determinism across workers", u64::MAX, determinism),
    ];
    let mut failures = 0;
    for (i, (name, limit_ms, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_millis(limit_ms) => {
                Err(format!("{detail}; exceeded the {limit_ms} ms budget"))
            }
            other => other,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{status} [{:>2}] {name} ({:.3} s): {detail}", i + 1, took.as_secs_f64());
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
