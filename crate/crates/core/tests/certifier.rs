//! Certificates from every statement, checked against the naive expansion.

mod common;

use atcert::certifier::{
    certify_k5free, certify_theorem1, certify_theorem2, certify_theorem3, corollary2, verify_certificate, Certificate,
    CertifyOptions, Construction, Step,
};
use atcert::laurent::FactorMode;
use atcert::oracle::{
    full_expansion, parse_monomial, remaining_edges, AdversaryOptions, CapVariant, DegreeCaps, ExpandOptions, Star,
};
use atcert::planar::{Graph, RoleAssignment};
use atcert::{Error, Integer};
use common::{family, graph, near, planar_corpus};

fn opts() -> CertifyOptions {
    CertifyOptions::default()
}

/// The certified coefficient, recomputed from all `2^|E|` edge choices.
fn brute(g: &Graph, cert: &Certificate) -> Integer {
    let edges = remaining_edges(g, &cert.excluded).unwrap();
    full_expansion::<Integer>(&edges, FactorMode::Plain).unwrap().coefficient(&cert.monomial)
}

fn assert_sound(g: &Graph, cert: &Certificate, label: &str) {
    assert!(cert.caps.admits(&cert.monomial), "{label}: monomial exceeds caps");
    assert_ne!(cert.coefficient, Integer::from(0), "{label}");
    let verdict = verify_certificate(g, cert, &ExpandOptions::default());
    assert!(verdict.passed(), "{label}:\n{verdict}");
}

#[test]
fn theorem1_examples() {
    for (spec, monomial, coefficient) in [("triangle", "c^2", 1), ("k4", "c^2 d^3", -1), ("square-chord", "c^2 d^2", 1)]
    {
        let g = near(spec);
        let cert = certify_theorem1(&g, &opts()).unwrap();
        assert_eq!(cert.render_monomial(g.graph()), monomial, "{spec}");
        assert_eq!(cert.coefficient, Integer::from(coefficient), "{spec}");
        assert_eq!(brute(g.graph(), &cert), cert.coefficient, "{spec}");
    }
}

#[test]
fn k4_certificate_verifies_with_residues() {
    let g = near("k4");
    let cert = certify_theorem1(&g, &opts()).unwrap();
    let verdict = verify_certificate(g.graph(), &cert, &ExpandOptions::default());
    assert!(verdict.passed(), "{verdict}");
    assert_eq!(verdict.recomputed, Some(Integer::from(-1)));
    for p in [2, 3, 5, 7] {
        assert!(verdict.mod_status.iter().any(|s| s.prime == p && s.nonzero()), "mod {p}");
    }
}

#[test]
fn chords_multiply_the_halves() {
    let g = near("square-chord");
    let cert = certify_theorem1(&g, &opts()).unwrap();
    assert_eq!(cert.transcript.iter().filter(|s| matches!(s, Step::Chord { .. })).count(), 1);
    let (g1, g2) = g.split_at_chord(g.find_chord().unwrap()).unwrap();
    let c1 = certify_theorem1(&g1, &opts()).unwrap().coefficient;
    let c2 = certify_theorem1(&g2, &opts()).unwrap().coefficient;
    assert_eq!(cert.coefficient, c1 * c2);
}

#[test]
fn every_statement_is_sound_on_the_corpus() {
    for spec in planar_corpus() {
        let g = near(&spec);
        let cert = certify_theorem1(&g, &opts()).unwrap();
        assert_sound(g.graph(), &cert, &format!("{spec} theorem 1"));

        let two = certify_theorem2(&g, &opts()).unwrap();
        for cert in two.certificates() {
            assert_eq!(cert.roles, two.roles);
            assert_sound(g.graph(), cert, &format!("{spec} theorem 2"));
        }
        if g.s() != 3 {
            continue;
        }
        let three = certify_theorem3(&g, &opts()).unwrap();
        for cert in three.certificates() {
            assert_sound(g.graph(), cert, &format!("{spec} theorem 3"));
        }
    }
}

#[test]
fn octahedron_needs_one_matched_edge() {
    let g = near("octahedron");
    let r = certify_theorem2(&g, &opts()).unwrap();
    assert_eq!(r.roles.render(g.graph()), "r=d g=e");
    let expected = [(Star::Double, "c^2 d^2 e^3 f^3", 2), (Star::Triple, "c^2 d^4 e^2 f^3", 1)];
    for (cert, (star, monomial, excluded)) in r.certificates().into_iter().zip(expected) {
        assert_eq!(cert.variant(), CapVariant::Theorem2(star));
        assert_eq!(cert.render_monomial(g.graph()), monomial);
        assert_eq!(cert.excluded.len(), excluded);
        assert_eq!(cert.coefficient, Integer::from(-1));
        assert_eq!(brute(g.graph(), cert), Integer::from(-1));
    }
}

#[test]
fn theorem3_examples() {
    let g = near("k4");
    let r = certify_theorem3(&g, &opts()).unwrap();
    for cert in r.certificates() {
        assert_eq!(cert.render_monomial(g.graph()), "d^3");
        assert_eq!(cert.coefficient, Integer::from(-1));
        assert_eq!(brute(g.graph(), cert), Integer::from(-1));
        assert!(matches!(cert.transcript[0], Step::DeleteApex { .. }));
    }
    for spec in ["fan:4", "square-chord"] {
        let err = certify_theorem3(&near(spec), &opts()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "{spec}: {err}");
    }
}

#[test]
fn theorem4_on_a_triangulation_follows_theorem3() {
    let g = near("stacked:2");
    let three = certify_theorem3(&g, &opts()).unwrap();
    let four = certify_k5free(&Construction::Triangulation(g.clone()), &opts()).unwrap();
    assert_eq!(four.roles, three.roles);
    for (cert, star) in four.certificates().into_iter().zip([Star::Double, Star::Triple]) {
        assert_eq!(cert.caps, DegreeCaps::theorem4(g.graph(), &four.roles, star));
        assert!(matches!(cert.transcript[0], Step::CloseTriangle { .. }));
        assert_sound(g.graph(), cert, "stacked:2 theorem 4");
    }
}

#[test]
fn k5_minor_free_constructions() {
    for spec in ["v8", "clique-sum(k4,k4,3)", "clique-sum(triangle,k4,2)", "clique-sum(k4,v8,2)"] {
        let construction = Construction::from_family(&family(spec)).unwrap();
        let r = certify_k5free(&construction, &opts()).unwrap();
        for cert in r.certificates() {
            assert_sound(construction.graph(), cert, spec);
            assert_eq!(brute(construction.graph(), cert), cert.coefficient, "{spec}");
        }
    }
}

#[test]
fn certificates_round_trip_through_text() {
    for spec in ["k4", "octahedron", "wheel:5"] {
        let g = near(spec);
        let mut certs = vec![certify_theorem1(&g, &opts()).unwrap()];
        certs.extend(certify_theorem2(&g, &opts()).unwrap().certificates().into_iter().cloned());
        for cert in certs {
            let text = cert.to_text(g.graph());
            let back = Certificate::from_text(&text, g.graph()).unwrap();
            assert_eq!(back, cert, "{spec}");
            assert_eq!(back.to_text(g.graph()), text);
        }
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let g = near("octahedron");
    let r = certify_theorem2(&g, &opts()).unwrap();
    let honest = r.triple.clone();

    let mut over = honest.clone();
    over.monomial = parse_monomial(g.graph(), "c^2 d^4 e^2 f^9").unwrap();
    let verdict = verify_certificate(g.graph(), &over, &ExpandOptions::default());
    assert!(verdict.failures().any(|c| c.detail.contains("cap violation")), "{verdict}");

    let mut outer_red = honest.clone();
    let (a, d) = (g.a(), g.graph().vertex("d").unwrap());
    outer_red.roles = RoleAssignment::new([(a, d)]);
    let verdict = verify_certificate(g.graph(), &outer_red, &ExpandOptions::default());
    assert!(verdict.failures().any(|c| c.detail.contains("role invariant")), "{verdict}");

    let mut wrong = honest;
    wrong.coefficient = Integer::from(3);
    assert!(!verify_certificate(g.graph(), &wrong, &ExpandOptions::default()).passed());
}

#[test]
fn corollary2_enlarges_fewer_than_half() {
    for spec in ["octahedron", "wheel:5", "stacked:1"] {
        let g = near(spec);
        let roles = certify_theorem2(&g, &opts()).unwrap().roles;
        let report = corollary2(g.graph(), &roles, &AdversaryOptions::new(6)).unwrap();
        assert!(report.verdict.colorable_for_all, "{spec}");
        assert!(report.below_half(), "{spec}");
        assert_eq!(report.n, graph(spec).num_vertices());
    }
}
