//! Shared corpus for the integration tests.
#![allow(dead_code)]

use atcert::planar::{generate, Family, Graph, NearTriangulation};

pub fn family(spec: &str) -> Family {
    spec.parse().unwrap_or_else(|e| panic!("{spec}: {e}"))
}

pub fn near(spec: &str) -> NearTriangulation {
    NearTriangulation::validate(&generate(&family(spec)).unwrap()).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

pub fn graph(spec: &str) -> Graph {
    generate(&family(spec)).unwrap().graph().unwrap()
}

/// Small graphs (at most 12 edges) for exhaustive cross-checks.
pub const SMALL: &[&str] = &[
    "triangle",
    "k4",
    "square",
    "square-chord",
    "double-stacked",
    "fan:3",
    "fan:4",
    "fan:5",
    "fan:6",
    "wheel:4",
    "wheel:5",
    "wheel:6",
    "stacked:1",
    "octahedron",
    "v8",
    "clique-sum(k4,k4,3)",
    "clique-sum(triangle,k4,2)",
];

/// Near-triangulations the planar statements are reproduced on.
pub fn planar_corpus() -> Vec<String> {
    let mut out = Vec::new();
    out.extend((2..=8).map(|m| format!("fan:{m}")));
    out.extend((3..=8).map(|m| format!("wheel:{m}")));
    out.extend((1..=3).map(|d| format!("stacked:{d}")));
    out.push("octahedron".into());
    out
}

/// Near-triangulation view of a small graph, when it has one.
pub fn as_near(spec: &str) -> Option<NearTriangulation> {
    NearTriangulation::validate(&generate(&family(spec)).ok()?).ok()
}
