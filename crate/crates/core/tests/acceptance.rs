//! The eight acceptance criteria, one PASS/FAIL line each.

use std::time::Instant;

use mfdo_core::verify::{self, Check};

const SEED: u64 = 7;

fn report(idx: usize, title: &str, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let c = check();
    let status = if c.passed { "PASS" } else { "FAIL" };
    println!(
        "[{status}] criterion {idx}: {title} ({} cases, {:.2}s){}",
        c.cases,
        start.elapsed().as_secs_f64(),
        if c.detail.is_empty() { String::new() } else { format!(" -- {}", c.detail) }
    );
    c.passed
}

#[test]
fn acceptance() {
    let results = [
        report(1, "Cayley identity for det2, det3, k = 1..5", verify::cayley_identity),
        report(2, "oracle b_Y proportional to the product formula", verify::proportionality),
        report(3, "word actions on highest-weight vectors for det2, quad4", verify::embedding),
        report(4, "XY = u(E), YX = u(E + d0); u_to_torus multiplicative", || verify::presentation(SEED)),
        report(5, "Smith algebra: confluence, Casimir, antiderivative, grading", || verify::smith_suite(SEED)),
        report(6, "projection onto the center", || verify::center_projection(SEED)),
        report(7, "radial components, kernel generators, factorized det(d)", || verify::radial_suite(SEED)),
        report(8, "tau calculus", || verify::tau_calculus(SEED)),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
