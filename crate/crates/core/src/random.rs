//! Seeded random inputs for the property suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratpoly::{ratio, xvar, RatPoly, Rational};
use crate::smith::Letter;
use crate::torus::{Gen, SpaceParams, TorusElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero `p/q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let p = rng.gen_range(-5..=5);
        if p != 0 {
            return ratio(p, rng.gen_range(1..=3));
        }
    }
}

/// Up to `max_terms` monomials of total degree at most `max_deg`.
pub fn random_poly(rng: &mut impl Rng, vars: &[&str], max_deg: u32, max_terms: usize) -> RatPoly {
    let mut out = RatPoly::zero();
    let terms = rng.gen_range(0..=max_terms);
    for _ in 0..terms {
        let mut mono = RatPoly::constant(small_rational(rng));
        if !vars.is_empty() {
            let deg = rng.gen_range(0..=max_deg);
            for _ in 0..deg {
                mono = mono * RatPoly::var(vars.choose(rng).expect("nonempty"));
            }
        }
        out += mono;
    }
    out
}

/// `X0..Xr` for a space.
pub fn space_vars(space: &SpaceParams) -> Vec<String> {
    (0..=space.r()).map(xvar).collect()
}

/// Random element with parts in degrees `-max_grade..=max_grade`.
pub fn random_torus(rng: &mut impl Rng, space: &Arc<SpaceParams>, max_grade: i64, max_deg: u32) -> TorusElement {
    let names = space_vars(space);
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let parts = rng.gen_range(1..=3);
    let mut out = TorusElement::zero(space);
    for _ in 0..parts {
        let m = rng.gen_range(-max_grade..=max_grade);
        out = &out + &TorusElement::part_at(space, m, random_poly(rng, &vars, max_deg, 3));
    }
    out
}

pub fn random_degree_zero(rng: &mut impl Rng, space: &Arc<SpaceParams>, max_deg: u32) -> TorusElement {
    let names = space_vars(space);
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    TorusElement::part_at(space, 0, random_poly(rng, &vars, max_deg, 4))
}

/// Word over `x, y, e` of length `1..=max_len`.
pub fn random_letters(rng: &mut impl Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Letter::X,
            1 => Letter::Y,
            _ => Letter::E,
        })
        .collect()
}

/// Word over `X, X^-1, Y, E` of length `1..=max_len`.
pub fn random_gens(rng: &mut impl Rng, max_len: usize) -> Vec<Gen> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| *[Gen::X, Gen::Xinv, Gen::Y, Gen::E].choose(rng).expect("nonempty"))
        .collect()
}

/// Label `(a1, .., ar)` with entries in `0..=max`.
pub fn random_label(rng: &mut impl Rng, r: usize, max: i64) -> Vec<i64> {
    (0..r).map(|_| rng.gen_range(0..=max)).collect()
}
