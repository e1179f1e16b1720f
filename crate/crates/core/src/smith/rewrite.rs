//! Plain word rewriting for Smith algebras, independent of [`SmithElement::s_mul`].
//!
//! Words are sequences over `y < x < e`. A redex is an adjacent pair in the
//! wrong order; it is replaced using
//! `e x -> x e + n x`, `e y -> y e - n y`, `x y -> y x - f(e)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{add_into, Letter, SmithAlgebra, SmithElement, E_VAR, T_VAR};
use crate::ratpoly::{rat, RatPoly};
use crate::Result;

const Y: u8 = 0;
const X: u8 = 1;
const E: u8 = 2;

#[derive(Clone, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(ChaCha8Rng),
}

fn redexes(w: &[u8]) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]).collect()
}

fn push(acc: &mut BTreeMap<Vec<u8>, RatPoly>, w: Vec<u8>, c: RatPoly) {
    if c.is_zero() {
        return;
    }
    let merged = match acc.remove(&w) {
        Some(old) => old + c,
        None => c,
    };
    if !merged.is_zero() {
        acc.insert(w, merged);
    }
}

/// Rewrites a word to PBW normal form with the given redex strategy.
pub fn rewrite_word(alg: &Arc<SmithAlgebra>, word: &[Letter], strategy: &mut Strategy) -> Result<SmithElement> {
    let mut coeff = RatPoly::one();
    let mut letters = Vec::new();
    for l in word {
        match l {
            Letter::X => letters.push(X),
            Letter::Y => letters.push(Y),
            Letter::E => letters.push(E),
            // ring scalars are central
            Letter::Scalar(c) => {
                alg.ring.check(c, &[])?;
                coeff = coeff * c;
            }
        }
    }
    let f_coeffs = alg.f.coefficients_in(T_VAR);
    let n = rat(alg.n);

    let mut pending: BTreeMap<Vec<u8>, RatPoly> = BTreeMap::new();
    push(&mut pending, letters, coeff);
    let mut done: BTreeMap<Vec<u8>, RatPoly> = BTreeMap::new();

    while let Some((w, c)) = pending.pop_first() {
        let spots = redexes(&w);
        if spots.is_empty() {
            push(&mut done, w, c);
            continue;
        }
        let p = match strategy {
            Strategy::Leftmost => spots[0],
            Strategy::Rightmost => *spots.last().unwrap(),
            Strategy::Random(rng) => spots[rng.gen_range(0..spots.len())],
        };
        let (pre, post) = (&w[..p], &w[p + 2..]);
        let splice = |mid: &[u8]| -> Vec<u8> { pre.iter().chain(mid).chain(post).copied().collect() };
        match (w[p], w[p + 1]) {
            (E, X) => {
                push(&mut pending, splice(&[X, E]), c.clone());
                push(&mut pending, splice(&[X]), c.scale(&n));
            }
            (E, Y) => {
                push(&mut pending, splice(&[Y, E]), c.clone());
                push(&mut pending, splice(&[Y]), c.scale(&-n.clone()));
            }
            (X, Y) => {
                push(&mut pending, splice(&[Y, X]), c.clone());
                for (k, fk) in f_coeffs.iter().enumerate() {
                    push(&mut pending, splice(&vec![E; k]), -(fk * &c));
                }
            }
            _ => unreachable!("not a redex"),
        }
    }

    let mut terms = BTreeMap::new();
    for (w, c) in done {
        let i = w.iter().filter(|&&l| l == Y).count() as u32;
        let j = w.iter().filter(|&&l| l == X).count() as u32;
        let k = w.iter().filter(|&&l| l == E).count() as u32;
        add_into(&mut terms, (i, j), c * RatPoly::var(E_VAR).pow(k));
    }
    Ok(SmithElement { alg: alg.clone(), terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::parse;
    use crate::smith::{parse_letters, s_normal_form, CoeffRing};
    use rand::SeedableRng;

    #[test]
    fn strategies_agree_with_pbw_product() {
        let alg = SmithAlgebra::new(CoeffRing::Q, parse("t^2 + 1").unwrap(), 2).unwrap();
        for w in ["xyxy", "eyxe", "yyxxe", "xxyy", "exy"] {
            let word = parse_letters(w).unwrap();
            let reference = s_normal_form(&alg, &word).unwrap();
            let strategies = [
                Strategy::Leftmost,
                Strategy::Rightmost,
                Strategy::Random(ChaCha8Rng::seed_from_u64(5)),
            ];
            for mut s in strategies {
                assert_eq!(rewrite_word(&alg, &word, &mut s).unwrap(), reference, "{w}");
            }
        }
    }
}
