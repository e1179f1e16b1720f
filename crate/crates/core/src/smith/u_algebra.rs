//! The algebras `U(A, u, n)`: generators `x, y, e` with `[e, x] = n x`,
//! `[e, y] = -n y`, `x y = u(e)`, `y x = u(e + n)`.
//!
//! Normal form: weight `w -> P(e)`, meaning `x^w P(e)` for `w >= 0` and
//! `y^(-w) P(e)` for `w < 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{fmt_pbw, power_text, shift_e, CoeffRing, Letter, E_VAR, T_VAR};
use crate::ratpoly::{xvar, RatPoly, Rational};
use crate::torus::{canonical_elements, u_xy, SpaceParams, TorusElement};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UAlgebra {
    pub ring: CoeffRing,
    /// `u(t)` with coefficients in the ring.
    pub u: RatPoly,
    pub n: i64,
}

impl UAlgebra {
    pub fn new(ring: CoeffRing, u: RatPoly, n: i64) -> Result<Arc<Self>> {
        ring.validate()?;
        if n < 1 {
            return Err(Error::InvalidParams(format!("n must be positive, got {n}")));
        }
        ring.check(&u, &[T_VAR])?;
        Ok(Arc::new(Self { ring, u, n }))
    }

    /// `U(Q[X1..Xr], u_XY, d0)` for a space.
    pub fn for_space(space: &SpaceParams) -> Arc<Self> {
        let u = RatPoly::horner(&u_xy(space), &RatPoly::var(T_VAR));
        Self::new(space_ring(space), u, space.d0()).expect("space data is valid")
    }

    /// `u(e + c)`.
    fn u_at(&self, c: i64) -> RatPoly {
        self.u.substitute(T_VAR, &(RatPoly::var(E_VAR) + RatPoly::from_int(c)))
    }

    /// `x^k y^k = u(e) u(e - n) .. u(e - (k-1) n)`.
    fn pi(&self, k: u64) -> RatPoly {
        (0..k as i64).fold(RatPoly::one(), |acc, i| acc * self.u_at(-i * self.n))
    }

    /// `y^k x^k = u(e + n) u(e + 2n) .. u(e + k n)`.
    fn sigma(&self, k: u64) -> RatPoly {
        (1..=k as i64).fold(RatPoly::one(), |acc, i| acc * self.u_at(i * self.n))
    }

    /// `z^a z^b = z^(a+b) C(e)`; returns `C`.
    fn cross(&self, a: i64, b: i64) -> RatPoly {
        let n = self.n;
        if (a >= 0 && b >= 0) || (a <= 0 && b <= 0) {
            return RatPoly::one();
        }
        if a > 0 {
            let k = -b;
            if a >= k {
                self.pi(k as u64)
            } else {
                shift_e(&self.pi(a as u64), -(k - a) * n)
            }
        } else {
            let k = -a;
            if k >= b {
                self.sigma(b as u64)
            } else {
                shift_e(&self.sigma(k as u64), (b - k) * n)
            }
        }
    }
}

fn space_ring(space: &SpaceParams) -> CoeffRing {
    CoeffRing::QPoly((1..=space.r()).map(xvar).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UElement {
    alg: Arc<UAlgebra>,
    parts: BTreeMap<i64, RatPoly>,
}

impl UElement {
    pub fn zero(alg: &Arc<UAlgebra>) -> Self {
        Self { alg: alg.clone(), parts: BTreeMap::new() }
    }

    /// `z^w P(e)`.
    pub fn monomial(alg: &Arc<UAlgebra>, w: i64, p: RatPoly) -> Self {
        let mut out = Self::zero(alg);
        out.add_part(w, p);
        out
    }

    pub fn one(alg: &Arc<UAlgebra>) -> Self {
        Self::monomial(alg, 0, RatPoly::one())
    }

    pub fn x(alg: &Arc<UAlgebra>) -> Self {
        Self::monomial(alg, 1, RatPoly::one())
    }

    pub fn y(alg: &Arc<UAlgebra>) -> Self {
        Self::monomial(alg, -1, RatPoly::one())
    }

    pub fn e(alg: &Arc<UAlgebra>) -> Self {
        Self::monomial(alg, 0, RatPoly::var(E_VAR))
    }

    fn add_part(&mut self, w: i64, p: RatPoly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.parts.remove(&w) {
            Some(old) => old + p,
            None => p,
        };
        if !merged.is_zero() {
            self.parts.insert(w, merged);
        }
    }

    pub fn algebra(&self) -> &Arc<UAlgebra> {
        &self.alg
    }

    pub fn parts(&self) -> &BTreeMap<i64, RatPoly> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&w, p) in &rhs.parts {
            out.add_part(w, p.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.alg);
        for (&w, p) in &self.parts {
            out.add_part(w, p.scale(c));
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&crate::ratpoly::rat(-1)))
    }

    pub fn u_mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.alg, rhs.alg, "elements of different algebras");
        let mut out = Self::zero(&self.alg);
        for (&a, p) in &self.parts {
            for (&b, q) in &rhs.parts {
                let moved = shift_e(p, b * self.alg.n) * q;
                out.add_part(a + b, self.alg.cross(a, b) * moved);
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.u_mul(rhs).sub(&rhs.u_mul(self))
    }
}

/// Normal form of a product of letters.
pub fn u_normal_form(alg: &Arc<UAlgebra>, word: &[Letter]) -> Result<UElement> {
    let mut acc = UElement::one(alg);
    for l in word {
        let g = match l {
            Letter::X => UElement::x(alg),
            Letter::Y => UElement::y(alg),
            Letter::E => UElement::e(alg),
            Letter::Scalar(c) => {
                alg.ring.check(c, &[])?;
                UElement::monomial(alg, 0, c.clone())
            }
        };
        acc = acc.u_mul(&g);
    }
    Ok(acc)
}

/// Evaluation `x -> X`, `y -> Y`, `e -> E`, identity on the center.
pub fn u_to_torus(a: &UElement, space: &Arc<SpaceParams>) -> Result<TorusElement> {
    let expected = UAlgebra::for_space(space);
    if a.alg.ring != expected.ring {
        return Err(Error::ParameterMismatch(format!(
            "coefficient ring {:?} does not match Q[X1..X{}]",
            a.alg.ring,
            space.r()
        )));
    }
    if a.alg.n != expected.n {
        return Err(Error::ParameterMismatch(format!("n = {} but d0 = {}", a.alg.n, expected.n)));
    }
    if a.alg.u != expected.u {
        return Err(Error::ParameterMismatch(format!("u = {} is not u_XY = {}", a.alg.u, expected.u)));
    }
    let c = canonical_elements(space);
    let s = space.degree_form();
    let mut out = TorusElement::zero(space);
    for (&w, p) in &a.parts {
        let z = if w >= 0 { c.x.pow(w as u32) } else { c.y.pow((-w) as u32) };
        let pe = TorusElement::part_at(space, 0, p.substitute(E_VAR, &s));
        out = &out + &z.t_mul(&pe);
    }
    Ok(out)
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (&w, p)) in self.parts.iter().rev().enumerate() {
            let mono = if w >= 0 { power_text("x", w as u32) } else { power_text("y", (-w) as u32) };
            fmt_pbw(f, &mono, p, idx == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::parse;
    use crate::smith::parse_letters;

    fn p(s: &str) -> RatPoly {
        parse(s).unwrap()
    }

    fn q_alg() -> Arc<UAlgebra> {
        UAlgebra::new(CoeffRing::Q, p("t^2 + 3*t - 1"), 2).unwrap()
    }

    #[test]
    fn defining_relations() {
        let a = q_alg();
        let nf = |w: &str| u_normal_form(&a, &parse_letters(w).unwrap()).unwrap();
        assert_eq!(nf("xy"), UElement::monomial(&a, 0, p("e^2 + 3*e - 1")));
        assert_eq!(nf("yx"), UElement::monomial(&a, 0, p("(e+2)^2 + 3*(e+2) - 1")));
        let u = p("e^2 + 3*e - 1");
        assert_eq!(nf("xxyy"), UElement::monomial(&a, 0, u.clone() * u.shift(E_VAR, &crate::ratpoly::rat(-2))));
        assert_eq!(nf("ex"), UElement::monomial(&a, 1, p("e + 2")));
    }

    #[test]
    fn associativity_on_words() {
        let a = q_alg();
        let nf = |w: &str| u_normal_form(&a, &parse_letters(w).unwrap()).unwrap();
        for (l, m, r) in [("xey", "yy", "xxe"), ("yyx", "exx", "y"), ("x", "yyy", "xx")] {
            assert_eq!(nf(l).u_mul(&nf(m)).u_mul(&nf(r)), nf(l).u_mul(&nf(m).u_mul(&nf(r))));
        }
    }

    #[test]
    fn evaluation_on_det2() {
        let s = SpaceParams::new(vec![2, 1], p("X0*(X0+X1+1)")).unwrap();
        let a = UAlgebra::for_space(&s);
        let c = canonical_elements(&s);
        assert_eq!(u_to_torus(&UElement::x(&a), &s).unwrap(), c.x);
        assert_eq!(u_to_torus(&UElement::e(&a), &s).unwrap(), c.e);
        let xy = u_normal_form(&a, &parse_letters("xy").unwrap()).unwrap();
        assert_eq!(u_to_torus(&xy, &s).unwrap(), TorusElement::part_at(&s, 0, s.b_y.clone()));
        assert!(u_to_torus(&UElement::x(&q_alg()), &s).is_err());
    }
}
