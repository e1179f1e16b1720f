//! Smith algebras `S(A, f, n)`: generated over `A` by `x, y, e` with
//! `[e, x] = n x`, `[e, y] = -n y`, `[y, x] = f(e)`.
//!
//! Elements are kept in the PBW basis `y^i x^j e^k`, stored as
//! `(i, j) -> P(e)` with `P` a polynomial in `e` over `A`. `A` is either `Q`
//! or `Q[X1..Xr]`, so coefficients are plain [`RatPoly`] values.

mod rewrite;
mod u_algebra;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;


use crate::ratpoly::{rat, RatPoly, Rational};
use crate::{Error, Result};

pub use rewrite::{rewrite_word, Strategy};
pub use u_algebra::{u_normal_form, u_to_torus, UAlgebra, UElement};

/// Name of the PBW generator `e` inside coefficient polynomials.
pub const E_VAR: &str = "e";
/// Name of the variable of `f` and `u`.
pub const T_VAR: &str = "t";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffRing {
    Q,
    /// Polynomial ring over `Q` in the listed variables.
    QPoly(Vec<String>),
}

impl CoeffRing {
    pub fn vars(&self) -> &[String] {
        match self {
            CoeffRing::Q => &[],
            CoeffRing::QPoly(v) => v,
        }
    }

    /// Checks that `p` only uses ring variables plus the `allowed` extras.
    pub fn check(&self, p: &RatPoly, allowed: &[&str]) -> Result<()> {
        for v in p.vars() {
            if !allowed.contains(&v.as_str()) && !self.vars().contains(v) {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.vars().iter().any(|v| v == E_VAR || v == T_VAR) {
            return Err(Error::InvalidParams(format!("ring variables may not be named `{E_VAR}` or `{T_VAR}`")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithAlgebra {
    pub ring: CoeffRing,
    /// `f(t)` with coefficients in the ring.
    pub f: RatPoly,
    pub n: i64,
}

impl SmithAlgebra {
    pub fn new(ring: CoeffRing, f: RatPoly, n: i64) -> Result<Arc<Self>> {
        ring.validate()?;
        if n < 1 {
            return Err(Error::InvalidParams(format!("n must be positive, got {n}")));
        }
        ring.check(&f, &[T_VAR])?;
        Ok(Arc::new(Self { ring, f, n }))
    }

    /// `f(e + c)`.
    fn f_at(&self, c: i64) -> RatPoly {
        self.f.substitute(T_VAR, &(RatPoly::var(E_VAR) + RatPoly::from_int(c)))
    }

    /// `F_a(e) = f(e) + f(e - n) + .. + f(e - (a-1) n)`, so that
    /// `x y^a = y^a x - y^(a-1) F_a(e)`.
    fn big_f(&self, a: u32) -> RatPoly {
        (0..a as i64).fold(RatPoly::zero(), |acc, q| acc + self.f_at(-q * self.n))
    }
}

type Terms = BTreeMap<(u32, u32), RatPoly>;

fn add_into(terms: &mut Terms, key: (u32, u32), p: RatPoly) {
    if p.is_zero() {
        return;
    }
    let merged = match terms.remove(&key) {
        Some(old) => old + p,
        None => p,
    };
    if !merged.is_zero() {
        terms.insert(key, merged);
    }
}

fn shift_e(p: &RatPoly, c: i64) -> RatPoly {
    p.shift(E_VAR, &rat(c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithElement {
    alg: Arc<SmithAlgebra>,
    terms: Terms,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    X,
    Y,
    E,
    Scalar(RatPoly),
}

/// Parses a word such as `xyxy` or `x e y`.
pub fn parse_letters(src: &str) -> Result<Vec<Letter>> {
    src.char_indices()
        .filter(|(_, c)| !c.is_whitespace() && *c != '*')
        .map(|(i, c)| match c {
            'x' => Ok(Letter::X),
            'y' => Ok(Letter::Y),
            'e' => Ok(Letter::E),
            other => Err(Error::Parse { pos: i, msg: format!("unexpected `{other}` in word") }),
        })
        .collect()
}

impl SmithElement {
    pub fn zero(alg: &Arc<SmithAlgebra>) -> Self {
        Self { alg: alg.clone(), terms: Terms::new() }
    }

    /// `y^i x^j P(e)`.
    pub fn monomial(alg: &Arc<SmithAlgebra>, i: u32, j: u32, p: RatPoly) -> Self {
        let mut terms = Terms::new();
        add_into(&mut terms, (i, j), p);
        Self { alg: alg.clone(), terms }
    }

    pub fn scalar(alg: &Arc<SmithAlgebra>, p: RatPoly) -> Self {
        Self::monomial(alg, 0, 0, p)
    }

    pub fn one(alg: &Arc<SmithAlgebra>) -> Self {
        Self::scalar(alg, RatPoly::one())
    }

    pub fn x(alg: &Arc<SmithAlgebra>) -> Self {
        Self::monomial(alg, 0, 1, RatPoly::one())
    }

    pub fn y(alg: &Arc<SmithAlgebra>) -> Self {
        Self::monomial(alg, 1, 0, RatPoly::one())
    }

    pub fn e(alg: &Arc<SmithAlgebra>) -> Self {
        Self::scalar(alg, RatPoly::var(E_VAR))
    }

    pub fn algebra(&self) -> &Arc<SmithAlgebra> {
        &self.alg
    }

    /// `(i, j) -> P(e)` for the basis elements `y^i x^j P(e)`.
    pub fn terms(&self) -> &BTreeMap<(u32, u32), RatPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, p) in &rhs.terms {
            add_into(&mut terms, *k, p.clone());
        }
        Self { alg: self.alg.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut terms = Terms::new();
        for (k, p) in &self.terms {
            add_into(&mut terms, *k, p.scale(c));
        }
        Self { alg: self.alg.clone(), terms }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&rat(-1)))
    }

    /// `x * (sum of y^a x^b R(e))`.
    fn left_x(&self, terms: &Terms, cache: &mut Vec<RatPoly>) -> Terms {
        let mut out = Terms::new();
        for (&(a, b), r) in terms {
            add_into(&mut out, (a, b + 1), r.clone());
            if a >= 1 {
                while cache.len() <= a as usize {
                    let k = cache.len() as u32;
                    cache.push(self.alg.big_f(k));
                }
                let fa = shift_e(&cache[a as usize], b as i64 * self.alg.n);
                add_into(&mut out, (a - 1, b), -(fa * r));
            }
        }
        out
    }

    pub fn s_mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.alg, rhs.alg, "elements of different Smith algebras");
        let n = self.alg.n;
        let mut cache = Vec::new();
        let mut out = Terms::new();
        for (&(i, j), p) in &self.terms {
            for (&(k, l), q) in &rhs.terms {
                // P(e) y^k x^l = y^k x^l P(e + (l - k) n)
                let r = shift_e(p, (l as i64 - k as i64) * n) * q;
                let mut cur = Terms::new();
                add_into(&mut cur, (k, l), r);
                for _ in 0..j {
                    cur = self.left_x(&cur, &mut cache);
                }
                for ((a, b), r) in cur {
                    add_into(&mut out, (a + i, b), r);
                }
            }
        }
        Self { alg: self.alg.clone(), terms: out }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.s_mul(rhs).sub(&rhs.s_mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.alg), |acc, _| acc.s_mul(self))
    }
}

/// PBW normal form of a product of letters.
pub fn s_normal_form(alg: &Arc<SmithAlgebra>, word: &[Letter]) -> Result<SmithElement> {
    let mut acc = SmithElement::one(alg);
    for letter in word {
        let g = match letter {
            Letter::X => SmithElement::x(alg),
            Letter::Y => SmithElement::y(alg),
            Letter::E => SmithElement::e(alg),
            Letter::Scalar(c) => {
                alg.ring.check(c, &[])?;
                SmithElement::scalar(alg, c.clone())
            }
        };
        acc = acc.s_mul(&g);
    }
    Ok(acc)
}

/// The `u` with `u(t + n) - u(t) = f(t)` and zero constant term.
pub fn discrete_antiderivative(f: &RatPoly, n: i64) -> RatPoly {
    assert!(n >= 1, "n must be positive");
    let t = RatPoly::var(T_VAR);
    let mut rem = f.clone();
    let mut u = RatPoly::zero();
    while !rem.is_zero() {
        let d = rem.degree_in(T_VAR);
        let lc = rem.coefficients_in(T_VAR).pop().expect("nonzero");
        let term = lc.scale(&Rational::new((1).into(), (n * (d + 1)).into())) * t.pow(d as u32 + 1);
        rem = rem - (term.shift(T_VAR, &rat(n)) - &term);
        u += term;
    }
    u
}

/// `Omega_1 = x y - u(e)`.
pub fn casimir(alg: &Arc<SmithAlgebra>) -> SmithElement {
    let u = discrete_antiderivative(&alg.f, alg.n).rename(T_VAR, E_VAR);
    let xy = SmithElement::x(alg).s_mul(&SmithElement::y(alg));
    xy.sub(&SmithElement::scalar(alg, u))
}

/// `Omega_2 = x y + y x - u(e + n) - u(e)`.
pub fn casimir2(alg: &Arc<SmithAlgebra>) -> SmithElement {
    let u = discrete_antiderivative(&alg.f, alg.n).rename(T_VAR, E_VAR);
    let x = SmithElement::x(alg);
    let y = SmithElement::y(alg);
    let sym = x.s_mul(&y).add(&y.s_mul(&x));
    sym.sub(&SmithElement::scalar(alg, shift_e(&u, alg.n) + u))
}

/// Writes `y^i x^j` followed by a parenthesized coefficient.
pub(crate) fn fmt_pbw(f: &mut fmt::Formatter<'_>, mono: &str, p: &RatPoly, first: bool) -> fmt::Result {
    if !first {
        f.write_str(" + ")?;
    }
    match (mono.is_empty(), p.is_one()) {
        (true, _) => write!(f, "({p})"),
        (false, true) => f.write_str(mono),
        (false, false) => write!(f, "{mono}*({p})"),
    }
}

pub(crate) fn power_text(letter: &str, k: u32) -> String {
    match k {
        0 => String::new(),
        1 => letter.to_string(),
        _ => format!("{letter}^{k}"),
    }
}

impl fmt::Display for SmithElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (idx, (i, j)) in keys.into_iter().enumerate() {
            let mono: Vec<String> = [power_text("y", i), power_text("x", j)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            fmt_pbw(f, &mono.join("*"), &self.terms[&(i, j)], idx == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{parse, ratio};

    fn p(s: &str) -> RatPoly {
        parse(s).unwrap()
    }

    fn alg(f: &str, n: i64) -> Arc<SmithAlgebra> {
        SmithAlgebra::new(CoeffRing::Q, p(f), n).unwrap()
    }

    #[test]
    fn defining_relations() {
        let a = alg("t^2+1", 2);
        let xy = s_normal_form(&a, &parse_letters("xy").unwrap()).unwrap();
        let expected = SmithElement::monomial(&a, 1, 1, RatPoly::one()).sub(&SmithElement::scalar(&a, p("e^2+1")));
        assert_eq!(xy, expected);
        let ex = s_normal_form(&a, &parse_letters("ex").unwrap()).unwrap();
        assert_eq!(ex, SmithElement::monomial(&a, 0, 1, p("e + 2")));
        let ye = s_normal_form(&a, &parse_letters("ye").unwrap()).unwrap();
        assert_eq!(ye, SmithElement::monomial(&a, 1, 0, p("e")));
    }

    #[test]
    fn antiderivative_examples() {
        assert!(discrete_antiderivative(&RatPoly::zero(), 3).is_zero());
        assert_eq!(discrete_antiderivative(&p("t"), 2), p("(t^2 - 2*t)/4"));
        let f = p("3*t^4 - t + 5*X1*t^2 + X2");
        let u = discrete_antiderivative(&f, 3);
        assert_eq!(u.shift(T_VAR, &rat(3)) - &u, f);
        assert!(u.eval_vars(&[(T_VAR, rat(0))]).is_zero());
    }

    #[test]
    fn casimir_examples() {
        let a = alg("0", 3);
        assert_eq!(casimir(&a), SmithElement::x(&a).s_mul(&SmithElement::y(&a)));
        let b = alg("t", 2);
        let om = casimir(&b);
        let xy = SmithElement::x(&b).s_mul(&SmithElement::y(&b));
        assert_eq!(om, xy.sub(&SmithElement::scalar(&b, p("(e^2-2*e)/4"))));
        for g in [SmithElement::x(&b), SmithElement::y(&b), SmithElement::e(&b)] {
            assert!(om.commutator(&g).is_zero());
        }
        assert_eq!(casimir2(&b), om.scale(&rat(2)));
    }

    #[test]
    fn sl2_brackets() {
        let a = alg("t", 1);
        let h = SmithElement::e(&a).scale(&rat(2));
        let e = SmithElement::x(&a);
        let f = SmithElement::y(&a).scale(&rat(-2));
        assert_eq!(h.commutator(&e), e.scale(&rat(2)));
        assert_eq!(h.commutator(&f), f.scale(&rat(-2)));
        assert_eq!(e.commutator(&f), h);
    }

    #[test]
    fn weight_grading() {
        let a = alg("t^3 - 2*t", 3);
        let e = SmithElement::e(&a);
        for (i, j, k) in [(0, 0, 2), (2, 1, 0), (1, 3, 1)] {
            let m = SmithElement::monomial(&a, i, j, RatPoly::var(E_VAR).pow(k));
            assert_eq!(e.commutator(&m), m.scale(&rat(3 * (j as i64 - i as i64))));
        }
    }

    #[test]
    fn polynomial_coefficients() {
        let ring = CoeffRing::QPoly(vec!["X1".into(), "X2".into()]);
        let a = SmithAlgebra::new(ring, p("X1*t^2 + X2"), 2).unwrap();
        let om = casimir(&a);
        for g in [SmithElement::x(&a), SmithElement::y(&a), SmithElement::e(&a)] {
            assert!(om.commutator(&g).is_zero());
        }
        assert!(SmithAlgebra::new(CoeffRing::Q, p("X1*t"), 1).is_err());
        assert!(SmithAlgebra::new(CoeffRing::Q, p("t"), 0).is_err());
        let half = SmithElement::scalar(&a, RatPoly::constant(ratio(1, 2)));
        assert_eq!(half.s_mul(&SmithElement::x(&a)), SmithElement::x(&a).scale(&ratio(1, 2)));
    }

    #[test]
    fn display() {
        let a = alg("t^2+1", 2);
        let xy = s_normal_form(&a, &parse_letters("xy").unwrap()).unwrap();
        assert_eq!(xy.to_string(), "y*x + (-e^2 - 1)");
        assert!(parse_letters("xz").is_err());
    }
}
