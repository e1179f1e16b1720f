//! The algebra of invariant operators, stored through its Bernstein-Sato data.
//!
//! An element is a finite sum `sum_m t^m P_m(X0, X1, .., Xr)` where `X0` plays
//! the role of `t d/dt`. Products follow
//! `(t^m P)(t^l Q) = t^(m+l) P(X0 + l, ..) Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::ratpoly::{degree_form, rat, ratio, xvar, RatPoly, Rational, X0};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceParams {
    /// `d0, d1, .., dr`.
    pub degrees: Vec<i64>,
    /// Bernstein-Sato polynomial of `Y`, in `X0..Xr`.
    #[serde(serialize_with = "ser_display")]
    pub b_y: RatPoly,
}

pub(crate) fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl SpaceParams {
    pub fn new(degrees: Vec<i64>, b_y: RatPoly) -> Result<Arc<Self>> {
        match degrees.first() {
            None => return Err(Error::InvalidParams("empty degree sequence".into())),
            Some(&d0) if d0 < 1 => return Err(Error::InvalidParams(format!("d0 must be >= 1, got {d0}"))),
            _ => {}
        }
        if degrees.iter().any(|&d| d < 1) {
            return Err(Error::InvalidParams("degrees must be positive".into()));
        }
        if b_y.is_zero() {
            return Err(Error::InvalidParams("b_Y must be nonzero".into()));
        }
        let allowed: Vec<String> = (0..degrees.len()).map(xvar).collect();
        if let Some(v) = b_y.vars().iter().find(|v| !allowed.contains(v)) {
            return Err(Error::UnknownVariable(v.clone()));
        }
        Ok(Arc::new(Self { degrees, b_y }))
    }

    pub fn r(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn d0(&self) -> i64 {
        self.degrees[0]
    }

    /// `s = d0*X0 + .. + dr*Xr`, the Bernstein-Sato polynomial of `E`.
    pub fn degree_form(&self) -> RatPoly {
        degree_form(&self.degrees)
    }

    /// `-(d1*X1 + .. + dr*Xr)/d0`: the value of `X0` on which `s` vanishes.
    pub fn central_x0(&self) -> RatPoly {
        let mut acc = RatPoly::zero();
        for (i, &d) in self.degrees.iter().enumerate().skip(1) {
            acc -= RatPoly::var(&xvar(i)).scale(&rat(d));
        }
        acc.scale(&ratio(1, self.d0()))
    }
}

#[derive(Clone, Debug)]
pub struct TorusElement {
    space: Arc<SpaceParams>,
    parts: BTreeMap<i64, RatPoly>,
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.space, &other.space) || self.space == other.space) && self.parts == other.parts
    }
}

impl Eq for TorusElement {}

fn same_space(a: &TorusElement, b: &TorusElement) {
    assert!(
        Arc::ptr_eq(&a.space, &b.space) || a.space == b.space,
        "torus elements over different spaces"
    );
}

impl TorusElement {
    pub fn zero(space: &Arc<SpaceParams>) -> Self {
        Self { space: space.clone(), parts: BTreeMap::new() }
    }

    pub fn one(space: &Arc<SpaceParams>) -> Self {
        Self::part_at(space, 0, RatPoly::one())
    }

    /// `t^m P`.
    pub fn part_at(space: &Arc<SpaceParams>, m: i64, p: RatPoly) -> Self {
        let mut parts = BTreeMap::new();
        if !p.is_zero() {
            parts.insert(m, p);
        }
        Self { space: space.clone(), parts }
    }

    pub fn from_parts(space: &Arc<SpaceParams>, parts: impl IntoIterator<Item = (i64, RatPoly)>) -> Self {
        let mut out = Self::zero(space);
        for (m, p) in parts {
            out.add_part(m, p);
        }
        out
    }

    fn add_part(&mut self, m: i64, p: RatPoly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.parts.remove(&m) {
            Some(old) => old + p,
            None => p,
        };
        if !merged.is_zero() {
            self.parts.insert(m, merged);
        }
    }

    pub fn space(&self) -> &Arc<SpaceParams> {
        &self.space
    }

    pub fn parts(&self) -> &BTreeMap<i64, RatPoly> {
        &self.parts
    }

    pub fn part(&self, m: i64) -> RatPoly {
        self.parts.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_parts(&self.space, self.parts.iter().map(|(&m, p)| (m, p.scale(c))))
    }

    /// Multiplication by a polynomial living at `m = 0` on the left.
    pub fn mul_poly(&self, q: &RatPoly) -> Self {
        Self::from_parts(&self.space, self.parts.iter().map(|(&m, p)| (m, p * q)))
    }

    /// Twisted product.
    pub fn t_mul(&self, rhs: &TorusElement) -> TorusElement {
        same_space(self, rhs);
        let mut out = TorusElement::zero(&self.space);
        for (&l, q) in &rhs.parts {
            for (&m, p) in &self.parts {
                out.add_part(m + l, p.shift_x0(l) * q);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> TorusElement {
        let mut acc = TorusElement::one(&self.space);
        for _ in 0..k {
            acc = acc.t_mul(self);
        }
        acc
    }

    pub fn commutator(&self, rhs: &TorusElement) -> TorusElement {
        &self.t_mul(rhs) - &rhs.t_mul(self)
    }

    /// `X D X^-1`.
    pub fn tau(&self) -> TorusElement {
        self.tau_pow(1)
    }

    /// `X^-1 D X`.
    pub fn tau_inv(&self) -> TorusElement {
        self.tau_pow(-1)
    }

    /// `X^k D X^-k`; on each part this shifts `X0` by `-k`.
    pub fn tau_pow(&self, k: i64) -> TorusElement {
        let x = x_power(&self.space, k);
        let xi = x_power(&self.space, -k);
        x.t_mul(self).t_mul(&xi)
    }

    /// Homogeneous components keyed by degree.
    pub fn grade(&self) -> BTreeMap<i64, TorusElement> {
        self.parts
            .iter()
            .map(|(&m, p)| (m, TorusElement::part_at(&self.space, m, p.clone())))
            .collect()
    }

    pub fn is_degree_zero(&self) -> bool {
        self.parts.keys().all(|&m| m == 0)
    }

    /// Central iff concentrated in degree 0 and free of `X0`.
    pub fn is_central(&self) -> bool {
        self.is_degree_zero() && self.parts.values().all(|p| !p.contains_var(X0))
    }

    fn degree_zero_poly(&self) -> Result<RatPoly> {
        if !self.is_degree_zero() {
            return Err(Error::NotDegreeZero(self.parts.keys().copied().collect()));
        }
        Ok(self.part(0))
    }

    /// Projection `T_0 -> Z(T)` along `E T_0`.
    pub fn project_center(&self) -> Result<TorusElement> {
        let p = self.degree_zero_poly()?;
        Ok(TorusElement::part_at(&self.space, 0, p.substitute(X0, &self.space.central_x0())))
    }

    /// Symbolic action on the highest-weight vector with label `a`: entry `m`
    /// is the scalar in front of `Delta_0^(a0+m) * prod Delta_i^ai`.
    pub fn act_on_label(&self, a: &[i64]) -> Result<BTreeMap<i64, Rational>> {
        let names: Vec<String> = (0..a.len()).map(xvar).collect();
        let point: Vec<(&str, Rational)> = names.iter().map(String::as_str).zip(a.iter().map(|&k| rat(k))).collect();
        let mut out = BTreeMap::new();
        for (&m, p) in &self.parts {
            let v = p.eval(&point)?;
            if !v.is_zero() {
                out.insert(m, v);
            }
        }
        Ok(out)
    }
}

/// `X^k` for any integer `k` (negative powers are `X^-1` powers).
pub fn x_power(space: &Arc<SpaceParams>, k: i64) -> TorusElement {
    TorusElement::part_at(space, k, RatPoly::one())
}

#[derive(Clone, Debug)]
pub struct CanonicalElements {
    pub e: TorusElement,
    pub x: TorusElement,
    pub xinv: TorusElement,
    pub y: TorusElement,
}

pub fn canonical_elements(space: &Arc<SpaceParams>) -> CanonicalElements {
    CanonicalElements {
        e: TorusElement::part_at(space, 0, space.degree_form()),
        x: x_power(space, 1),
        xinv: x_power(space, -1),
        y: TorusElement::part_at(space, -1, space.b_y.clone()),
    }
}

/// `D_l = X^(1-l) Y X^l`.
pub fn d_ell(space: &Arc<SpaceParams>, l: i64) -> TorusElement {
    let c = canonical_elements(space);
    x_power(space, 1 - l).t_mul(&c.y).t_mul(&x_power(space, l))
}

/// Coefficients of `u_XY(t)`, each a polynomial in `X1..Xr`.
pub fn u_xy(space: &SpaceParams) -> Vec<RatPoly> {
    space
        .b_y
        .degree_form_expand(&space.degrees)
        .expect("validated weights")
}

/// `sum_i coeffs[i] (E + c)^i` as a degree-zero element.
pub fn eval_at_e(space: &Arc<SpaceParams>, coeffs: &[RatPoly], c: &Rational) -> TorusElement {
    let arg = space.degree_form() + RatPoly::constant(c.clone());
    TorusElement::part_at(space, 0, RatPoly::horner(coeffs, &arg))
}

/// `f_XY(t) = u_XY(t + d0) - u_XY(t)`, coefficients in `t`.
pub fn f_xy(space: &SpaceParams) -> Vec<RatPoly> {
    let u = RatPoly::horner(&u_xy(space), &RatPoly::var("t"));
    let f = u.shift("t", &rat(space.d0())) - u;
    f.coefficients_in("t")
}

/// `X0`-coefficients of `p` together with their construction as iterated
/// differences `(1 - tau)^k p / k!`, which only uses `p, tau p, tau^2 p, ..`.
/// Zero coefficients are dropped.
pub fn tau_invariant_generators(p: &RatPoly) -> Vec<RatPoly> {
    let deg = p.degree_in(X0);
    if deg < 0 {
        return Vec::new();
    }
    let delta = |q: &RatPoly| q - &q.shift_x0(-1);
    let mut rest = p.clone();
    let mut coeffs = vec![RatPoly::zero(); deg as usize + 1];
    let x0 = RatPoly::var(X0);
    for k in (0..=deg as usize).rev() {
        let mut d = rest.clone();
        let mut fact = Rational::one();
        for j in 1..=k {
            d = delta(&d);
            fact *= rat(j as i64);
        }
        let ck = d.scale(&fact.recip());
        debug_assert!(!ck.contains_var(X0));
        rest = rest - &ck * &x0.pow(k as u32);
        coeffs[k] = ck;
    }
    debug_assert!(rest.is_zero());
    coeffs.into_iter().filter(|c| !c.is_zero()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    X,
    Xinv,
    Y,
    E,
}

/// Parses words like `X*Y*Y`, `XY`, `Xinv Y X^2`, `E^3`.
pub fn parse_word(src: &str) -> Result<Vec<Gen>> {
    let b = src.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() || c == b'*' || c == b'.' {
            i += 1;
            continue;
        }
        let (g, len) = if src[i..].starts_with("Xinv") {
            (Gen::Xinv, 4)
        } else {
            match c {
                b'X' => (Gen::X, 1),
                b'Y' => (Gen::Y, 1),
                b'E' => (Gen::E, 1),
                _ => {
                    return Err(Error::Parse { pos: i, msg: format!("unexpected `{}` in word", c as char) });
                }
            }
        };
        i += len;
        let mut k = 1usize;
        if i < b.len() && b[i] == b'^' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            k = src[start..j]
                .parse()
                .map_err(|_| Error::Parse { pos: start, msg: "expected a natural exponent".into() })?;
            i = j;
        }
        out.extend(std::iter::repeat_n(g, k));
    }
    Ok(out)
}

/// Multiplies out a word of generators.
pub fn eval_word(space: &Arc<SpaceParams>, word: &[Gen]) -> TorusElement {
    let c = canonical_elements(space);
    word.iter().fold(TorusElement::one(space), |acc, g| {
        let f = match g {
            Gen::X => &c.x,
            Gen::Xinv => &c.xinv,
            Gen::Y => &c.y,
            Gen::E => &c.e,
        };
        acc.t_mul(f)
    })
}

impl Add for &TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        same_space(self, rhs);
        let mut out = self.clone();
        for (&m, p) in &rhs.parts {
            out.add_part(m, p.clone());
        }
        out
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        self.scale(&-Rational::one())
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self + &(-rhs)
    }
}

impl Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.t_mul(rhs)
    }
}

/// Renders parts as `t^m * (P)` joined by ` + `, highest degree first.
pub fn fmt_parts<'a>(parts: impl DoubleEndedIterator<Item = (i64, &'a RatPoly)>) -> String {
    let mut pieces = Vec::new();
    for (m, p) in parts.rev() {
        if m == 0 {
            pieces.push(format!("({p})"));
        } else {
            pieces.push(format!("t^{m} * ({p})"));
        }
    }
    if pieces.is_empty() {
        "0".to_string()
    } else {
        pieces.join(" + ")
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_parts(self.parts.iter().map(|(&m, p)| (m, p))))
    }
}
