//! Exact multivariate polynomials over the rationals.
//!
//! A [`RatPoly`] is kept in canonical form at all times: its variable
//! universe is exactly the set of variables that occur with a positive
//! exponent, sorted in natural order (`X2 < X10`), and no zero coefficient
//! is stored. Structural equality is therefore value equality, and
//! polynomials built in different modules combine by variable name.

mod interpolate;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub use interpolate::interpolate_grid;
pub use text::parse;

/// Exact rational coefficient, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Name of the variable that carries the `a_0` slot of a Bernstein-Sato polynomial.
pub const X0: &str = "X0";

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Name of the `i`-th Bernstein-Sato coordinate, `X{i}`.
pub fn xvar(i: usize) -> String {
    format!("X{i}")
}

/// Natural ordering on variable names: digit runs compare numerically.
pub fn var_cmp(a: &str, b: &str) -> Ordering {
    let (mut ai, mut bi) = (a.char_indices().peekable(), b.char_indices().peekable());
    loop {
        match (ai.peek().copied(), bi.peek().copied()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((_, ca)), Some((_, cb))) if ca.is_ascii_digit() && cb.is_ascii_digit() => {
                let mut na = String::new();
                while let Some(&(_, c)) = ai.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    na.push(c);
                    ai.next();
                }
                let mut nb = String::new();
                while let Some(&(_, c)) = bi.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    nb.push(c);
                    bi.next();
                }
                let ta = na.trim_start_matches('0');
                let tb = nb.trim_start_matches('0');
                let ord = ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| na.len().cmp(&nb.len()));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            (Some((_, ca)), Some((_, cb))) => {
                if ca != cb {
                    return ca.cmp(&cb);
                }
                ai.next();
                bi.next();
            }
        }
    }
}

type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        Self { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from `(variables, terms)`; the result is canonicalized.
    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.len(), vars.len());
            add_term(&mut acc, e, c);
        }
        canonicalize(vars, acc)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial, `None` when a variable occurs.
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.vars.is_empty() {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn constant_term(&self) -> Rational {
        let zero = vec![0; self.vars.len()];
        self.terms.get(&zero).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial has degree -1.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as i64).sum::<i64>())
            .max()
            .unwrap_or(-1)
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Degree in one variable; -1 for the zero polynomial.
    pub fn degree_in(&self, name: &str) -> i64 {
        if self.is_zero() {
            return -1;
        }
        match self.index_of(name) {
            None => 0,
            Some(i) => self.terms.keys().map(|e| e[i] as i64).max().unwrap_or(0),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients of `self` as a polynomial in `name`: entry `k` multiplies `name^k`.
    pub fn coefficients_in(&self, name: &str) -> Vec<RatPoly> {
        let Some(idx) = self.index_of(name) else {
            return if self.is_zero() { Vec::new() } else { vec![self.clone()] };
        };
        let deg = self.degree_in(name) as usize;
        let mut buckets: Vec<BTreeMap<Exponents, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[idx] as usize;
            let mut rest = e.clone();
            rest[idx] = 0;
            buckets[k].insert(rest, c.clone());
        }
        buckets
            .into_iter()
            .map(|b| canonicalize(self.vars.clone(), b))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(name: &str, coeffs: &[RatPoly]) -> Self {
        let x = Self::var(name);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Exact composition: replaces every occurrence of `name` by `expr`.
    pub fn substitute(&self, name: &str, expr: &RatPoly) -> Self {
        if !self.contains_var(name) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(name);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * expr) + c;
        }
        acc
    }

    /// Replaces each listed variable by a rational value.
    pub fn eval_vars(&self, values: &[(&str, Rational)]) -> Self {
        let slots: Vec<Option<&Rational>> = self
            .vars
            .iter()
            .map(|v| values.iter().find(|(n, _)| *n == v).map(|(_, q)| q))
            .collect();
        if slots.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = e.clone();
            for (i, slot) in slots.iter().enumerate() {
                if let Some(q) = slot {
                    if e[i] > 0 {
                        coeff *= num_traits::pow::pow((*q).clone(), e[i] as usize);
                    }
                    rest[i] = 0;
                }
            }
            add_term(&mut acc, rest, coeff);
        }
        canonicalize(self.vars.clone(), acc)
    }

    /// Full evaluation; every variable of `self` must be assigned.
    pub fn eval(&self, values: &[(&str, Rational)]) -> crate::Result<Rational> {
        let reduced = self.eval_vars(values);
        reduced
            .constant_value()
            .ok_or_else(|| crate::Error::UnknownVariable(reduced.vars[0].clone()))
    }

    /// `P(name + c)`.
    pub fn shift(&self, name: &str, c: &Rational) -> Self {
        if c.is_zero() || !self.contains_var(name) {
            return self.clone();
        }
        let idx = self.index_of(name).expect("checked above");
        let deg = self.degree_in(name) as usize;
        let mut powers = vec![Rational::one()];
        for _ in 0..deg {
            let next = powers.last().unwrap() * c;
            powers.push(next);
        }
        // binomial rows up to deg
        let mut binom: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        for k in 1..=deg {
            let prev = &binom[k - 1];
            let row: Vec<Rational> = (0..=k)
                .map(|j| {
                    let a = if j > 0 { prev[j - 1].clone() } else { Rational::zero() };
                    let b = if j < k { prev[j].clone() } else { Rational::zero() };
                    a + b
                })
                .collect();
            binom.push(row);
        }
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, coeff) in &self.terms {
            let k = e[idx] as usize;
            for j in 0..=k {
                let mut f = e.clone();
                f[idx] = j as u32;
                add_term(&mut acc, f, coeff * &binom[k][j] * &powers[k - j]);
            }
        }
        canonicalize(self.vars.clone(), acc)
    }

    /// `P(X0 + l, X1, .., Xr)`.
    pub fn shift_x0(&self, l: i64) -> Self {
        self.shift(X0, &rat(l))
    }

    pub fn rename(&self, from: &str, to: &str) -> Self {
        if from == to || !self.contains_var(from) {
            return self.clone();
        }
        if self.contains_var(to) {
            return self.substitute(from, &Self::var(to));
        }
        let vars = self.vars.iter().map(|v| if v == from { to.to_string() } else { v.clone() }).collect();
        canonicalize(vars, self.terms.clone())
    }

    pub fn derivative(&self, name: &str) -> Self {
        let Some(idx) = self.index_of(name) else {
            return Self::zero();
        };
        let mut acc = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[idx] -= 1;
            add_term(&mut acc, ne, c * rat(e[idx] as i64));
        }
        canonicalize(self.vars.clone(), acc)
    }

    /// Rewrites `self` in powers of the degree form `s = d0*X0 + .. + dr*Xr`.
    ///
    /// Returns `(alpha_0, .., alpha_p)`, each free of `X0`, with
    /// `self = sum_i alpha_i * s^i`. Variables `X{i}` with `i > r` are treated
    /// as part of the coefficient ring.
    pub fn degree_form_expand(&self, weights: &[i64]) -> crate::Result<Vec<RatPoly>> {
        let d0 = *weights
            .first()
            .ok_or_else(|| crate::Error::InvalidParams("empty weight vector".into()))?;
        if d0 < 1 {
            return Err(crate::Error::InvalidParams(format!("d0 must be positive, got {d0}")));
        }
        const S: &str = "__degree_form";
        let mut x0_repl = Self::var(S);
        for (i, &d) in weights.iter().enumerate().skip(1) {
            x0_repl -= Self::var(&xvar(i)).scale(&rat(d));
        }
        let x0_repl = x0_repl.scale(&ratio(1, d0));
        Ok(self.substitute(X0, &x0_repl).coefficients_in(S))
    }

    /// Reassembles `sum_i coeffs[i] * (d0*X0 + .. + dr*Xr)^i`.
    pub fn degree_form_reconstruct(coeffs: &[RatPoly], weights: &[i64]) -> Self {
        Self::horner(coeffs, &degree_form(weights))
    }

    /// `sum_i coeffs[i] * arg^i`.
    pub fn horner(coeffs: &[RatPoly], arg: &RatPoly) -> Self {
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * arg) + c;
        }
        acc
    }

    /// Leading coefficient in the current term order; zero for zero.
    pub fn leading_coefficient(&self) -> Rational {
        self.terms.values().next_back().cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` with `self == c * other`, if such a rational `c` exists.
    pub fn ratio_to(&self, other: &RatPoly) -> Option<Rational> {
        if other.is_zero() {
            return if self.is_zero() { Some(Rational::zero()) } else { None };
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return None;
        }
        let (e0, c0) = other.terms.iter().next().unwrap();
        let c = self.terms.get(e0)? / c0;
        let ok = other
            .terms
            .iter()
            .all(|(e, v)| self.terms.get(e).is_some_and(|s| *s == v * &c));
        ok.then_some(c)
    }

    /// Embeds the exponent vectors into a larger universe. `universe` must
    /// contain every variable of `self`.
    pub fn exponents_in(&self, universe: &[String]) -> crate::Result<Vec<(Vec<u32>, Rational)>> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                universe
                    .iter()
                    .position(|u| u == v)
                    .ok_or_else(|| crate::Error::UnknownVariable(v.clone()))
            })
            .collect::<crate::Result<_>>()?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut full = vec![0u32; universe.len()];
                for (i, &k) in e.iter().enumerate() {
                    full[map[i]] = k;
                }
                (full, c.clone())
            })
            .collect())
    }

    fn aligned_with(&self, universe: &[String]) -> BTreeMap<Exponents, Rational> {
        if self.vars == universe {
            return self.terms.clone();
        }
        self.exponents_in(universe)
            .expect("universe is a superset")
            .into_iter()
            .collect()
    }
}

/// `d0*X0 + d1*X1 + .. + dr*Xr`.
pub fn degree_form(weights: &[i64]) -> RatPoly {
    let mut s = RatPoly::zero();
    for (i, &d) in weights.iter().enumerate() {
        s += RatPoly::var(&xvar(i)).scale(&rat(d));
    }
    s
}

fn add_term(acc: &mut BTreeMap<Exponents, Rational>, e: Exponents, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Drops unused variables and sorts the universe into natural order.
fn canonicalize(vars: Vec<String>, terms: BTreeMap<Exponents, Rational>) -> RatPoly {
    let used: Vec<bool> = (0..vars.len())
        .map(|i| terms.keys().any(|e| e[i] > 0))
        .collect();
    let mut keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
    keep.sort_by(|&a, &b| var_cmp(&vars[a], &vars[b]));
    let identity = keep.len() == vars.len() && keep.iter().enumerate().all(|(i, &k)| i == k);
    if identity {
        return RatPoly { vars, terms };
    }
    let new_vars: Vec<String> = keep.iter().map(|&i| vars[i].clone()).collect();
    let new_terms = terms
        .into_iter()
        .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c))
        .collect();
    RatPoly { vars: new_vars, terms: new_terms }
}

fn merged_universe(a: &[String], b: &[String]) -> Vec<String> {
    if a == b {
        return a.to_vec();
    }
    let mut u: Vec<String> = a.to_vec();
    for v in b {
        if !u.contains(v) {
            u.push(v.clone());
        }
    }
    u.sort_by(|x, y| var_cmp(x, y));
    u
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let universe = merged_universe(&self.vars, &rhs.vars);
        let mut acc = self.aligned_with(&universe);
        for (e, c) in rhs.aligned_with(&universe) {
            add_term(&mut acc, e, c);
        }
        canonicalize(universe, acc)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let universe = merged_universe(&self.vars, &rhs.vars);
        let mut acc = self.aligned_with(&universe);
        for (e, c) in rhs.aligned_with(&universe) {
            add_term(&mut acc, e, -c);
        }
        canonicalize(universe, acc)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let universe = merged_universe(&self.vars, &rhs.vars);
        let a = self.aligned_with(&universe);
        let b = rhs.aligned_with(&universe);
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                add_term(&mut acc, e, ca * cb);
            }
        }
        canonicalize(universe, acc)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: &RatPoly) -> RatPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatPoly> for &RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl AddAssign<RatPoly> for RatPoly {
    fn add_assign(&mut self, rhs: RatPoly) {
        *self = &*self + &rhs;
    }
}

impl AddAssign<&RatPoly> for RatPoly {
    fn add_assign(&mut self, rhs: &RatPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<RatPoly> for RatPoly {
    fn sub_assign(&mut self, rhs: RatPoly) {
        *self = &*self - &rhs;
    }
}

impl SubAssign<&RatPoly> for RatPoly {
    fn sub_assign(&mut self, rhs: &RatPoly) {
        *self = &*self - rhs;
    }
}

impl From<Rational> for RatPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RatPoly {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Rational to `i64` when it is an integer that fits.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}
