//! Differential operators with polynomial coefficients on a fixed set of
//! variables, stored in normal order `sum c * x^alpha * d^beta`.

mod instances;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ratpoly::{fmt_rational, RatPoly, Rational};
use crate::Result;

pub use instances::{build_instance, calibration, extract_bs, InstanceKind, OracleInstance};

type Key = (Vec<u32>, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    vars: Vec<String>,
    terms: BTreeMap<Key, Rational>,
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

fn binom(n: u32, k: u32) -> BigInt {
    falling(n, k) / falling(k, k)
}

fn insert(terms: &mut BTreeMap<Key, Rational>, key: Key, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(key).or_insert_with(Rational::zero);
    *slot += c;
}

fn prune(mut terms: BTreeMap<Key, Rational>) -> BTreeMap<Key, Rational> {
    terms.retain(|_, c| !c.is_zero());
    terms
}

impl WeylOperator {
    pub fn zero(vars: &[String]) -> Self {
        Self { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn identity(vars: &[String]) -> Self {
        Self::multiplication(vars, &RatPoly::one()).expect("constant")
    }

    /// Multiplication by `p`.
    pub fn multiplication(vars: &[String], p: &RatPoly) -> Result<Self> {
        let zero = vec![0u32; vars.len()];
        let terms = p
            .exponents_in(vars)?
            .into_iter()
            .map(|(e, c)| ((e, zero.clone()), c))
            .collect();
        Ok(Self { vars: vars.to_vec(), terms })
    }

    /// `d/dx_i`.
    pub fn partial(vars: &[String], i: usize) -> Self {
        let mut beta = vec![0u32; vars.len()];
        beta[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert((vec![0; vars.len()], beta), Rational::one());
        Self { vars: vars.to_vec(), terms }
    }

    /// Euler operator `sum x_i d/dx_i`.
    pub fn euler(vars: &[String]) -> Self {
        let n = vars.len();
        let mut terms = BTreeMap::new();
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            terms.insert((e.clone(), e), Rational::one());
        }
        Self { vars: vars.to_vec(), terms }
    }

    /// Constant-coefficient operator `q(d)`. `dual_vars[i]` is the dual
    /// coordinate paired with `vars[i]`; each monomial `y^beta` becomes `d^beta`.
    pub fn dual_operator(vars: &[String], dual_vars: &[String], q: &RatPoly) -> Result<Self> {
        let zero = vec![0u32; vars.len()];
        let terms = q
            .exponents_in(dual_vars)?
            .into_iter()
            .map(|(b, c)| ((zero.clone(), b), c))
            .collect();
        Ok(Self { vars: vars.to_vec(), terms })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a.as_slice(), b.as_slice(), c))
    }

    /// Largest total derivative order; -1 for zero.
    pub fn order(&self) -> i64 {
        self.terms
            .keys()
            .map(|(_, b)| b.iter().map(|&k| k as i64).sum())
            .max()
            .unwrap_or(-1)
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.keys().all(|(a, _)| a.iter().all(|&k| k == 0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: prune(self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect()),
        }
    }

    /// Action on a polynomial in (a subset of) the operator's variables.
    pub fn apply(&self, p: &RatPoly) -> Result<RatPoly> {
        let mono = p.exponents_in(&self.vars)?;
        let mut out: Vec<(Vec<u32>, Rational)> = Vec::new();
        for ((alpha, beta), c) in &self.terms {
            for (gamma, q) in &mono {
                if gamma.iter().zip(beta).any(|(g, b)| g < b) {
                    continue;
                }
                let mut coeff = BigInt::one();
                let mut e = Vec::with_capacity(gamma.len());
                for i in 0..gamma.len() {
                    coeff *= falling(gamma[i], beta[i]);
                    e.push(gamma[i] - beta[i] + alpha[i]);
                }
                out.push((e, c * q * Rational::from_integer(coeff)));
            }
        }
        Ok(RatPoly::from_terms(self.vars.clone(), out))
    }

    /// Normal-ordered product `self * rhs` via the Leibniz rule.
    pub fn compose(&self, rhs: &WeylOperator) -> WeylOperator {
        assert_eq!(self.vars, rhs.vars, "operators act on different variables");
        let n = self.vars.len();
        let mut terms = BTreeMap::new();
        for ((alpha, beta), c1) in &self.terms {
            for ((gamma, delta), c2) in &rhs.terms {
                let bounds: Vec<u32> = (0..n).map(|i| beta[i].min(gamma[i])).collect();
                let mut kappa = vec![0u32; n];
                loop {
                    let mut coeff = BigInt::one();
                    let mut x = Vec::with_capacity(n);
                    let mut d = Vec::with_capacity(n);
                    for i in 0..n {
                        coeff *= binom(beta[i], kappa[i]) * falling(gamma[i], kappa[i]);
                        x.push(alpha[i] + gamma[i] - kappa[i]);
                        d.push(beta[i] - kappa[i] + delta[i]);
                    }
                    insert(&mut terms, (x, d), c1 * c2 * Rational::from_integer(coeff));
                    // odometer over the box 0..=bounds
                    let mut i = 0;
                    while i < n {
                        if kappa[i] < bounds[i] {
                            kappa[i] += 1;
                            break;
                        }
                        kappa[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
        WeylOperator { vars: self.vars.clone(), terms: prune(terms) }
    }

    pub fn commutator(&self, rhs: &WeylOperator) -> WeylOperator {
        &self.compose(rhs) - &rhs.compose(self)
    }
}

impl Add for &WeylOperator {
    type Output = WeylOperator;
    fn add(self, rhs: &WeylOperator) -> WeylOperator {
        assert_eq!(self.vars, rhs.vars);
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            insert(&mut terms, k.clone(), c.clone());
        }
        WeylOperator { vars: self.vars.clone(), terms: prune(terms) }
    }
}

impl Neg for &WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        self.scale(&-Rational::one())
    }
}

impl Sub for &WeylOperator {
    type Output = WeylOperator;
    fn sub(self, rhs: &WeylOperator) -> WeylOperator {
        self + &(-rhs)
    }
}

impl Mul for &WeylOperator {
    type Output = WeylOperator;
    fn mul(self, rhs: &WeylOperator) -> WeylOperator {
        self.compose(rhs)
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((alpha, beta), c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, v) in self.vars.iter().enumerate() {
                match alpha[i] {
                    0 => {}
                    1 => factors.push(v.clone()),
                    k => factors.push(format!("{v}^{k}")),
                }
            }
            for (i, v) in self.vars.iter().enumerate() {
                match beta[i] {
                    0 => {}
                    1 => factors.push(format!("d{v}")),
                    k => factors.push(format!("d{v}^{k}")),
                }
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if factors.is_empty() {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{parse, rat};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn mixed_partial_on_product() {
        let v = vars(&["x1", "x2"]);
        let op = WeylOperator::partial(&v, 0).compose(&WeylOperator::partial(&v, 1));
        assert_eq!(op.apply(&parse("x1*x2").unwrap()).unwrap(), RatPoly::one());
    }

    #[test]
    fn canonical_commutation() {
        let v = vars(&["x1"]);
        let d = WeylOperator::partial(&v, 0);
        let x = WeylOperator::multiplication(&v, &RatPoly::var("x1")).unwrap();
        assert_eq!(d.commutator(&x), WeylOperator::identity(&v));
    }

    #[test]
    fn cayley_two_by_two() {
        let v = vars(&["x11", "x12", "x21", "x22"]);
        let dv = vars(&["y11", "y12", "y21", "y22"]);
        let op = WeylOperator::dual_operator(&v, &dv, &parse("y11*y22 - y12*y21").unwrap()).unwrap();
        assert!(op.has_constant_coefficients());
        let det = parse("x11*x22 - x12*x21").unwrap();
        assert_eq!(op.apply(&det).unwrap(), RatPoly::from_int(2));
        assert_eq!(op.to_string(), "dx11*dx22 - dx12*dx21");
    }

    #[test]
    fn dual_of_monomials() {
        let v = vars(&["x1", "x2"]);
        let dv = vars(&["y1", "y2"]);
        let d1 = WeylOperator::dual_operator(&v, &dv, &RatPoly::var("y1")).unwrap();
        assert_eq!(d1, WeylOperator::partial(&v, 0));
        let d12 = WeylOperator::dual_operator(&v, &dv, &parse("y1*y2").unwrap()).unwrap();
        assert_eq!(d12, WeylOperator::partial(&v, 0).compose(&WeylOperator::partial(&v, 1)));
    }

    #[test]
    fn compose_matches_sequential_apply() {
        let v = vars(&["x1", "x2"]);
        let a = &WeylOperator::multiplication(&v, &parse("x1^2 + x2").unwrap()).unwrap()
            * &WeylOperator::partial(&v, 1);
        let b = &WeylOperator::partial(&v, 0) * &WeylOperator::multiplication(&v, &parse("x2*x1").unwrap()).unwrap();
        let p = parse("x1^3*x2^2 - 4*x1*x2 + 7").unwrap();
        let lhs = a.compose(&b).apply(&p).unwrap();
        let rhs = a.apply(&b.apply(&p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_counts_degree() {
        let v = vars(&["x1", "x2", "x3"]);
        let p = parse("x1^2*x3 + 5*x2^3").unwrap();
        assert_eq!(WeylOperator::euler(&v).apply(&p).unwrap(), p.scale(&rat(3)));
    }

    #[test]
    fn apply_rejects_foreign_variables() {
        let v = vars(&["x1"]);
        assert!(WeylOperator::euler(&v).apply(&RatPoly::var("z")).is_err());
    }
}
