//! Radial components: operators in `t, t^-1, th = t d/dt`.
//!
//! A [`ThetaOperator`] is `sum_m t^m q_m(th)`, multiplied with
//! `q(th) t^l = t^l q(th + l)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::ratpoly::{fmt_rational, rat, xvar, RatPoly, Rational, X0};
use crate::torus::{canonical_elements, d_ell, fmt_parts, SpaceParams, TorusElement};
use crate::{Error, Result};

pub const THETA: &str = "th";

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ThetaOperator {
    parts: BTreeMap<i64, RatPoly>,
}

impl ThetaOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::part_at(0, RatPoly::one())
    }

    /// `t^m q(th)`; `q` may only involve `th`.
    pub fn part_at(m: i64, q: RatPoly) -> Self {
        assert!(q.vars().iter().all(|v| v == THETA), "theta parts are polynomials in th");
        let mut parts = BTreeMap::new();
        if !q.is_zero() {
            parts.insert(m, q);
        }
        Self { parts }
    }

    pub fn t_power(m: i64) -> Self {
        Self::part_at(m, RatPoly::one())
    }

    pub fn theta() -> Self {
        Self::part_at(0, RatPoly::var(THETA))
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

    fn add_part(&mut self, m: i64, q: RatPoly) {
        if q.is_zero() {
            return;
        }
        let merged = match self.parts.remove(&m) {
            Some(old) => old + q,
            None => q,
        };
        if !merged.is_zero() {
            self.parts.insert(m, merged);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&m, q) in &rhs.parts {
            out.add_part(m, q.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&m, q) in &self.parts {
            out.add_part(m, q.scale(c));
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&rat(-1)))
    }

    pub fn theta_mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&m, q) in &self.parts {
            for (&l, r) in &rhs.parts {
                out.add_part(m + l, q.shift(THETA, &rat(l)) * r);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.theta_mul(self))
    }

    /// Action on `t^k`: coefficient of `t^(k+m)` for each nonzero term.
    pub fn apply_theta(&self, k: i64) -> BTreeMap<i64, Rational> {
        let mut out = BTreeMap::new();
        for (&m, q) in &self.parts {
            let v = q.eval(&[(THETA, rat(k))]).expect("single variable");
            if !v.is_zero() {
                out.insert(k + m, v);
            }
        }
        out
    }

    /// Normal form in `t` and `d/dt`: `(power of t, order) -> coefficient`,
    /// using `th^k = sum_j S(k, j) t^j (d/dt)^j`.
    pub fn expanded(&self) -> BTreeMap<(i64, u32), Rational> {
        let mut out: BTreeMap<(i64, u32), Rational> = BTreeMap::new();
        for (&m, q) in &self.parts {
            for (k, c) in q.coefficients_in(THETA).iter().enumerate() {
                let c = c.constant_term();
                if c.is_zero() {
                    continue;
                }
                for (j, s) in stirling2_row(k as u32).into_iter().enumerate() {
                    if s == 0 {
                        continue;
                    }
                    let e = out.entry((m + j as i64, j as u32)).or_insert_with(Rational::zero);
                    *e += &c * rat(s);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn expanded_string(&self) -> String {
        let terms = self.expanded();
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        // highest order first, then highest power of t
        let mut ordered: Vec<_> = terms.into_iter().collect();
        ordered.sort_by(|a, b| (b.0 .1, b.0 .0).cmp(&(a.0 .1, a.0 .0)));
        for (idx, ((p, j), c)) in ordered.into_iter().enumerate() {
            let mut factors = Vec::new();
            match p {
                0 => {}
                1 => factors.push("t".to_string()),
                _ => factors.push(format!("t^{p}")),
            }
            match j {
                0 => {}
                1 => factors.push("d/dt".to_string()),
                _ => factors.push(format!("(d/dt)^{j}")),
            }
            let neg = c < Rational::zero();
            let mag = if neg { -c } else { c };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if factors.is_empty() {
                s.push_str(&fmt_rational(&mag));
            } else {
                if !mag.is_one() {
                    s.push_str(&fmt_rational(&mag));
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

/// `S(k, 0..=k)`, Stirling numbers of the second kind.
fn stirling2_row(k: u32) -> Vec<i64> {
    let mut row = vec![1i64];
    for n in 1..=k as usize {
        let mut next = vec![0i64; n + 1];
        for j in 1..=n {
            let prev = if j < row.len() { row[j] } else { 0 };
            next[j] = j as i64 * prev + row[j - 1];
        }
        row = next;
    }
    row
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_parts(self.parts.iter().map(|(&m, q)| (m, q))))
    }
}

fn label_point(space: &SpaceParams, a: &[i64]) -> Result<Vec<(String, Rational)>> {
    if a.len() != space.r() {
        return Err(Error::ParameterMismatch(format!("label has {} entries, rank needs {}", a.len(), space.r())));
    }
    Ok(a.iter().enumerate().map(|(i, &v)| (xvar(i + 1), rat(v))).collect())
}

fn at_label(p: &RatPoly, point: &[(String, Rational)]) -> RatPoly {
    let vals: Vec<(&str, Rational)> = point.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    p.eval_vars(&vals)
}

/// `r_a(D) = sum_m t^m P_m(th, a1, .., ar)`.
pub fn radial(d: &TorusElement, a: &[i64]) -> Result<ThetaOperator> {
    let point = label_point(d.space(), a)?;
    let mut out = ThetaOperator::zero();
    for (&m, p) in d.parts() {
        out.add_part(m, at_label(p, &point).rename(X0, THETA));
    }
    Ok(out)
}

/// `D` kills the isotypic component with label `(*, a)` iff every part
/// vanishes identically in `X0` once `X1..Xr = a`.
pub fn in_kernel(d: &TorusElement, a: &[i64]) -> Result<bool> {
    Ok(radial(d, a)?.is_zero())
}

/// How the correction term of a kernel generator is written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KernelForm {
    /// `R - b_R(X0 + sum_i di (Xi - ai) / d0, a)`: the correction is a
    /// polynomial in `E`, so the generator lies in the algebra generated by
    /// `R` and `E`.
    EulerPolynomial,
    /// `R - b_R(X0, a)`: the `m = 0` part reads `b_R(X0, X~) - b_R(X0, a)`.
    #[default]
    FixedLabel,
}

/// Generators of the kernel of `r_a` built from a degree-zero generating
/// family.
pub fn kernel_generators(
    space: &Arc<SpaceParams>,
    generators: &[TorusElement],
    a: &[i64],
    form: KernelForm,
) -> Result<Vec<TorusElement>> {
    let point = label_point(space, a)?;
    let arg = match form {
        KernelForm::FixedLabel => RatPoly::var(X0),
        KernelForm::EulerPolynomial => {
            let mut s = RatPoly::var(X0);
            for (i, &d) in space.degrees.iter().enumerate().skip(1) {
                let shifted = RatPoly::var(&xvar(i)) - RatPoly::from_int(a[i - 1]);
                s += shifted.scale(&Rational::new(d.into(), space.d0().into()));
            }
            s
        }
    };
    generators
        .iter()
        .map(|g| {
            if !g.is_degree_zero() {
                return Err(Error::NotDegreeZero(g.parts().keys().copied().collect()));
            }
            let b = g.part(0);
            let correction = at_label(&b, &point).substitute(X0, &arg);
            Ok(TorusElement::from_parts(space, [(0, b - correction)]))
        })
        .collect()
}

/// `E` and `D_l = X^(1-l) Y X^l` for `l = 0..=r`: a degree-zero family with
/// known Bernstein-Sato polynomials.
pub fn standard_generators(space: &Arc<SpaceParams>) -> Vec<TorusElement> {
    let mut out = vec![canonical_elements(space).e];
    out.extend((0..=space.r() as i64).map(|l| d_ell(space, l)));
    out
}

/// `[prod_{j=lo}^{hi} (th + j)] * d/dt`, with `d/dt = t^-1 th`.
pub fn rais_product(lo: i64, hi: i64) -> ThetaOperator {
    let mut prod = ThetaOperator::one();
    for j in lo..=hi {
        prod = prod.theta_mul(&ThetaOperator::part_at(0, RatPoly::var(THETA) + RatPoly::from_int(j)));
    }
    prod.theta_mul(&ThetaOperator::part_at(-1, RatPoly::var(THETA)))
}

/// Radial part of `det(d)` on `det^k` for `n x n` matrices, in product form.
/// The upper bound is `n`; with `n - 1` the operator at `n = 2` is `d/dt`.
pub fn rais_form(n: u32) -> Result<ThetaOperator> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("matrix size must be >= 2, got {n}")));
    }
    Ok(rais_product(2, n as i64))
}

/// `t^-1 th (th + 1) .. (th + n - 1)`.
pub fn rising_form(n: u32) -> ThetaOperator {
    let mut q = RatPoly::var(THETA);
    for j in 1..n as i64 {
        q = q * (RatPoly::var(THETA) + RatPoly::from_int(j));
    }
    ThetaOperator::part_at(-1, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::parse;

    fn p(s: &str) -> RatPoly {
        parse(s).unwrap()
    }

    fn det(n: usize) -> Arc<SpaceParams> {
        let mut b = RatPoly::one();
        let mut partial = RatPoly::zero();
        for j in 0..n {
            partial += RatPoly::var(&xvar(j));
            b = b * (&partial + &RatPoly::from_int(j as i64));
        }
        SpaceParams::new((1..=n as i64).rev().collect(), b).unwrap()
    }

    #[test]
    fn y_on_det2() {
        let s = det(2);
        let y = canonical_elements(&s).y;
        let r = radial(&y, &[0]).unwrap();
        assert_eq!(r, ThetaOperator::part_at(-1, p("th^2 + th")));
        assert_eq!(r.to_string(), "t^-1 * (th^2 + th)");
        for k in 0..6 {
            let got = r.apply_theta(k);
            let want = k * (k + 1);
            if want == 0 {
                assert!(got.is_empty());
            } else {
                assert_eq!(got, BTreeMap::from([(k - 1, rat(want))]));
            }
        }
        assert_eq!(r.expanded_string(), "t*(d/dt)^2 + 2*d/dt");
        assert_eq!(radial(&canonical_elements(&s).x, &[3]).unwrap(), ThetaOperator::t_power(1));
    }

    #[test]
    fn twisted_product() {
        assert_eq!(ThetaOperator::t_power(1).theta_mul(&ThetaOperator::t_power(-1)), ThetaOperator::one());
        let th = ThetaOperator::theta();
        let t = ThetaOperator::t_power(1);
        // th t = t (th + 1)
        assert_eq!(th.theta_mul(&t), t.theta_mul(&th).add(&t));
        // th^i t^l th^j = sum_p C(i,p) l^(i-p) t^l th^(p+j)
        let (i, l, j) = (3u32, 2i64, 2u32);
        let lhs = th.pow(i).theta_mul(&ThetaOperator::t_power(l)).theta_mul(&th.pow(j));
        let mut rhs = ThetaOperator::zero();
        let mut binom = 1i64;
        for q in 0..=i {
            let c = rat(binom * l.pow(i - q));
            rhs = rhs.add(&ThetaOperator::part_at(l, RatPoly::var(THETA).pow(q + j).scale(&c)));
            binom = binom * (i - q) as i64 / (q + 1) as i64;
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn expanded_matches_action() {
        let op = ThetaOperator::part_at(-2, p("th^3 - 2*th + 1/3")).add(&ThetaOperator::part_at(1, p("th^2")));
        let ex = op.expanded();
        for k in 0..8i64 {
            let mut direct: BTreeMap<i64, Rational> = BTreeMap::new();
            for (&(pw, j), c) in &ex {
                let falling: i64 = (0..j as i64).map(|i| k - i).product();
                *direct.entry(k - j as i64 + pw).or_insert_with(Rational::zero) += c * rat(falling);
            }
            direct.retain(|_, v| !v.is_zero());
            assert_eq!(direct, op.apply_theta(k));
        }
    }

    #[test]
    fn radial_is_multiplicative() {
        let s = det(3);
        let c = canonical_elements(&s);
        let a = c.y.t_mul(&c.e).t_mul(&c.xinv);
        let b = c.x.t_mul(&c.x).t_mul(&c.y);
        for label in [[0, 0], [1, 2], [3, 0]] {
            let lhs = radial(&a.t_mul(&b), &label).unwrap();
            let rhs = radial(&a, &label).unwrap().theta_mul(&radial(&b, &label).unwrap());
            assert_eq!(lhs, rhs);
        }
        assert_eq!(radial(&c.y, &[0, 0]).unwrap(), rising_form(3));
    }

    #[test]
    fn kernel_examples() {
        let s = det(2);
        let d0 = d_ell(&s, 0);
        let g = kernel_generators(&s, &[d0.clone()], &[0], KernelForm::FixedLabel).unwrap();
        assert_eq!(g[0].part(0), p("X0*(X0+X1+1) - X0*(X0+1)"));
        assert!(in_kernel(&g[0], &[0]).unwrap());

        let quad4 = SpaceParams::new(vec![2, 1], p("X0*(X0+X1+1)")).unwrap();
        let g = kernel_generators(&quad4, &[d_ell(&quad4, 0)], &[2], KernelForm::FixedLabel).unwrap();
        assert_eq!(g[0].part(0), p("X0*(X0+X1+1) - X0*(X0+3)"));
        assert!(in_kernel(&g[0], &[2]).unwrap());

        assert!(!in_kernel(&canonical_elements(&s).e, &[0]).unwrap());
        for form in [KernelForm::FixedLabel, KernelForm::EulerPolynomial] {
            for a in 0..=3 {
                for g in kernel_generators(&s, &standard_generators(&s), &[a], form).unwrap() {
                    assert!(in_kernel(&g, &[a]).unwrap());
                    let w = canonical_elements(&s).y.t_mul(&canonical_elements(&s).x).t_mul(&canonical_elements(&s).x);
                    assert!(in_kernel(&w.t_mul(&g), &[a]).unwrap());
                    assert!(in_kernel(&g.t_mul(&w), &[a]).unwrap());
                }
            }
        }
        let y = canonical_elements(&s).y;
        assert!(matches!(kernel_generators(&s, &[y], &[0], KernelForm::FixedLabel), Err(Error::NotDegreeZero(_))));
    }

    #[test]
    fn euler_form_is_polynomial_in_e() {
        let s = det(2);
        let g = kernel_generators(&s, &[canonical_elements(&s).e], &[2], KernelForm::EulerPolynomial).unwrap();
        // E - (E - d(a)) - d(a) = 0 identically
        assert!(g[0].is_zero());
    }

    #[test]
    fn rais_bounds() {
        for n in 2..=5u32 {
            assert_eq!(rais_form(n).unwrap(), rising_form(n));
            for k in 0..=(n as i64 + 2) {
                assert_eq!(rais_form(n).unwrap().apply_theta(k), rising_form(n).apply_theta(k));
            }
            assert_ne!(rais_product(2, n as i64 - 1), rising_form(n));
        }
        assert_eq!(rais_product(2, 1), ThetaOperator::part_at(-1, p("th")));
    }
}
