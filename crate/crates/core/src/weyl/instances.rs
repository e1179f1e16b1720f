//! Small concrete multiplicity-free spaces used as a brute-force oracle.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use super::WeylOperator;
use crate::ratpoly::{interpolate_grid, ratio, xvar, RatPoly, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InstanceKind {
    /// Split quadratic form on `C^m`, `2 <= m <= 6`.
    Quad(u32),
    /// Determinant on `n x n` matrices, `n` in {2, 3}.
    Det(u32),
    /// Determinant on symmetric `2 x 2` matrices.
    Sym2,
    /// Pfaffian on antisymmetric `4 x 4` matrices.
    Pf4,
}

impl InstanceKind {
    pub fn all() -> Vec<InstanceKind> {
        let mut v: Vec<_> = (2..=6).map(InstanceKind::Quad).collect();
        v.extend([InstanceKind::Det(2), InstanceKind::Det(3), InstanceKind::Sym2, InstanceKind::Pf4]);
        v
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceKind::Quad(m) => write!(f, "quad{m}"),
            InstanceKind::Det(n) => write!(f, "det{n}"),
            InstanceKind::Sym2 => f.write_str("sym2"),
            InstanceKind::Pf4 => f.write_str("pf4"),
        }
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    /// Accepts `det2`, `det(2)`, `quad4`, `quad(4)`, `sym2`, `pf4`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        let num = |prefix: &str| -> Option<u32> { t.strip_prefix(prefix)?.parse().ok() };
        let kind = if t == "sym2" {
            InstanceKind::Sym2
        } else if t == "pf4" {
            InstanceKind::Pf4
        } else if let Some(m) = num("quad") {
            InstanceKind::Quad(m)
        } else if let Some(n) = num("det") {
            InstanceKind::Det(n)
        } else {
            return Err(Error::UnknownEntry(s.to_string()));
        };
        Ok(kind)
    }
}

#[derive(Clone, Debug)]
pub struct OracleInstance {
    pub kind: InstanceKind,
    pub name: String,
    pub vars: Vec<String>,
    pub dual_vars: Vec<String>,
    pub delta0: RatPoly,
    /// `Delta_0^*` written in the dual coordinates.
    pub delta0_star: RatPoly,
    pub delta0_star_op: WeylOperator,
    pub hw_vectors: Vec<RatPoly>,
    pub degrees: Vec<i64>,
    pub euler: WeylOperator,
}

fn names(prefix: char, idx: &[String]) -> Vec<String> {
    idx.iter().map(|s| format!("{prefix}{s}")).collect()
}

fn matrix_det(entry: &dyn Fn(usize, usize) -> RatPoly, k: usize) -> RatPoly {
    // cofactor expansion along the first row; k <= 3 in practice
    fn rec(entry: &dyn Fn(usize, usize) -> RatPoly, rows: &[usize], cols: &[usize]) -> RatPoly {
        if rows.is_empty() {
            return RatPoly::one();
        }
        let mut acc = RatPoly::zero();
        for (j, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry(rows[0], c) * rec(entry, &rows[1..], &rest);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    let idx: Vec<usize> = (0..k).collect();
    rec(entry, &idx, &idx)
}

/// Builds one of the oracle instances.
pub fn build_instance(kind: InstanceKind) -> Result<OracleInstance> {
    let p = |s: &str| crate::ratpoly::parse(s).expect("static polynomial");
    let (idx, delta0, delta0_star, hw, degrees): (Vec<String>, RatPoly, RatPoly, Vec<RatPoly>, Vec<i64>) = match kind {
        InstanceKind::Quad(m) => {
            if !(2..=6).contains(&m) {
                return Err(Error::InvalidParams(format!("quad needs 2 <= m <= 6, got {m}")));
            }
            let m = m as usize;
            let idx: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
            let mut d = RatPoly::zero();
            let mut ds = RatPoly::zero();
            for i in 1..=m / 2 {
                let j = m + 1 - i;
                d += RatPoly::var(&format!("x{i}")) * RatPoly::var(&format!("x{j}"));
                ds += RatPoly::var(&format!("y{i}")) * RatPoly::var(&format!("y{j}"));
            }
            if m % 2 == 1 {
                let mid = m.div_ceil(2);
                d += RatPoly::var(&format!("x{mid}")).pow(2);
                // the dual form of x_mid^2 under sum x_i y_i carries 1/4
                ds += RatPoly::var(&format!("y{mid}")).pow(2).scale(&ratio(1, 4));
            }
            (idx, d, ds, vec![RatPoly::var("x1")], vec![2, 1])
        }
        InstanceKind::Det(n) => {
            if !(2..=3).contains(&n) {
                return Err(Error::InvalidParams(format!("det needs n in {{2, 3}}, got {n}")));
            }
            let n = n as usize;
            let idx: Vec<String> = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| format!("{i}{j}")))
                .collect();
            let x = |i: usize, j: usize| RatPoly::var(&format!("x{}{}", i + 1, j + 1));
            let y = |i: usize, j: usize| RatPoly::var(&format!("y{}{}", i + 1, j + 1));
            let d = matrix_det(&x, n);
            let ds = matrix_det(&y, n);
            let hw: Vec<RatPoly> = (1..n).rev().map(|k| matrix_det(&x, k)).collect();
            let degrees: Vec<i64> = (1..=n as i64).rev().collect();
            (idx, d, ds, hw, degrees)
        }
        InstanceKind::Sym2 => (
            vec!["11".into(), "12".into(), "22".into()],
            p("x11*x22 - x12^2"),
            // inverse Gram matrix of the form; the plain transcription is not invariant
            p("y11*y22 - 1/4*y12^2"),
            vec![p("x11")],
            vec![2, 1],
        ),
        InstanceKind::Pf4 => (
            ["12", "13", "14", "23", "24", "34"].iter().map(|s| s.to_string()).collect(),
            p("x12*x34 - x13*x24 + x14*x23"),
            p("y12*y34 - y13*y24 + y14*y23"),
            vec![p("x12")],
            vec![2, 1],
        ),
    };
    let vars = names('x', &idx);
    let dual_vars = names('y', &idx);
    let delta0_star_op = WeylOperator::dual_operator(&vars, &dual_vars, &delta0_star)?;
    let euler = WeylOperator::euler(&vars);
    Ok(OracleInstance {
        kind,
        name: kind.to_string(),
        vars,
        dual_vars,
        delta0,
        delta0_star,
        delta0_star_op,
        hw_vectors: hw,
        degrees,
        euler,
    })
}

impl OracleInstance {
    /// Rank minus one.
    pub fn r(&self) -> usize {
        self.hw_vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// `d/2 = (dim V - d0) / ((d0 - 1) d0)`.
    pub fn d_half(&self) -> Rational {
        let d0 = self.degrees[0];
        ratio(self.dim() as i64 - d0, (d0 - 1) * d0)
    }

    /// Multiplication by `Delta_0`.
    pub fn x_op(&self) -> WeylOperator {
        WeylOperator::multiplication(&self.vars, &self.delta0).expect("delta0 uses instance variables")
    }

    pub fn y_op(&self) -> WeylOperator {
        self.delta0_star_op.clone()
    }

    /// Capelli operator `Delta_0(x) Delta_0^*(d)`.
    pub fn capelli(&self) -> WeylOperator {
        self.x_op().compose(&self.delta0_star_op)
    }

    /// Operator by name: `X`, `Y`, `E` or `R0`.
    pub fn operator(&self, name: &str) -> Result<WeylOperator> {
        match name {
            "X" => Ok(self.x_op()),
            "Y" => Ok(self.y_op()),
            "E" => Ok(self.euler.clone()),
            "R0" => Ok(self.capelli()),
            other => Err(Error::InvalidParams(format!("unknown oracle operator `{other}`"))),
        }
    }

    /// `Delta_0^{a_0} Delta_1^{a_1} .. Delta_r^{a_r}`.
    pub fn hw_monomial(&self, a: &[u32]) -> RatPoly {
        let mut out = self.delta0.pow(a[0]);
        for (h, &k) in self.hw_vectors.iter().zip(&a[1..]) {
            out = out * h.pow(k);
        }
        out
    }
}

/// Interpolates the Bernstein-Sato polynomial of `op`, which must be
/// homogeneous of degree `m` (it maps `V_a` to `Delta_0^m V_a`).
///
/// `axes[i]` lists the sampled values of `a_i`; all are naturals and the
/// grid is their tensor product.
pub fn extract_bs(inst: &OracleInstance, op: &WeylOperator, m: i64, axes: &[Vec<u32>]) -> Result<RatPoly> {
    if axes.len() != inst.r() + 1 {
        return Err(Error::InvalidParams(format!(
            "expected {} sample axes, got {}",
            inst.r() + 1,
            axes.len()
        )));
    }
    let need = op.order().max(0) as usize + 1;
    for (axis, xs) in axes.iter().enumerate() {
        let mut distinct = xs.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < need {
            return Err(Error::InsufficientSamples { axis, have: distinct.len(), need });
        }
    }

    let max_a0 = axes[0].iter().copied().max().unwrap_or(0) as i64;
    let top0 = (max_a0 + m.max(0)) as usize;
    let mut pow0 = vec![RatPoly::one()];
    for _ in 0..top0 {
        pow0.push(pow0.last().unwrap() * &inst.delta0);
    }
    let hw_pows: Vec<Vec<RatPoly>> = inst
        .hw_vectors
        .iter()
        .zip(&axes[1..])
        .map(|(h, xs)| {
            let top = xs.iter().copied().max().unwrap_or(0);
            let mut v = vec![RatPoly::one()];
            for _ in 0..top {
                v.push(v.last().unwrap() * h);
            }
            v
        })
        .collect();

    let mut values: HashMap<Vec<i64>, Rational> = HashMap::new();
    let mut rest_idx = vec![0usize; inst.r()];
    loop {
        let tail: Vec<u32> = rest_idx.iter().enumerate().map(|(i, &k)| axes[i + 1][k]).collect();
        let mut rest = RatPoly::one();
        for (i, &k) in tail.iter().enumerate() {
            rest = rest * &hw_pows[i][k as usize];
        }
        for &a0 in &axes[0] {
            let sample = || std::iter::once(a0 as i64).chain(tail.iter().map(|&k| k as i64)).collect::<Vec<_>>();
            let input = &pow0[a0 as usize] * &rest;
            let image = op.apply(&input)?;
            let target = a0 as i64 + m;
            let value = if target < 0 {
                if !image.is_zero() {
                    return Err(Error::NotEigenvector { sample: sample() });
                }
                Rational::zero()
            } else {
                let expected = &pow0[target as usize] * &rest;
                image
                    .ratio_to(&expected)
                    .ok_or_else(|| Error::NotEigenvector { sample: sample() })?
            };
            values.insert(sample(), value);
        }
        // advance the odometer over a_1..a_r
        let mut i = 0;
        while i < rest_idx.len() {
            rest_idx[i] += 1;
            if rest_idx[i] < axes[i + 1].len() {
                break;
            }
            rest_idx[i] = 0;
            i += 1;
        }
        if i == rest_idx.len() {
            break;
        }
    }

    let names: Vec<String> = (0..axes.len()).map(xvar).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let int_axes: Vec<Vec<i64>> = axes
        .iter()
        .map(|xs| {
            let mut v: Vec<i64> = xs.iter().map(|&k| k as i64).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    Ok(interpolate_grid(&name_refs, &int_axes, |pt| values[pt].clone()))
}

/// Normalization constant `c` with `b = c * prod_j (X0 + .. + Xj + j d/2)`,
/// read off at `a = (1, 0, .., 0)`.
pub fn calibration(b: &RatPoly, r: usize, d_half: &Rational) -> Result<Rational> {
    let mut point: Vec<(String, Rational)> = vec![(xvar(0), Rational::one())];
    point.extend((1..=r).map(|i| (xvar(i), Rational::zero())));
    let refs: Vec<(&str, Rational)> = point.iter().map(|(n, q)| (n.as_str(), q.clone())).collect();
    let at = b.eval(&refs)?;
    let mut norm = Rational::one();
    for j in 0..=r {
        norm *= Rational::one() + d_half * Rational::from_integer((j as i64).into());
    }
    Ok(at / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{parse, rat};

    fn grid(r: usize, n: u32) -> Vec<Vec<u32>> {
        vec![(0..n).collect(); r + 1]
    }

    #[test]
    fn det2_shape() {
        let inst = build_instance(InstanceKind::Det(2)).unwrap();
        assert_eq!(inst.delta0, parse("x11*x22 - x12*x21").unwrap());
        assert_eq!(inst.hw_vectors, vec![parse("x11").unwrap()]);
        assert_eq!(inst.degrees, vec![2, 1]);
        assert!(inst.delta0_star_op.has_constant_coefficients());
    }

    #[test]
    fn quad4_and_pf4_shapes() {
        let q = build_instance(InstanceKind::Quad(4)).unwrap();
        assert_eq!(q.delta0, parse("x1*x4 + x2*x3").unwrap());
        assert_eq!(q.degrees, vec![2, 1]);
        let pf = build_instance(InstanceKind::Pf4).unwrap();
        assert_eq!(pf.delta0, parse("x12*x34 - x13*x24 + x14*x23").unwrap());
    }

    #[test]
    fn hw_degrees_match() {
        for kind in InstanceKind::all() {
            let inst = build_instance(kind).unwrap();
            assert_eq!(inst.delta0.total_degree(), inst.degrees[0]);
            for (h, d) in inst.hw_vectors.iter().zip(&inst.degrees[1..]) {
                assert_eq!(h.total_degree(), *d, "{kind}");
            }
        }
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(build_instance(InstanceKind::Quad(7)).is_err());
        assert!(build_instance(InstanceKind::Det(4)).is_err());
        assert!("triangle".parse::<InstanceKind>().is_err());
        assert_eq!("det(3)".parse::<InstanceKind>().unwrap(), InstanceKind::Det(3));
    }

    #[test]
    fn det2_bernstein_sato() {
        let inst = build_instance(InstanceKind::Det(2)).unwrap();
        let axes = vec![vec![1, 2, 3, 4], vec![0, 1, 2, 3]];
        let b = extract_bs(&inst, &inst.y_op(), -1, &axes).unwrap();
        assert_eq!(b, parse("X0*(X0+X1+1)").unwrap());
    }

    #[test]
    fn quad2_bernstein_sato() {
        let inst = build_instance(InstanceKind::Quad(2)).unwrap();
        let b = extract_bs(&inst, &inst.y_op(), -1, &grid(1, 3)).unwrap();
        assert_eq!(b, parse("X0*(X0+X1)").unwrap());
    }

    #[test]
    fn multiplication_has_unit_polynomial() {
        let inst = build_instance(InstanceKind::Quad(3)).unwrap();
        let b = extract_bs(&inst, &inst.x_op(), 1, &grid(1, 2)).unwrap();
        assert_eq!(b, RatPoly::one());
    }

    #[test]
    fn euler_eigenvalue() {
        let inst = build_instance(InstanceKind::Det(2)).unwrap();
        let b = extract_bs(&inst, &inst.euler, 0, &grid(1, 2)).unwrap();
        assert_eq!(b, parse("2*X0 + X1").unwrap());
    }

    #[test]
    fn too_few_samples() {
        let inst = build_instance(InstanceKind::Det(2)).unwrap();
        let err = extract_bs(&inst, &inst.y_op(), -1, &[vec![0, 1], vec![0, 1, 2]]).unwrap_err();
        assert_eq!(err, Error::InsufficientSamples { axis: 0, have: 2, need: 3 });
    }

    #[test]
    fn wrong_operator_is_detected() {
        let inst = build_instance(InstanceKind::Det(2)).unwrap();
        let v = inst.vars.clone();
        let d11 = WeylOperator::partial(&v, 0);
        let err = extract_bs(&inst, &d11, 0, &grid(1, 2)).unwrap_err();
        assert!(matches!(err, Error::NotEigenvector { .. }));
    }

    #[test]
    fn plain_transcription_fails_for_sym2() {
        let inst = build_instance(InstanceKind::Sym2).unwrap();
        let naive = WeylOperator::dual_operator(&inst.vars, &inst.dual_vars, &parse("y11*y22 - y12^2").unwrap()).unwrap();
        assert!(extract_bs(&inst, &naive, -1, &grid(1, 3)).is_err());
    }

    #[test]
    fn calibration_constant() {
        let b = parse("X0*(X0+X1+1)").unwrap().scale(&rat(3));
        assert_eq!(calibration(&b, 1, &rat(1)).unwrap(), rat(3));
    }
}
