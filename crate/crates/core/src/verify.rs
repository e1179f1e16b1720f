//! Seeded property suites. Each check reports how many cases it ran, or the
//! first counterexample.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::catalog::{self, catalog, Filter, SpaceEntry};
use crate::radial::{self, radial, rais_form, rais_product, rising_form, KernelForm, ThetaOperator};
use crate::random::{self, random_degree_zero, random_label, random_letters, random_poly, random_torus};
use crate::ratpoly::{degree_form, interpolate_grid, parse, rat, xvar, RatPoly, Rational, X0};
use crate::smith::{
    casimir, casimir2, discrete_antiderivative, rewrite_word, s_normal_form, u_normal_form, u_to_torus, CoeffRing,
    Letter, SmithAlgebra, SmithElement, Strategy, UAlgebra, UElement, E_VAR, T_VAR,
};
use crate::torus::{canonical_elements, d_ell, eval_at_e, eval_word, tau_invariant_generators, u_xy, SpaceParams, TorusElement};
use crate::weyl::{build_instance, calibration, extract_bs, InstanceKind, OracleInstance, WeylOperator};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases)", self.name, self.cases)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// A counterexample or an unexpected library error.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<usize, Failure>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(Failure(format!($($fmt)*)));
        }
    };
}

fn run(name: &str, body: impl FnOnce() -> Outcome) -> Check {
    match body() {
        Ok(cases) => Check { name: name.into(), passed: true, cases, detail: String::new() },
        Err(Failure(detail)) => Check { name: name.into(), passed: false, cases: 0, detail },
    }
}

/// Concatenates sub-checks into one.
fn all_of(name: &str, parts: Vec<Check>) -> Check {
    let passed = parts.iter().all(|c| c.passed);
    let cases = parts.iter().map(|c| c.cases).sum();
    let detail = parts
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect::<Vec<_>>()
        .join("; ");
    Check { name: name.into(), passed, cases, detail }
}

/// Commutative parabolic catalog spaces with `r <= max_r`.
pub fn commutative_spaces(max_r: i64) -> Vec<(SpaceEntry, Arc<SpaceParams>)> {
    let filter = Filter { commutative_only: true, max_rank: Some(max_r + 1), ..Default::default() };
    catalog()
        .list(&filter)
        .into_iter()
        .map(|e| {
            let s = catalog::to_space_params(&e).expect("commutative entries have a formula");
            (e, s)
        })
        .collect()
}

/// All labels of `r` naturals with `a1 + .. + ar <= max`.
pub fn label_grid(r: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                let room = max - p.iter().sum::<i64>();
                (0..=room).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn rising(k: i64, n: i64) -> i64 {
    (0..n).map(|i| k + i).product()
}

// ---------------------------------------------------------------- criteria

/// `det(d) det^k = k (k+1) .. (k+n-1) det^(k-1)` for `n = 2, 3`, `k = 1..5`.
pub fn cayley_identity() -> Check {
    run("cayley identity", || {
        let mut cases = 0;
        for n in [2u32, 3] {
            let inst = build_instance(InstanceKind::Det(n))?;
            let y = inst.y_op();
            for k in 1..=5u32 {
                let lhs = y.apply(&inst.delta0.pow(k))?;
                let rhs = inst.delta0.pow(k - 1).scale(&rat(rising(k as i64, n as i64)));
                ensure!(lhs == rhs, "det{n}, k = {k}: got {lhs}");
                cases += 1;
            }
        }
        Ok(cases)
    })
}

/// Bernstein-Sato polynomial of `Y` from the oracle, on a grid with
/// `deg + 1` points per axis where `deg = r + 1`.
pub fn oracle_b_y(inst: &OracleInstance) -> crate::Result<(RatPoly, usize)> {
    let deg = inst.r() as u32 + 1;
    let per_axis = (deg + 1).max(inst.y_op().order() as u32 + 1);
    let axes: Vec<Vec<u32>> = vec![(0..per_axis).collect(); inst.r() + 1];
    let points = axes.iter().map(Vec::len).product();
    Ok((extract_bs(inst, &inst.y_op(), -1, &axes)?, points))
}

/// The oracle's `b_Y` is `c prod_j (X0 + .. + Xj + j d/2)`.
pub fn proportionality() -> Check {
    run("b_Y proportional to the product formula", || {
        let mut cases = 0;
        for kind in InstanceKind::all() {
            let inst = build_instance(kind)?;
            let r = inst.r();
            let (b, points) = oracle_b_y(&inst)?;
            let need = (r + 2).pow(r as u32 + 1);
            ensure!(points >= need, "{kind}: grid has {points} points, need {need}");
            let d_half = inst.d_half();
            let formula = catalog::product_formula(r, &d_half);
            let c = calibration(&b, r, &d_half)?;
            ensure!(!c.is_zero(), "{kind}: b_Y vanishes at (1, 0, ..)");
            ensure!(b == formula.scale(&c), "{kind}: b_Y = {b} is not a multiple of {formula}");
            // one sample outside the interpolation grid
            let mut a = vec![r as u32 + 3];
            a.extend(std::iter::repeat_n(1, r));
            let v = inst.hw_monomial(&a);
            let mut lower = a.clone();
            lower[0] -= 1;
            let image = inst.y_op().apply(&v)?;
            let ratio = image.ratio_to(&inst.hw_monomial(&lower));
            let point: Vec<(String, Rational)> = a.iter().enumerate().map(|(i, &k)| (xvar(i), rat(k as i64))).collect();
            let refs: Vec<(&str, Rational)> = point.iter().map(|(n, q)| (n.as_str(), q.clone())).collect();
            ensure!(ratio == Some(b.eval(&refs)?), "{kind}: off-grid sample {a:?} disagrees");
            cases += 1;
        }
        Ok(cases)
    })
}

fn oracle_space(kind: InstanceKind) -> crate::Result<Arc<SpaceParams>> {
    let (name, params): (&str, Vec<(&str, i64)>) = match kind {
        InstanceKind::Det(n) => ("det", vec![("n", n as i64)]),
        InstanceKind::Quad(m) => ("quad", vec![("m", m as i64)]),
        InstanceKind::Sym2 => ("sym", vec![("n", 2)]),
        InstanceKind::Pf4 => ("pf", vec![("p", 2)]),
    };
    catalog::to_space_params(&catalog().lookup(name, &params)?)
}

/// Words of length `<= 5` in `X, Y, E` act on highest-weight vectors as the
/// symbolic product predicts.
pub fn embedding() -> Check {
    run("embedding into the torus algebra", || {
        let mut cases = 0;
        for kind in [InstanceKind::Det(2), InstanceKind::Quad(4)] {
            let inst = build_instance(kind)?;
            let space = oracle_space(kind)?;
            let c = canonical_elements(&space);
            let letters: [(&str, WeylOperator, TorusElement); 3] =
                [("X", inst.x_op(), c.x.clone()), ("Y", inst.y_op(), c.y.clone()), ("E", inst.euler.clone(), c.e.clone())];
            for a0 in 0..=4u32 {
                for a1 in 0..=3u32 {
                    let start = inst.hw_monomial(&[a0, a1]);
                    let rest = inst.hw_monomial(&[0, a1]);
                    let mut stack = vec![(String::new(), start, TorusElement::one(&space))];
                    while let Some((word, v, sym)) = stack.pop() {
                        if word.len() == 5 {
                            continue;
                        }
                        for (name, op, gen) in &letters {
                            let w = format!("{name}{word}");
                            let image = op.apply(&v)?;
                            let prod = gen.t_mul(&sym);
                            let mut expected = RatPoly::zero();
                            for (m, coeff) in prod.act_on_label(&[a0 as i64, a1 as i64])? {
                                let e = a0 as i64 + m;
                                ensure!(e >= 0, "{kind}: {w} on a = ({a0}, {a1}) predicts Delta_0^{e}");
                                expected += (inst.delta0.pow(e as u32) * &rest).scale(&coeff);
                            }
                            ensure!(image == expected, "{kind}: {w} on a = ({a0}, {a1}) disagrees");
                            cases += 1;
                            stack.push((w, image, prod));
                        }
                    }
                }
            }
        }
        Ok(cases)
    })
}

/// `XY = u(E)`, `YX = u(E + d0)` and `u_to_torus` is multiplicative.
pub fn presentation(seed: u64) -> Check {
    let relations = run("XY = u(E), YX = u(E + d0)", || {
        let mut cases = 0;
        for (entry, s) in commutative_spaces(4) {
            let c = canonical_elements(&s);
            let u = u_xy(&s);
            let xy = c.x.t_mul(&c.y);
            let yx = c.y.t_mul(&c.x);
            ensure!((&xy - &eval_at_e(&s, &u, &Rational::zero())).is_zero(), "{}: XY != u(E)", entry.label());
            ensure!((&yx - &eval_at_e(&s, &u, &rat(s.d0()))).is_zero(), "{}: YX != u(E + d0)", entry.label());
            cases += 2;
        }
        Ok(cases)
    });
    let hom = run("u_to_torus multiplicative", || {
        // products of long words over rank-5 spaces take seconds each
        let spaces = commutative_spaces(3);
        let mut rng = random::rng(seed);
        for i in 0..200 {
            let (entry, s) = &spaces[i % spaces.len()];
            let alg = UAlgebra::for_space(s);
            let ring_vars: Vec<String> = (1..=s.r()).map(xvar).collect();
            let refs: Vec<&str> = ring_vars.iter().map(String::as_str).collect();
            let mut word = || -> crate::Result<UElement> {
                let mut w = random_letters(&mut rng, 4);
                w.push(Letter::Scalar(random_poly(&mut rng, &refs, 1, 2) + RatPoly::one()));
                u_normal_form(&alg, &w)
            };
            let (a, b) = (word()?, word()?);
            let lhs = u_to_torus(&a.u_mul(&b), s)?;
            let rhs = u_to_torus(&a, s)?.t_mul(&u_to_torus(&b, s)?);
            ensure!(lhs == rhs, "{}: pair {i} ({a}) * ({b})", entry.label());
        }
        Ok(200)
    });
    all_of("presentation relations", vec![relations, hom])
}

fn random_smith(rng: &mut impl Rng, over_poly: bool) -> crate::Result<Arc<SmithAlgebra>> {
    let (ring, vars): (CoeffRing, Vec<&str>) = if over_poly {
        (CoeffRing::QPoly(vec!["X1".into(), "X2".into()]), vec![T_VAR, "X1", "X2"])
    } else {
        (CoeffRing::Q, vec![T_VAR])
    };
    let f = random_poly(rng, &vars, 3, 4);
    SmithAlgebra::new(ring, f, rng.gen_range(1..=3))
}

/// PBW confluence, Casimir centrality, antiderivative, weight grading.
pub fn smith_suite(seed: u64) -> Check {
    let mut rng = random::rng(seed);
    let confluence = run("PBW confluence", || {
        for i in 0..200 {
            let alg = random_smith(&mut rng, i % 2 == 1)?;
            let mut word = random_letters(&mut rng, 7);
            if word.len() < 2 {
                word.push(Letter::X);
            }
            let reference = s_normal_form(&alg, &word)?;
            let strategies = [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(random::rng(seed ^ i as u64))];
            for mut s in strategies {
                let got = rewrite_word(&alg, &word, &mut s)?;
                ensure!(got == reference, "word {i} under {s:?}: {got} != {reference}");
            }
        }
        Ok(200)
    });
    let central = run("Casimir centrality", || {
        for i in 0..50 {
            let alg = random_smith(&mut rng, i >= 25)?;
            let omega = casimir(&alg);
            for g in [SmithElement::x(&alg), SmithElement::y(&alg), SmithElement::e(&alg)] {
                ensure!(omega.commutator(&g).is_zero(), "f = {}, n = {}: [Omega, {g}] != 0", alg.f, alg.n);
            }
            ensure!(casimir2(&alg) == omega.scale(&rat(2)), "f = {}: Omega_2 != 2 Omega_1", alg.f);
        }
        Ok(50)
    });
    let antiderivative = run("discrete antiderivative", || {
        for _ in 0..100 {
            let over_poly = rng.gen_bool(0.5);
            let alg = random_smith(&mut rng, over_poly)?;
            let u = discrete_antiderivative(&alg.f, alg.n);
            let diff = u.shift(T_VAR, &rat(alg.n)) - &u;
            ensure!(diff == alg.f, "f = {}, n = {}: u = {u}", alg.f, alg.n);
            ensure!(u.substitute(T_VAR, &RatPoly::zero()).is_zero(), "u(0) != 0 for f = {}", alg.f);
        }
        Ok(100)
    });
    let grading = run("weight grading", || {
        for k in 0..50 {
            let alg = random_smith(&mut rng, k % 2 == 0)?;
            let (i, j, d) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=2));
            let m = SmithElement::monomial(&alg, i, j, RatPoly::var(E_VAR).pow(d));
            let lhs = SmithElement::e(&alg).commutator(&m);
            let rhs = m.scale(&rat(alg.n * (j as i64 - i as i64)));
            ensure!(lhs == rhs, "[e, y^{i} x^{j} e^{d}] with n = {}", alg.n);
        }
        Ok(50)
    });
    all_of("Smith algebra suite", vec![confluence, central, antiderivative, grading])
}

/// Projection onto the center along `E T_0`.
pub fn center_projection(seed: u64) -> Check {
    run("center and projection", || {
        let mut rng = random::rng(seed);
        let mut cases = 0;
        for (entry, s) in commutative_spaces(4) {
            let c = canonical_elements(&s);
            let label = entry.label();
            ensure!(c.e.project_center()?.is_zero(), "{label}: E does not project to 0");
            let xy = c.x.t_mul(&c.y);
            let u0 = u_xy(&s)[0].clone();
            ensure!(xy.project_center()? == TorusElement::part_at(&s, 0, u0), "{label}: proj(XY) != u_XY(0)");
            let mut samples = vec![xy, d_ell(&s, 1)];
            samples.extend((0..5).map(|_| random_degree_zero(&mut rng, &s, 3)));
            for d in samples {
                let p = d.project_center()?;
                ensure!(p.is_central(), "{label}: projection of {d} is not X0-free");
                ensure!(p.project_center()? == p, "{label}: projection is not idempotent on {d}");
                // D - proj(D) lies in E T_0: it vanishes where the degree form does
                let rest = (&d - &p).part(0).substitute(X0, &s.central_x0());
                ensure!(rest.is_zero(), "{label}: D - proj(D) is not a multiple of E");
                cases += 1;
            }
            let y = canonical_elements(&s).y;
            ensure!(matches!(y.project_center(), Err(Error::NotDegreeZero(_))), "{label}: Y was projected");
        }
        Ok(cases)
    })
}

/// The factorized form of the radial part of `det(d)` against the rising
/// product, for `n = 2..=max_n`. Returns the bound that matches.
pub fn rais_resolution(max_n: u32) -> std::result::Result<(), Failure> {
    for n in 2..=max_n {
        let s = catalog::to_space_params(&catalog().lookup("det", &[("n", n as i64)])?)?;
        let ry = radial(&canonical_elements(&s).y, &vec![0; s.r()])?;
        ensure!(ry == rising_form(n), "det{n}: radial(Y, 0) = {ry}");
        ensure!(rais_form(n)? == ry, "det{n}: bounds 2..n give {}", rais_form(n)?);
        ensure!(rais_product(2, n as i64 - 1) != ry, "det{n}: bounds 2..n-1 unexpectedly agree");
        for k in 0..=n as i64 + 2 {
            let want = rising(k, n as i64);
            let got = rais_form(n)?.apply_theta(k);
            let expect: BTreeMap<i64, Rational> =
                if want == 0 { BTreeMap::new() } else { BTreeMap::from([(k - 1, rat(want))]) };
            ensure!(got == expect, "det{n}: factorized form on t^{k}");
        }
        if n <= 3 {
            let inst = build_instance(InstanceKind::Det(n))?;
            for k in 1..=n + 2 {
                let image = inst.y_op().apply(&inst.delta0.pow(k))?;
                let coeff = rais_form(n)?.apply_theta(k as i64).remove(&(k as i64 - 1)).unwrap_or_default();
                ensure!(image == inst.delta0.pow(k - 1).scale(&coeff), "det{n}: oracle disagrees at k = {k}");
            }
        }
    }
    Ok(())
}

pub fn radial_suite(seed: u64) -> Check {
    let mut rng = random::rng(seed);
    let spaces = commutative_spaces(4);
    let hom = run("radial multiplicative", || {
        for i in 0..100 {
            let (entry, s) = &spaces[i % spaces.len()];
            let a = random_torus(&mut rng, s, 2, 2);
            let b = random_torus(&mut rng, s, 2, 2);
            let label = random_label(&mut rng, s.r(), 3);
            let lhs = radial(&a.t_mul(&b), &label)?;
            let rhs = radial(&a, &label)?.theta_mul(&radial(&b, &label)?);
            ensure!(lhs == rhs, "{}: pair {i} at {label:?}", entry.label());
        }
        Ok(100)
    });
    let det3 = run("radial(Y, 0) on det3", || {
        let s = catalog::to_space_params(&catalog().lookup("det", &[("n", 3)])?)?;
        let got = radial(&canonical_elements(&s).y, &[0, 0])?;
        let want = ThetaOperator::part_at(-1, parse("th*(th+1)*(th+2)")?);
        ensure!(got == want, "got {got}");
        Ok(1)
    });
    let kernel = run("kernel generators", || {
        let mut cases = 0;
        for (entry, s) in &spaces {
            let gens = radial::standard_generators(s);
            let c = canonical_elements(s);
            let w = c.y.t_mul(&c.x).t_mul(&c.x).t_mul(&c.e);
            for label in label_grid(s.r(), 3) {
                for form in [KernelForm::FixedLabel, KernelForm::EulerPolynomial] {
                    for g in radial::kernel_generators(s, &gens, &label, form)? {
                        let r = radial(&g, &label)?;
                        ensure!(r.is_zero(), "{}: {form:?} generator at {label:?} has radial part {r}", entry.label());
                        cases += 1;
                    }
                }
                if s.r() <= 2 {
                    let g = &radial::kernel_generators(s, &gens[1..2], &label, KernelForm::FixedLabel)?[0];
                    ensure!(radial::in_kernel(&w.t_mul(g), &label)?, "{}: W G not in kernel", entry.label());
                    ensure!(radial::in_kernel(&g.t_mul(&w), &label)?, "{}: G W not in kernel", entry.label());
                }
            }
        }
        Ok(cases)
    });
    let rais = run("factorized det(d) radial part, bounds 2..n", || {
        rais_resolution(5)?;
        Ok(4)
    });
    all_of("radial components", vec![hom, det3, kernel, rais])
}

/// `b_{tau D}(a) = b_D(a0 - 1, a1, ..)`; `tau`-invariant generators.
pub fn tau_calculus(seed: u64) -> Check {
    run("tau calculus", || {
        let mut rng = random::rng(seed);
        let spaces = commutative_spaces(4);
        for i in 0..100 {
            let (entry, s) = &spaces[i % spaces.len()];
            let d = random_degree_zero(&mut rng, s, 3);
            let t = d.tau();
            let c = canonical_elements(s);
            ensure!(t == c.x.t_mul(&d).t_mul(&c.xinv), "{}: tau != X D X^-1", entry.label());
            ensure!(t.tau_inv() == d, "{}: tau^-1 tau != id", entry.label());
            for _ in 0..3 {
                let mut a = vec![rng.gen_range(0..=5)];
                a.extend(random_label(&mut rng, s.r(), 3));
                let mut lower = a.clone();
                lower[0] -= 1;
                ensure!(
                    t.act_on_label(&a)? == d.act_on_label(&lower)?,
                    "{}: b_tau(D)({a:?}) != b_D(a - 1)",
                    entry.label()
                );
            }
            for g in tau_invariant_generators(&d.part(0)) {
                ensure!(!g.contains_var(X0), "{}: generator {g} involves X0", entry.label());
                let as_elem = TorusElement::part_at(s, 0, g.clone());
                ensure!(as_elem.tau() == as_elem, "{}: generator {g} is not tau-fixed", entry.label());
            }
        }
        Ok(100)
    })
}

// ------------------------------------------------------------ other suites

pub fn ratpoly_suite(seed: u64) -> Check {
    let mut rng = random::rng(seed);
    let vars = ["X0", "X1", "X2", "e"];
    let axioms = run("ring axioms", || {
        for _ in 0..100 {
            let a = random_poly(&mut rng, &vars, 3, 4);
            let b = random_poly(&mut rng, &vars, 3, 4);
            let c = random_poly(&mut rng, &vars, 2, 3);
            ensure!(&a * &b == &b * &a, "product not commutative");
            ensure!((&a * &b) * &c == &a * &(&b * &c), "product not associative");
            ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "not distributive");
            ensure!((&a - &a).is_zero() && (&a + &RatPoly::zero()) == a, "additive identities");
        }
        Ok(100)
    });
    let roundtrip = run("print/parse roundtrip", || {
        for _ in 0..100 {
            let a = random_poly(&mut rng, &vars, 4, 5);
            let back = parse(&a.to_string())?;
            ensure!(back == a, "{a} reparsed as {back}");
        }
        Ok(100)
    });
    let subst = run("substitution homomorphism", || {
        for _ in 0..50 {
            let a = random_poly(&mut rng, &vars, 3, 4);
            let b = random_poly(&mut rng, &vars, 3, 4);
            let s = random_poly(&mut rng, &vars, 2, 3);
            ensure!((&a * &b).substitute("X1", &s) == a.substitute("X1", &s) * b.substitute("X1", &s), "substitution");
            let d = (&a * &b).derivative("X0");
            ensure!(d == a.derivative("X0") * &b + &a * &b.derivative("X0"), "Leibniz rule");
        }
        Ok(50)
    });
    let interp = run("interpolation roundtrip", || {
        for _ in 0..20 {
            let a = random_poly(&mut rng, &["X0", "X1"], 3, 4);
            let axes = vec![(0..4).collect::<Vec<i64>>(), (-1..3).collect()];
            let got = interpolate_grid(&["X0", "X1"], &axes, |pt| {
                a.eval(&[("X0", rat(pt[0])), ("X1", rat(pt[1]))]).expect("bound variables")
            });
            ensure!(got == a, "{a} interpolated as {got}");
            let w = [2, 1];
            let coeffs = a.degree_form_expand(&w);
            if let Ok(coeffs) = coeffs {
                ensure!(RatPoly::degree_form_reconstruct(&coeffs, &w) == a, "degree form roundtrip for {a}");
                ensure!(RatPoly::horner(&coeffs, &degree_form(&w)) == a, "horner at the degree form for {a}");
            }
        }
        Ok(20)
    });
    all_of("exact polynomials", vec![axioms, roundtrip, subst, interp])
}

/// Torus associativity plus the torus-side acceptance properties.
pub fn torus_suite(seed: u64) -> Check {
    let mut rng = random::rng(seed);
    let assoc = run("associativity", || {
        let spaces = commutative_spaces(3);
        for i in 0..60 {
            let (_, s) = &spaces[i % spaces.len()];
            let (a, b, c) = (random_torus(&mut rng, s, 2, 2), random_torus(&mut rng, s, 2, 2), random_torus(&mut rng, s, 2, 2));
            ensure!(a.t_mul(&b).t_mul(&c) == a.t_mul(&b.t_mul(&c)), "triple {i}");
            let w = random::random_gens(&mut rng, 5);
            let (l, r) = w.split_at(w.len() / 2);
            ensure!(eval_word(s, &w) == eval_word(s, l).t_mul(&eval_word(s, r)), "word {w:?}");
        }
        Ok(60)
    });
    all_of(
        "torus algebra",
        vec![assoc, presentation(seed), center_projection(seed), tau_calculus(seed)],
    )
}

/// Oracle-backed checks, plus radial(Y, 0) against the oracle for every
/// instance.
pub fn oracle_suite() -> Check {
    let radial_vs_oracle = run("radial(Y, 0) against the oracle", || {
        let mut cases = 0;
        for kind in InstanceKind::all() {
            let inst = build_instance(kind)?;
            let (b, _) = oracle_b_y(&inst)?;
            let s = SpaceParams::new(inst.degrees.clone(), b)?;
            let ry = radial(&canonical_elements(&s).y, &vec![0; s.r()])?;
            for k in 1..=5u32 {
                let image = inst.y_op().apply(&inst.delta0.pow(k))?;
                let ratio = image.ratio_to(&inst.delta0.pow(k - 1));
                let coeff = ry.apply_theta(k as i64).remove(&(k as i64 - 1)).unwrap_or_default();
                ensure!(ratio == Some(coeff), "{kind}, k = {k}");
                cases += 1;
            }
        }
        Ok(cases)
    });
    all_of("oracle", vec![cayley_identity(), proportionality(), embedding(), radial_vs_oracle])
}

pub fn catalog_suite() -> Check {
    run("catalog", || {
        let mut cases = 0;
        for e in catalog().list(&Filter::default()) {
            let label = e.label();
            if e.commutative_parabolic() {
                ensure!(e.d0 == e.rank, "{label}: d0 != rank");
                let s = catalog::to_space_params(&e)?;
                ensure!(s.b_y.total_degree() == e.rank, "{label}: deg b_Y != rank");
            } else {
                ensure!(catalog::by_formula(&e).is_err(), "{label}: formula offered");
            }
            if let Some(kind) = e.oracle {
                let inst = build_instance(kind)?;
                ensure!(inst.dim() as i64 == e.dim, "{label}: oracle dimension {}", inst.dim());
                ensure!(inst.degrees == e.degrees.clone().unwrap_or_default(), "{label}: oracle degrees");
                let (b, _) = oracle_b_y(&inst)?;
                let formula = catalog::by_formula(&e)?;
                ensure!(b.ratio_to(&formula).is_some(), "{label}: oracle b_Y {b} vs {formula}");
            }
            cases += 1;
        }
        let lookup = |n: &str, p: &[(&str, i64)]| catalog().lookup(n, p);
        ensure!(lookup("det", &[("n", 3)])?.d_param == Some(rat(2)), "det3 d");
        ensure!(lookup("quad", &[("m", 5)])?.d_param == Some(rat(3)), "quad5 d");
        ensure!(lookup("E7", &[])?.d_param == Some(rat(8)), "E7 d");
        Ok(cases)
    })
}

// ------------------------------------------------------------------ suites

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ratpoly,
    Torus,
    Smith,
    Radial,
    Oracle,
    Catalog,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ratpoly => "ratpoly",
            Suite::Torus => "torus",
            Suite::Smith => "smith",
            Suite::Radial => "radial",
            Suite::Oracle => "oracle",
            Suite::Catalog => "catalog",
            Suite::All => "all",
        }
    }

    fn members() -> [Suite; 6] {
        [Suite::Ratpoly, Suite::Torus, Suite::Smith, Suite::Radial, Suite::Oracle, Suite::Catalog]
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Suite::members()
            .into_iter()
            .chain([Suite::All])
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite `{s}`")))
    }
}

/// Runs one suite, or every suite for [`Suite::All`]. Suites run on
/// separate threads; results come back in a fixed order.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<(Suite, Check)> {
    let one = |s: Suite| -> Check {
        match s {
            Suite::Ratpoly => ratpoly_suite(seed),
            Suite::Torus => torus_suite(seed),
            Suite::Smith => smith_suite(seed),
            Suite::Radial => radial_suite(seed),
            Suite::Oracle => oracle_suite(),
            Suite::Catalog => catalog_suite(),
            Suite::All => unreachable!(),
        }
    };
    if suite != Suite::All {
        return vec![(suite, one(suite))];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = Suite::members().into_iter().map(|s| (s, scope.spawn(move || one(s)))).collect();
        handles.into_iter().map(|(s, h)| (s, h.join().expect("suite thread panicked"))).collect()
    })
}

/// The acceptance criteria, in order.
pub fn acceptance(seed: u64) -> Vec<Check> {
    vec![
        cayley_identity(),
        proportionality(),
        embedding(),
        presentation(seed),
        smith_suite(seed),
        center_projection(seed),
        radial_suite(seed),
        tau_calculus(seed),
    ]
}
