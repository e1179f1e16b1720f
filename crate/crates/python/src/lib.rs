//! Python bindings: exact polynomials, spaces from the catalog, the torus
//! algebra, radial components, Smith algebras and the property suites.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mfdo_core::catalog::{self, catalog, Filter};
use mfdo_core::radial::{self, KernelForm, ThetaOperator};
use mfdo_core::ratpoly::{fmt_rational, RatPoly, Rational};
use mfdo_core::smith::{self, parse_letters, s_normal_form, CoeffRing, SmithAlgebra, SmithElement};
use mfdo_core::torus::{self, eval_word, parse_word, SpaceParams, TorusElement};
use mfdo_core::verify::{run_suite, Suite};
use mfdo_core::weyl::{build_instance, calibration, extract_bs, InstanceKind};

fn err(e: mfdo_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_rational(q),))
}

fn rational_arg(v: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let s = v.str()?.to_string();
    match mfdo_core::parse(&s).map_err(err)?.constant_value() {
        Some(q) => Ok(q),
        None => Err(PyValueError::new_err(format!("not a rational number: {s}"))),
    }
}

/// Polynomial with rational coefficients.
#[pyclass(name = "Poly", module = "mfdo", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Poly(RatPoly);

#[pymethods]
impl Poly {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        mfdo_core::parse(src).map(Poly).map_err(err)
    }

    #[staticmethod]
    fn var(name: &str) -> Self {
        Poly(RatPoly::var(name))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }

    fn __add__(&self, rhs: PyRef<'_, Poly>) -> Self {
        Poly(&self.0 + &rhs.0)
    }

    fn __sub__(&self, rhs: PyRef<'_, Poly>) -> Self {
        Poly(&self.0 - &rhs.0)
    }

    fn __mul__(&self, rhs: PyRef<'_, Poly>) -> Self {
        Poly(&self.0 * &rhs.0)
    }

    fn __neg__(&self) -> Self {
        Poly(-&self.0)
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        Poly(self.0.pow(k))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn vars(&self) -> Vec<String> {
        self.0.vars().to_vec()
    }

    fn total_degree(&self) -> i64 {
        self.0.total_degree()
    }

    fn degree_in(&self, name: &str) -> i64 {
        self.0.degree_in(name)
    }

    fn substitute(&self, name: &str, expr: PyRef<'_, Poly>) -> Self {
        Poly(self.0.substitute(name, &expr.0))
    }

    /// `p(.., name + c, ..)`.
    fn shift(&self, name: &str, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Poly(self.0.shift(name, &rational_arg(c)?)))
    }

    fn derivative(&self, name: &str) -> Self {
        Poly(self.0.derivative(name))
    }

    /// Evaluates at a full assignment, returning a `Fraction`.
    fn eval<'py>(&self, py: Python<'py>, values: BTreeMap<String, Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let vals = values
            .iter()
            .map(|(k, v)| Ok((k.as_str(), rational_arg(v)?)))
            .collect::<PyResult<Vec<_>>>()?;
        fraction(py, &self.0.eval(&vals).map_err(err)?)
    }
}

/// A space given by its degrees `d0..dr` and the Bernstein-Sato polynomial of `Y`.
#[pyclass(name = "Space", module = "mfdo", frozen)]
pub struct Space {
    inner: Arc<SpaceParams>,
    label: String,
}

#[pymethods]
impl Space {
    #[new]
    fn new(degrees: Vec<i64>, b_y: &str) -> PyResult<Self> {
        let inner = SpaceParams::new(degrees, mfdo_core::parse(b_y).map_err(err)?).map_err(err)?;
        Ok(Space { inner, label: "custom".into() })
    }

    /// Catalog entry, e.g. `Space.from_catalog("det", n=3)`.
    #[staticmethod]
    #[pyo3(signature = (name, **params))]
    fn from_catalog(name: &str, params: Option<BTreeMap<String, i64>>) -> PyResult<Self> {
        let params = params.unwrap_or_default();
        let pairs: Vec<(&str, i64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let entry = catalog().lookup(name, &pairs).map_err(err)?;
        let inner = catalog::to_space_params(&entry).map_err(err)?;
        Ok(Space { inner, label: entry.label() })
    }

    fn __repr__(&self) -> String {
        format!("Space({}, degrees={:?}, b_y='{}')", self.label, self.inner.degrees, self.inner.b_y)
    }

    #[getter]
    fn degrees(&self) -> Vec<i64> {
        self.inner.degrees.clone()
    }

    #[getter]
    fn b_y(&self) -> Poly {
        Poly(self.inner.b_y.clone())
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn d0(&self) -> i64 {
        self.inner.d0()
    }

    /// Word in `X`, `Xinv`, `Y`, `E` evaluated in the torus algebra.
    fn element(&self, word: &str) -> PyResult<Element> {
        let w = parse_word(word).map_err(err)?;
        Ok(Element(eval_word(&self.inner, &w)))
    }

    /// Homogeneous part `t^m p`.
    fn part(&self, m: i64, p: PyRef<'_, Poly>) -> Element {
        Element(TorusElement::part_at(&self.inner, m, p.0.clone()))
    }

    /// `u_XY(t)` with `XY = u_XY(E)`.
    fn u_xy(&self) -> Poly {
        Poly(RatPoly::horner(&torus::u_xy(&self.inner), &RatPoly::var(smith::T_VAR)))
    }

    /// `f_XY(t) = u_XY(t + d0) - u_XY(t)`.
    fn f_xy(&self) -> Poly {
        Poly(RatPoly::horner(&torus::f_xy(&self.inner), &RatPoly::var(smith::T_VAR)))
    }

    /// `E, D_0, .., D_r`.
    fn standard_generators(&self) -> Vec<Element> {
        radial::standard_generators(&self.inner).into_iter().map(Element).collect()
    }

    /// Generators of the kernel of the radial map at label `a`.
    #[pyo3(signature = (a, euler_form=false))]
    fn kernel_generators(&self, a: Vec<i64>, euler_form: bool) -> PyResult<Vec<Element>> {
        let form = if euler_form { KernelForm::EulerPolynomial } else { KernelForm::FixedLabel };
        let gens = radial::standard_generators(&self.inner);
        radial::kernel_generators(&self.inner, &gens, &a, form)
            .map(|v| v.into_iter().map(Element).collect())
            .map_err(err)
    }
}

/// Element of the torus algebra: a finite sum of `t^m p_m(X0..Xr)`.
#[pyclass(name = "Element", module = "mfdo", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Element(TorusElement);

impl Element {
    fn same_space(&self, rhs: &Element) -> PyResult<()> {
        if Arc::ptr_eq(self.0.space(), rhs.0.space()) || self.0.space() == rhs.0.space() {
            Ok(())
        } else {
            Err(PyValueError::new_err("elements live on different spaces"))
        }
    }
}

#[pymethods]
impl Element {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.0)
    }

    fn __add__(&self, rhs: PyRef<'_, Element>) -> PyResult<Self> {
        self.same_space(&rhs)?;
        Ok(Element(&self.0 + &rhs.0))
    }

    fn __sub__(&self, rhs: PyRef<'_, Element>) -> PyResult<Self> {
        self.same_space(&rhs)?;
        Ok(Element(&self.0 - &rhs.0))
    }

    fn __mul__(&self, rhs: PyRef<'_, Element>) -> PyResult<Self> {
        self.same_space(&rhs)?;
        Ok(Element(&self.0 * &rhs.0))
    }

    fn __neg__(&self) -> Self {
        Element(-&self.0)
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        Element(self.0.pow(k))
    }

    fn commutator(&self, rhs: PyRef<'_, Element>) -> PyResult<Self> {
        self.same_space(&rhs)?;
        Ok(Element(self.0.commutator(&rhs.0)))
    }

    /// Homogeneous parts keyed by degree.
    fn parts(&self) -> BTreeMap<i64, Poly> {
        self.0.parts().iter().map(|(m, p)| (*m, Poly(p.clone()))).collect()
    }

    fn part(&self, m: i64) -> Poly {
        Poly(self.0.part(m))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_central(&self) -> bool {
        self.0.is_central()
    }

    fn tau(&self) -> Self {
        Element(self.0.tau())
    }

    fn project_center(&self) -> PyResult<Self> {
        self.0.project_center().map(Element).map_err(err)
    }

    /// Radial component on the isotypic component with label `a`.
    fn radial(&self, a: Vec<i64>) -> PyResult<Theta> {
        radial::radial(&self.0, &a).map(Theta).map_err(err)
    }

    fn in_kernel(&self, a: Vec<i64>) -> PyResult<bool> {
        radial::in_kernel(&self.0, &a).map_err(err)
    }
}

/// Operator in `t` and `theta = t d/dt`, stored as `sum t^m q_m(theta)`.
#[pyclass(name = "Theta", module = "mfdo", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Theta(ThetaOperator);

#[pymethods]
impl Theta {
    #[staticmethod]
    fn rais_form(n: u32) -> PyResult<Self> {
        radial::rais_form(n).map(Theta).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Theta('{}')", self.0)
    }

    fn __add__(&self, rhs: PyRef<'_, Theta>) -> Self {
        Theta(self.0.add(&rhs.0))
    }

    fn __sub__(&self, rhs: PyRef<'_, Theta>) -> Self {
        Theta(self.0.sub(&rhs.0))
    }

    fn __mul__(&self, rhs: PyRef<'_, Theta>) -> Self {
        Theta(self.0.theta_mul(&rhs.0))
    }

    /// Same operator in powers of `t` and `d/dt`.
    fn expanded(&self) -> String {
        self.0.expanded_string()
    }

    fn parts(&self) -> BTreeMap<i64, Poly> {
        self.0.parts().iter().map(|(m, p)| (*m, Poly(p.clone()))).collect()
    }

    /// Image of `t^k` as a map from exponents to coefficients.
    fn apply<'py>(&self, py: Python<'py>, k: i64) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (m, c) in self.0.apply_theta(k) {
            out.set_item(m, fraction(py, &c)?)?;
        }
        Ok(out)
    }
}

/// Smith algebra with defining polynomial `f` and weight `n`.
#[pyclass(name = "Smith", module = "mfdo", frozen)]
pub struct Smith(Arc<SmithAlgebra>);

#[pymethods]
impl Smith {
    #[new]
    #[pyo3(signature = (f, n, ring=None))]
    fn new(f: &str, n: i64, ring: Option<Vec<String>>) -> PyResult<Self> {
        let ring = match ring {
            Some(v) if !v.is_empty() => CoeffRing::QPoly(v),
            _ => CoeffRing::Q,
        };
        SmithAlgebra::new(ring, mfdo_core::parse(f).map_err(err)?, n).map(Smith).map_err(err)
    }

    /// PBW normal form of a word in `x`, `y`, `e`.
    fn normal_form(&self, word: &str) -> PyResult<String> {
        let letters = parse_letters(word).map_err(err)?;
        s_normal_form(&self.0, &letters).map(|e| e.to_string()).map_err(err)
    }

    /// The Casimir element and whether it commutes with `x`, `y`, `e`.
    fn casimir(&self) -> (String, bool) {
        let omega = smith::casimir(&self.0);
        let central = [SmithElement::x(&self.0), SmithElement::y(&self.0), SmithElement::e(&self.0)]
            .iter()
            .all(|g| omega.commutator(g).is_zero());
        (omega.to_string(), central)
    }
}

/// Catalog entry as a dict.
#[pyfunction]
#[pyo3(signature = (name, **params))]
fn lookup<'py>(py: Python<'py>, name: &str, params: Option<BTreeMap<String, i64>>) -> PyResult<Bound<'py, PyDict>> {
    let params = params.unwrap_or_default();
    let pairs: Vec<(&str, i64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let e = catalog().lookup(name, &pairs).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("name", e.label())?;
    out.set_item("table", e.table)?;
    out.set_item("rank", e.rank)?;
    out.set_item("dim", e.dim)?;
    out.set_item("d0", e.d0)?;
    out.set_item("degrees", e.degrees.clone())?;
    out.set_item("d", e.d_param.as_ref().map(fmt_rational))?;
    out.set_item("commutative_parabolic", e.commutative_parabolic())?;
    out.set_item("group", e.group.clone())?;
    out.set_item("b_y", catalog::by_formula(&e).ok().map(|p| p.to_string()))?;
    Ok(out)
}

/// Labels of the catalog entries, optionally filtered.
#[pyfunction]
#[pyo3(signature = (table=None, commutative_only=false, max_rank=None))]
fn entries(table: Option<u8>, commutative_only: bool, max_rank: Option<i64>) -> Vec<String> {
    let filter = Filter { table, commutative_only, max_rank };
    catalog().list(&filter).iter().map(|e| e.label()).collect()
}

/// Bernstein-Sato polynomial of `X`, `Y`, `E` or `R0` on a concrete instance,
/// recovered by brute force in the Weyl algebra.
#[pyfunction]
#[pyo3(signature = (instance, operator="Y"))]
fn oracle_bs(instance: &str, operator: &str) -> PyResult<(Poly, Option<String>)> {
    let kind: InstanceKind = instance.parse().map_err(err)?;
    let inst = build_instance(kind).map_err(err)?;
    let op = inst.operator(operator).map_err(err)?;
    let m = match operator {
        "X" => 1,
        "Y" => -1,
        _ => 0,
    };
    let per_axis = (op.order().max(0) as u32 + 1).max(inst.r() as u32 + 2);
    let axes = vec![(0..per_axis).collect::<Vec<u32>>(); inst.r() + 1];
    let b = extract_bs(&inst, &op, m, &axes).map_err(err)?;
    let c = if operator == "Y" {
        Some(fmt_rational(&calibration(&b, inst.r(), &inst.d_half()).map_err(err)?))
    } else {
        None
    };
    Ok((Poly(b), c))
}

/// Runs a seeded property suite; returns `(name, passed, cases, detail)` rows.
#[pyfunction]
#[pyo3(signature = (suite="all", seed=0))]
fn verify(py: Python<'_>, suite: &str, seed: u64) -> PyResult<Vec<(String, bool, usize, String)>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let rows = py.detach(|| run_suite(suite, seed));
    Ok(rows.into_iter().map(|(_, c)| (c.name, c.passed, c.cases, c.detail)).collect())
}

#[pymodule]
fn mfdo(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds the classes and functions to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<Space>()?;
    m.add_class::<Element>()?;
    m.add_class::<Theta>()?;
    m.add_class::<Smith>()?;
    m.add_function(wrap_pyfunction!(lookup, m)?)?;
    m.add_function(wrap_pyfunction!(entries, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_bs, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
