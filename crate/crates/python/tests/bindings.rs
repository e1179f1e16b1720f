use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    Python::attach(|py| {
        let m = PyModule::new(py, "mfdo").unwrap();
        mfdo::register(&m).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("mfdo", m).unwrap();
        let src = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&src, Some(&globals), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn poly_arithmetic() {
    run(r#"
p = mfdo.Poly("X0 + 1/2")
assert str(p * p) == str(mfdo.Poly("X0^2 + X0 + 1/4"))
assert p - p == mfdo.Poly("0")
from fractions import Fraction
assert p.eval({"X0": "1/3"}) == Fraction(5, 6)
"#);
}

#[test]
fn det2_space() {
    run(r#"
s = mfdo.Space.from_catalog("det", n=2)
assert str(s.element("XY").part(0)) == "X0^2 + X0*X1 + X0"
assert str(s.element("Y").radial([0])) == "t^-1 * (th^2 + th)"
assert all(g.in_kernel([1]) for g in s.kernel_generators([1]))
"#);
}

#[test]
fn smith_casimir_is_central() {
    run(r#"
a = mfdo.Smith("t^2 + t", 1)
omega, central = a.casimir()
assert central
assert a.normal_form("yx") == a.normal_form("yx")
"#);
}

#[test]
fn bad_input_raises() {
    run(r#"
try:
    mfdo.Poly("X0 +")
except ValueError:
    pass
else:
    raise AssertionError("parse error not raised")
"#);
}
