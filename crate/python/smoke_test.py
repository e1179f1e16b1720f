"""Smoke test for the mfdo extension module.

Build and install it first, e.g.

    pip install maturin
    maturin build -m crates/python/Cargo.toml --release
    pip install target/wheels/mfdo-*.whl
"""

from fractions import Fraction

import mfdo


def main():
    p = mfdo.Poly("X0 + 1/2")
    assert p * p == mfdo.Poly("X0^2 + X0 + 1/4")
    assert p.eval({"X0": "1/3"}) == Fraction(5, 6)
    assert p.shift("X0", 1) == mfdo.Poly("X0 + 3/2")

    det2 = mfdo.Space.from_catalog("det", n=2)
    assert str(det2.element("XY").part(0)) == "X0^2 + X0*X1 + X0"
    y = det2.element("Y").radial([0])
    assert str(y) == "t^-1 * (th^2 + th)"
    assert y.expanded() == "t*(d/dt)^2 + 2*d/dt"
    assert y.apply(3) == {2: Fraction(12)}

    det3 = mfdo.Space.from_catalog("det", n=3)
    assert det3.element("Y").radial([0, 0]) == mfdo.Theta.rais_form(3)

    quad4 = mfdo.Space.from_catalog("quad", m=4)
    assert str(quad4.f_xy()) == "t + 2"
    for g in quad4.kernel_generators([2]):
        assert g.in_kernel([2])

    assert mfdo.lookup("E7")["d"] == "8"
    b, c = mfdo.oracle_bs("sym2")
    assert c == "1", (b, c)

    omega, central = mfdo.Smith("t^2 + t", 1).casimir()
    assert central, omega

    for name, passed, cases, detail in mfdo.verify("catalog", 0):
        assert passed, (name, detail)

    try:
        mfdo.Poly("X0 +")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
