import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import from_sympy, to_sympy
from tauforge.algebra import Poly, parse_poly
from tauforge.tau import (
    ShiftCollisionError, ShiftSpec, TauPoly, fay_residual, is_kdv_tau, miwa_shift, normalize_tau, shifted,
    staircase_tau, u_potential,
)


def sympy_staircase(k):
    """Jacobi-Trudi from the generating function exp(sum t_j z^j), computed by sympy."""
    n = 2 * k - 1
    z = sympy.Symbol("z")
    ts = sympy.symbols(f"t1:{n + 1}")
    gen = sympy.series(sympy.exp(sum(t * z ** (j + 1) for j, t in enumerate(ts))), z, 0, n + 1).removeO()
    h = lambda m: 0 if m < 0 else sympy.expand(gen).coeff(z, m)  # noqa: E731
    lam = list(range(k, 0, -1))
    det = sympy.Matrix(k, k, lambda i, j: h(lam[i] - i + j)).det()
    det = sympy.expand(det.subs({t: 0 for j, t in enumerate(ts) if (j + 1) % 2 == 0}))
    _, prim = sympy.Poly(det, *ts).primitive()
    expr = prim.as_expr()
    lead = sympy.Poly(expr, ts[0]).LC()
    return -expr if lead.subs({t: 0 for t in ts[1:]}) < 0 else expr


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_staircase_against_sympy(k):
    assert staircase_tau(k).poly == from_sympy(sympy_staircase(k))


def test_printed_taus():
    assert str(staircase_tau(1)) == "t1"
    assert str(staircase_tau(2)) == "t1^3 - 3*t3"
    assert str(staircase_tau(3)) == "t1^6 - 15*t1^3*t3 + 45*t1*t5 - 45*t3^2"


def test_staircase_rejects_bad_index():
    with pytest.raises(ValueError):
        staircase_tau(0)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_staircase_is_kdv_and_weighted_homogeneous(k):
    p = staircase_tau(k).poly
    assert is_kdv_tau(p).passed
    assert p.weighted_degrees() == {k * (k + 1) // 2}


def test_even_time_is_not_kdv():
    rep = is_kdv_tau(parse_poly("t1^2 + t2"))
    assert not rep.passed and rep.failing_index == 2


@pytest.mark.parametrize("a,zero", [(1, False), (2, False), (3, True), (4, False)])
def test_fay_only_for_the_right_coefficient(a, zero):
    assert fay_residual(parse_poly(f"t1^3 - {a}*t3")).is_zero() is zero


def test_shift_of_t1_is_additive():
    assert shifted(parse_poly("t1"), {"z": 1}) == parse_poly("t1 + z")
    assert shifted(parse_poly("t1^3 - 3*t3"), {"z": 1}) == parse_poly("t1^3 + 3*t1^2*z + 3*t1*z^2 - 3*t3")


def test_shift_spec_rejects_time_variables():
    with pytest.raises(ValueError):
        ShiftSpec(1, "t1")
    assert miwa_shift(parse_poly("t1"), ShiftSpec(-1, "z1")) == parse_poly("t1 - z1")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_shift_invertibility(k):
    p = staircase_tau(k).poly
    z1 = Poly.var("z1")
    back = shifted(shifted(p, {"z1": 1}), {"z2": -1}).compose({"z2": z1})
    assert back == p
    assert shifted(shifted(p, {"z1": 1}), {"z2": 1}) == shifted(p, {"z1": 1, "z2": 1})
    twice = shifted(shifted(p, {"z1": 1}), {"z2": 1}).compose({"z2": z1})
    assert shifted(p, {"z1": 2}) == twice
    assert shifted(p, {"z1": -1}) == shifted(p, {"z1": 1}).compose({"z1": -z1})


def test_shift_collision_is_rejected():
    with pytest.raises(ShiftCollisionError):
        shifted(parse_poly("t1 + z1"), {"z1": 1})


@given(st.integers(-7, 7).filter(bool))
def test_fay_is_scale_invariant(c):
    p = staircase_tau(2).poly
    assert fay_residual(p.scale(c)).is_zero()
    assert normalize_tau(p.scale(c))[0] == p


def test_fay_residual_cyclic_in_parameters():
    bad = parse_poly("t1^3 - 2*t3")
    r = fay_residual(bad)
    rotated = fay_residual(bad, z=("z1", "z2", "z3", "z0"))
    assert r == rotated or r == -rotated


def test_potential_of_t1():
    u = u_potential(parse_poly("t1"))
    assert u == -2 / (Poly.var("t1") ** 2) or u * Poly.var("t1") ** 2 == -2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_serialize_roundtrip(k):
    tau = staircase_tau(k)
    back = TauPoly.deserialize(tau.serialize())
    assert back.poly == tau.poly and back.staircase_index == k


def test_deserialize_plain_and_empty():
    assert TauPoly.deserialize("# comment\nt1^3 - 2*t3\n").poly == parse_poly("t1^3 - 2*t3")
    with pytest.raises(ValueError):
        TauPoly.deserialize("\n# nothing\n")


def test_sympy_reading_of_staircase_three():
    expr = to_sympy(staircase_tau(3).poly)
    assert sympy.Poly(expr).total_degree() == 6
