import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import to_sympy
from tauforge.algebra import Poly, RationalFunction, parse_poly
from tauforge.identities import (
    LEMMA22_VARIANTS, Product, TauLeaf, cubic_i_sides, cubic_ii_sides, diff_fay_residual,
    evaluate_expr, expr_slots, generate_product_identity, lemma22_residual,
    product_rule_residual, seventh_order_sides, verify_identity, wronskian,
)
from tauforge.identities import product_wronskian
from tauforge.reference import reference
from tauforge.tau import staircase_tau

BAD = parse_poly("t1^3 - 2*t3")
small = st.lists(st.tuples(st.dictionaries(st.sampled_from(["t1", "t3", "z1"]), st.integers(0, 3), max_size=2),
                           st.integers(-5, 5)), max_size=4).map(Poly.from_terms)


def test_wronskian_of_linear_functions():
    # W(t1 + z1, t1 + z2) = (t1 + z1) - (t1 + z2)
    w = wronskian(parse_poly("t1 + z1"), parse_poly("t1 + z2"))
    assert w == parse_poly("z1 - z2")


def test_wronskian_against_sympy():
    f, g = parse_poly("t1^3 - 3*t3 + z1*t1"), parse_poly("t1^2*z2 + 1")
    t1 = sympy.Symbol("t1")
    F, G = to_sympy(f), to_sympy(g)
    assert sympy.expand(to_sympy(wronskian(f, g)) - (F * sympy.diff(G, t1) - sympy.diff(F, t1) * G)) == 0


@given(small, small, small, st.integers(-4, 4))
def test_wronskian_bilinear_antisymmetric(f, g, h, c):
    assert wronskian(f, g) == -wronskian(g, f)
    assert wronskian(f, f) == Poly()
    assert wronskian(f + h.scale(c), g) == wronskian(f, g) + wronskian(h, g).scale(c)


@given(small, small, small, small)
def test_product_rule(f1, f2, g1, g2):
    r1, r2 = product_rule_residual(f1, f2, g1, g2)
    assert r1.is_zero() and r2.is_zero()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_differential_fay(k):
    assert diff_fay_residual(staircase_tau(k)).is_zero()


def test_differential_fay_negative_control():
    assert not diff_fay_residual(BAD).is_zero()


@pytest.mark.parametrize("variant", sorted(LEMMA22_VARIANTS))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_lemma22_variants(k, variant):
    assert lemma22_residual(staircase_tau(k), variant).is_zero()


def test_lemma22_rejects_unknown_variant():
    with pytest.raises(ValueError):
        lemma22_residual(staircase_tau(1), 9)
    with pytest.raises(ValueError):
        lemma22_residual(staircase_tau(1), 1, "z1", "z1")


@pytest.mark.parametrize("check,fn", [("cubic-i", cubic_i_sides), ("cubic-ii", cubic_ii_sides)])
@pytest.mark.parametrize("k", [1, 2])
def test_cubic_against_reference(check, fn, k):
    s = fn(staircase_tau(k))
    assert s.lhs == reference(check, k) and s.rhs == reference(check, k)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cubic_ii_is_the_confluent_limit(k):
    # d/dz2 of the cubic-i sides, then z1 = z2 = z, gives the cubic-ii sides
    s, c = cubic_i_sides(staircase_tau(k)), cubic_ii_sides(staircase_tau(k))
    z = Poly.var("z")
    for side, target in ((s.lhs, c.lhs), (s.rhs, c.rhs)):
        assert side.diff("z2").compose({"z1": z, "z2": z}) == target


def test_cubic_negative_control():
    assert not cubic_i_sides(BAD).passed
    assert not cubic_ii_sides(BAD).passed


def test_seventh_order_tau1():
    s = seventh_order_sides(staircase_tau(1))
    assert s.passed and s.lhs == reference("seventh", 1)


def test_seventh_order_tau3_term_counts():
    s = seventh_order_sides(staircase_tau(2))
    assert s.passed and min(s.term_counts) > 250


def test_seventh_order_negative_control():
    assert not seventh_order_sides(BAD).passed


def test_generated_tree_shapes():
    left, right = generate_product_identity(3)
    assert expr_slots(left) == expr_slots(right) == {0, 1, 2, 3}
    assert left != right
    with pytest.raises(ValueError):
        generate_product_identity(1)
    with pytest.raises(ValueError):
        generate_product_identity(5)


@pytest.mark.parametrize("n", [2, 3])
def test_generated_trees_equal_the_plain_wronskian(n):
    tau = staircase_tau(2)
    names = [f"z{i + 1}" for i in range(2 ** (n - 1))]
    full = evaluate_expr(product_wronskian(n), tau, names)
    left, right = generate_product_identity(n)
    assert evaluate_expr(left, tau, names) == full
    assert evaluate_expr(right, tau, names) == full


def test_generated_n2_is_cubic_i_up_to_factor():
    tau = staircase_tau(2)
    left, right = generate_product_identity(2)
    z1, z2 = Poly.var("z1"), Poly.var("z2")
    factor = RationalFunction(tau.poly, z1 * z2)
    s = cubic_i_sides(tau)
    assert evaluate_expr(left, tau, ["z1", "z2"]) == factor * RationalFunction(s.lhs)
    assert evaluate_expr(right, tau, ["z1", "z2"]) == factor * RationalFunction(s.rhs)


def test_verify_identity_reports():
    tau = staircase_tau(1)
    rep = verify_identity(generate_product_identity(3), tau, ["z1", "z2", "z3", "z4"])
    assert rep.passed and rep.residual_terms == 0
    with pytest.raises(ValueError):
        verify_identity(generate_product_identity(3), tau, ["z1", "z2"])
    with pytest.raises(ValueError):
        verify_identity(generate_product_identity(2), tau, ["z1", "z1"])
    bad = verify_identity((TauLeaf(((0, 1),)), Product((TauLeaf(),))), tau, ["z1"])
    assert not bad.passed
