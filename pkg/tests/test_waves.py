import pytest
from hypothesis import given, strategies as st

from tauforge.algebra import Poly, RationalFunction, parse_poly
from tauforge.tau import staircase_tau
from tauforge.waves import (
    DegenerateSpectralPairError, ExpKey, faddeev_takhtajan_check, faddeev_takhtajan_quantities,
    lemma23_closed_form, lemma23_residual, make_wave, sturm_liouville_residual, wave_wronskian,
)

BAD = parse_poly("t1^3 - 2*t3")
keys = st.dictionaries(st.integers(1, 4), st.integers(-3, 3), max_size=3).map(ExpKey.of)


@given(keys, keys, keys)
def test_expkey_is_an_abelian_group(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert (a - a).is_zero()
    assert a + ExpKey() == a


def test_wave_of_t1():
    psi = make_wave(parse_poly("t1"), 1)
    w1 = Poly.var("w1")
    # tau(t - [w1]) / tau = (t1 - w1) / t1
    assert psi.mantissa == RationalFunction(parse_poly("t1 - w1"), parse_poly("t1"))
    assert psi.key == ExpKey.of({1: 1})
    assert make_wave(parse_poly("t1"), 1, star=True).key == ExpKey.of({1: -1})
    assert psi.dx().mantissa == RationalFunction(parse_poly("t1 - w1"), parse_poly("t1")) / w1 + RationalFunction(
        w1, parse_poly("t1^2"))


def test_exponential_wronskian_prefactor():
    # W(e^(z1 x), e^(z2 x)) = (z2 - z1) e^((z1 + z2) x); mantissas are 1 for tau = 1
    one = Poly.const(1)
    w = wave_wronskian(make_wave(one, 1), make_wave(one, 2))
    z1, z2 = RationalFunction(1, Poly.var("w1")), RationalFunction(1, Poly.var("w2"))
    assert w.mantissa == z2 - z1


@pytest.mark.parametrize("variant", ["i", "ii", "iii", "iv"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_lemma23(k, variant):
    rep = lemma23_residual(staircase_tau(k), variant)
    assert rep.passed and rep.details["key_match"]


@pytest.mark.parametrize("variant", ["i", "ii", "iii", "iv"])
def test_lemma23_opposite_sign_and_swap_fail(variant):
    tau = staircase_tau(2)
    assert not lemma23_residual(tau, variant, sign=-1).passed
    assert not lemma23_residual(tau, variant, swap_closed_form=True).passed


def test_lemma23_negative_control_and_bad_variant():
    assert not lemma23_residual(BAD, "i").passed
    with pytest.raises(ValueError):
        lemma23_residual(staircase_tau(1), "v")
    with pytest.raises(ValueError):
        lemma23_closed_form(staircase_tau(1), "v")


@pytest.mark.parametrize("star", [False, True])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_sturm_liouville(k, star):
    assert sturm_liouville_residual(staircase_tau(k), 1, star).is_zero()


def test_sturm_liouville_negative_control():
    assert not sturm_liouville_residual(BAD).is_zero()


@pytest.mark.parametrize("k", [1, 2])
def test_faddeev_takhtajan(k):
    rep = faddeev_takhtajan_check(staircase_tau(k))
    assert rep.passed
    assert rep.details == {"W_eq_W1": True, "W_eq_W2": True, "closed_form_match": True}


def test_faddeev_takhtajan_symmetry():
    # swapping the spectral parameters flips the sign of the squared-solution Wronskian
    W12, _, _ = faddeev_takhtajan_quantities(staircase_tau(2), 1, 2)
    W21, _, _ = faddeev_takhtajan_quantities(staircase_tau(2), 2, 1)
    assert W12 == -W21


def test_faddeev_takhtajan_degenerate_and_negative():
    with pytest.raises(DegenerateSpectralPairError):
        faddeev_takhtajan_quantities(staircase_tau(1), 1, 1)
    assert not faddeev_takhtajan_check(BAD).passed
