"""Wave functions of a polynomial KdV tau function and their Wronskians.

A wave function is stored as ``exp(sum_i e_i E(z_i)) * mantissa`` where
E(z) = t1 z + t3 z^3 + ... is never expanded.  The inverse shift [1/z_i] is
written with the variable ``w_i`` (so z_i = 1/w_i), which keeps mantissas
inside the polynomial/rational-function kernel.  Because t1 = x always enters
E(z_i) with coefficient z_i, d/dx of the exponential contributes exactly
``sum_i e_i / w_i``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Mapping

from .algebra import Poly, RationalFunction, VarId
from .report import FAIL, PASS, IdentityReport
from .tau import TauLike, shifted, tau_poly, u_potential

__all__ = [
    "ExpKey",
    "ExpTauFunction",
    "DegenerateSpectralPairError",
    "make_wave",
    "wave_wronskian",
    "lemma23_closed_form",
    "lemma23_residual",
    "sturm_liouville_residual",
    "faddeev_takhtajan_quantities",
    "faddeev_takhtajan_check",
]

X = VarId.time(1)


class DegenerateSpectralPairError(ValueError):
    pass


def w_var(i: int) -> VarId:
    return VarId.parse(f"w{i}")


def z_of(i: int) -> RationalFunction:
    """z_i expressed as 1/w_i."""
    return RationalFunction(1, Poly.var(w_var(i)))


@dataclass(frozen=True)
class ExpKey:
    items: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "ExpKey":
        return cls(tuple(sorted((i, e) for i, e in mapping.items() if e)))

    def __add__(self, other: "ExpKey") -> "ExpKey":
        d = dict(self.items)
        for i, e in other.items:
            d[i] = d.get(i, 0) + e
        return ExpKey.of(d)

    def __neg__(self) -> "ExpKey":
        return ExpKey(tuple((i, -e) for i, e in self.items))

    def __sub__(self, other: "ExpKey") -> "ExpKey":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.items

    def x_derivative(self) -> RationalFunction:
        acc = RationalFunction(0)
        for i, e in self.items:
            acc = acc + z_of(i) * e
        return acc

    def __str__(self) -> str:
        return "exp[" + ",".join(f"{i}:{e}" for i, e in self.items) + "]"


@dataclass(frozen=True)
class ExpTauFunction:
    key: ExpKey
    mantissa: RationalFunction

    def __mul__(self, other: "ExpTauFunction") -> "ExpTauFunction":
        return ExpTauFunction(self.key + other.key, self.mantissa * other.mantissa)

    def dx(self) -> "ExpTauFunction":
        m = self.mantissa
        return ExpTauFunction(self.key, m.diff(X) + self.key.x_derivative() * m)

    def serialize(self) -> str:
        return f"{self.key} * ({self.mantissa.num})/({self.mantissa.den})"

    __str__ = serialize


def make_wave(tau: TauLike, i: int, star: bool = False) -> ExpTauFunction:
    """psi(t, z_i) (or psi* when ``star``) for the given tau."""
    p = tau_poly(tau)
    sign = 1 if star else -1
    num = shifted(p, {w_var(i): sign})
    return ExpTauFunction(ExpKey.of({i: -sign}), RationalFunction(num, p))


def wave_wronskian(a: ExpTauFunction, b: ExpTauFunction) -> ExpTauFunction:
    """W(e^A m_a, e^B m_b) = e^(A+B) [W(m_a, m_b) + (B' - A') m_a m_b]."""
    ma, mb = a.mantissa, b.mantissa
    w = ma * mb.diff(X) - ma.diff(X) * mb
    shift = b.key.x_derivative() - a.key.x_derivative()
    return ExpTauFunction(a.key + b.key, w + shift * ma * mb)


# variant -> (first is psi*, second is psi*)
_LEMMA23 = {
    "i": (False, False),
    "ii": (True, True),
    "iii": (False, True),
    "iv": (True, False),
}


def lemma23_closed_form(tau: TauLike, variant: str, i: int = 1, j: int = 2,
                        sign: int = 1) -> ExpTauFunction:
    """Closed form of W(psi-or-psi*(z_i), psi-or-psi*(z_j)).

    With exponent signs e_i, e_j (+1 for psi, -1 for psi*) the result is
    (e_j z_j - e_i z_i) exp(e_i E(z_i) + e_j E(z_j)) tau(t - e_i[w_i] - e_j[w_j]) / tau,
    the prefactor being the one W(e^(e_i z_i x), e^(e_j z_j x)) produces.
    ``sign`` multiplies the prefactor (``sign=-1`` gives the opposite-sign form).
    """
    if variant not in _LEMMA23:
        raise ValueError(f"variant must be one of i, ii, iii, iv; got {variant!r}")
    star1, star2 = _LEMMA23[variant]
    p = tau_poly(tau)
    e1 = -1 if star1 else 1
    e2 = -1 if star2 else 1
    pref = (z_of(j) * e2 - z_of(i) * e1) * sign
    num = shifted(p, {w_var(i): -e1, w_var(j): -e2})
    return ExpTauFunction(ExpKey.of({i: e1, j: e2}), pref * RationalFunction(num, p))


def lemma23_residual(tau: TauLike, variant: str, i: int = 1, j: int = 2,
                     swap_closed_form: bool = False, sign: int = 1) -> IdentityReport:
    """Compare the computed wave Wronskian with its closed form.

    Keys must agree as formal objects and mantissas as rational functions.
    ``swap_closed_form`` exchanges z_i and z_j in the closed form only (a
    negative control: the formulas are not symmetric).
    """
    start = time.perf_counter()
    star1, star2 = _LEMMA23.get(variant, (None, None))
    if star1 is None:
        raise ValueError(f"variant must be one of i, ii, iii, iv; got {variant!r}")
    got = wave_wronskian(make_wave(tau, i, star1), make_wave(tau, j, star2))
    expected = lemma23_closed_form(tau, variant, *((j, i) if swap_closed_form else (i, j)), sign=sign)
    key_ok = got.key == expected.key
    diff = got.mantissa - expected.mantissa
    ok = key_ok and diff.is_zero()
    return IdentityReport(
        check="lemma23",
        tau=_label(tau),
        status=PASS if ok else FAIL,
        parameters={"variant": variant, "i": i, "j": j, "swapped": swap_closed_form, "sign": sign},
        residual_terms=diff.num.term_count(),
        side_terms=[got.mantissa.num.term_count(), expected.mantissa.num.term_count()],
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
        details={"key": str(got.key), "expected_key": str(expected.key), "key_match": key_ok},
    )


def sturm_liouville_residual(tau: TauLike, i: int = 1, star: bool = False) -> Poly:
    """Numerator of phi'' + 2 s z phi' + u phi for the mantissa phi (s = +1 for psi,
    -1 for psi*); zero exactly when (d^2/dx^2 + u) psi = z^2 psi."""
    wave = make_wave(tau, i, star)
    phi = wave.mantissa
    s = -1 if star else 1
    d1 = phi.diff(X)
    d2 = d1.diff(X)
    res = d2 + z_of(i) * d1 * (2 * s) + u_potential(tau) * phi
    return res.num


def faddeev_takhtajan_quantities(tau: TauLike, i: int = 1, j: int = 2):
    """The Wronskian of squared solutions and its two derivative forms.

    All three carry zero exponential key, so they are plain rational
    functions of the odd times and w_i, w_j.
    """
    if i == j:
        raise DegenerateSpectralPairError("degenerate spectral pair: z1 = z2")
    psi1, psi1s = make_wave(tau, i), make_wave(tau, i, True)
    psi2, psi2s = make_wave(tau, j), make_wave(tau, j, True)
    sq1, sq2 = psi1 * psi1s, psi2 * psi2s
    assert sq1.key.is_zero() and sq2.key.is_zero()
    W = wave_wronskian(sq1, sq2)
    z1, z2 = z_of(i), z_of(j)
    inv = -1 / (z1 * z1 - z2 * z2)
    prod1 = wave_wronskian(psi1, psi2) * wave_wronskian(psi1s, psi2s)
    prod2 = wave_wronskian(psi1, psi2s) * wave_wronskian(psi1s, psi2)
    assert W.key.is_zero() and prod1.key.is_zero() and prod2.key.is_zero()
    W1 = inv * prod1.mantissa.diff(X)
    W2 = inv * prod2.mantissa.diff(X)
    return W.mantissa, W1, W2


def _ft_closed_form(tau: TauLike, i: int, j: int) -> RationalFunction:
    p = tau_poly(tau)
    a, b = w_var(i), w_var(j)

    def T(ca=0, cb=0):
        return shifted(p, {a: ca, b: cb})

    bracket = T(-1, -1) * T(1) * T(0, 1) - T(1, 1) * T(-1) * T(0, -1)
    return (z_of(j) - z_of(i)) * RationalFunction(bracket, p ** 3)


def faddeev_takhtajan_check(tau: TauLike, i: int = 1, j: int = 2) -> IdentityReport:
    start = time.perf_counter()
    W, W1, W2 = faddeev_takhtajan_quantities(tau, i, j)
    r1, r2 = W - W1, W - W2
    ok = r1.is_zero() and r2.is_zero()
    closed = W == _ft_closed_form(tau, i, j)
    return IdentityReport(
        check="ft",
        tau=_label(tau),
        status=PASS if ok else FAIL,
        parameters={"i": i, "j": j},
        residual_terms=r1.num.term_count() + r2.num.term_count(),
        side_terms=[W.num.term_count(), W1.num.term_count(), W2.num.term_count()],
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
        details={"W_eq_W1": r1.is_zero(), "W_eq_W2": r2.is_zero(), "closed_form_match": closed},
    )


def _label(tau) -> str:
    return tau.label if hasattr(tau, "label") else str(tau)
