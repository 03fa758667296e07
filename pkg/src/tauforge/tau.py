"""Polynomial KdV tau functions, Miwa shifts, and the Fay identity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Mapping, Optional, Union

from .algebra import Poly, RationalFunction, VarId, as_var, parse_poly

__all__ = [
    "TauPoly",
    "ShiftSpec",
    "KdvReport",
    "TauConstructionError",
    "ShiftCollisionError",
    "elementary_schur",
    "staircase_tau",
    "normalize_tau",
    "miwa_shift",
    "shifted",
    "is_kdv_tau",
    "fay_residual",
    "u_potential",
    "tau_poly",
    "odd_times",
    "max_odd_time",
]


class TauConstructionError(RuntimeError):
    pass


class ShiftCollisionError(ValueError):
    pass


@dataclass(frozen=True)
class TauPoly:
    poly: Poly
    staircase_index: Optional[int] = None
    normalization: Fraction = Fraction(1)

    @property
    def label(self) -> str:
        if self.staircase_index is not None:
            return f"staircase-{self.staircase_index}"
        return str(self.poly)

    def serialize(self) -> str:
        lines = []
        if self.staircase_index is not None:
            lines.append(f"staircase k = {self.staircase_index}")
        lines.append(str(self.poly))
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text: str) -> "TauPoly":
        k = None
        body = []
        for line in text.splitlines():
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            if s.startswith("staircase"):
                _, _, rhs = s.partition("=")
                k = int(rhs.strip())
                continue
            body.append(s)
        if not body:
            raise ValueError("tau file contains no polynomial")
        return cls(parse_poly(" ".join(body)), k)

    def __str__(self) -> str:
        return str(self.poly)


@dataclass(frozen=True)
class ShiftSpec:
    sign: int
    var: VarId

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("shift sign must be +1 or -1")
        v = as_var(self.var)
        if v.is_time:
            raise ValueError("shift variable must not be a time variable")
        object.__setattr__(self, "var", v)


TauLike = Union[TauPoly, Poly]


def tau_poly(tau: TauLike) -> Poly:
    return tau.poly if isinstance(tau, TauPoly) else tau


def odd_times(p: Poly) -> list[VarId]:
    return sorted(v for v in p.variables() if v.is_odd_time)


def max_odd_time(p: Poly) -> int:
    return max((v.index for v in p.variables() if v.is_odd_time), default=1)


# -- Schur construction ----------------------------------------------------


@lru_cache(maxsize=None)
def _h_cached(n: int, cutoff: int) -> Poly:
    if n < 0:
        return Poly()
    if n == 0:
        return Poly.const(1)
    # n h_n = sum_k k t_k h_{n-k}, from d/dz of exp(sum t_k z^k)
    acc = Poly()
    for k in range(1, min(n, cutoff) + 1):
        acc = acc + Poly.var(VarId.time(k)).scale(k) * _h_cached(n - k, cutoff)
    return acc.scale(Fraction(1, n))


def elementary_schur(n: int, cutoff: int) -> Poly:
    """Coefficient of z^n in exp(t1 z + t2 z^2 + ... + t_cutoff z^cutoff)."""
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    return _h_cached(n, cutoff)


def _det(rows: list[list[Poly]]) -> Poly:
    """Determinant by cofactor expansion along the first row, memoized on column sets."""
    n = len(rows)
    memo: dict[tuple[int, frozenset], Poly] = {}

    def minor(r: int, cols: tuple[int, ...]) -> Poly:
        if r == n:
            return Poly.const(1)
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = Poly()
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def normalize_tau(p: Poly) -> tuple[Poly, Fraction]:
    """Scale to coprime integer coefficients with positive coefficient on the
    highest pure power of t1 (or leading term when there is none)."""
    if p.is_zero():
        raise TauConstructionError("zero polynomial is not a tau function")
    c = p.content()
    scale = Fraction(1) / c
    q = p.scale(scale)
    t1 = VarId.time(1)
    d = q.degree_in(t1)
    lead = q.coefficient({t1: d}) if d > 0 else 0
    if not lead:
        lead = q.leading_coefficient()
    if lead < 0:
        q, scale = -q, -scale
    return q, scale


@lru_cache(maxsize=None)
def staircase_tau(k: int) -> TauPoly:
    """Jacobi-Trudi determinant of the staircase partition (k, k-1, ..., 1)."""
    if k < 1:
        raise ValueError("staircase index must be >= 1")
    lam = list(range(k, 0, -1))
    cutoff = 2 * k - 1
    rows = [[elementary_schur(lam[i] - i + j, cutoff) for j in range(k)] for i in range(k)]
    s = _det(rows)
    for v in s.variables():
        if v.is_even_time and not s.diff(v).is_zero():
            raise TauConstructionError(f"staircase {k} depends on {v}")
    s = s.compose({v: 0 for v in s.variables() if v.is_even_time})
    poly, scale = normalize_tau(s)
    if not fay_residual(poly).is_zero():
        raise TauConstructionError(f"staircase {k} fails the Fay identity")
    return TauPoly(poly, k, scale)


# -- Miwa shifts -------------------------------------------------------------

ShiftLike = Union[ShiftSpec, tuple, Mapping]


def _shift_map(shifts: Mapping[VarId, Union[int, Fraction]] | Iterable[ShiftSpec]) -> dict[VarId, object]:
    if isinstance(shifts, Mapping):
        return {as_var(v): c for v, c in shifts.items() if c}
    out: dict[VarId, object] = {}
    for s in shifts:
        out[s.var] = out.get(s.var, 0) + s.sign
    return {v: c for v, c in out.items() if c}


def shifted(tau: TauLike, shifts) -> Poly:
    """tau(t + sum_v c_v [v]) for ``shifts`` = {v: c_v} (or ShiftSpecs).

    Each time t_k in tau's support goes to t_k + sum_v c_v v^k / k.  A
    coefficient of 2 gives the double shift 2[v].
    """
    p = tau_poly(tau)
    smap = _shift_map(shifts)
    if not smap:
        return p
    support = p.variables()
    clash = support.intersection(smap)
    if clash:
        raise ShiftCollisionError(f"shift variable {sorted(clash)[0]} already occurs in tau")
    mapping = {}
    for v in support:
        if not v.is_time:
            continue
        k = v.index
        delta = Poly()
        for z, c in smap.items():
            delta = delta + (Poly.var(z) ** k).scale(Fraction(c, k) if isinstance(c, int) else Fraction(c) / k)
        mapping[v] = Poly.var(v) + delta
    return p.compose(mapping)


def miwa_shift(tau: TauLike, spec: ShiftSpec) -> Poly:
    return shifted(tau, [spec])


# -- certification -----------------------------------------------------------


@dataclass
class KdvReport:
    passed: bool
    failing_index: Optional[int] = None
    reason: str = ""


def is_kdv_tau(p: Poly, z: str = "z") -> KdvReport:
    """Even-time independence plus the reflection property tau(t-[z]) = tau(t+[-z])."""
    p = tau_poly(p)
    for v in sorted(p.variables()):
        if v.is_even_time and not p.diff(v).is_zero():
            return KdvReport(False, v.index, f"depends on {v}")
    zv = as_var(z)
    minus = shifted(p, {zv: -1})
    reflected = shifted(p, {zv: 1}).subs(zv, -Poly.var(zv))
    if minus != reflected:
        return KdvReport(False, None, "tau(t-[z]) != tau(t+[-z])")
    return KdvReport(True)


def fay_residual(tau: TauLike, z: tuple[str, str, str, str] = ("z0", "z1", "z2", "z3")) -> Poly:
    """Left side of the four-point Fay identity as a single polynomial."""
    z0, z1, z2, z3 = (as_var(v) for v in z)
    if len({z0, z1, z2, z3}) != 4:
        raise ValueError("Fay parameters must be distinct")
    Z = {v: Poly.var(v) for v in (z0, z1, z2, z3)}

    def pair(a, b):
        return shifted(tau, {a: 1, b: 1})

    return (
        (Z[z0] - Z[z1]) * (Z[z2] - Z[z3]) * pair(z0, z1) * pair(z2, z3)
        + (Z[z0] - Z[z2]) * (Z[z3] - Z[z1]) * pair(z0, z2) * pair(z3, z1)
        + (Z[z0] - Z[z3]) * (Z[z1] - Z[z2]) * pair(z0, z3) * pair(z1, z2)
    )


def u_potential(tau: TauLike) -> RationalFunction:
    """u = 2 d^2/dx^2 log tau with x = t1."""
    p = tau_poly(tau)
    if p.is_zero():
        raise ValueError("tau must be nonzero")
    x = VarId.time(1)
    px = p.diff(x)
    pxx = px.diff(x)
    return RationalFunction((pxx * p - px * px).scale(2), p * p)
