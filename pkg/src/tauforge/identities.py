"""Wronskian calculus and exact checks of the cubic and higher tau identities.

Every check clears inverse powers of the spectral parameters by multiplying
through by a monomial, so both sides stay polynomials and zero-testing is a
dictionary comparison.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .algebra import Poly, RationalFunction, VarId, as_var
from .report import FAIL, PASS, IdentityReport
from .tau import TauLike, max_odd_time, shifted, tau_poly

__all__ = [
    "IdentitySides",
    "wronskian",
    "product_rule_residual",
    "diff_fay_residual",
    "LEMMA22_VARIANTS",
    "lemma22_residual",
    "cubic_i_sides",
    "cubic_ii_sides",
    "seventh_order_sides",
    "TauLeaf",
    "Product",
    "Sum",
    "Scaled",
    "Wronskian",
    "generate_product_identity",
    "evaluate_expr",
    "verify_identity",
    "expr_slots",
]

X = VarId.time(1)


@dataclass
class IdentitySides:
    lhs: Poly
    rhs: Poly

    @property
    def residual(self) -> Poly:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    @property
    def term_counts(self) -> tuple[int, int]:
        return self.lhs.term_count(), self.rhs.term_count()

    def serialize(self) -> str:
        status = "zero" if self.passed else "nonzero"
        return f"lhs: {self.lhs}\nrhs: {self.rhs}\nresidual: {status}\n"


def wronskian(f: Poly, g: Poly, v: Union[str, VarId] = X) -> Poly:
    return f * g.diff(v) - f.diff(v) * g


def product_rule_residual(f1: Poly, f2: Poly, g1: Poly, g2: Poly) -> tuple[Poly, Poly]:
    """W(f1 f2, g1 g2) minus each of its two expansions into two-factor Wronskians."""
    w = wronskian(f1 * f2, g1 * g2)
    first = f1 * g1 * wronskian(f2, g2) + f2 * g2 * wronskian(f1, g1)
    second = f1 * g2 * wronskian(f2, g1) + f2 * g1 * wronskian(f1, g2)
    return w - first, w - second


def _zz(z1, z2):
    a, b = as_var(z1), as_var(z2)
    if a == b:
        raise ValueError("spectral parameters must be distinct symbols")
    return a, b, Poly.var(a), Poly.var(b)


def diff_fay_residual(tau: TauLike, z1="z1", z2="z2") -> Poly:
    """z1 z2 W(tau(t+[z1]), tau(t+[z2])) - (z1 - z2)[tau(+1) tau(+2) - tau tau(+1+2)]."""
    a, b, Za, Zb = _zz(z1, z2)
    p = tau_poly(tau)
    ta, tb = shifted(p, {a: 1}), shifted(p, {b: 1})
    lhs = Za * Zb * wronskian(ta, tb)
    rhs = (Za - Zb) * (ta * tb - p * shifted(p, {a: 1, b: 1}))
    return lhs - rhs


# Each variant: W(A, B) = sign * (z2^-1 + kind * z1^-1) * [X1 X2 - Y1 Y2] with
# shifts written {parameter index: +-1}.  Times z1 z2 the prefactor becomes
# sign * (z1 - z2) for kind = -1 and sign * (z1 + z2) for kind = +1.
LEMMA22_VARIANTS: dict[int, dict] = {
    1: dict(w=({1: 1}, {2: 1}), sign=1, kind=-1, x=({1: 1}, {2: 1}), y=({}, {1: 1, 2: 1})),
    2: dict(w=({1: -1}, {2: -1}), sign=-1, kind=-1, x=({1: -1}, {2: -1}), y=({}, {1: -1, 2: -1})),
    3: dict(w=({1: -1}, {2: 1}), sign=1, kind=1, x=({1: -1}, {2: 1}), y=({}, {1: -1, 2: 1})),
    4: dict(w=({1: 1}, {2: -1}), sign=-1, kind=1, x=({1: 1}, {2: -1}), y=({}, {1: 1, 2: -1})),
    5: dict(w=({1: 1, 2: -1}, {}), sign=1, kind=-1, x=({1: 1, 2: -1}, {}), y=({1: 1}, {2: -1})),
    6: dict(w=({1: -1, 2: 1}, {}), sign=-1, kind=-1, x=({1: -1, 2: 1}, {}), y=({1: -1}, {2: 1})),
    7: dict(w=({1: -1, 2: -1}, {}), sign=1, kind=1, x=({1: -1, 2: -1}, {}), y=({1: -1}, {2: -1})),
    8: dict(w=({1: 1, 2: 1}, {}), sign=-1, kind=1, x=({1: 1, 2: 1}, {}), y=({1: 1}, {2: 1})),
}


def lemma22_residual(tau: TauLike, variant: int, z1="z1", z2="z2") -> Poly:
    """Residual of one of the eight two-tau Wronskian formulas, cleared by z1 z2."""
    if variant not in LEMMA22_VARIANTS:
        raise ValueError(f"variant must be 1..8, got {variant}")
    spec = LEMMA22_VARIANTS[variant]
    a, b, Za, Zb = _zz(z1, z2)
    names = {1: a, 2: b}
    p = tau_poly(tau)
    cache: dict[tuple, Poly] = {}

    def T(sh: Mapping[int, int]) -> Poly:
        key = tuple(sorted(sh.items()))
        if key not in cache:
            cache[key] = shifted(p, {names[i]: c for i, c in sh.items()})
        return cache[key]

    lhs = Za * Zb * wronskian(T(spec["w"][0]), T(spec["w"][1]))
    if spec["kind"] == -1:
        pref = Za - Zb
    else:
        pref = Za + Zb
    bracket = T(spec["x"][0]) * T(spec["x"][1]) - T(spec["y"][0]) * T(spec["y"][1])
    rhs = pref.scale(spec["sign"]) * bracket
    return lhs - rhs


def cubic_i_sides(tau: TauLike, z1="z1", z2="z2") -> IdentitySides:
    a, b, Za, Zb = _zz(z1, z2)
    p = tau_poly(tau)

    def T(ca=0, cb=0):
        return shifted(p, {a: ca, b: cb})

    lhs = (Zb - Za) * (T(1, 1) * T(-1) * T(0, -1) - T(-1, -1) * T(1) * T(0, 1))
    rhs = (Zb + Za) * (T(1, -1) * T(-1) * T(0, 1) - T(-1, 1) * T(1) * T(0, -1))
    return IdentitySides(lhs, rhs)


def cubic_ii_sides(tau: TauLike, z="z") -> IdentitySides:
    """Confluent form of the cubic identity.

    The sum over odd times stops at the largest odd time in tau's support:
    the shifts only move times already present, so every derivative in a
    higher odd time is identically zero.
    """
    zv = as_var(z)
    Z = Poly.var(zv)
    p = tau_poly(tau)
    plus, minus = shifted(p, {zv: 1}), shifted(p, {zv: -1})
    lhs = shifted(p, {zv: 2}) * minus * minus - shifted(p, {zv: -2}) * plus * plus
    rhs = Poly()
    top = max_odd_time(p)
    for j in range(1, top + 1, 2):
        tj = VarId.time(j)
        term = minus * wronskian(p, plus, tj) + plus * wronskian(p, minus, tj)
        rhs = rhs + (Z ** j).scale(2) * term
    return IdentitySides(lhs, rhs)


def _bracket(T, a, b):
    """tau(+a)tau(+b)tau(-a-b) - tau(-a)tau(-b)tau(+a+b)."""
    return T({a: 1}) * T({b: 1}) * T({a: -1, b: -1}) - T({a: -1}) * T({b: -1}) * T({a: 1, b: 1})


def seventh_order_sides(tau: TauLike, z: Sequence = ("z1", "z2", "z3", "z4")) -> IdentitySides:
    """The two grouped four-parameter expressions of the order-7 identity.

    Both sides are first multiplied by z1 z2 z3 z4 and then divided back
    exactly; each bracket vanishes when either of its parameters is zero, so
    the division always succeeds and the sides are polynomials.
    """
    v = [as_var(x) for x in z]
    if len(set(v)) != 4:
        raise ValueError("need four distinct spectral parameters")
    Z = [Poly.var(x) for x in v]
    p = tau_poly(tau)
    cache: dict[tuple, Poly] = {}

    def T(sh):
        key = tuple(sorted((x.name, c) for x, c in sh.items()))
        if key not in cache:
            cache[key] = shifted(p, sh)
        return cache[key]

    def pair(i):
        return T({v[i]: 1}) * T({v[i]: -1})

    def term(i, j, k, l):
        # (z_j^-1 - z_i^-1) tau(+-k) tau(+-l) [bracket(i, j)] * z1 z2 z3 z4
        return (Z[i] - Z[j]) * Z[k] * Z[l] * pair(k) * pair(l) * _bracket(T, v[i], v[j])

    lhs = term(2, 3, 0, 1) + term(0, 1, 2, 3)
    rhs = term(2, 1, 0, 3) + term(0, 3, 1, 2)
    mono = Z[0] * Z[1] * Z[2] * Z[3]
    lq, rq = lhs.divide_exact(mono), rhs.divide_exact(mono)
    if lq is None or rq is None:
        raise ArithmeticError("seventh-order side not divisible by z1 z2 z3 z4")
    return IdentitySides(lq, rq)


# -- expression trees --------------------------------------------------------


@dataclass(frozen=True)
class TauLeaf:
    """tau(t + sum c_s [z_s]); ``shift`` is a sorted tuple of (slot, c)."""

    shift: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Scaled:
    """``sum c * z_slot^power`` times ``child``."""

    coeffs: tuple[tuple[int, int, int], ...]
    child: object


@dataclass(frozen=True)
class Wronskian:
    left: object
    right: object


def _leaf(shift: Mapping[int, int]) -> TauLeaf:
    return TauLeaf(tuple(sorted((s, c) for s, c in shift.items() if c)))


def _two_tau_wronskian(f: TauLeaf, g: TauLeaf):
    """Closed form of W(tau(t+[u]), tau(t+[v])) for single signed shifts u, v.

    Since tau(t-[z]) = tau(t+[-z]) for KdV taus, every two-tau case is
    (1/v - 1/u)[tau(+u) tau(+v) - tau(t) tau(+u+v)].
    """
    (a, ea), = f.shift
    (b, eb), = g.shift
    combined: dict[int, int] = {}
    for s, c in f.shift + g.shift:
        combined[s] = combined.get(s, 0) + c
    coeffs = ((eb, b, -1), (-ea, a, -1))
    body = Sum((Product((f, g)), Scaled(((-1, 0, 0),), Product((TauLeaf(), _leaf(combined))))))
    return Scaled(coeffs, body)


def _expand(F: list, G: list, crossed: bool):
    if len(F) == 1 and len(G) == 1:
        return _two_tau_wronskian(F[0], G[0])
    h = len(F) // 2
    F1, F2, G1, G2 = F[:h], F[h:], G[:h], G[h:]
    if not crossed:
        return Sum((
            Product(tuple(F1 + G1) + (_expand(F2, G2, False),)),
            Product(tuple(F2 + G2) + (_expand(F1, G1, False),)),
        ))
    return Sum((
        Product(tuple(F1 + G2) + (_expand(F2, G1, False),)),
        Product(tuple(F2 + G1) + (_expand(F1, G2, False),)),
    ))


def generate_product_identity(n: int, limit: int = 4):
    """Two expansions of W(prod_{odd i} tau(t+-[z_i]), prod_{even i} tau(t+-[z_i])).

    There are 2^(n-1) parameters, slots 0..2^(n-1)-1 (slot s is z_{s+1}).
    The first tree applies the aligned product rule at every level; the second
    applies the crossed rule at the top level and the aligned one below.
    Innermost two-tau Wronskians are replaced by their closed forms.
    """
    if n < 2:
        raise ValueError("order parameter n must be >= 2")
    if n > limit:
        raise ValueError(f"n = {n} exceeds the configured limit {limit}")
    m = 2 ** (n - 1)
    F = [_leaf({s: sign}) for s in range(0, m, 2) for sign in (1, -1)]
    G = [_leaf({s: sign}) for s in range(1, m, 2) for sign in (1, -1)]
    return _expand(F, G, False), _expand(F, G, True)


def product_wronskian(n: int):
    """The unexpanded Wronskian that both generated trees equal."""
    m = 2 ** (n - 1)
    F = Product(tuple(_leaf({s: sign}) for s in range(0, m, 2) for sign in (1, -1)))
    G = Product(tuple(_leaf({s: sign}) for s in range(1, m, 2) for sign in (1, -1)))
    return Wronskian(F, G)


def expr_slots(expr) -> set[int]:
    if isinstance(expr, TauLeaf):
        return {s for s, _ in expr.shift}
    if isinstance(expr, (Product, Sum)):
        out = set()
        for c in expr.factors if isinstance(expr, Product) else expr.terms:
            out |= expr_slots(c)
        return out
    if isinstance(expr, Scaled):
        return {s for _, s, p in expr.coeffs if p} | expr_slots(expr.child)
    if isinstance(expr, Wronskian):
        return expr_slots(expr.left) | expr_slots(expr.right)
    raise TypeError(f"unknown node {expr!r}")


def evaluate_expr(expr, tau: TauLike, names: Sequence) -> RationalFunction:
    """Evaluate a tree against tau, slot s bound to the variable ``names[s]``."""
    p = tau_poly(tau)
    vars_ = [as_var(x) for x in names]
    leaves: dict[TauLeaf, Poly] = {}
    zpolys = [Poly.var(x) for x in vars_]

    def ev(node) -> RationalFunction:
        if isinstance(node, TauLeaf):
            if node not in leaves:
                leaves[node] = shifted(p, {vars_[s]: c for s, c in node.shift})
            return RationalFunction(leaves[node])
        if isinstance(node, Product):
            polys = []
            rest = RationalFunction(1)
            for f in node.factors:
                if isinstance(f, TauLeaf):
                    polys.append(ev(f).num)
                else:
                    rest = rest * ev(f)
            acc = Poly.const(1)
            for q in polys:
                acc = acc * q
            return rest * acc
        if isinstance(node, Sum):
            acc = RationalFunction(0)
            for t in node.terms:
                acc = acc + ev(t)
            return acc
        if isinstance(node, Scaled):
            pref = RationalFunction(0)
            for c, s, pw in node.coeffs:
                if pw >= 0:
                    pref = pref + RationalFunction((zpolys[s] ** pw).scale(c) if pw else Poly.const(c))
                else:
                    pref = pref + RationalFunction(Poly.const(c), zpolys[s] ** (-pw))
            if pref.is_zero():
                return pref
            return pref * ev(node.child)
        if isinstance(node, Wronskian):
            f, g = ev(node.left), ev(node.right)
            return f * g.diff(X) - f.diff(X) * g
        raise TypeError(f"unknown node {node!r}")

    return ev(expr)


def verify_identity(exprs, tau: TauLike, names: Sequence, check: str = "generated",
                    tau_label: str | None = None) -> IdentityReport:
    """Evaluate both trees symbolically and compare as rational functions."""
    left, right = exprs
    slots = expr_slots(left) | expr_slots(right)
    if slots and (max(slots) >= len(names)):
        raise ValueError(f"trees use {max(slots) + 1} parameters, {len(names)} supplied")
    if len(set(map(str, names))) != len(names):
        raise ValueError("parameter names must be distinct")
    start = time.perf_counter()
    a = evaluate_expr(left, tau, names)
    b = evaluate_expr(right, tau, names)
    diff = a - b
    ok = diff.is_zero()
    return IdentityReport(
        check=check,
        tau=tau_label or (tau.label if hasattr(tau, "label") else str(tau)),
        status=PASS if ok else FAIL,
        parameters={"z": [str(x) for x in names]},
        residual_terms=diff.num.term_count(),
        side_terms=[a.num.term_count(), b.num.term_count()],
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )
