"""Floating-point checks of the trigonometric and theta-function analogues,
and randomized zero-testing of exact residuals.

Theta convention: the odd theta function with nome q,

    theta11(v) = 2 * sum_{n>=0} (-1)^n q^((n+1/2)^2) sin((2n+1) * s * v)

with s = pi ("mumford", the default) or s = 1 ("unit").  Every identity
checked here is homogeneous of equal degree in theta on both sides, so the
overall sign convention of theta11 does not matter.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .algebra import Poly, RationalFunction, SingularPointError
from .report import FAIL, PASS, IdentityReport

__all__ = [
    "ThetaParams",
    "DegeneratePointError",
    "CONVENTIONS",
    "DEFAULT_CONVENTION",
    "theta11",
    "theta11_prime",
    "theta11_terms",
    "theta_fay_g1_residual",
    "theta_cubic_sides",
    "theta_cubic_residual",
    "theta_cubic_degenerate_sides",
    "theta_cubic_degenerate_residual",
    "sine_cubic_residual",
    "RandomCheckResult",
    "random_point_check",
    "sweep_sine",
    "sweep_theta_fay",
    "sweep_theta_cubic",
    "sweep_theta_degenerate",
]

CONVENTIONS = {"mumford": math.pi, "unit": 1.0}
DEFAULT_CONVENTION = "mumford"
UNDERFLOW = 1e-280

Number = Union[float, complex]


class DegeneratePointError(ArithmeticError):
    pass


def _finite(*vals: Number) -> None:
    for v in vals:
        c = complex(v)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError(f"non-finite argument {v!r}")


@dataclass(frozen=True)
class ThetaParams:
    q: Number = 0.1
    terms: Optional[int] = None
    tol: float = 1e-18
    convention: str = DEFAULT_CONVENTION

    def __post_init__(self):
        _finite(self.q)
        if abs(self.q) >= 1:
            raise ValueError(f"nome must satisfy |q| < 1, got {self.q!r}")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown theta convention {self.convention!r}")
        if self.terms is not None and self.terms < 1:
            raise ValueError("terms must be positive")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")

    @property
    def scale(self) -> float:
        return CONVENTIONS[self.convention]


def _qpow(q: Number, n: int) -> Number:
    e = (n + 0.5) ** 2
    if isinstance(q, complex) and q.imag != 0:
        return cmath.exp(e * cmath.log(q))
    q = complex(q).real
    if q >= 0:
        return q ** e
    return cmath.exp(e * cmath.log(q))


def theta11_terms(v: Number, params: ThetaParams) -> int:
    """Number of series terms so the omitted tail is below ``tol`` relative to
    the leading term; the terms decay like |q|^(n^2), so the first omitted
    term bounds the tail up to a factor < 2 once consecutive ratios are < 1/2."""
    if params.terms is not None:
        return params.terms
    aq = abs(params.q)
    if aq == 0:
        return 1
    grow = params.scale * abs(complex(v).imag)
    lead = 2 * aq ** 0.25 * math.cosh(grow)
    n = 1
    while n < 10_000:
        bound = 2 * aq ** ((n + 0.5) ** 2) * math.cosh((2 * n + 1) * grow)
        ratio = aq ** (2 * n + 2) * math.exp(2 * grow)
        if bound <= params.tol * lead and ratio < 0.5:
            return n
        n += 1
    raise ValueError("theta series does not converge fast enough; |q| too close to 1")


def _is_real(*vals) -> bool:
    return all(not isinstance(x, complex) or x.imag == 0 for x in vals)


def _series(v: Number, params: ThetaParams, derivative: bool) -> Number:
    _finite(v)
    N = theta11_terms(v, params)
    s = params.scale
    real = _is_real(v, params.q) and complex(params.q).real >= 0
    acc: Number = 0.0
    for n in range(N):
        k = 2 * n + 1
        c = (-1) ** n * _qpow(params.q, n)
        if derivative:
            arg = k * s * (complex(v).real if real else v)
            term = c * k * s * (math.cos(arg) if real else cmath.cos(arg))
        else:
            arg = k * s * (complex(v).real if real else v)
            term = c * (math.sin(arg) if real else cmath.sin(arg))
        acc = acc + term
    out = 2 * acc
    if real:
        return float(complex(out).real)
    return complex(out)


def theta11(v: Number, params: ThetaParams = ThetaParams()) -> Number:
    return _series(v, params, derivative=False)


def theta11_prime(v: Number, params: ThetaParams = ThetaParams()) -> Number:
    """d/dv theta11(v) from the differentiated series."""
    return _series(v, params, derivative=True)


def _relative(total: Number, terms: Sequence[Number]) -> float:
    scale = max(abs(t) for t in terms)
    if scale < UNDERFLOW:
        raise DegeneratePointError("all products below the underflow threshold")
    return abs(total) / scale


def theta_fay_g1_residual(x, z0, z1, z2, z3, params: ThetaParams = ThetaParams()) -> float:
    """|sum of the three Fay products| / largest product."""
    T = lambda v: theta11(v, params)  # noqa: E731
    terms = [
        T(z0 - z1) * T(z2 - z3) * T(x + z0 + z1) * T(x + z2 + z3),
        T(z0 - z2) * T(z3 - z1) * T(x + z0 + z2) * T(x + z3 + z1),
        T(z0 - z3) * T(z1 - z2) * T(x + z0 + z3) * T(x + z1 + z2),
    ]
    total = terms[0] + terms[1] + terms[2]
    if max(abs(t) for t in terms) < UNDERFLOW:
        raise DegeneratePointError("all Fay products vanish at this point")
    return _relative(total, terms)


def _cubic_products(f, x, z1, z2):
    l1 = f(z2 - z1) * f(x + z1 + z2) * f(x - z1) * f(x - z2)
    l2 = f(z2 - z1) * f(x - z1 - z2) * f(x + z1) * f(x + z2)
    r1 = f(z1 + z2) * f(x + z1 - z2) * f(x - z1) * f(x + z2)
    r2 = f(z1 + z2) * f(x - z1 + z2) * f(x + z1) * f(x - z2)
    return l1, l2, r1, r2


def theta_cubic_sides(x, z1, z2, params: ThetaParams = ThetaParams()):
    """(lhs, rhs, products) of the conjectural theta11 cubic identity."""
    l1, l2, r1, r2 = _cubic_products(lambda v: theta11(v, params), x, z1, z2)
    return l1 - l2, r1 - r2, (l1, l2, r1, r2)


def theta_cubic_residual(x, z1, z2, params: ThetaParams = ThetaParams(),
                         corrupt: bool = False) -> float:
    """Relative residual of the cubic identity; ``corrupt`` flips the sign of
    one product (negative control)."""
    l1, l2, r1, r2 = _cubic_products(lambda v: theta11(v, params), x, z1, z2)
    if corrupt:
        l2 = -l2
    return _relative((l1 - l2) - (r1 - r2), (l1, l2, r1, r2))


def theta_cubic_degenerate_sides(x, z, params: ThetaParams = ThetaParams()):
    T = lambda v: theta11(v, params)  # noqa: E731
    D = lambda v: theta11_prime(v, params)  # noqa: E731
    d0 = D(0.0)
    l1 = d0 * T(x + 2 * z) * T(x - z) ** 2
    l2 = d0 * T(x - 2 * z) * T(x + z) ** 2
    t2z, tx = T(2 * z), T(x)
    tm, tp = T(x - z), T(x + z)
    dx, dm, dp = D(x), D(x - z), D(x + z)
    # W(f, g) = f g' - f' g, split into its products for the scale
    r = [
        t2z * tm * tx * dp,
        -t2z * tm * dx * tp,
        t2z * tp * tx * dm,
        -t2z * tp * dx * tm,
    ]
    return l1 - l2, sum(r), (l1, l2, *r)


def theta_cubic_degenerate_residual(x, z, params: ThetaParams = ThetaParams()) -> float:
    lhs, rhs, prods = theta_cubic_degenerate_sides(x, z, params)
    return _relative(lhs - rhs, prods)


def sine_cubic_residual(x: float, z1: float, z2: float) -> float:
    """|lhs - rhs| of the trigonometric cubic identity (absolute)."""
    l1, l2, r1, r2 = _cubic_products(math.sin, x, z1, z2)
    return abs((l1 - l2) - (r1 - r2))


# -- randomized zero testing -------------------------------------------------


@dataclass
class RandomCheckResult:
    probably_zero: bool
    trials: int
    seed: int
    nonzero_at: Optional[dict] = None
    nonzero_value: object = None
    singular_points: int = 0
    modulus: Optional[int] = None


NUMERATOR_BOUND = 10 ** 6
DENOMINATOR_BOUND = 10 ** 3


def _sample_point(rng: random.Random, names: Sequence[str], modulus: Optional[int]) -> dict:
    if modulus is not None:
        return {n: rng.randrange(modulus) for n in names}
    return {
        n: Fraction(rng.randint(-NUMERATOR_BOUND, NUMERATOR_BOUND), rng.randint(1, DENOMINATOR_BOUND))
        for n in names
    }


def random_point_check(residual: Union[Poly, RationalFunction], seed: int = 0, trials: int = 20,
                       modulus: Optional[int] = None) -> RandomCheckResult:
    """Evaluate ``residual`` at pseudorandom points.

    Each variable (in sorted name order) independently gets
    Fraction(U[-10^6, 10^6], U[1, 10^3]).  With ``modulus`` a prime p, values
    are U[0, p) and evaluation is done mod p.  A nonzero value certifies a
    nonzero residual; all zeros mean "probably zero" (Schwartz-Zippel).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    if isinstance(residual, Poly):
        num, den = residual, None
    else:
        num, den = residual.num, (None if residual.den == 1 else residual.den)
    names = sorted(str(v) for v in (num.variables() | (den.variables() if den is not None else set())))
    singular = 0
    for _ in range(trials):
        point = _sample_point(rng, names, modulus)
        if den is not None:
            d = den.evaluate_mod(point, modulus) if modulus else den.evaluate(point)
            if d == 0:
                singular += 1
                continue
        val = num.evaluate_mod(point, modulus) if modulus else num.evaluate(point)
        if val != 0:
            return RandomCheckResult(False, trials, seed, point, val, singular, modulus)
    if singular == trials:
        raise SingularPointError("every sampled point was singular")
    return RandomCheckResult(True, trials, seed, None, None, singular, modulus)


# -- sweeps ------------------------------------------------------------------


@dataclass
class SweepResult:
    check: str
    rows: list = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(r[3] for r in self.rows) if self.rows else 0.0

    def report(self, tolerance: float, seed: int, label: str = "numeric", **params) -> IdentityReport:
        worst = self.max_residual
        return IdentityReport(
            check=self.check,
            tau="-",
            status=PASS if worst < tolerance else FAIL,
            parameters=params,
            residual=worst,
            tolerance=tolerance,
            seed=seed,
            label=label,
            details={"points": len(self.rows)},
        )

    def delimited(self, sep: str = ",") -> str:
        lines = [sep.join(["check", "q", "point", "residual"])]
        for check, q, point, res in self.rows:
            pt = " ".join(f"{p:.17g}" for p in point)
            lines.append(sep.join([check, "" if q is None else f"{q:g}", pt, f"{res:.6e}"]))
        return "\n".join(lines) + "\n"


def sweep_sine(n: int = 1000, seed: int = 0) -> SweepResult:
    """x, z1, z2 uniform on [-pi, pi]."""
    rng = random.Random(seed)
    out = SweepResult("sine")
    for _ in range(n):
        pt = tuple(rng.uniform(-math.pi, math.pi) for _ in range(3))
        out.rows.append(("sine", None, pt, sine_cubic_residual(*pt)))
    return out


def _theta_sweep(check, fn, nargs, qs, n, seed, convention):
    rng = random.Random(seed)
    out = SweepResult(check)
    for q in qs:
        params = ThetaParams(q=q, convention=convention)
        for _ in range(n):
            pt = tuple(rng.random() for _ in range(nargs))
            try:
                res = fn(*pt, params)
            except DegeneratePointError:
                continue
            out.rows.append((check, q, pt, res))
    return out


def sweep_theta_fay(qs=(0.05, 0.1, 0.3), n: int = 100, seed: int = 0,
                    convention: str = DEFAULT_CONVENTION) -> SweepResult:
    """x, z0..z3 uniform on (0, 1) for each q."""
    return _theta_sweep("theta-fay", theta_fay_g1_residual, 5, qs, n, seed, convention)


def sweep_theta_cubic(qs=(0.1,), n: int = 100, seed: int = 0,
                      convention: str = DEFAULT_CONVENTION) -> SweepResult:
    return _theta_sweep("theta-cubic", theta_cubic_residual, 3, qs, n, seed, convention)


def sweep_theta_degenerate(qs=(0.1,), n: int = 100, seed: int = 0,
                           convention: str = DEFAULT_CONVENTION) -> SweepResult:
    return _theta_sweep("theta-degenerate", theta_cubic_degenerate_residual, 2, qs, n, seed, convention)
