"""Exact arithmetic kernel: variables, sparse polynomials and rational functions.

Coefficients are Python ints or :class:`fractions.Fraction` (a Fraction with
denominator 1 is always stored as an int).  Monomials are packed into a single
non-negative integer, one 16-bit exponent field per variable id, so that
multiplying monomials is integer addition.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import total_ordering
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "VarKind",
    "VarId",
    "SymbolTable",
    "SYMBOLS",
    "Poly",
    "RationalFunction",
    "SingularPointError",
    "PolyParseError",
    "var",
    "const",
    "parse_poly",
    "differentiate",
    "substitute",
    "evaluate",
    "term_count",
    "weighted_degree",
]

Scalar = Union[int, Fraction]

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = FIELD_MASK


class SingularPointError(ZeroDivisionError):
    """Raised when a rational function is evaluated where its denominator vanishes."""


class PolyParseError(ValueError):
    pass


class VarKind(IntEnum):
    TIME = 0
    SHIFT = 1
    INVERSE_SHIFT = 2
    PARAM = 3


_KIND_PREFIX = {"t": VarKind.TIME, "z": VarKind.SHIFT, "w": VarKind.INVERSE_SHIFT}
_NAME_RE = re.compile(r"^([A-Za-z_]+)(\d*)$")


@dataclass(frozen=True, order=True)
class VarId:
    """A variable name.  ``t<k>`` are times, ``z<i>`` shift parameters,
    ``w<i>`` inverse-shift parameters; any other identifier is a free parameter."""

    kind: VarKind
    index: int
    name: str

    @classmethod
    def parse(cls, name: str) -> "VarId":
        m = _NAME_RE.match(name)
        if m is None:
            raise PolyParseError(f"invalid variable name {name!r}")
        prefix, digits = m.groups()
        index = int(digits) if digits else 0
        kind = _KIND_PREFIX.get(prefix, VarKind.PARAM)
        if kind is VarKind.TIME and index < 1:
            raise PolyParseError(f"time variable needs a positive index: {name!r}")
        return cls(kind, index, name)

    @classmethod
    def time(cls, k: int) -> "VarId":
        return cls.parse(f"t{k}")

    @property
    def is_time(self) -> bool:
        return self.kind is VarKind.TIME

    @property
    def is_odd_time(self) -> bool:
        return self.kind is VarKind.TIME and self.index % 2 == 1

    @property
    def is_even_time(self) -> bool:
        return self.kind is VarKind.TIME and self.index % 2 == 0

    def __str__(self) -> str:
        return self.name


def as_var(v: Union[str, VarId]) -> VarId:
    return v if isinstance(v, VarId) else VarId.parse(v)


class SymbolTable:
    """Append-only map between variables and packed-field positions."""

    def __init__(self) -> None:
        self._ids: dict[VarId, int] = {}
        self._vars: list[VarId] = []
        self._lock = threading.Lock()

    def id_of(self, v: Union[str, VarId]) -> int:
        v = as_var(v)
        i = self._ids.get(v)
        if i is not None:
            return i
        with self._lock:
            i = self._ids.get(v)
            if i is None:
                i = len(self._vars)
                self._vars.append(v)
                self._ids[v] = i
            return i

    def var_of(self, i: int) -> VarId:
        return self._vars[i]

    def lookup(self, v: Union[str, VarId]) -> int | None:
        return self._ids.get(as_var(v))

    def __len__(self) -> int:
        return len(self._vars)


SYMBOLS = SymbolTable()


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _check_scalar(c) -> Scalar:
    if isinstance(c, bool) or not isinstance(c, _RationalABC):
        raise TypeError(f"expected an exact rational scalar, got {type(c).__name__}")
    if isinstance(c, int):
        return int(c)
    return _norm(Fraction(c))


def _unpack(m: int) -> Iterator[tuple[int, int]]:
    i = 0
    while m:
        e = m & FIELD_MASK
        if e:
            yield i, e
        m >>= FIELD_BITS
        i += 1


def _exponent(m: int, i: int) -> int:
    return (m >> (FIELD_BITS * i)) & FIELD_MASK


def _mono_degree(m: int) -> int:
    return sum(e for _, e in _unpack(m))


def _divides(a: int, b: int) -> bool:
    """True if monomial ``a`` divides monomial ``b``."""
    while a:
        if (a & FIELD_MASK) > (b & FIELD_MASK):
            return False
        a >>= FIELD_BITS
        b >>= FIELD_BITS
    return True


def _mono_gcd(a: int, b: int) -> int:
    out, shift = 0, 0
    while a and b:
        out |= min(a & FIELD_MASK, b & FIELD_MASK) << shift
        a >>= FIELD_BITS
        b >>= FIELD_BITS
        shift += FIELD_BITS
    return out


def _mono_lcm(a: int, b: int) -> int:
    out, shift = 0, 0
    while a or b:
        out |= max(a & FIELD_MASK, b & FIELD_MASK) << shift
        a >>= FIELD_BITS
        b >>= FIELD_BITS
        shift += FIELD_BITS
    return out


def _sort_key(m: int):
    """Graded-lex key under the VarId order; larger key = earlier in print order."""
    exps = sorted(((SYMBOLS.var_of(i), e) for i, e in _unpack(m)), key=lambda p: p[0])
    return _GradedLexKey(sum(e for _, e in exps), tuple(exps))


@total_ordering
class _GradedLexKey:
    __slots__ = ("degree", "exps")

    def __init__(self, degree, exps):
        self.degree = degree
        self.exps = exps

    def __eq__(self, other):
        return self.degree == other.degree and self.exps == other.exps

    def __lt__(self, other):
        if self.degree != other.degree:
            return self.degree < other.degree
        # lexicographic: compare the first variable where the exponents differ
        a, b = dict(self.exps), dict(other.exps)
        for v in sorted(set(a) | set(b)):
            ea, eb = a.get(v, 0), b.get(v, 0)
            if ea != eb:
                return ea < eb
        return False


class Poly:
    """Immutable sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash", "_degree")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        # ``terms`` maps packed monomials to nonzero normalized coefficients
        self._terms: dict[int, Scalar] = dict(terms) if terms else {}
        self._hash = None
        self._degree = None

    @classmethod
    def _raw(cls, terms: dict[int, Scalar]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        p._degree = None
        return p

    # -- construction -------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        c = _check_scalar(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, v: Union[str, VarId]) -> "Poly":
        return cls._raw({1 << (FIELD_BITS * SYMBOLS.id_of(v)): 1})

    @classmethod
    def monomial(cls, exps: Mapping[Union[str, VarId], int], coeff=1) -> "Poly":
        m = 0
        for v, e in exps.items():
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent out of range: {e}")
            m += e << (FIELD_BITS * SYMBOLS.id_of(v))
        c = _check_scalar(coeff)
        return cls._raw({m: c} if c else {})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Mapping[Union[str, VarId], int], Scalar]]) -> "Poly":
        out = cls.const(0)
        for exps, c in terms:
            out = out + cls.monomial(exps, c)
        return out

    def __reduce__(self):
        # packed ids are per-process; pickle by variable name
        return (_from_named_terms, (tuple(self.named_terms()),))

    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return Poly.const(x)

    # -- inspection ---------------------------------------------------

    def named_terms(self) -> Iterator[tuple[dict[VarId, int], Scalar]]:
        """Yield ``(exponents, coefficient)`` pairs in canonical print order."""
        for m in sorted(self._terms, key=_sort_key, reverse=True):
            yield {SYMBOLS.var_of(i): e for i, e in _unpack(m)}, self._terms[m]

    def coefficients(self) -> list[Scalar]:
        return list(self._terms.values())

    def variables(self) -> set[VarId]:
        ids = set()
        for m in self._terms:
            ids.update(i for i, _ in _unpack(m))
        return {SYMBOLS.var_of(i) for i in ids}

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_term(self) -> Scalar:
        return self._terms.get(0, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def total_degree(self) -> int:
        if self._degree is None:
            self._degree = max((_mono_degree(m) for m in self._terms), default=-1)
        return self._degree

    def degree_in(self, v: Union[str, VarId]) -> int:
        i = SYMBOLS.lookup(v)
        if i is None:
            return 0 if self._terms else -1
        return max((_exponent(m, i) for m in self._terms), default=-1)

    def leading(self) -> tuple[dict[VarId, int], Scalar]:
        """Leading term in canonical (graded-lex) order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return next(self.named_terms())

    def leading_coefficient(self) -> Scalar:
        return self.leading()[1]

    def coefficient(self, exps: Mapping[Union[str, VarId], int]) -> Scalar:
        m = 0
        for v, e in exps.items():
            i = SYMBOLS.lookup(v)
            if i is None:
                if e:
                    return 0
                continue
            m += e << (FIELD_BITS * i)
        return self._terms.get(m, 0)

    def collect(self, v: Union[str, VarId]) -> dict[int, "Poly"]:
        """Split into ``{exponent of v: coefficient poly}``."""
        i = SYMBOLS.id_of(v)
        shift = FIELD_BITS * i
        parts: dict[int, dict[int, Scalar]] = {}
        for m, c in self._terms.items():
            e = (m >> shift) & FIELD_MASK
            parts.setdefault(e, {})[m - (e << shift)] = c
        return {e: Poly._raw(t) for e, t in parts.items()}

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, RationalFunction):
                return NotImplemented
            other = Poly.const(other)
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, RationalFunction):
                return NotImplemented
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.const(other) - self

    def scale(self, c) -> "Poly":
        c = _check_scalar(c)
        if not c:
            return Poly()
        return Poly._raw({m: _norm(v * c) for m, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, RationalFunction):
                return NotImplemented
            return self.scale(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly()
        if self.total_degree() + other.total_degree() > MAX_EXPONENT:
            raise OverflowError("product degree exceeds the packed exponent range")
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Scalar] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        return Poly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (Poly, RationalFunction)):
            return RationalFunction(self, Poly.const(1)) / other
        c = _check_scalar(other)
        if not c:
            raise ZeroDivisionError("division by zero scalar")
        return self.scale(Fraction(1) / c)

    def __rtruediv__(self, other):
        return RationalFunction(Poly.coerce(other), self)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, RationalFunction):
            return other == self
        if isinstance(other, _RationalABC) and not isinstance(other, bool):
            return self._terms == ({0: _norm(Fraction(other))} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ------------------------------------

    def diff(self, v: Union[str, VarId]) -> "Poly":
        i = SYMBOLS.lookup(v)
        if i is None:
            return Poly()
        shift = FIELD_BITS * i
        unit = 1 << shift
        out = {}
        for m, c in self._terms.items():
            e = (m >> shift) & FIELD_MASK
            if e:
                out[m - unit] = c * e
        return Poly._raw(out)

    def subs(self, v: Union[str, VarId], q) -> "Poly":
        return self.compose({v: q})

    def compose(self, mapping: Mapping[Union[str, VarId], object]) -> "Poly":
        """Simultaneous substitution ``v -> mapping[v]``."""
        repl: dict[int, Poly] = {}
        for v, q in mapping.items():
            i = SYMBOLS.lookup(v)
            if i is not None:
                repl[i] = Poly.coerce(q)
        if not repl:
            return self
        keep_mask = 0
        for i in repl:
            keep_mask |= FIELD_MASK << (FIELD_BITS * i)
        powers: dict[tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            key = (i, e)
            p = powers.get(key)
            if p is None:
                p = repl[i] if e == 1 else power(i, e - 1) * repl[i]
                powers[key] = p
            return p

        # group terms by the exponents of substituted variables
        groups: dict[int, dict[int, Scalar]] = {}
        for m, c in self._terms.items():
            sub = m & keep_mask
            groups.setdefault(sub, {})[m - sub] = c
        out = Poly()
        for sub, rest in groups.items():
            factor = Poly.const(1)
            for i, e in _unpack(sub):
                factor = factor * power(i, e)
            out = out + factor * Poly._raw(rest)
        return out

    def evaluate(self, assignment: Mapping[Union[str, VarId], object]):
        """Evaluate at a point.  Exact for rational values; complex values use
        ordinary double arithmetic.  Every variable must be assigned."""
        values: dict[int, object] = {}
        for v, x in assignment.items():
            i = SYMBOLS.lookup(v)
            if i is not None:
                values[i] = x
        total = 0
        pw: dict[tuple[int, int], object] = {}
        for m, c in self._terms.items():
            term = c
            for i, e in _unpack(m):
                if i not in values:
                    raise KeyError(f"variable {SYMBOLS.var_of(i)} is not assigned")
                key = (i, e)
                if key not in pw:
                    pw[key] = values[i] ** e
                term = term * pw[key]
            total = total + term
        if isinstance(total, Fraction):
            return _norm(total)
        return total

    def evaluate_mod(self, assignment: Mapping[Union[str, VarId], int], p: int) -> int:
        values = {}
        for v, x in assignment.items():
            i = SYMBOLS.lookup(v)
            if i is not None:
                values[i] = x % p
        total = 0
        for m, c in self._terms.items():
            if type(c) is Fraction:
                cm = c.numerator * pow(c.denominator, -1, p)
            else:
                cm = c
            for i, e in _unpack(m):
                if i not in values:
                    raise KeyError(f"variable {SYMBOLS.var_of(i)} is not assigned")
                cm = cm * pow(values[i], e, p)
            total = (total + cm) % p
        return total

    def term_count(self) -> int:
        return len(self._terms)

    def weighted_degree(self, weights: Mapping[Union[str, VarId], int] | None = None) -> int:
        """Largest weighted monomial degree.  Default weight of ``t<k>`` is k, others 1."""
        w = {}
        if weights:
            for v, x in weights.items():
                i = SYMBOLS.lookup(v)
                if i is not None:
                    w[i] = x
        best = None
        for m in self._terms:
            d = 0
            for i, e in _unpack(m):
                if i in w:
                    d += w[i] * e
                else:
                    v = SYMBOLS.var_of(i)
                    d += (v.index if v.is_time else 1) * e
            best = d if best is None else max(best, d)
        if best is None:
            raise ValueError("zero polynomial has no degree")
        return best

    def weighted_degrees(self, weights=None) -> set[int]:
        return {Poly._raw({m: c}).weighted_degree(weights) for m, c in self._terms.items()}

    # -- content and exact division -----------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        dens = 1
        for c in self._terms.values():
            if type(c) is Fraction:
                dens = lcm(dens, c.denominator)
        g = 0
        for c in self._terms.values():
            g = gcd(g, int(c * dens))
        return Fraction(g, dens)

    def monomial_content(self) -> "Poly":
        """Largest monomial dividing every term."""
        it = iter(self._terms)
        try:
            g = next(it)
        except StopIteration:
            return Poly.const(1)
        for m in it:
            g = _mono_gcd(g, m)
            if not g:
                break
        return Poly._raw({g: 1})

    def _lead_packed(self) -> int:
        # max packed int is a lex monomial order, compatible with products
        return max(self._terms)

    def divide_exact(self, other: "Poly") -> "Poly | None":
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        other = Poly.coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return Poly()
        if len(other._terms) == 1:
            (mb, cb), = other._terms.items()
            out = {}
            for m, c in self._terms.items():
                if not _divides(mb, m):
                    return None
                out[m - mb] = _norm(Fraction(c) / cb)
            return Poly._raw(out)
        lb = other._lead_packed()
        cb = other._terms[lb]
        rem = dict(self._terms)
        quot: dict[int, Scalar] = {}
        while rem:
            lm = max(rem)
            if not _divides(lb, lm):
                return None
            qm = lm - lb
            qc = _norm(Fraction(rem[lm]) / cb)
            quot[qm] = qc
            for m, c in other._terms.items():
                k = m + qm
                s = rem.get(k, 0) - qc * c
                if s:
                    rem[k] = _norm(s)
                else:
                    rem.pop(k, None)
        return Poly._raw(quot)

    # -- text ---------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def _from_named_terms(terms) -> Poly:
    return Poly.from_terms(terms)


# -- serialization ---------------------------------------------------------


def _format_coeff(c: Scalar) -> str:
    if type(c) is Fraction:
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: Poly) -> str:
    """Canonical text: descending graded-lex terms, e.g. ``t1^3 - 3*t3``."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.named_terms():
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in sorted(exps.items())]
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(a)] + factors)
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(\^)|(\*)|([+-]))")


def parse_poly(text: str) -> Poly:
    """Parse the canonical text grammar (also accepts non-canonical term order)."""
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial text")
    pos = 0
    tokens = []
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if m is None or m.end() == pos:
            if s[pos:].strip() == "":
                break
            raise PolyParseError(f"unexpected character at {pos}: {s[pos:pos + 10]!r}")
        num, name, caret, star, sign = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        elif caret:
            tokens.append(("^", caret))
        elif star:
            tokens.append(("*", star))
        else:
            tokens.append(("sign", sign))
        pos = m.end()

    result = Poly()
    i = 0
    n = len(tokens)
    first = True
    while i < n:
        sign = 1
        if tokens[i][0] == "sign":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError("expected '+' or '-' between terms")
        first = False
        coeff: Scalar = 1
        exps: dict[str, int] = {}
        expect_factor = True
        while i < n and tokens[i][0] != "sign":
            kind, val = tokens[i]
            if not expect_factor:
                if kind != "*":
                    raise PolyParseError(f"expected '*' before {val!r}")
                expect_factor = True
                i += 1
                continue
            if kind == "num":
                coeff = coeff * _norm(Fraction(val))
                i += 1
            elif kind == "var":
                e = 1
                if i + 1 < n and tokens[i + 1][0] == "^":
                    if i + 2 >= n or tokens[i + 2][0] != "num" or "/" in tokens[i + 2][1]:
                        raise PolyParseError("exponent must be a non-negative integer")
                    e = int(tokens[i + 2][1])
                    i += 3
                else:
                    i += 1
                exps[val] = exps.get(val, 0) + e
            else:
                raise PolyParseError(f"unexpected token {val!r}")
            expect_factor = False
        if expect_factor:
            raise PolyParseError("dangling operator")
        result = result + Poly.monomial(exps, sign * coeff)
    return result


# -- rational functions ------------------------------------------------------


class RationalFunction:
    """Quotient of two polynomials.

    Normalized only cheaply: common monomial factors and scalar content are
    removed and the denominator is made monic.  Equality is decided by
    cross-multiplication, so no multivariate gcd is needed.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = Poly.coerce(num)
        den = Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = _mono_gcd(num.monomial_content()._lead_packed(), den.monomial_content()._lead_packed())
        if g:
            mono = Poly._raw({g: 1})
            num = num.divide_exact(mono)
            den = den.divide_exact(mono)
        if den.is_constant():
            self.num, self.den = num / den.constant_term(), Poly.const(1)
            return
        lc = den.leading_coefficient()
        if lc != 1:
            inv = Fraction(1) / lc
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @staticmethod
    def coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction(Poly.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.den.is_constant():
            q = self.num.divide_exact(self.den)
            if q is None:
                raise ValueError("rational function is not a polynomial")
            return q
        return self.num

    def reduced(self) -> "RationalFunction":
        """Cancel the denominator if it divides the numerator exactly."""
        q = self.num.divide_exact(self.den)
        return RationalFunction(q) if q is not None else self

    def __add__(self, other) -> "RationalFunction":
        other = RationalFunction.coerce(other)
        a, b = self, other
        if a.den == b.den:
            return RationalFunction(a.num + b.num, a.den)
        if a.den.is_monomial() and b.den.is_monomial():
            (ma, ca), = a.den._terms.items()
            (mb, cb), = b.den._terms.items()
            lm = _mono_lcm(ma, mb)
            fa = Poly._raw({lm - ma: _norm(Fraction(1) / ca)})
            fb = Poly._raw({lm - mb: _norm(Fraction(1) / cb)})
            return RationalFunction(a.num * fa + b.num * fb, Poly._raw({lm: 1}))
        return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = RationalFunction.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Poly, RationalFunction)) or (
            isinstance(other, _RationalABC) and not isinstance(other, bool)
        ):
            other = RationalFunction.coerce(other)
            return (self.num * other.den - other.num * self.den).is_zero()
        return NotImplemented

    __hash__ = None  # equality is semantic, no canonical hash

    def diff(self, v: Union[str, VarId]) -> "RationalFunction":
        dn, dd = self.num.diff(v), self.den.diff(v)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def compose(self, mapping) -> "RationalFunction":
        return RationalFunction(self.num.compose(mapping), self.den.compose(mapping))

    def subs(self, v, q) -> "RationalFunction":
        return self.compose({v: q})

    def evaluate(self, assignment):
        d = self.den.evaluate(assignment)
        if d == 0:
            raise SingularPointError("singular evaluation point")
        n = self.num.evaluate(assignment)
        if isinstance(n, int) and isinstance(d, int):
            return _norm(Fraction(n, d))
        if isinstance(n, (int, Fraction)) and isinstance(d, (int, Fraction)):
            return _norm(Fraction(n) / Fraction(d))
        return n / d

    def variables(self) -> set[VarId]:
        return self.num.variables() | self.den.variables()

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


# -- functional surface ------------------------------------------------------


def var(name: Union[str, VarId]) -> Poly:
    return Poly.var(name)


def const(c) -> Poly:
    return Poly.const(c)


def differentiate(p, v):
    return p.diff(v)


def substitute(p, v, q):
    return p.subs(v, q)


def evaluate(p, assignment):
    return p.evaluate(assignment)


def term_count(p: Poly) -> int:
    return p.term_count()


def weighted_degree(p: Poly, weights=None) -> int:
    return p.weighted_degree(weights)
