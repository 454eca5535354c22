"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is a mapping from exponent tuples to :class:`fractions.Fraction`
coefficients, together with the names of its variables.  The default
variables are ``s1 .. sk`` (the sigma coordinates); operators' symbols and
resultants use extended variable sets such as ``s1..sk, e1..ek`` or
``s1..sk, z``.  Instances are treated as immutable.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .multiindex import enumerate_class

Exponent = tuple[int, ...]


def sigma_names(k: int) -> tuple[str, ...]:
    return tuple(f"s{h}" for h in range(1, k + 1))


def eta_names(k: int) -> tuple[str, ...]:
    return sigma_names(k) + tuple(f"e{h}" for h in range(1, k + 1))


def z_names(k: int) -> tuple[str, ...]:
    return sigma_names(k) + ("z",)


def to_fraction(value) -> Fraction:
    """Parse ``p/q``, an integer or a decimal literal exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("refusing to convert a float exactly; pass a string")
    text = str(value).strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    try:
        return Fraction(Decimal(text))
    except InvalidOperation:
        raise ValueError(f"not a rational literal: {value!r}") from None


class Poly:
    __slots__ = ("names", "terms")

    def __init__(self, terms: Mapping[Exponent, object] | None = None,
                 names: Sequence[str] | int = 1):
        if isinstance(names, int):
            names = sigma_names(names)
        self.names: tuple[str, ...] = tuple(names)
        n = len(self.names)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms: dict[Exponent, Fraction] = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction], names: tuple[str, ...]) -> "Poly":
        # terms already normalised
        obj = cls.__new__(cls)
        obj.names = names
        obj.terms = terms
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, names: Sequence[str] | int) -> "Poly":
        return cls({}, names)

    @classmethod
    def const(cls, c, names: Sequence[str] | int) -> "Poly":
        p = cls({}, names)
        return cls({(0,) * p.nvars: c}, p.names)

    @classmethod
    def var(cls, i: int, names: Sequence[str] | int) -> "Poly":
        """The ``i``-th variable, 1-based."""
        p = cls({}, names)
        if not 1 <= i <= p.nvars:
            raise IndexError(f"variable index {i} out of range 1..{p.nvars}")
        exp = [0] * p.nvars
        exp[i - 1] = 1
        return cls({tuple(exp): 1}, p.names)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1, names: Sequence[str] | None = None) -> "Poly":
        exp = tuple(exp)
        return cls({exp: c}, names if names is not None else len(exp))

    # -- basic protocol -----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.names)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.names)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.names != self.names:
                raise ValueError(f"variable mismatch: {self.names} vs {other.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.names)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(out, self.names)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw({e: c for e, c in out.items() if c}, self.names)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = to_fraction(c) if not isinstance(c, Fraction) else c
        if not c:
            return Poly.zero(self.names)
        return Poly._raw({e: v * c for e, v in self.terms.items()}, self.names)

    # -- calculus and evaluation --------------------------------------------

    def derivative(self, i: int, times: int = 1) -> "Poly":
        """Formal ``times``-fold partial derivative in the ``i``-th variable (1-based)."""
        if not 1 <= i <= self.nvars:
            raise IndexError(f"variable index {i} out of range 1..{self.nvars}")
        out: dict[Exponent, Fraction] = {}
        idx = i - 1
        for e, c in self.terms.items():
            a = e[idx]
            if a < times:
                continue
            f = 1
            for t in range(times):
                f *= a - t
            ne = e[:idx] + (a - times,) + e[idx + 1:]
            out[ne] = c * f
        return Poly._raw(out, self.names)

    def derivative_multi(self, alpha: Sequence[int]) -> "Poly":
        p = self
        for i, a in enumerate(alpha, start=1):
            if a:
                p = p.derivative(i, a)
                if not p.terms:
                    break
        return p

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, a in zip(point, e):
                if a:
                    term = term * x ** a
            total = total + term
        return total

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw({e: c for e, c in self.terms.items() if sum(e) == d}, self.names)

    def degrees(self) -> list[int]:
        return sorted({sum(e) for e in self.terms})

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Lexicographically largest term."""
        e = max(self.terms)
        return e, self.terms[e]

    def coeff_in(self, i: int) -> list["Poly"]:
        """Coefficients with respect to variable ``i``: ``[c_0, c_1, ...]`` with ``self = sum c_d * x_i^d``."""
        idx = i - 1
        buckets: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            ne = e[:idx] + (0,) + e[idx + 1:]
            buckets.setdefault(e[idx], {})[ne] = c
        deg = max(buckets, default=-1)
        return [Poly._raw(buckets.get(d, {}), self.names) for d in range(deg + 1)]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ArithmeticError`` if inexact."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading_term()
        quot: dict[Exponent, Fraction] = {}
        rem = self
        while rem.terms:
            e, c = rem.leading_term()
            qe = tuple(a - b for a, b in zip(e, le))
            if any(x < 0 for x in qe):
                raise ArithmeticError("polynomial division is not exact")
            qc = c / lc
            quot[qe] = qc
            rem = rem - Poly._raw({qe: qc}, self.names) * other
        return Poly._raw(quot, self.names)

    def embed(self, names: Sequence[str]) -> "Poly":
        """Re-express in a larger variable set containing all current names."""
        names = tuple(names)
        pos = [names.index(n) for n in self.names]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(names)
            for p, a in zip(pos, e):
                ne[p] = a
            out[tuple(ne)] = c
        return Poly._raw(out, names)

    def substitute(self, i: int, value: "Poly") -> "Poly":
        """Replace variable ``i`` (1-based) by the polynomial ``value``."""
        out = Poly.zero(self.names)
        for d, c in enumerate(self.coeff_in(i)):
            if c.terms:
                out = out + c * value ** d
        return out

    # -- display ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, names={self.names})"


def _monomial_text(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for n, a in zip(names, exp):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return " ".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text ``coeff * s1^a1 ... sk^ak`` joined by `` + ``, grlex descending."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = _monomial_text(e, p.names)
        out.append(f"{c} * {mono}" if mono else f"{c}")
    return " + ".join(out)


_TERM_RE = re.compile(r"^\s*(?P<coeff>[-+]?\d+(?:/\d+)?)\s*(?:\*\s*(?P<mono>.*))?$")


def parse_poly(text: str, names: Sequence[str] | int) -> Poly:
    """Inverse of :func:`format_poly`."""
    names = sigma_names(names) if isinstance(names, int) else tuple(names)
    text = text.strip()
    if text == "0":
        return Poly.zero(names)
    terms: dict[Exponent, Fraction] = {}
    for chunk in text.split(" + "):
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        exp = [0] * len(names)
        for factor in (m.group("mono") or "").split():
            var, _, power = factor.partition("^")
            exp[names.index(var)] += int(power) if power else 1
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + Fraction(m.group("coeff"))
    return Poly(terms, names)


def multinomial_inverse(alpha: Iterable[int]) -> Fraction:
    """``1 / alpha!``."""
    d = 1
    for a in alpha:
        d *= factorial(a)
    return Fraction(1, d)


def mqr_polynomial(k: int, q: int, r: int) -> Poly:
    """``m_{q,r} = sum sigma^alpha / alpha!`` over the class of length ``q``, weight ``r``.

    Zero when ``r`` is outside ``[q, k*q]``.
    """
    return Poly({a: multinomial_inverse(a) for a in enumerate_class(k, q, r)}, k)

