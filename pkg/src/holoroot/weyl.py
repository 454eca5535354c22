"""Differential operators with polynomial coefficients (the Weyl algebra in sigma).

Operators are kept in canonical form: every coefficient stands to the left of
every derivative, ``sum_alpha c_alpha(sigma) * d^alpha``.  Composition
normalises eagerly with the Leibniz rule, so two operators are equal exactly
when their term maps agree.

Besides the algebra itself this module builds the named operators of the
universal equation (A_{p,q}, T^m, E, U_{-1}, U_0, U_1), the Newton power sums
N_m and the companion family DN_m, and a Newton-basis test used as a
membership semidecision for the ideal generated by the A's and T's.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Mapping

from .polyring import Exponent, Poly, eta_names, to_fraction


def _sig(k: int, h: int) -> Poly:
    # sigma_0 = 1 and sigma_{k+1} = 0: generator conventions only.
    if h == 0:
        return Poly.const(1, k)
    if 1 <= h <= k:
        return Poly.var(h, k)
    return Poly.zero(k)


def _unit(k: int, i: int, times: int = 1) -> Exponent:
    e = [0] * k
    e[i - 1] = times
    return tuple(e)


class DiffOp:
    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Mapping[Exponent, Poly] | None = None):
        self.k = k
        clean: dict[Exponent, Poly] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != k:
                raise ValueError(f"derivative exponent {alpha} does not match k={k}")
            if not isinstance(c, Poly):
                c = Poly.const(c, k)
            elif c.nvars != k:
                raise ValueError("coefficient lives in the wrong ring")
            if alpha in clean:
                c = clean[alpha] + c
            clean[alpha] = c
        self.terms: dict[Exponent, Poly] = {a: c for a, c in clean.items() if c.terms}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, k: int) -> "DiffOp":
        return cls(k)

    @classmethod
    def const(cls, k: int, c) -> "DiffOp":
        c = c if isinstance(c, Poly) else Poly.const(c, k)
        return cls(k, {(0,) * k: c})

    @classmethod
    def d(cls, k: int, i: int, times: int = 1) -> "DiffOp":
        """``d_i^times``."""
        if not 1 <= i <= k:
            raise IndexError(f"derivative index {i} out of range 1..{k}")
        return cls(k, {_unit(k, i, times): Poly.const(1, k)})

    @classmethod
    def mult(cls, p: Poly) -> "DiffOp":
        """Multiplication by the polynomial ``p``."""
        return cls(p.nvars, {(0,) * p.nvars: p})

    # -- protocol -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.k, frozenset(self.terms.items())))

    def order(self) -> int:
        """Maximal derivative length; -1 for the zero operator."""
        return max((sum(a) for a in self.terms), default=-1)

    def _check(self, other: "DiffOp") -> None:
        if not isinstance(other, DiffOp):
            raise TypeError(f"expected DiffOp, got {type(other).__name__}")
        if other.k != self.k:
            raise ValueError(f"dimension mismatch: k={self.k} vs k={other.k}")

    def __add__(self, other) -> "DiffOp":
        if isinstance(other, (int, Fraction, Poly)):
            other = DiffOp.const(self.k, other)
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return DiffOp(self.k, out)

    __radd__ = __add__

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.k, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other) -> "DiffOp":
        if isinstance(other, (int, Fraction, Poly)):
            other = DiffOp.const(self.k, other)
        return self + (-other)

    def __rsub__(self, other) -> "DiffOp":
        return (-self) + other

    def __mul__(self, other) -> "DiffOp":
        if isinstance(other, (int, Fraction)):
            return DiffOp(self.k, {a: c.scale(other) for a, c in self.terms.items()})
        if isinstance(other, Poly):
            other = DiffOp.mult(other)
        return compose(self, other)

    def __rmul__(self, other) -> "DiffOp":
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, Poly):
            return compose(DiffOp.mult(other), self)
        return NotImplemented

    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)

    def __str__(self) -> str:
        return format_op(self)

    def __repr__(self) -> str:
        return f"DiffOp(k={self.k}, {format_op(self)!r})"


def format_op(d: DiffOp) -> str:
    """Text form ``(poly) * d1^a1 ... dk^ak`` joined by `` + ``."""
    if not d.terms:
        return "0"
    parts = []
    for alpha in sorted(d.terms, key=lambda a: (sum(a), a), reverse=True):
        ds = " ".join(
            f"d{i}" if a == 1 else f"d{i}^{a}" for i, a in enumerate(alpha, start=1) if a
        )
        coeff = f"({d.terms[alpha]})"
        parts.append(f"{coeff} * {ds}" if ds else coeff)
    return " + ".join(parts)


def apply(d: DiffOp, p: Poly) -> Poly:
    if p.nvars != d.k:
        raise ValueError(f"dimension mismatch: operator k={d.k}, polynomial has {p.nvars} variables")
    out = Poly.zero(p.names)
    for alpha, c in d.terms.items():
        dp = p.derivative_multi(alpha)
        if dp.terms:
            out = out + c * dp
    return out


def compose(d1: DiffOp, d2: DiffOp) -> DiffOp:
    """The product ``d1 * d2`` normalised with ``d_i sigma_j = sigma_j d_i + delta_ij``."""
    d1._check(d2)
    k = d1.k
    out: dict[Exponent, Poly] = {}
    for alpha, a in d1.terms.items():
        # d^alpha b = sum_gamma C(alpha, gamma) (d^gamma b) d^(alpha - gamma)
        sub_ranges = [range(x + 1) for x in alpha]
        for beta, b in d2.terms.items():
            for gamma in product(*sub_ranges):
                db = b.derivative_multi(gamma)
                if not db.terms:
                    continue
                mult = 1
                for x, g in zip(alpha, gamma):
                    mult *= comb(x, g)
                key = tuple(x - g + y for x, g, y in zip(alpha, gamma, beta))
                term = (a * db).scale(mult)
                out[key] = out[key] + term if key in out else term
    return DiffOp(k, out)


def commutator(d1: DiffOp, d2: DiffOp) -> DiffOp:
    return compose(d1, d2) - compose(d2, d1)


# -- named operators ---------------------------------------------------------


def gen_A(k: int, p: int, q: int) -> DiffOp:
    """``A_{p,q} = d_p d_q - d_{p+1} d_{q-1}``."""
    if not (1 <= p <= k - 1 and 2 <= q <= k):
        raise ValueError(f"need p in [1,{k - 1}] and q in [2,{k}], got p={p}, q={q}")
    return compose(DiffOp.d(k, p), DiffOp.d(k, q)) - compose(DiffOp.d(k, p + 1), DiffOp.d(k, q - 1))


def gen_A_all(k: int) -> dict[tuple[int, int], DiffOp]:
    return {(p, q): gen_A(k, p, q) for p in range(1, k) for q in range(2, k + 1)}


def gen_E(k: int) -> DiffOp:
    """Euler field ``sum sigma_h d_h``."""
    return DiffOp(k, {_unit(k, h): _sig(k, h) for h in range(1, k + 1)})


def gen_T(k: int, m: int) -> DiffOp:
    """``T^m = d_1 d_{m-1} + d_m E``."""
    if not 2 <= m <= k:
        raise ValueError(f"need m in [2,{k}], got {m}")
    return compose(DiffOp.d(k, 1), DiffOp.d(k, m - 1)) + compose(DiffOp.d(k, m), gen_E(k))


def gen_U0(k: int, lam=0) -> DiffOp:
    """``U_0 - lam`` with ``U_0 = sum h sigma_h d_h``."""
    lam = to_fraction(lam)
    u0 = DiffOp(k, {_unit(k, h): _sig(k, h).scale(h) for h in range(1, k + 1)})
    return u0 - lam


def gen_Um1(k: int) -> DiffOp:
    """``U_{-1} = sum_{h=0}^{k-1} (k-h) sigma_h d_{h+1}``."""
    return DiffOp(k, {_unit(k, h + 1): _sig(k, h).scale(k - h) for h in range(k)})


def gen_U1(k: int) -> DiffOp:
    """``U_1 = sum_h (sigma_1 sigma_h - (h+1) sigma_{h+1}) d_h``."""
    s1 = _sig(k, 1)
    return DiffOp(
        k, {_unit(k, h): s1 * _sig(k, h) - _sig(k, h + 1).scale(h + 1) for h in range(1, k + 1)}
    )


def gen_U(k: int, p: int) -> DiffOp:
    if p == -1:
        return gen_Um1(k)
    if p == 0:
        return gen_U0(k, 0)
    if p == 1:
        return gen_U1(k)
    raise ValueError("U_p is only constructed for p in {-1, 0, 1}")


def gen_U0_shifted(k: int, lam=0) -> DiffOp:
    """``U_0`` in coordinates centred at ``(0, ..., 0, -1)``, minus ``lam``.

    Equals ``sum h sigma_h d_h - k d_k - lam``.
    """
    return gen_U0(k, lam) - DiffOp.d(k, k) * k


# -- Newton basis ------------------------------------------------------------


@lru_cache(maxsize=None)
def newton_polynomial(k: int, m: int) -> Poly:
    """Power sum ``N_m = sum_j x_j^m`` written in the elementary symmetric ``sigma``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return Poly.const(k, k)
    # Newton: N_m = sum_{i=1}^{m-1} (-1)^(i-1) s_i N_{m-i} + (-1)^(m-1) m s_m
    out = Poly.zero(k)
    for i in range(1, min(m - 1, k) + 1):
        term = _sig(k, i) * newton_polynomial(k, m - i)
        out = out + term if i % 2 == 1 else out - term
    if m <= k:
        out = out + _sig(k, m).scale((-1) ** (m - 1) * m)
    return out


@lru_cache(maxsize=None)
def dn_polynomial(k: int, m: int) -> Poly:
    """``DN_m``: zero on ``[-k+1, -1]``, one at 0, ``sum_h (-1)^h sigma_h DN_{m-h} = 0`` for m >= 1."""
    if m < -k + 1:
        raise ValueError(f"DN_m is defined for m >= {-k + 1}, got {m}")
    if m < 0:
        return Poly.zero(k)
    if m == 0:
        return Poly.const(1, k)
    out = Poly.zero(k)
    for h in range(1, k + 1):
        if m - h < -k + 1:
            break
        term = _sig(k, h) * dn_polynomial(k, m - h)
        out = out + term if h % 2 == 1 else out - term
    return out


def default_newton_depth(d: DiffOp) -> int:
    return 2 * max(d.order(), 0) + 2 * d.k


def annihilates_newton(d: DiffOp, M: int | None = None) -> bool:
    """True iff ``d`` kills ``N_0, ..., N_M`` exactly.

    A semidecision for membership in the ideal generated by the A's and T's:
    a False answer is definitive, a True answer holds only up to depth M.
    """
    if M is None:
        M = default_newton_depth(d)
    return all(apply(d, newton_polynomial(d.k, m)).is_zero() for m in range(M + 1))


def first_newton_failure(d: DiffOp, M: int) -> int | None:
    for m in range(M + 1):
        if not apply(d, newton_polynomial(d.k, m)).is_zero():
            return m
    return None


# -- identities ---------------------------------------------------------------

IDENTITY_NAMES = ("Eh", "E1", "Fh", "F1", "commutator")
EXACT_IDENTITIES = frozenset({"Eh", "E1", "commutator"})


def identity_residual(name: str, k: int, h: int | None = None,
                      p: int | None = None, q: int | None = None) -> DiffOp:
    """Residual operator of one of the named operator relations.

    ``Eh`` and ``E1`` return LHS - RHS of exact Weyl-algebra identities, as does
    ``commutator`` (``U_p U_q - U_q U_p - (q-p) U_{p+q}``, p, q in {-1,0,1}).
    ``Fh`` and ``F1`` are only membership claims, so the left-hand operator
    itself is returned for :func:`annihilates_newton`.
    """
    d = lambda i: DiffOp.d(k, i)  # noqa: E731
    if name == "Eh":
        if h is None or not 2 <= h <= k:
            raise ValueError(f"E_h needs h in [2,{k}]")
        lhs = compose(d(h), gen_U0(k, 1)) + compose(d(h - 1), gen_Um1(k))
        rhs = gen_T(k, h) * k
        for j in range(1, k):
            rhs = rhs + compose(DiffOp.mult(_sig(k, j).scale(k - j)), gen_A(k, h - 1, j + 1))
        return lhs - rhs
    if name == "E1":
        lhs = compose(gen_E(k), gen_Um1(k)) - compose(d(1), gen_U0(k, 1))
        rhs = DiffOp.zero(k)
        for j in range(1, k):
            rhs = rhs + compose(DiffOp.mult(_sig(k, j).scale(k - j)), gen_T(k, j + 1))
        return lhs - rhs
    if name == "Fh":
        if h is None or not 2 <= h <= k:
            raise ValueError(f"F_h needs h in [2,{k}]")
        return compose(d(h), gen_U1(k)) + compose(d(h - 1), gen_U0(k, -1))
    if name == "F1":
        return compose(d(1), gen_U1(k)) - compose(gen_E(k), gen_U0(k, -1))
    if name == "commutator":
        if p not in (-1, 0, 1) or q not in (-1, 0, 1):
            raise ValueError("commutator residuals need p, q in {-1, 0, 1}")
        res = commutator(gen_U(k, p), gen_U(k, q))
        if p + q in (-1, 0, 1):
            res = res - gen_U(k, p + q) * (q - p)
        return res
    raise ValueError(f"unknown identity {name!r}; expected one of {IDENTITY_NAMES}")


# -- symbols -----------------------------------------------------------------


def symbol(d: DiffOp) -> Poly:
    """Principal symbol in variables ``(s1..sk, e1..ek)``: top-order ``d^alpha -> eta^alpha``."""
    if d.is_zero():
        raise ValueError("the zero operator has no symbol")
    k = d.k
    names = eta_names(k)
    top = d.order()
    out = Poly.zero(names)
    for alpha, c in d.terms.items():
        if sum(alpha) != top:
            continue
        lifted = {e + alpha: v for e, v in c.terms.items()}
        out = out + Poly(lifted, names)
    return out

