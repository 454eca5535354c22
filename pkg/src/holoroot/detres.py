"""Determinants over polynomial rings, Sylvester resultants and the discriminant.

Sign conventions
----------------
``resultant(p, q)`` is the determinant of the Sylvester matrix whose first
``deg q`` rows carry the coefficients of ``p`` (highest degree first) and
whose last ``deg p`` rows carry those of ``q``.  With this layout
``resultant(z - a, z - b) == a - b``.

``discriminant(k) = (-1)^(k(k-1)/2) * resultant(P, P')`` for the monic
``P(z) = sum_h (-1)^h sigma_h z^(k-h)``, which gives ``s1^2 - 4 s2`` for k=2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .polyring import Poly, sigma_names, z_names


class ProportionalityError(AssertionError):
    """A determinant identity failed to hold up to sign."""


@dataclass(frozen=True)
class PolyMatrix:
    rows: tuple[tuple[Poly, ...], ...]
    row_labels: tuple[str, ...] = field(default=())
    col_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    def specialize(self, point: Sequence) -> list[list]:
        return [[e.evaluate(point) for e in row] for row in self.rows]


def _names_of(rows) -> tuple[str, ...]:
    for row in rows:
        for e in row:
            return e.names
    return sigma_names(1)


def cofactor_determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion along the first row; exponential cost, small sizes only."""
    n = len(rows)
    names = _names_of(rows)
    if n == 0:
        return Poly.const(1, names)
    if n == 1:
        return rows[0][0]
    total = Poly.zero(names)
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in (tuple(r) for r in rows[1:])]
        term = a * cofactor_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def bareiss_determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free Gaussian elimination; every division is exact."""
    n = len(rows)
    names = _names_of(rows)
    if n == 0:
        return Poly.const(1, names)
    m = [list(r) for r in rows]
    sign = 1
    prev = Poly.const(1, names)
    for c in range(n - 1):
        if not m[c][c]:
            swap = next((i for i in range(c + 1, n) if m[i][c]), None)
            if swap is None:
                return Poly.zero(names)
            m[c], m[swap] = m[swap], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][c] * m[c][j]).exact_div(prev)
            m[i][c] = Poly.zero(names)
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def determinant(m: PolyMatrix | Sequence[Sequence[Poly]]) -> Poly:
    rows = m.rows if isinstance(m, PolyMatrix) else tuple(tuple(r) for r in m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n <= 4:
        return cofactor_determinant(rows)
    return bareiss_determinant(rows)


def sylvester_matrix(p: Poly, q: Poly, var: int) -> PolyMatrix:
    pc = p.coeff_in(var)
    qc = q.coeff_in(var)
    if not pc or not qc:
        raise ValueError("resultant of the zero polynomial is undefined")
    dp, dq = len(pc) - 1, len(qc) - 1
    if dp == 0 and dq == 0:
        raise ValueError("both polynomials are constant in the elimination variable")
    n = dp + dq
    zero = Poly.zero(p.names)
    rows = []
    labels = []
    for i in range(dq):
        row = [zero] * n
        for d, c in enumerate(reversed(pc)):
            row[i + d] = c
        rows.append(row)
        labels.append(f"p*z^{dq - 1 - i}")
    for i in range(dp):
        row = [zero] * n
        for d, c in enumerate(reversed(qc)):
            row[i + d] = c
        rows.append(row)
        labels.append(f"q*z^{dp - 1 - i}")
    cols = tuple(f"z^{n - 1 - j}" for j in range(n))
    return PolyMatrix(tuple(map(tuple, rows)), tuple(labels), cols)


def resultant(p: Poly, q: Poly, var: int | None = None) -> Poly:
    """Sylvester resultant eliminating variable ``var`` (1-based; default: the last).

    The result keeps the variable set of the inputs and no longer involves ``var``.
    """
    if p.names != q.names:
        raise ValueError("resultant inputs must share variables")
    if not p or not q:
        raise ValueError("resultant of the zero polynomial is undefined")
    var = p.nvars if var is None else var
    return determinant(sylvester_matrix(p, q, var))


def universal_polynomial(k: int) -> Poly:
    """``P(z) = sum_{h=0}^k (-1)^h sigma_h z^(k-h)`` in variables ``(s1..sk, z)``."""
    names = z_names(k)
    terms = {}
    for h in range(k + 1):
        e = [0] * (k + 1)
        if h:
            e[h - 1] = 1
        e[k] = k - h
        terms[tuple(e)] = (-1) ** h
    return Poly(terms, names)


def _drop_last(p: Poly, k: int) -> Poly:
    if any(e[-1] for e in p.terms):
        raise ValueError("polynomial still depends on z")
    return Poly({e[:-1]: c for e, c in p.terms.items()}, sigma_names(k))


@lru_cache(maxsize=None)
def discriminant(k: int) -> Poly:
    if k < 2:
        raise ValueError("the discriminant needs k >= 2")
    P = universal_polynomial(k)
    res = resultant(P, P.derivative(k + 1), var=k + 1)
    return _drop_last(res, k).scale((-1) ** (k * (k - 1) // 2))


def _sign_against(det: Poly, target: Poly, what: str) -> int:
    if det == target:
        return 1
    if det == -target:
        return -1
    raise ProportionalityError(f"{what}: determinant is not +/- the expected polynomial")


def _sig(k: int, h: int) -> Poly:
    if h == 0:
        return Poly.const(1, k)
    return Poly.var(h, k)


def lemma_determinant_matrix(k: int) -> PolyMatrix:
    """Rows ``L_1..L_k`` then ``Lambda_2..Lambda_k`` in the unknowns ``y_2..y_{2k}``.

    ``L_q(y) = sum_h h sigma_h y_{q+h}``, ``Lambda_r(y) = sum_h sigma_h y_{r+h}``.
    """
    if k < 2:
        raise ValueError("k >= 2 required")
    n = 2 * k - 1
    zero = Poly.zero(k)
    rows, labels = [], []
    for q in range(1, k + 1):
        row = [zero] * n
        for h in range(1, k + 1):
            row[q + h - 2] = row[q + h - 2] + _sig(k, h).scale(h)
        rows.append(tuple(row))
        labels.append(f"L{q}")
    for r in range(2, k + 1):
        row = [zero] * n
        for h in range(k + 1):
            row[r + h - 2] = row[r + h - 2] + _sig(k, h)
        rows.append(tuple(row))
        labels.append(f"Lambda{r}")
    cols = tuple(f"y{i}" for i in range(2, 2 * k + 1))
    return PolyMatrix(tuple(rows), tuple(labels), cols)


def lemma_manquant_matrix(k: int) -> PolyMatrix:
    """Rows ``A_2..A_k`` then ``B_1..B_k`` in the basis ``y_{2,2}..y_{2,2k}``.

    ``A_j = d_j (U_0 - 1) = sum_p p sigma_p y_{2,j+p}`` and
    ``B_h = d_h U_{-1} = sum_p (k-p) sigma_p y_{2,h+p+1}`` (top-order parts).
    """
    if k < 2:
        raise ValueError("k >= 2 required")
    n = 2 * k - 1
    zero = Poly.zero(k)
    rows, labels = [], []
    for j in range(2, k + 1):
        row = [zero] * n
        for p in range(1, k + 1):
            row[j + p - 2] = row[j + p - 2] + _sig(k, p).scale(p)
        rows.append(tuple(row))
        labels.append(f"A{j}")
    for h in range(1, k + 1):
        row = [zero] * n
        for p in range(k):
            row[h + p - 1] = row[h + p - 1] + _sig(k, p).scale(k - p)
        rows.append(tuple(row))
        labels.append(f"B{h}")
    cols = tuple(f"y2,{r}" for r in range(2, 2 * k + 1))
    return PolyMatrix(tuple(rows), tuple(labels), cols)


def lemma_determinant_check(k: int) -> tuple[Poly, int]:
    """Determinant of the (L, Lambda) system and the sign eps with det = eps * s_k * Delta."""
    det = determinant(lemma_determinant_matrix(k))
    target = Poly.var(k, k) * discriminant(k)
    return det, _sign_against(det, target, f"determinant lemma, k={k}")


def lemma_manquant_check(k: int) -> tuple[Poly, int]:
    """Determinant of the (A_j, B_h) system and eps with det = eps * (-k)^(k-1) * Delta."""
    det = determinant(lemma_manquant_matrix(k))
    target = discriminant(k).scale((-k) ** (k - 1))
    return det, _sign_against(det, target, f"manquant lemma, k={k}")
