"""Multi-index combinatorics: length, weight, equivalence classes and minimal forms.

A multi-index is a plain tuple of non-negative ints ``(a_1, ..., a_k)``.
Two multi-indices are *equivalent* when they share length and weight; every
class has exactly one *minimal* representative of shape ``x_1^p x_k^q`` or
``x_1^p x_j x_k^q`` with ``1 < j < k``.

The module also carries the two rational charts of the determinantal cone
S(k) = {eta : eta_p eta_q = eta_{p+1} eta_{q-1}}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

MultiIndex = tuple[int, ...]

SURFACE_TOL = 1e-10


def _check(alpha: Sequence[int]) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in multi-index {alpha}")
    return alpha


def length(alpha: Sequence[int]) -> int:
    return sum(_check(alpha))


def weight(alpha: Sequence[int]) -> int:
    return sum(h * a for h, a in enumerate(_check(alpha), start=1))


def equivalent(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    if len(alpha) != len(beta):
        raise ValueError(f"dimension mismatch: {len(alpha)} != {len(beta)}")
    return length(alpha) == length(beta) and weight(alpha) == weight(beta)


def _compositions(total: int, k: int) -> Iterator[MultiIndex]:
    # Lexicographically decreasing.
    if k == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def all_of_length(k: int, q: int) -> list[MultiIndex]:
    """All ``alpha`` in N^k with ``|alpha| = q``, lexicographically decreasing."""
    if k < 1:
        raise ValueError("k must be positive")
    return list(_compositions(q, k))


def enumerate_class(k: int, q: int, r: int) -> list[MultiIndex]:
    """All multi-indices of length ``q`` and weight ``r``.

    Returned in lexicographically decreasing order of the exponent vector, so
    ``x_1`` powers come first (e.g. ``[(1,0,1), (0,2,0)]`` for k=3, (2,4)).
    The list is empty exactly when ``r`` lies outside ``[q, k*q]``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if q < 0 or r < q or r > k * q:
        return []
    out: list[MultiIndex] = []

    def rec(h: int, q_left: int, r_left: int, prefix: list[int]) -> None:
        # distribute over variables h..k; weights h..k
        if h == k:
            if r_left == k * q_left:
                out.append(tuple(prefix + [q_left]))
            return
        for a in range(q_left, -1, -1):
            rr = r_left - h * a
            ql = q_left - a
            if rr < (h + 1) * ql or rr > k * ql:
                continue
            rec(h + 1, ql, rr, prefix + [a])

    rec(1, q, r, [])
    return out


def _build(k: int, p: int, j: int | None, q: int) -> MultiIndex:
    alpha = [0] * k
    alpha[0] += p
    alpha[k - 1] += q
    if j is not None:
        alpha[j - 1] += 1
    return tuple(alpha)


def minimal_form(k: int, q: int, r: int) -> MultiIndex | None:
    """The unique minimal multi-index of length ``q`` and weight ``r``, or None."""
    if k < 1:
        raise ValueError("k must be positive")
    if q < 0 or r < q or r > k * q:
        return None
    if k == 1:
        return (q,)
    d = r - q
    n_k, rem = divmod(d, k - 1)
    if rem == 0:
        return _build(k, q - n_k, None, n_k)
    return _build(k, q - 1 - n_k, rem + 1, n_k)


def is_minimal(alpha: Sequence[int]) -> bool:
    alpha = _check(alpha)
    k = len(alpha)
    if k <= 2:
        return True
    middle = alpha[1:-1]
    return sum(middle) <= 1


def reduce_to_minimal(alpha: Sequence[int]) -> MultiIndex:
    """Rewrite ``x^alpha`` into its minimal equivalent one factor at a time.

    Multiplying a minimal monomial ``x_1^p x_j x_k^q`` by ``x_r`` uses
    ``x_r x_j ~ x_1 x_{r+j-1}`` if ``r+j-1 <= k`` and ``x_r x_j ~ x_k x_{r+j-k}``
    otherwise; this keeps the running product minimal at every step.
    """
    alpha = _check(alpha)
    k = len(alpha)
    if k <= 2:
        return alpha
    p, j, q = 0, None, 0
    for r, count in enumerate(alpha, start=1):
        for _ in range(count):
            if j is None:
                if r == 1:
                    p += 1
                elif r == k:
                    q += 1
                else:
                    j = r
                continue
            s = r + j - 1
            if s <= k:
                p += 1
                new = s
            else:
                q += 1
                new = r + j - k
            if new == 1:
                p, j = p + 1, None
            elif new == k:
                q, j = q + 1, None
            else:
                j = new
    return _build(k, p, j, q)


def sk_point(k: int, zeta0, zeta1, chart: str = "chart1") -> tuple:
    """A point of S(k) from the parametrisation of the given chart.

    ``chart1``: ``eta_h = zeta0 * (-zeta1)**(h-1)``;
    ``chartk``: ``eta_h = (-zeta0)**(k-h) * zeta1``.
    """
    if chart == "chart1":
        return tuple(zeta0 * (-zeta1) ** (h - 1) for h in range(1, k + 1))
    if chart == "chartk":
        return tuple((-zeta0) ** (k - h) * zeta1 for h in range(1, k + 1))
    raise ValueError(f"unknown chart {chart!r}; expected 'chart1' or 'chartk'")


def minor_pairs(k: int) -> list[tuple[int, int]]:
    return [(p, q) for p in range(1, k) for q in range(2, k + 1)]


def sk_minors(point: Sequence) -> list:
    """Values ``eta_p*eta_q - eta_{p+1}*eta_{q-1}`` ordered as :func:`minor_pairs`."""
    eta = tuple(point)
    k = len(eta)
    return [eta[p - 1] * eta[q - 1] - eta[p] * eta[q - 2] for p, q in minor_pairs(k)]


def on_surface(point: Sequence, tol: float = SURFACE_TOL) -> bool:
    minors = sk_minors(point)
    if all(isinstance(x, (int, Fraction)) for x in point):
        return all(m == 0 for m in minors)
    scale = max((abs(x) for x in point), default=0.0) ** 2
    if scale == 0:
        return True
    return all(abs(m) / scale <= tol for m in minors)
