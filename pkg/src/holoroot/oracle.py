"""Independent ground truth for the coefficient table.

Two routes that share no code with :mod:`holoroot.taylor`:

* Newton's method in double precision on the shifted universal polynomial,
  started at -1;
* for k = 2 the closed form ``z = (s1 - sqrt(s1^2 - 4 s2 + 4)) / 2`` expanded
  with the binomial series in exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .taylor import CoeffTable, root_series

# Validated empirically for k <= 6, see tests/test_oracle.py.
BASIN_RADIUS = Fraction(1, 10)


class NewtonError(RuntimeError):
    """Newton iteration failed to converge or hit a near-zero derivative."""


@dataclass(frozen=True)
class ShiftedPolynomial:
    """``P(z) = z^k + sum_h (-1)^h sigma_h z^(k-h) - (-1)^k``."""

    k: int
    sigma: tuple

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if len(self.sigma) != self.k:
            raise ValueError(f"sigma has {len(self.sigma)} entries, expected k={self.k}")


def poly_coeffs(p: ShiftedPolynomial) -> list[complex]:
    """Coefficients from ``z^k`` down to ``z^0``."""
    k = p.k
    coeffs = [complex(1)] + [complex((-1) ** h * complex(p.sigma[h - 1])) for h in range(1, k + 1)]
    coeffs[k] -= (-1) ** k
    return coeffs


def _horner(coeffs: Sequence[complex], z: complex) -> tuple[complex, complex]:
    val, der = 0j, 0j
    for c in coeffs:
        der = der * z + val
        val = val * z + c
    return val, der


def residual(p: ShiftedPolynomial, z: complex) -> float:
    return abs(_horner(poly_coeffs(p), z)[0])


def newton_root(p: ShiftedPolynomial, start: complex = -1, tol: float = 1e-14,
                max_iter: int = 100) -> complex:
    coeffs = poly_coeffs(p)
    z = complex(start)
    for _ in range(max_iter):
        val, der = _horner(coeffs, z)
        if val == 0:
            return z
        if abs(der) < 1e-12:
            raise NewtonError(f"derivative {abs(der):.3e} too small at z={z}")
        step = val / der
        z -= step
        if abs(step) <= tol:
            return z
    raise NewtonError(f"no convergence after {max_iter} iterations (last z={z})")


def in_basin(sigma: Sequence) -> bool:
    return max((abs(s) for s in sigma), default=0) <= BASIN_RADIUS


def _binom_half(n: int) -> Fraction:
    # binomial(1/2, n)
    c = Fraction(1)
    for i in range(n):
        c *= Fraction(1, 2) - i
    return c / factorial(n)


def _mul2(a: dict, b: dict, Q: int) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            if i1 + i2 + j1 + j2 > Q:
                continue
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
    return {key: c for key, c in out.items() if c}


def radical_series_k2(Q: int) -> dict[tuple[int, int], Fraction]:
    """Coefficients of ``s1^i s2^j`` in ``z - s1/2 = -sqrt(1 + u)``, ``u = s1^2/4 - s2``, up to degree Q."""
    u = {(2, 0): Fraction(1, 4), (0, 1): Fraction(-1)}
    total: dict = {(0, 0): Fraction(-1)}
    power = {(0, 0): Fraction(1)}
    for n in range(1, Q + 1):
        power = _mul2(power, u, Q)
        if not power:
            break
        c = -_binom_half(n)
        for key, v in power.items():
            total[key] = total.get(key, 0) + c * v
    return {key: v for key, v in total.items()}


def radical_table_k2(Q: int) -> CoeffTable:
    """The k=2 table read off the binomial expansion.

    For k=2 each (q, r) class has the single member ``(2q-r, r-q)``, so
    ``C_{q,r}`` is that monomial's coefficient times ``alpha!``.
    """
    series = radical_series_k2(Q)
    vals = {}
    for q in range(Q + 1):
        for r in range(q, 2 * q + 1):
            a, b = 2 * q - r, r - q
            vals[(q, r)] = series.get((a, b), Fraction(0)) * factorial(a) * factorial(b)
    return CoeffTable(2, Q, vals)


def quadratic_root(sigma: Sequence) -> complex:
    """Closed-form k=2 root near -1: ``(s1 - sqrt(s1^2 - 4 s2 + 4)) / 2``."""
    import cmath

    s1, s2 = (complex(x) for x in sigma)
    return (s1 - cmath.sqrt(s1 * s1 - 4 * s2 + 4)) / 2


def evaluate_root_series(t: CoeffTable, sigma: Sequence):
    """Exact when every coordinate is rational, complex otherwise."""
    return root_series(t).evaluate(list(sigma))


def compare_series(k: int, Q: int, sigma: Sequence, t: CoeffTable) -> float:
    """``|root_series(t)(sigma) - newton_root(sigma)|``."""
    if t.k != k:
        raise ValueError(f"table is for k={t.k}, not k={k}")
    if t.Q != Q:
        raise ValueError(f"table has order {t.Q}, not {Q}")
    approx = evaluate_root_series(t, sigma)
    root = newton_root(ShiftedPolynomial(k, tuple(sigma)))
    return abs(complex(approx) - root)


def newton_root_exact(k: int, sigma: Sequence[Fraction], start: Fraction,
                      steps: int = 3) -> Fraction:
    """Newton's method in exact rationals for real rational ``sigma``.

    Used to resolve differences below double precision: from a start already
    within ~1e-12 of the root, three steps leave an error far below 1e-40.
    """
    coeffs = [Fraction(1)] + [(-1) ** h * Fraction(sigma[h - 1]) for h in range(1, k + 1)]
    coeffs[k] -= (-1) ** k
    z = Fraction(start)
    for _ in range(steps):
        val, der = Fraction(0), Fraction(0)
        for c in coeffs:
            der = der * z + val
            val = val * z + c
        if der == 0:
            raise NewtonError("zero derivative in exact Newton step")
        z -= val / der
    return z


def truncation_error_exact(t: CoeffTable, sigma: Sequence[Fraction]) -> Fraction:
    """``|root_series(t)(sigma) - z(sigma)|`` with the root resolved in exact arithmetic."""
    approx = evaluate_root_series(t, sigma)
    # seed from the double-precision root, then refine exactly
    seed = Fraction(newton_root(ShiftedPolynomial(t.k, tuple(sigma))).real)
    root = newton_root_exact(t.k, sigma, seed)
    return abs(approx - root)
