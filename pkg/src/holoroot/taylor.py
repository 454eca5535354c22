"""Exact Taylor coefficients of the root near -1 of the shifted universal equation.

Around ``sigma0 = (0, ..., 0, -1)`` the root ``z(sigma)`` of

    z^k + sum_h (-1)^h sigma_h z^(k-h) - (-1)^k = 0

that starts at -1 satisfies ``z(sigma) - sigma_1/k = sum C_{q,r} m_{q,r}(sigma)``.
The coefficients depend only on the length ``q`` and weight ``r`` of the
monomial and obey

    (A)  (r-1) C_{q,r} - k C_{q+1,r+k} = 0              q >= 1, r in [q, kq]
    (B)  (kq-r+1) C_{q,r} + k C_{q+1,r} = 0             q >= 1, r in [q+1, kq]

with seeds C_{0,0} = -1, C_{1,1} = 0, C_{1,h} = 1/k.  :func:`build_table`
closes these into explicit products; :func:`check_recurrences` re-verifies
(A) and (B) on the finished table.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .polyring import Poly, mqr_polynomial
from .weyl import DiffOp, apply, gen_A_all, gen_U0_shifted, gen_Um1

Key = tuple[int, int]


@dataclass(frozen=True)
class CoeffTable:
    k: int
    Q: int
    values: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", MappingProxyType(dict(sorted(self.values.items()))))

    def __getitem__(self, key: Key) -> Fraction:
        q, r = key
        if (q, r) in self.values:
            return self.values[(q, r)]
        if r < q or r > self.k * q:
            return Fraction(0)
        raise KeyError(key)

    def __contains__(self, key) -> bool:
        return key in self.values

    def __len__(self) -> int:
        return len(self.values)

    def keys(self):
        return self.values.keys()

    def items(self):
        return self.values.items()

    def replace(self, key: Key, value) -> "CoeffTable":
        """Copy with one entry changed (used for fault injection)."""
        vals = dict(self.values)
        vals[key] = Fraction(value)
        return CoeffTable(self.k, self.Q, vals)


def table_keys(k: int, Q: int) -> list[Key]:
    return [(q, r) for q in range(Q + 1) for r in range(q, k * q + 1)]


def seed_coefficients(k: int) -> CoeffTable:
    if k < 2:
        raise ValueError("k >= 2 required")
    vals = {(0, 0): Fraction(-1), (1, 1): Fraction(0)}
    for h in range(2, k + 1):
        vals[(1, h)] = Fraction(1, k)
    return CoeffTable(k, 1, vals)


def _b_star_denominator(k: int, r: int, s: int) -> Fraction:
    prod = Fraction(1)
    for j in range(1, s + 1):
        prod *= r - j - Fraction(r - 1, k)
    return prod


def _a_star_factor(k: int, r: int) -> Fraction:
    # C_{r+k,r+k} = factor * C_{r,r}
    f = Fraction((-1) ** (k - 1) * (r - 1), k)
    for p in range(k - 1):
        f *= r + p - Fraction(r - 1, k)
    return f


def diagonal_from_b_chain(k: int, h: int) -> Fraction:
    """``C_{h,h}`` for ``h in [2,k]`` by stepping (B) up from ``C_{1,h} = 1/k``."""
    c = Fraction(1, k)
    for q in range(1, h):
        c = -Fraction(k * q - h + 1, k) * c
    return c


def diagonal_from_b_star(k: int, h: int) -> Fraction:
    """``C_{h,h}`` by inverting the closed product at ``(r=h, s=h-1)`` against ``C_{1,h} = 1/k``."""
    return (-1) ** (h - 1) * Fraction(1, k) * _b_star_denominator(k, h, h - 1)


def displayed_diagonal(k: int, h: int) -> Fraction:
    """The displayed closed form ``(-1)^(k-h) prod_j (h-j-(h-1)/k) / prod_p (h+p-(h-1)/k)``.

    Kept for the diagnostic report only; it does not agree with the recurrences.
    """
    num = _b_star_denominator(k, h, h - 1)
    den = Fraction(1)
    for p in range(k - 1):
        den *= h + p - Fraction(h - 1, k)
    return (-1) ** (k - h) * num / den


def build_table(k: int, Q: int) -> CoeffTable:
    """All ``C_{q,r}`` with ``q <= Q``.

    Order of evaluation: seeds; ``C_{h,h}`` for ``h in [2,k]`` through (B);
    the rest of the diagonal through (A*); each column ``r`` down from its
    diagonal through (B*); columns with ``r = 1 mod k`` are zero.
    """
    if k < 2:
        raise ValueError("k >= 2 required")
    if Q < 0:
        raise ValueError("Q >= 0 required")
    seeds = seed_coefficients(k)
    if Q == 0:
        return CoeffTable(k, 0, {(0, 0): seeds[(0, 0)]})

    diag: dict[int, Fraction] = {1: Fraction(0)}
    for h in range(2, k + 1):
        diag[h] = diagonal_from_b_chain(k, h)
    for r in range(k + 1, k * Q + 1):
        diag[r] = _a_star_factor(k, r - k) * diag[r - k]

    vals: dict[Key, Fraction] = {(0, 0): seeds[(0, 0)]}
    for q, r in table_keys(k, Q):
        if q == 0:
            continue
        if (r - 1) % k == 0:
            vals[(q, r)] = Fraction(0)
            continue
        if q == 1:
            vals[(q, r)] = seeds[(1, r)]
            continue
        s = r - q
        vals[(q, r)] = (-1) ** s * diag[r] / _b_star_denominator(k, r, s)
    return CoeffTable(k, Q, vals)


@dataclass(frozen=True)
class Violation:
    rule: str
    q: int
    r: int
    residual: Fraction

    def __str__(self) -> str:
        return f"({self.rule}) at ({self.q},{self.r}): residual {self.residual}"


@dataclass(frozen=True)
class RecurrenceReport:
    k: int
    Q: int
    checked: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_recurrences(t: CoeffTable) -> RecurrenceReport:
    """Re-verify (A), (B) and the zero columns exactly on a finished table."""
    k, Q = t.k, t.Q
    bad: list[Violation] = []
    checked = 0
    for q in range(1, Q):
        for r in range(q, k * q + 1):
            res = (r - 1) * t[(q, r)] - k * t[(q + 1, r + k)]
            checked += 1
            if res:
                bad.append(Violation("A", q, r, res))
        for r in range(q + 1, k * q + 1):
            res = (k * q - r + 1) * t[(q, r)] + k * t[(q + 1, r)]
            checked += 1
            if res:
                bad.append(Violation("B", q, r, res))
    for (q, r), v in t.items():
        if q >= 1 and (r - 1) % k == 0:
            checked += 1
            if v:
                bad.append(Violation("C", q, r, v))
    return RecurrenceReport(k, Q, checked, tuple(bad))


def assemble_series(t: CoeffTable) -> Poly:
    """``sum C_{q,r} m_{q,r}(sigma)`` over the stored keys."""
    out = Poly.zero(t.k)
    for (q, r), c in t.items():
        if c:
            out = out + mqr_polynomial(t.k, q, r).scale(c)
    return out


def root_series(t: CoeffTable) -> Poly:
    """Truncated expansion of the root itself: the assembled series plus ``sigma_1/k``."""
    return assemble_series(t) + Poly.var(1, t.k).scale(Fraction(1, t.k))


def annihilating_operators(k: int) -> dict[str, DiffOp]:
    ops = {f"A{p},{q}": d for (p, q), d in gen_A_all(k).items()}
    ops["U0hat-1"] = gen_U0_shifted(k, 1)
    ops["U-1"] = gen_Um1(k)
    return ops


@dataclass(frozen=True)
class AnnihilationResult:
    operator: str
    order: int
    window: int
    lowest_nonzero_degree: int | None

    @property
    def ok(self) -> bool:
        return self.lowest_nonzero_degree is None or self.lowest_nonzero_degree > self.window


def annihilation_residuals(t: CoeffTable, series: Poly | None = None) -> list[AnnihilationResult]:
    """Apply each annihilator to the truncated series and locate its residual.

    Only total degrees ``<= Q - order`` are fully determined by a table of
    order ``Q``; those must vanish exactly.
    """
    f = assemble_series(t) if series is None else series
    out = []
    for name, op in annihilating_operators(t.k).items():
        res = apply(op, f)
        degs = res.degrees()
        out.append(AnnihilationResult(name, op.order(), t.Q - op.order(), degs[0] if degs else None))
    return out


@dataclass(frozen=True)
class DiagonalDiagnostic:
    h: int
    recurrence: Fraction
    displayed: Fraction

    @property
    def discrepancy(self) -> bool:
        return self.recurrence != self.displayed


def diagonal_diagnostics(k: int) -> list[DiagonalDiagnostic]:
    t = build_table(k, k)
    return [DiagonalDiagnostic(h, t[(h, h)], displayed_diagonal(k, h)) for h in range(2, k + 1)]


# -- serialisation -------------------------------------------------------------

CSV_FIELDS = ("q", "r", "num", "den")


def _rows(t: CoeffTable) -> Iterable[dict]:
    for (q, r), v in sorted(t.items()):
        yield {"q": q, "r": r, "num": str(v.numerator), "den": str(v.denominator)}


def to_json(t: CoeffTable) -> str:
    doc = {"k": t.k, "Q": t.Q, "coefficients": list(_rows(t))}
    return json.dumps(doc, indent=2) + "\n"


def from_json(text: str) -> CoeffTable:
    doc = json.loads(text)
    vals = {
        (int(e["q"]), int(e["r"])): Fraction(int(e["num"]), int(e["den"]))
        for e in doc["coefficients"]
    }
    return CoeffTable(int(doc["k"]), int(doc["Q"]), vals)


def to_csv(t: CoeffTable) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(_rows(t))
    return buf.getvalue()


def from_csv(text: str, k: int, Q: int) -> CoeffTable:
    rd = csv.DictReader(io.StringIO(text))
    vals = {(int(e["q"]), int(e["r"])): Fraction(int(e["num"]), int(e["den"])) for e in rd}
    return CoeffTable(k, Q, vals)


def to_text(t: CoeffTable) -> str:
    lines = [f"# k={t.k} Q={t.Q}"]
    lines += [f"C[{q},{r}] = {v}" for (q, r), v in sorted(t.items())]
    return "\n".join(lines) + "\n"
