"""Verification suites behind ``holoroot verify``.

Each suite returns a :class:`Report` of named checks. A check either passes or
fails; informational lines (signs, diagnostics) ride along as notes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import detres, multiindex, taylor, weyl
from .polyring import Poly

TARGETS = ("identities", "recurrences", "annihilation", "determinant", "surface", "newton")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}" + (f"  {self.detail}" if self.detail else "")


@dataclass
class Report:
    target: str
    k: int
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def lines(self) -> list[str]:
        out = [f"# {self.target} k={self.k}"]
        out += [c.line() for c in self.checks]
        out += self.notes
        return out


def verify_identities(k: int, max_m: int = 12) -> Report:
    rep = Report("identities", k)
    for h in range(2, k + 1):
        rep.add(f"E{h}", weyl.identity_residual("Eh", k, h=h).is_zero(), "exact zero operator")
    rep.add("E1", weyl.identity_residual("E1", k).is_zero(), "exact zero operator")
    for h in range(2, k + 1):
        d = weyl.identity_residual("Fh", k, h=h)
        rep.add(f"F{h}", weyl.annihilates_newton(d, max_m), f"kills N_0..N_{max_m}")
    rep.add("F1", weyl.annihilates_newton(weyl.identity_residual("F1", k), max_m),
            f"kills N_0..N_{max_m}")
    for p, q, label in ((0, -1, "[U0,U-1]+U-1"), (0, 1, "[U0,U1]-U1"), (1, -1, "[U1,U-1]+2U0")):
        res = weyl.identity_residual("commutator", k, p=p, q=q)
        rep.add(label, res.is_zero() or weyl.annihilates_newton(res, max_m), "exact zero operator"
                if res.is_zero() else f"kills N_0..N_{max_m}")
    return rep


def verify_recurrences(k: int, Q: int = 8) -> Report:
    rep = Report("recurrences", k)
    t = taylor.build_table(k, Q)
    r = taylor.check_recurrences(t)
    rep.add(f"(A),(B),(C) closure Q={Q}", r.ok, f"{r.checked} relations, {len(r.violations)} violations")
    for v in r.violations[:10]:
        rep.notes.append(f"  {v}")
    seeds = taylor.seed_coefficients(k)
    ok = seeds[(0, 0)] == -1 and seeds[(1, 1)] == 0 and all(
        seeds[(1, h)] == Fraction(1, k) for h in range(2, k + 1))
    rep.add("seeds", ok, f"C[0,0]=-1 C[1,1]=0 C[1,h]=1/{k}")
    for h in range(2, k + 1):
        chain, star = taylor.diagonal_from_b_chain(k, h), taylor.diagonal_from_b_star(k, h)
        rep.add(f"diagonal C[{h},{h}] consistency", chain == star, f"{chain}")
    for d in taylor.diagonal_diagnostics(k):
        if d.discrepancy:
            rep.notes.append(
                f"DISCREPANCY C[{d.h},{d.h}]: recurrence {d.recurrence} vs displayed closed form "
                f"{d.displayed}; the recurrence value is used")
    return rep


def verify_annihilation(k: int, Q: int = 8) -> Report:
    rep = Report("annihilation", k)
    t = taylor.build_table(k, Q)
    for res in taylor.annihilation_residuals(t):
        low = "none" if res.lowest_nonzero_degree is None else str(res.lowest_nonzero_degree)
        rep.add(res.operator, res.ok, f"zero through degree {res.window}, lowest nonzero {low}")
    return rep


def verify_determinant(k: int) -> Report:
    rep = Report("determinant", k)
    for label, fn in (("determinant lemma", detres.lemma_determinant_check),
                      ("manquant lemma", detres.lemma_manquant_check)):
        try:
            _, eps = fn(k)
        except detres.ProportionalityError as exc:
            rep.add(label, False, str(exc))
        else:
            rep.add(label, True, f"eps = {eps:+d}")
    if k == 2:
        s1, s2 = Poly.var(1, 2), Poly.var(2, 2)
        rep.add("discriminant k=2", detres.discriminant(2) == s1 * s1 - s2.scale(4), "s1^2 - 4 s2")
    return rep


def verify_surface(k: int, samples: int = 100, seed: int = 0) -> Report:
    rep = Report("surface", k)
    rng = random.Random(seed)
    for chart in ("chart1", "chartk"):
        bad = 0
        for _ in range(samples):
            z0 = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
            z1 = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
            if any(multiindex.sk_minors(multiindex.sk_point(k, z0, z1, chart))):
                bad += 1
        rep.add(f"S({k}) minors vanish on {chart}", bad == 0, f"{samples} rational points, {bad} off")
    bad = 0
    checked = 0
    for q in range(0, 9):
        for alpha in multiindex.all_of_length(k, q):
            checked += 1
            m = multiindex.reduce_to_minimal(alpha)
            if m != multiindex.minimal_form(k, q, multiindex.weight(alpha)) or not multiindex.is_minimal(m):
                bad += 1
    rep.add("minimal forms", bad == 0, f"{checked} multi-indices, {bad} mismatches")
    return rep


def verify_newton(k: int, max_m: int = 12) -> Report:
    rep = Report("newton", k)
    deriv_bad = rec_bad = 0
    for m in range(max_m + 1):
        n = weyl.newton_polynomial(k, m)
        for h in range(1, k + 1):
            # N_0 = k is constant; DN is only defined from index 1-k
            want = Poly.zero(k) if m == 0 else weyl.dn_polynomial(k, m - h).scale((-1) ** (h - 1) * m)
            if n.derivative(h) != want:
                deriv_bad += 1
        if m == 0:
            continue
        total = Poly.zero(k)
        for h in range(k + 1):
            term = weyl.dn_polynomial(k, m - h)
            term = term if h == 0 else term * Poly.var(h, k)
            total = total + term.scale((-1) ** h)
        if total:
            rec_bad += 1
    rep.add("d_h N_m = (-1)^(h-1) m DN_(m-h)", deriv_bad == 0, f"m <= {max_m}, {deriv_bad} failures")
    rep.add("sum_h (-1)^h s_h DN_(m-h) = 0", rec_bad == 0, f"1 <= m <= {max_m}, {rec_bad} failures")
    return rep


def run(target: str, k: int, Q: int = 8, max_m: int = 12) -> list[Report]:
    if target == "all":
        return [r for t in TARGETS for r in run(t, k, Q, max_m)]
    if target == "identities":
        return [verify_identities(k, max_m)]
    if target == "recurrences":
        return [verify_recurrences(k, Q)]
    if target == "annihilation":
        return [verify_annihilation(k, Q)]
    if target == "determinant":
        return [verify_determinant(k)]
    if target == "surface":
        return [verify_surface(k)]
    if target == "newton":
        return [verify_newton(k, max_m)]
    raise ValueError(f"unknown target {target!r}; expected one of {TARGETS + ('all',)}")
