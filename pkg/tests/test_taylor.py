import json
from fractions import Fraction

import pytest

from holoroot.polyring import Poly, parse_poly
from holoroot.taylor import (
    CoeffTable,
    annihilation_residuals,
    assemble_series,
    build_table,
    check_recurrences,
    diagonal_diagnostics,
    diagonal_from_b_chain,
    diagonal_from_b_star,
    from_csv,
    from_json,
    root_series,
    seed_coefficients,
    to_csv,
    to_json,
    to_text,
)


def test_seed_examples():
    s = seed_coefficients(2)
    assert dict(s.items()) == {(0, 0): -1, (1, 1): 0, (1, 2): Fraction(1, 2)}
    assert seed_coefficients(5)[(1, 3)] == Fraction(1, 5)
    with pytest.raises(ValueError):
        seed_coefficients(1)


def test_build_table_k2_values():
    t = build_table(2, 4)
    assert t[(2, 2)] == Fraction(-1, 4)
    assert t[(2, 4)] == Fraction(1, 4)
    assert all(t[(q, 3)] == 0 for q in range(2, 5))
    expected = {(3, 4): Fraction(-1, 8), (3, 6): Fraction(3, 8), (4, 4): Fraction(3, 16),
                (4, 6): Fraction(-3, 16), (4, 8): Fraction(15, 16)}
    for key, v in expected.items():
        assert t[key] == v


def test_table_lookup_rules():
    t = build_table(3, 2)
    assert t[(2, 9)] == 0  # outside [q, kq]
    with pytest.raises(KeyError):
        t[(3, 4)]
    assert len(t) == sum(3 * q - q + 1 for q in range(3))
    assert t.replace((2, 2), 7)[(2, 2)] == 7 and t[(2, 2)] != 7


def test_order_zero_and_bad_args():
    assert dict(build_table(3, 0).items()) == {(0, 0): -1}
    with pytest.raises(ValueError):
        build_table(1, 3)
    with pytest.raises(ValueError):
        build_table(2, -1)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_recurrences_close(k):
    rep = check_recurrences(build_table(k, 10))
    assert rep.ok and rep.checked > 0


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_diagonal_routes_agree(k):
    for h in range(2, k + 1):
        assert diagonal_from_b_chain(k, h) == diagonal_from_b_star(k, h)


def test_zero_columns():
    for k in range(2, 6):
        t = build_table(k, 6)
        assert all(v == 0 for (q, r), v in t.items() if q >= 1 and (r - 1) % k == 0)


def test_fault_injection_is_caught():
    t = build_table(3, 5).replace((3, 5), Fraction(1, 7))
    rep = check_recurrences(t)
    assert not rep.ok
    assert {v.rule for v in rep.violations} <= {"A", "B"}
    assert any((v.q, v.r) in ((3, 5), (2, 2), (2, 5)) for v in rep.violations)
    t = build_table(3, 4).replace((2, 4), 1)
    assert any(v.rule == "C" for v in check_recurrences(t).violations)


def test_root_series_examples():
    t = build_table(2, 1)
    assert root_series(t).evaluate([0, 0]) == -1
    assert root_series(t) == parse_poly("-1 + 1/2 * s1 + 1/2 * s2", 2)
    for k in range(2, 6):
        rs = root_series(build_table(k, 3))
        for h in range(1, k + 1):
            assert rs.derivative(h).evaluate([0] * k) == Fraction(1, k)


def test_assembled_series_k2():
    assert assemble_series(build_table(2, 2)) == parse_poly(
        "-1/8 * s1^2 + 1/8 * s2^2 + 1/2 * s2 + -1", 2)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_annihilation_windows(k):
    res = annihilation_residuals(build_table(k, 6))
    assert all(r.ok for r in res)
    names = {r.operator for r in res}
    assert {"U0hat-1", "U-1"} <= names


def test_annihilation_k3_examples():
    res = {r.operator: r for r in annihilation_residuals(build_table(3, 6))}
    for name, r in res.items():
        if name.startswith("A") and r.order >= 0:  # A_{p,p+1} is the zero operator
            assert r.window == 4
            assert r.lowest_nonzero_degree is None or r.lowest_nonzero_degree > 4
    res2 = {r.operator: r for r in annihilation_residuals(build_table(2, 6))}
    assert res2["U-1"].window == 5 and res2["U-1"].ok
    res1 = {r.operator: r for r in annihilation_residuals(build_table(2, 1))}
    assert res1["U0hat-1"].window == 0 and res1["U0hat-1"].ok


def test_corrupted_series_is_detected():
    t = build_table(3, 6).replace((2, 3), Fraction(5))
    assert not all(r.ok for r in annihilation_residuals(t))


def test_diagonal_diagnostic():
    d = {x.h: x for x in diagonal_diagnostics(2)}
    assert d[2].recurrence == Fraction(-1, 4)
    assert d[2].displayed == Fraction(1, 3)
    assert d[2].discrepancy


def test_json_schema_and_roundtrip():
    t = build_table(3, 4)
    text = to_json(t)
    doc = json.loads(text)
    assert set(doc) == {"k", "Q", "coefficients"}
    keys = [(e["q"], e["r"]) for e in doc["coefficients"]]
    assert keys == sorted(keys)
    assert all(isinstance(e["num"], str) and isinstance(e["den"], str) for e in doc["coefficients"])
    assert from_json(text) == t
    assert to_json(from_json(text)) == text


def test_csv_roundtrip():
    t = build_table(2, 5)
    text = to_csv(t)
    assert text.splitlines()[0] == "q,r,num,den"
    assert from_csv(text, 2, 5) == t


def test_text_output():
    lines = to_text(build_table(2, 2)).splitlines()
    assert lines[0] == "# k=2 Q=2"
    assert "C[2,2] = -1/4" in lines


def test_table_is_immutable():
    t = build_table(2, 2)
    with pytest.raises(TypeError):
        t.values[(0, 0)] = 1
    assert isinstance(t, CoeffTable) and isinstance(root_series(t), Poly)
