from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from holoroot.detres import (
    PolyMatrix,
    bareiss_determinant,
    cofactor_determinant,
    determinant,
    discriminant,
    lemma_determinant_check,
    lemma_determinant_matrix,
    lemma_manquant_check,
    lemma_manquant_matrix,
    resultant,
    sylvester_matrix,
)
from holoroot.polyring import Poly, z_names


def to_sympy(p: Poly):
    syms = sympy.symbols(p.names)
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) *
                            sympy.prod([x ** e for x, e in zip(syms, exp)]) for exp, c in p.terms.items()))


def test_determinant_examples():
    one, zero = Poly.const(1, 2), Poly.zero(2)
    eye = [[one if i == j else zero for j in range(3)] for i in range(3)]
    assert determinant(eye) == 1
    s1, s2 = Poly.var(1, 2), Poly.var(2, 2)
    assert determinant([[s1, s2], [s2, s1]]) == s1 * s1 - s2 * s2
    with pytest.raises(ValueError):
        determinant([[s1, s2]])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.data())
def test_bareiss_matches_cofactor(n, data):
    entry = st.sampled_from([Poly.var(1, 2), Poly.var(2, 2), Poly.const(2, 2), Poly.zero(2),
                             Poly.const(-1, 2), Poly.var(1, 2) * Poly.var(2, 2)])
    rows = [[data.draw(entry) for _ in range(n)] for _ in range(n)]
    assert bareiss_determinant(rows) == cofactor_determinant(rows)


def _zpoly(coeffs, k=1):
    # coefficients high to low in z, constant in sigma
    names = z_names(k)
    n = len(coeffs) - 1
    return Poly({tuple([0] * k + [n - i]): c for i, c in enumerate(coeffs) if c}, names)


def test_resultant_examples():
    assert resultant(_zpoly([1, 0, -1]), _zpoly([2, 0])) == -4
    names = ("a", "b", "z")
    a, b, z = (Poly.var(i, names) for i in (1, 2, 3))
    assert resultant(z - a, z - b) == a - b
    s1, s2, zz = (Poly.var(i, z_names(2)) for i in (1, 2, 3))
    P = zz * zz - s1 * zz + s2
    assert resultant(P, P.derivative(3)) == -(s1 * s1 - s2.scale(4))
    assert sylvester_matrix(P, P.derivative(3), 3).shape == (3, 3)


def test_discriminant_examples():
    s1, s2 = Poly.var(1, 2), Poly.var(2, 2)
    assert discriminant(2) == s1 * s1 - s2.scale(4)
    assert discriminant(3).evaluate([0, 0, 5]) == -27 * 25
    assert discriminant(2).evaluate([2, 1]) == 0
    with pytest.raises(ValueError):
        discriminant(1)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_discriminant_matches_sympy(k):
    z = sympy.Symbol("z")
    s = sympy.symbols(" ".join(f"s{h}" for h in range(1, k + 1)))
    s = s if isinstance(s, tuple) else (s,)
    P = sum((-1) ** h * (s[h - 1] if h else 1) * z ** (k - h) for h in range(k + 1))
    assert to_sympy(discriminant(k)) == sympy.expand(sympy.discriminant(P, z))


def test_lemma_k2_explicit():
    det, eps = lemma_determinant_check(2)
    s1, s2 = Poly.var(1, 2), Poly.var(2, 2)
    assert det == -(s2 * (s1 * s1 - s2.scale(4)))
    assert eps == -1
    assert det.evaluate([2, 1]) == 0
    m = lemma_determinant_matrix(2)
    assert m.row_labels == ("L1", "L2", "Lambda2")


def test_manquant_small_cases():
    det, eps = lemma_manquant_check(2)
    assert det == discriminant(2).scale(-2 * eps)
    det3, eps3 = lemma_manquant_check(3)
    assert det3 == discriminant(3).scale(9 * eps3)
    assert det3.evaluate([3, 3, 1]) == 0  # (z-1)^3


# k=5 is covered by the proportionality checks; sympy needs ~25 s there
@pytest.mark.parametrize("k", [2, 3, 4])
def test_lemma_determinants_match_sympy(k):
    for build in (lemma_determinant_matrix, lemma_manquant_matrix):
        m = build(k)
        ours = determinant(m)
        theirs = sympy.Matrix([[to_sympy(e) for e in row] for row in m.rows]).det(method="berkowitz")
        assert to_sympy(ours) == sympy.expand(theirs)


def test_signs_are_stable():
    signs = {k: (lemma_determinant_check(k)[1], lemma_manquant_check(k)[1]) for k in range(2, 6)}
    assert signs == {2: (-1, 1), 3: (-1, -1), 4: (1, -1), 5: (1, 1)}


def test_polymatrix_rejects_ragged():
    with pytest.raises(ValueError):
        PolyMatrix(((Poly.zero(1),), (Poly.zero(1), Poly.zero(1))))


def test_specialize():
    m = lemma_determinant_matrix(2)
    vals = m.specialize([Fraction(1), Fraction(2)])
    assert vals[0] == [1, 4, 0]
