import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from plansing import linalg
from plansing.jetalg import JetError, mpq
from plansing.sturm import evaluate, sturm_root_count

X = sympy.Symbol("x")


@pytest.mark.parametrize("coeffs, expected", [
    ([-1, 0, 1], 2),
    ([1, 0, 1], 0),
    ([0, -3, 0, 1], 3),
])
def test_sturm_examples(coeffs, expected):
    assert sturm_root_count(coeffs, -2, 2) == expected


def test_sturm_rejects_endpoint_roots():
    with pytest.raises(JetError):
        sturm_root_count([-1, 0, 1], -1, 2)


def _descartes_01(p):
    """Sign variations bounding the roots of p in (0, 1)."""
    # reverse the coefficients (x -> 1/x), then shift x -> x + 1
    rev = sympy.Poly(list(reversed(p.all_coeffs())), X)
    r = rev.compose(sympy.Poly(X + 1, X))
    signs = [c > 0 for c in r.all_coeffs() if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def bisection_count(p, lo, hi):
    """Roots of a squarefree polynomial in the open interval (lo, hi), by
    Descartes' rule of signs and interval bisection."""
    q = p.compose(sympy.Poly(lo + (hi - lo) * X, X))
    v = _descartes_01(q)
    if v < 2:
        return v
    mid = (lo + hi) / 2
    at_mid = 1 if p.eval(mid) == 0 else 0
    return bisection_count(p, lo, mid) + at_mid + bisection_count(p, mid, hi)


def test_sturm_matches_bisection_oracle():
    rng = random.Random(11)
    checked = 0
    while checked < 100:
        deg = rng.randint(1, 6)
        coeffs = [rng.randint(-6, 6) for _ in range(deg + 1)]
        if not coeffs[-1]:
            continue
        lo, hi = Fraction(rng.randint(-8, 0), 2), Fraction(rng.randint(1, 8), 2)
        if not evaluate(coeffs, lo) or not evaluate(coeffs, hi):
            continue
        p = sympy.Poly(list(reversed(coeffs)), X)
        sqf = sympy.Poly(sympy.quo(p, sympy.gcd(p, p.diff(X))), X)
        expected = bisection_count(sqf, sympy.Rational(lo.numerator, lo.denominator),
                                   sympy.Rational(hi.numerator, hi.denominator))
        assert sturm_root_count(coeffs, lo, hi) == expected
        checked += 1


def matrices(rows=3, cols=3):
    return st.lists(st.lists(st.integers(-4, 4), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


@settings(max_examples=80, deadline=None)
@given(matrices(3, 4))
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_determinant_and_inverse(m):
    det = linalg.determinant(m)
    assert det == sympy.Matrix(m).det()
    if det:
        ident = linalg.matmul(m, linalg.inverse(m))
        assert ident == [[int(i == j) for j in range(3)] for i in range(3)]


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_congruence_diagonalization(m):
    sym = [[m[i][j] + m[j][i] for j in range(3)] for i in range(3)]
    p, diag = linalg.congruence_diagonalize(sym)
    d = linalg.matmul(linalg.matmul(linalg.transpose(p), sym), p)
    assert d == [[diag[i] if i == j else 0 for j in range(3)] for i in range(3)]
    assert linalg.determinant(p) != 0
    # Sylvester: inertia from the characteristic polynomial's roots
    eig = sympy.Matrix(sym).eigenvals()
    pos = sum(k for v, k in eig.items() if sympy.re(v) > 0)
    neg = sum(k for v, k in eig.items() if sympy.re(v) < 0)
    assert linalg.signature(sym)[:2] == (pos, neg)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 9), st.integers(-3, 3), max_size=5), max_size=8))
def test_echelon_rank_matches_dense(rows):
    ech = linalg.Echelon().add_all(rows)
    dense = [[r.get(c, 0) for c in range(10)] for r in rows] or [[0] * 10]
    assert ech.rank == linalg.rank(dense)
    for r in rows:
        assert ech.contains(r)


def test_echelon_accepts_rationals():
    ech = linalg.Echelon()
    ech.add({0: mpq(1, 2), 3: Fraction(2, 3)})
    assert ech.contains({0: 3, 3: 4})
    assert not ech.contains({0: 1})
