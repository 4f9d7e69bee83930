"""Sturm sequences for exact real-root counting of univariate rational polynomials.

Polynomials are coefficient lists, lowest degree first.
"""
from __future__ import annotations

from typing import Sequence

from .jetalg import JetError, TruncPoly, as_scalar, mpq


def to_coeffs(p) -> list:
    """Accept a coefficient sequence or a univariate TruncPoly."""
    if isinstance(p, TruncPoly):
        if p.nvars != 1:
            raise JetError("expected a univariate polynomial")
        deg = max(p.degree(), 0)
        return _trim([p.coeff((k,)) for k in range(deg + 1)])
    return _trim([as_scalar(c) for c in p])


def _trim(c: list) -> list:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def evaluate(c: Sequence[mpq], x) -> mpq:
    x = as_scalar(x)
    acc = mpq(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def derivative(c: Sequence[mpq]) -> list:
    return [k * c[k] for k in range(1, len(c))]


def polyrem(a: Sequence[mpq], b: Sequence[mpq]) -> list:
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    while len(a) >= len(b):
        f = a[-1] / lead
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a.pop()
        a = _trim(a)
    return a


def polygcd(a, b) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, polyrem(a, b)
    return [c / a[-1] for c in a] if a else a


def sturm_sequence(p) -> list:
    c = to_coeffs(p)
    seq = [c, derivative(c)]
    while seq[-1]:
        r = polyrem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-v for v in r])
    return [s for s in seq if s]


def sign_changes(values) -> int:
    signs = [v > 0 for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_root_count(p, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    c = to_coeffs(p)
    if not c:
        raise JetError("zero polynomial has infinitely many roots")
    lo, hi = as_scalar(lo), as_scalar(hi)
    if not lo < hi:
        raise JetError("need lo < hi")
    if not evaluate(c, lo) or not evaluate(c, hi):
        raise JetError("polynomial vanishes at an interval endpoint")
    seq = sturm_sequence(c)
    return sign_changes([evaluate(s, lo) for s in seq]) - sign_changes([evaluate(s, hi) for s in seq])
