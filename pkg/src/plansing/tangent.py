"""Tangent spaces Tf = Jf + tau f inside the degree-d truncation of E_{s,t}.

An element of the truncated space is a tuple of ``t`` polynomials in ``s``
variables of degree <= d (constants allowed).  Coordinates are indexed by
(component, monomial) pairs.

``Jf`` is spanned by ``m * df/dx_j`` for source monomials ``m``; ``tau f`` by
``(mu o f) * e_k`` for target monomials ``mu``, constants included.  Both are
truncated at degree d, and the jet ``f`` is read as an exact polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional, Sequence

from .jetalg import JetError, JetMap, TruncPoly, as_scalar, monomials, partial_derivative
from .linalg import Echelon

MAX_DEGREE = 8


@dataclass(frozen=True)
class GermSpace:
    source_dim: int
    target_dim: int
    degree: int

    @property
    def dim(self) -> int:
        return self.target_dim * comb(self.source_dim + self.degree, self.degree)

    def basis_index(self) -> dict:
        mons = monomials(self.source_dim, self.degree)
        return {(k, e): k * len(mons) + i for k in range(self.target_dim) for i, e in enumerate(mons)}

    def vector(self, element: Sequence[TruncPoly], index: Optional[dict] = None) -> dict:
        """Sparse coordinates of ``element`` (terms above the degree are dropped)."""
        index = index or self.basis_index()
        if len(element) != self.target_dim:
            raise JetError(f"expected {self.target_dim} components, got {len(element)}")
        out = {}
        for k, comp in enumerate(element):
            if comp.nvars != self.source_dim:
                raise JetError("source dimension mismatch")
            for e, c in comp.items():
                if sum(e) <= self.degree:
                    out[index[(k, e)]] = c
        return out


@dataclass
class TangentSpaceReport:
    degree: int
    ambient_dim: int
    generators_j: int
    generators_tau: int
    rank: int
    stabilization: list = field(default_factory=list)  # (degree, codim)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.rank


@dataclass
class UnfoldingSpec:
    """An unfolding ``(u, x) -> (u, Fbar(u, x))`` with parameters listed first."""

    base: JetMap
    parameters: int
    total: JetMap

    def __post_init__(self):
        p, s, t = self.parameters, self.base.source_dim, self.base.target_dim
        if self.total.source_dim != p + s or self.total.target_dim != p + t:
            raise JetError(f"unfolding must map R^{p + s} to R^{p + t}")
        order = self.total.order
        for i in range(p):
            if self.total[i] != TruncPoly.variable(p + s, order, i):
                raise JetError(f"component {i + 1} of the unfolding must be parameter u{i + 1}")
        at_zero = [_at_zero_params(self.total[p + k], p) for k in range(t)]
        common = min(order, self.base.order)
        if any(a.truncate(common) != b.truncate(common) for a, b in zip(at_zero, self.base)):
            raise JetError("the unfolding does not restrict to the base germ at u = 0")

    @property
    def fbar(self) -> list:
        return [self.total[self.parameters + k] for k in range(self.base.target_dim)]


@dataclass
class UniversalityResult:
    universal: bool
    deficiency: int
    tangent_codim: int


def _at_zero_params(p: TruncPoly, params: int) -> TruncPoly:
    return p.restrict(list(range(params, p.nvars)))


def _lift(f: JetMap, d: int) -> list:
    return [c.truncate(d) for c in f]


def _target_monomial_values(comps: Sequence[TruncPoly], d: int) -> dict:
    """mu o f for every target monomial mu of degree <= d, truncated at d."""
    s = comps[0].nvars
    one = TruncPoly.constant(s, d, 1)
    values = {}
    for e in monomials(len(comps), d):
        if not any(e):
            values[e] = one
            continue
        # peel one factor off the last nonzero exponent
        i = max(k for k, v in enumerate(e) if v)
        prev = list(e)
        prev[i] -= 1
        values[e] = values[tuple(prev)] * comps[i]
    return values


def tangent_generators(f: JetMap, d: int) -> tuple:
    """Generators of Jf and tau f as lists of component tuples."""
    if not 0 <= d <= MAX_DEGREE:
        raise ValueError(f"degree must be between 0 and {MAX_DEGREE}")
    comps = _lift(f, d)
    s, t = f.source_dim, f.target_dim
    source_mons = [TruncPoly(s, d, {e: 1}) for e in monomials(s, d)]
    j_gens = []
    for j in range(s):
        column = [partial_derivative(c, j) for c in comps]
        if not any(column):
            continue
        for m in source_mons:
            j_gens.append(tuple(m * c for c in column))
    zero = TruncPoly.zero(s, d)
    tau_gens = []
    for mu in _target_monomial_values(comps, d).values():
        if not mu:
            continue
        for k in range(t):
            tau_gens.append(tuple(mu if i == k else zero for i in range(t)))
    return j_gens, tau_gens


def _echelon(f: JetMap, d: int) -> tuple:
    space = GermSpace(f.source_dim, f.target_dim, d)
    index = space.basis_index()
    j_gens, tau_gens = tangent_generators(f, d)
    ech = Echelon()
    for g in tau_gens + j_gens:
        ech.add(space.vector(g, index))
    return space, index, ech, len(j_gens), len(tau_gens)


def tangent_codim(f: JetMap, d: int = 4, degrees: Iterable[int] = ()) -> TangentSpaceReport:
    """Codimension of Tf in the degree-d truncation, plus raw values at ``degrees``."""
    space, _, ech, nj, nt = _echelon(f, d)
    report = TangentSpaceReport(degree=d, ambient_dim=space.dim, generators_j=nj,
                                generators_tau=nt, rank=ech.rank)
    for dd in degrees:
        if dd == d:
            report.stabilization.append((dd, report.codim))
        else:
            other, _, e2, _, _ = _echelon(f, dd)
            report.stabilization.append((dd, other.dim - e2.rank))
    return report


def membership(v: Sequence[TruncPoly], f: JetMap, d: int) -> bool:
    """Whether ``v`` (truncated at degree d) lies in Tf."""
    if len(v) != f.target_dim or any(c.nvars != f.source_dim for c in v):
        raise JetError("element and germ have different dimensions")
    space, index, ech, _, _ = _echelon(f, d)
    return ech.contains(space.vector([c.truncate(d) for c in v], index))


def inflate(f: JetMap, q: Sequence[int]) -> JetMap:
    """Suspension ``(z, x, y) -> (x, f2(x, y) + sum q_i z_i^2)``.

    ``f`` must have the shape ``(x, f2)``; ``q`` lists the diagonal entries
    of the quadratic form, each +1 or -1.
    """
    if f.source_dim != 2 or f.target_dim != 2:
        raise JetError("inflation takes a planar jet")
    if f[0] != TruncPoly.variable(2, f.order, 0):
        raise JetError("the first component must be x")
    signs = [as_scalar(c) for c in q]
    if any(c not in (1, -1) for c in signs):
        raise JetError("q must be a nondegenerate diagonal form with entries +-1")
    n = len(signs)
    m = n + 2
    z = f.order
    pos = [n, n + 1]
    f2 = f[1].embed(m, pos)
    for i, c in enumerate(signs):
        f2 = f2 + TruncPoly.variable(m, z, i) ** 2 * c
    return JetMap([TruncPoly.variable(m, z, n), f2])


def is_universal_unfolding(u: UnfoldingSpec, d: int = 4) -> UniversalityResult:
    """Universality test: span of the parameter derivatives plus Tf fills the space."""
    f = u.base
    space, index, ech, _, _ = _echelon(f, d)
    codim = space.dim - ech.rank
    p = u.parameters
    for i in range(p):
        v = [_at_zero_params(partial_derivative(c, i), p).truncate(d) for c in u.fbar]
        ech.add(space.vector(v, index))
    deficiency = space.dim - ech.rank
    return UniversalityResult(universal=deficiency == 0, deficiency=deficiency, tangent_codim=codim)
