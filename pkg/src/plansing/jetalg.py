"""Exact truncated multivariate polynomial arithmetic over the rationals.

Everything else in the package computes inside this layer.  Coefficients are
exact rationals (``gmpy2.mpq``, which interoperates with ``fractions.Fraction``);
a :class:`TruncPoly` of order ``z`` silently drops every term of total degree greater than ``z`` after each operation, so it is an
element of the ring Q[x_1..x_k] / (x)^(z+1).

A :class:`JetMap` is a tuple of such polynomials with vanishing constant terms,
i.e. a polynomial map germ (R^s, 0) -> (R^t, 0) truncated at order ``z``.
"""
from __future__ import annotations

import numbers
from functools import lru_cache
from operator import add
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Scalar = mpq
Exponent = tuple

__all__ = [
    "Scalar",
    "TruncPoly",
    "JetMap",
    "DiffeoJet",
    "JetError",
    "poly_mul",
    "jet_compose",
    "jet_invert",
    "partial_derivative",
    "implicit_series_solve",
    "order_of_vanishing",
    "monomials",
    "identity_jet",
    "linear_jet",
]


class JetError(ValueError):
    """Raised on dimension/order mismatches and violated preconditions."""


def as_scalar(value) -> mpq:
    if isinstance(value, mpq):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'p/q' strings")
    if isinstance(value, numbers.Rational):
        return mpq(int(value.numerator), int(value.denominator))
    return mpq(value)


@lru_cache(maxsize=None)
def monomials(nvars: int, max_degree: int, min_degree: int = 0) -> tuple:
    """All exponent vectors in ``nvars`` variables with degree in [min, max].

    Ordered by total degree, then reverse-lexicographically (x_1 first).
    """
    out = []
    for d in range(min_degree, max_degree + 1):
        out.extend(_homogeneous(nvars, d))
    return tuple(out)


@lru_cache(maxsize=None)
def _homogeneous(nvars: int, degree: int) -> tuple:
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for first in range(degree, -1, -1):
        for rest in _homogeneous(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def _unit(nvars: int, index: int, power: int = 1) -> tuple:
    e = [0] * nvars
    e[index] = power
    return tuple(e)


class TruncPoly:
    """Polynomial in ``nvars`` variables modulo total degree > ``order``.

    Immutable.  ``terms`` maps exponent tuples to nonzero rationals.
    """

    __slots__ = ("nvars", "order", "_terms", "_hash", "_buckets")

    def __init__(self, nvars: int, order: int, terms: Mapping | None = None):
        if nvars < 0:
            raise JetError("nvars must be nonnegative")
        if order < 0:
            raise JetError("order must be nonnegative")
        self.nvars = nvars
        self.order = order
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise JetError(f"exponent {exp} has wrong length for {nvars} variables")
                if sum(exp) > order:
                    continue
                c = as_scalar(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self._terms = clean
        self._hash = None
        self._buckets = None

    @classmethod
    def _raw(cls, nvars: int, order: int, terms: dict) -> "TruncPoly":
        # terms already clean: right length, degree <= order, no zeros
        p = cls.__new__(cls)
        p.nvars = nvars
        p.order = order
        p._terms = terms
        p._hash = None
        p._buckets = None
        return p

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, order: int) -> "TruncPoly":
        return cls._raw(nvars, order, {})

    @classmethod
    def constant(cls, nvars: int, order: int, value) -> "TruncPoly":
        value = as_scalar(value)
        return cls._raw(nvars, order, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars: int, order: int, index: int) -> "TruncPoly":
        if not 0 <= index < nvars:
            raise JetError(f"variable index {index} out of range for {nvars} variables")
        if order < 1:
            return cls.zero(nvars, order)
        return cls._raw(nvars, order, {_unit(nvars, index): mpq(1)})

    @classmethod
    def linear(cls, coeffs: Sequence, order: int) -> "TruncPoly":
        n = len(coeffs)
        return cls(n, order, {_unit(n, i): c for i, c in enumerate(coeffs) if c})

    # basic accessors --------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp: Iterable[int]) -> mpq:
        return self._terms.get(tuple(exp), mpq(0))

    def __getitem__(self, exp) -> mpq:
        return self.coeff(exp)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def constant_term(self) -> mpq:
        return self._terms.get((0,) * self.nvars, mpq(0))

    def degree(self) -> int:
        """Largest total degree of a stored term (-1 for zero)."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_part(self, d: int) -> "TruncPoly":
        return TruncPoly._raw(self.nvars, self.order,
                              {e: c for e, c in self._terms.items() if sum(e) == d})

    def linear_coeffs(self) -> list:
        return [self._terms.get(_unit(self.nvars, i), mpq(0)) for i in range(self.nvars)]

    def truncate(self, order: int) -> "TruncPoly":
        """Return the same polynomial viewed at ``order``.

        Raising the order keeps the stored terms, i.e. treats the jet as an
        exact polynomial.
        """
        return TruncPoly._raw(self.nvars, order,
                              {e: c for e, c in self._terms.items() if sum(e) <= order})

    def _check(self, other: "TruncPoly"):
        if not isinstance(other, TruncPoly):
            raise TypeError(f"expected TruncPoly, got {type(other).__name__}")
        if other.nvars != self.nvars or other.order != self.order:
            raise JetError(
                f"mismatch: ({self.nvars} vars, order {self.order}) vs "
                f"({other.nvars} vars, order {other.order})")

    def _coerce(self, other) -> "TruncPoly":
        if isinstance(other, TruncPoly):
            self._check(other)
            return other
        return TruncPoly.constant(self.nvars, self.order, other)

    # arithmetic -------------------------------------------------------
    def __add__(self, other) -> "TruncPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncPoly._raw(self.nvars, self.order, out)

    __radd__ = __add__

    def __neg__(self) -> "TruncPoly":
        return TruncPoly._raw(self.nvars, self.order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "TruncPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncPoly":
        return self._coerce(other) - self

    def scale(self, k) -> "TruncPoly":
        k = as_scalar(k)
        if not k:
            return TruncPoly.zero(self.nvars, self.order)
        return TruncPoly._raw(self.nvars, self.order, {e: c * k for e, c in self._terms.items()})

    def __mul__(self, other) -> "TruncPoly":
        if isinstance(other, TruncPoly):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "TruncPoly":
        return self.scale(other)

    def __truediv__(self, k) -> "TruncPoly":
        return self.scale(1 / as_scalar(k))

    def __pow__(self, k: int) -> "TruncPoly":
        if not isinstance(k, int) or k < 0:
            raise JetError("only nonnegative integer powers")
        result = TruncPoly.constant(self.nvars, self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncPoly):
            return (self.nvars, self.order, self._terms) == (other.nvars, other.order, other._terms)
        if isinstance(other, numbers.Rational):
            return self._terms == ({(0,) * self.nvars: mpq(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.order, frozenset(self._terms.items())))
        return self._hash

    # calculus / evaluation ---------------------------------------------
    def derivative(self, index: int) -> "TruncPoly":
        return partial_derivative(self, index)

    def evaluate(self, point: Sequence) -> mpq:
        """Evaluate as an exact polynomial at a rational point."""
        if len(point) != self.nvars:
            raise JetError("point has wrong dimension")
        pt = [as_scalar(v) for v in point]
        total = mpq(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute(self, values: Sequence["TruncPoly"]) -> "TruncPoly":
        """Replace variable i by ``values[i]`` (all sharing nvars/order).

        Values may have constant terms only if the result is a plain polynomial
        evaluation; truncation is applied in the target ring.
        """
        if len(values) != self.nvars:
            raise JetError("need one value per variable")
        if not values:
            return TruncPoly.constant(0, self.order, self.constant_term())
        return _substitute(self, tuple(values))

    def restrict(self, keep: Sequence[int]) -> "TruncPoly":
        """Set every variable not in ``keep`` to zero; the result has
        ``len(keep)`` variables in the given order."""
        keep = list(keep)
        drop = [i for i in range(self.nvars) if i not in keep]
        out = {}
        for e, c in self._terms.items():
            if any(e[i] for i in drop):
                continue
            out[tuple(e[i] for i in keep)] = c
        return TruncPoly._raw(len(keep), self.order, out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "TruncPoly":
        """Inverse of :meth:`restrict`: variable i goes to slot positions[i]."""
        out = {}
        for e, c in self._terms.items():
            new = [0] * nvars
            for i, k in enumerate(e):
                new[positions[i]] = k
            out[tuple(new)] = c
        return TruncPoly._raw(nvars, self.order, out)

    def reciprocal(self) -> "TruncPoly":
        """Multiplicative inverse; needs a nonzero constant term."""
        c0 = self.constant_term()
        if not c0:
            raise JetError("reciprocal of a series with zero constant term")
        inv0 = 1 / c0
        # 1/(c0 (1 + r)) = inv0 * sum (-r)^k, r has no constant term
        r = (self - c0).scale(inv0)
        result = TruncPoly.constant(self.nvars, self.order, 1)
        power = TruncPoly.constant(self.nvars, self.order, 1)
        for _ in range(self.order):
            power = power * (-r)
            if power.is_zero():
                break
            result = result + power
        return result.scale(inv0)

    def __repr__(self) -> str:
        return f"TruncPoly({self.nvars}, {self.order}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _degree_buckets(p: TruncPoly) -> dict:
    if p._buckets is None:
        buckets: dict = {}
        for e, c in p._terms.items():
            buckets.setdefault(sum(e), []).append((e, c))
        p._buckets = buckets
    return p._buckets


def poly_mul(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    """Product with every term of total degree > order discarded."""
    a._check(b)
    z = a.order
    if not a._terms or not b._terms:
        return TruncPoly.zero(a.nvars, z)
    bb = _degree_buckets(b)
    out: dict = {}
    get = out.get
    for da, ta in _degree_buckets(a).items():
        room = z - da
        for db, tb in bb.items():
            if db > room:
                continue
            for ea, ca in ta:
                for eb, cb in tb:
                    e = tuple(map(add, ea, eb))
                    v = get(e)
                    out[e] = ca * cb if v is None else v + ca * cb
    return TruncPoly._raw(a.nvars, z, {e: c for e, c in out.items() if c})


class _Substitution:
    """Evaluates polynomials at fixed values, caching monomial values."""

    def __init__(self, values: tuple):
        self.nv = values[0].nvars
        self.z = values[0].order
        for v in values:
            if v.nvars != self.nv or v.order != self.z:
                raise JetError("substituted values must share nvars and order")
        self.values = values
        self.powers = [[TruncPoly.constant(self.nv, self.z, 1)] for _ in values]
        self.cache = {(0,) * len(values): self.powers[0][0]}

    def _power(self, i: int, k: int) -> TruncPoly:
        lst = self.powers[i]
        while len(lst) <= k:
            lst.append(lst[-1] * self.values[i])
        return lst[k]

    def _mono(self, e: tuple) -> TruncPoly:
        got = self.cache.get(e)
        if got is not None:
            return got
        # peel off the highest-index variable
        j = max(i for i, k in enumerate(e) if k)
        rest = list(e)
        k = rest[j]
        rest[j] = 0
        val = self._mono(tuple(rest)) * self._power(j, k)
        self.cache[e] = val
        return val

    def __call__(self, p: TruncPoly) -> TruncPoly:
        acc: dict = {}
        for e, c in p._terms.items():
            for f, d in self._mono(e)._terms.items():
                acc[f] = acc.get(f, 0) + c * d
        return TruncPoly._raw(self.nv, self.z, {f: c for f, c in acc.items() if c})


def _substitute(p: TruncPoly, values: tuple) -> TruncPoly:
    return _Substitution(values)(p)


def partial_derivative(p: TruncPoly, var_index: int) -> TruncPoly:
    """Formal partial derivative.

    The result keeps ``p.order``; its top-degree part is not determined by the
    jet and callers should rely only on degrees <= order - 1.
    """
    if not 0 <= var_index < p.nvars:
        raise JetError(f"variable index {var_index} out of range")
    out = {}
    for e, c in p._terms.items():
        k = e[var_index]
        if k:
            f = list(e)
            f[var_index] = k - 1
            out[tuple(f)] = c * k
    return TruncPoly._raw(p.nvars, p.order, out)


def order_of_vanishing(p: TruncPoly):
    """Smallest total degree of a nonzero term, or ``None`` if ``p`` is zero
    to its order (i.e. the order of vanishing is at least ``p.order + 1``)."""
    if not p._terms:
        return None
    return min(sum(e) for e in p._terms)


def implicit_series_solve(g: TruncPoly, solve_for: int = 1) -> TruncPoly:
    """Solve ``g(x, y) = 0`` for one variable as a series in the other.

    ``g`` has two variables; ``solve_for`` picks the unknown (0 or 1).  Returns
    a univariate TruncPoly ``s`` with ``s(0) = 0`` and ``g = 0`` along the
    graph, modulo degree > order.  Uses Newton iteration on series, doubling
    the number of correct coefficients each step.
    """
    if g.nvars != 2:
        raise JetError("implicit_series_solve expects a polynomial in two variables")
    if solve_for not in (0, 1):
        raise JetError("solve_for must be 0 or 1")
    if g.constant_term():
        raise JetError("g(0, 0) must vanish")
    z = g.order
    param = 1 - solve_for
    gu = partial_derivative(g, solve_for)
    if not gu.constant_term():
        raise JetError("derivative with respect to the unknown vanishes at the origin")
    t = TruncPoly.variable(1, z, 0)
    s = TruncPoly.zero(1, z)

    def along(h: TruncPoly, s: TruncPoly) -> TruncPoly:
        args = [None, None]
        args[param] = t
        args[solve_for] = s
        return _substitute(h, tuple(args))

    correct = 0
    while correct < z:
        residual = along(g, s)
        if residual.is_zero():
            break
        s = s - residual * along(gu, s).reciprocal()
        correct = 2 * correct + 1
    return s


# ----------------------------------------------------------------------
# jets


class JetMap:
    """Polynomial map (R^source_dim, 0) -> (R^target_dim, 0) truncated at ``order``."""

    __slots__ = ("components", "source_dim", "order")

    def __init__(self, components: Sequence[TruncPoly], source_dim: int | None = None,
                 order: int | None = None):
        comps = tuple(components)
        if not comps:
            raise JetError("a jet needs at least one component")
        nv = comps[0].nvars if source_dim is None else source_dim
        z = comps[0].order if order is None else order
        for c in comps:
            if c.nvars != nv or c.order != z:
                raise JetError("all components must share nvars and order")
            if c.constant_term():
                raise JetError("jet components must have zero constant term")
        self.components = comps
        self.source_dim = nv
        self.order = z

    @property
    def target_dim(self) -> int:
        return len(self.components)

    def __getitem__(self, i) -> TruncPoly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetMap):
            return NotImplemented
        return (self.source_dim, self.order, self.components) == (
            other.source_dim, other.order, other.components)

    def __hash__(self) -> int:
        return hash((self.source_dim, self.order, self.components))

    def jacobian(self) -> list:
        """Linear part as a target_dim x source_dim list of rationals."""
        return [c.linear_coeffs() for c in self.components]

    def truncate(self, order: int) -> "JetMap":
        return JetMap([c.truncate(order) for c in self.components], self.source_dim, order)

    def compose(self, inner: "JetMap") -> "JetMap":
        return jet_compose(self, inner)

    def __add__(self, other: "JetMap") -> "JetMap":
        return JetMap([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "JetMap") -> "JetMap":
        return JetMap([a - b for a, b in zip(self.components, other.components)])

    def __repr__(self) -> str:
        return f"JetMap({self.source_dim}->{self.target_dim}, order {self.order}: {self})"

    def __str__(self) -> str:
        return "(" + ", ".join(format_poly(c) for c in self.components) + ")"


def identity_jet(dim: int, order: int) -> "DiffeoJet":
    return DiffeoJet([TruncPoly.variable(dim, order, i) for i in range(dim)])


def linear_jet(matrix: Sequence[Sequence], order: int) -> JetMap:
    """Jet of the linear map with the given (rows = components) matrix."""
    return JetMap([TruncPoly.linear(row, order) for row in matrix])


class DiffeoJet(JetMap):
    """Square jet with invertible linear part (an element of the jet group)."""

    __slots__ = ()

    def __init__(self, components, source_dim=None, order=None):
        super().__init__(components, source_dim, order)
        if self.source_dim != self.target_dim:
            raise JetError("a diffeomorphism jet must be square")
        from .linalg import determinant
        if not determinant(self.jacobian()):
            raise JetError("linear part is singular")

    @classmethod
    def of(cls, jet: JetMap) -> "DiffeoJet":
        if isinstance(jet, DiffeoJet):
            return jet
        return cls(jet.components, jet.source_dim, jet.order)


def jet_compose(outer: JetMap, inner: JetMap) -> JetMap:
    """``outer`` after ``inner``, truncated at the common order."""
    if inner.target_dim != outer.source_dim:
        raise JetError(f"cannot compose: inner has {inner.target_dim} outputs, "
                       f"outer expects {outer.source_dim} inputs")
    if inner.order != outer.order:
        raise JetError("orders differ")
    if any(c.constant_term() for c in inner.components):
        raise JetError("inner jet has a nonzero constant term")
    sub = _Substitution(inner.components)
    comps = [sub(c) for c in outer.components]
    result = JetMap(comps, inner.source_dim, inner.order)
    if isinstance(outer, DiffeoJet) and isinstance(inner, DiffeoJet):
        return DiffeoJet(result.components)
    return result


def jet_invert(phi: JetMap) -> DiffeoJet:
    """Inverse in the jet group.

    Fixed point of ``psi = A^{-1} (w - N(psi))`` where ``phi = A + N``.  Pass
    ``k`` makes psi correct through degree ``k``, so it runs at order ``k``.
    """
    phi = DiffeoJet.of(phi)
    from .linalg import inverse
    dim, z = phi.source_dim, phi.order
    a_inv = inverse(phi.jacobian())
    psi = linear_jet(a_inv, z)
    nonlinear = [c - c.homogeneous_part(1) for c in phi.components]
    if all(c.is_zero() for c in nonlinear):
        return DiffeoJet(psi.components)
    for k in range(2, z + 1):
        lin = linear_jet(a_inv, k)
        w = identity_jet(dim, k)
        n_k = JetMap([c.truncate(k) for c in nonlinear], dim, k)
        psi_k = JetMap([c.truncate(k) for c in psi.components], dim, k)
        psi = jet_compose(lin, w - jet_compose(n_k, psi_k))
    return DiffeoJet(psi.components)


# ----------------------------------------------------------------------
# printing


def default_names(nvars: int) -> list:
    """Variable names used throughout: z1..zn, x, y for n+2 variables."""
    if nvars == 1:
        return ["t"]
    if nvars >= 2:
        return [f"z{i + 1}" for i in range(nvars - 2)] + ["x", "y"]
    return []


def format_poly(p: TruncPoly, names: Sequence[str] | None = None) -> str:
    names = list(names) if names is not None else default_names(p.nvars)
    if not p._terms:
        return "0"
    keys = sorted(p._terms, key=lambda e: (sum(e), tuple(-k for k in e)))
    parts = []
    for e in keys:
        c = p._terms[e]
        mono = "*".join(
            (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        elif a.denominator == 1:
            body = f"{a}*{mono}"
        else:
            body = f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
