"""Classification of jets (R^{n+2}, 0) -> (R^2, 0).

Source coordinates are ordered ``(z1, ..., zn, x, y)``; index ``n`` is ``x`` and
``n + 1`` is ``y``.  The pipeline is

1. rank of the linear part (2 -> regular, 0 -> unclassified);
2. :func:`to_standard_position`: a linear target change puts the image of the
   linear part on the first axis, and a source change makes the first
   component exactly ``x``;
3. :func:`split_off_quadratic`: the Hessian of ``f2`` on the kernel of the
   linear part is split off by an iterated completing-the-square;
4. nullity 0 is a fold, nullity 1 hands the planar residual to
   :func:`classify_planar`, which reads the coefficient table.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from . import linalg
from .jetalg import (DiffeoJet, JetError, JetMap, TruncPoly, as_scalar, identity_jet, implicit_series_solve,
                     jet_compose, jet_invert, linear_jet, mpq, partial_derivative)
from .sturm import evaluate, sturm_root_count, to_coeffs


class Tag(str, enum.Enum):
    REGULAR = "regular"
    FOLD = "fold"
    CUSP = "cusp"
    SWALLOWTAIL = "swallowtail"
    LIPS = "lips"
    BEAK_TO_BEAK = "beak-to-beak"
    UNCLASSIFIED = "unclassified"

    def __str__(self) -> str:
        return self.value


SINGULAR_TAGS = (Tag.FOLD, Tag.CUSP, Tag.SWALLOWTAIL, Tag.LIPS, Tag.BEAK_TO_BEAK)
# the four types whose quadratic form lives on n variables
RESIDUAL_TAGS = (Tag.CUSP, Tag.SWALLOWTAIL, Tag.LIPS, Tag.BEAK_TO_BEAK)


class Reason(str, enum.Enum):
    RANK_ZERO = "rank-0 linear part"
    HESSIAN_NULLITY = "restricted Hessian nullity >= 2"
    OUTSIDE_TABLE = "table conditions fail"
    Q_FORM_ZERO = "3*b3*d2 - d1^2 = 0"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PlanarCoefficients:
    a: mpq
    b2: mpq
    b3: mpq
    b4: mpq
    c: mpq
    d1: mpq
    d2: mpq

    @property
    def q_form(self) -> mpq:
        return 3 * self.b3 * self.d2 - self.d1 ** 2

    @classmethod
    def of(cls, f2: TruncPoly) -> "PlanarCoefficients":
        """Read the table coefficients from a polynomial in (x, y)."""
        if f2.nvars != 2:
            raise JetError("planar coefficients need a polynomial in (x, y)")
        k = f2.coeff
        return cls(a=k((0, 1)), b2=k((0, 2)), b3=k((0, 3)), b4=k((0, 4)),
                   c=k((1, 1)), d1=k((1, 2)), d2=k((2, 1)))


@dataclass(frozen=True)
class GermClass:
    tag: Tag
    abs_signature: Optional[int] = None
    unclassified_reason: Optional[Reason] = None
    coefficients: Optional[PlanarCoefficients] = field(default=None, compare=False)

    def __post_init__(self):
        if self.tag is Tag.UNCLASSIFIED and self.unclassified_reason is None:
            raise ValueError("unclassified results need a reason")
        if self.tag is not Tag.UNCLASSIFIED and self.unclassified_reason is not None:
            raise ValueError("only unclassified results carry a reason")

    @property
    def is_singular(self) -> bool:
        return self.tag in SINGULAR_TAGS


@dataclass
class StandardPositionResult:
    """Reduced jet together with the diffeomorphism jets that produce it.

    ``reduced == left o original o right^{-1}`` modulo degree > order.
    ``unsplit`` is the jet ``(x, f2)`` before the quadratic part was split off.
    """

    reduced: JetMap
    left: DiffeoJet
    right_inverse: DiffeoJet
    unsplit: JetMap
    direction: tuple
    hessian_nullity: int  # 2 stands for ">= 2"
    residual: Optional[JetMap] = None
    quad_form: Optional[list] = None
    fold_graph: Optional[TruncPoly] = None  # image of the fold set as Y = g(X)

    @cached_property
    def right(self) -> DiffeoJet:
        return jet_invert(self.right_inverse)


@dataclass
class FoldCurveData:
    source_graph: Optional[TruncPoly]  # y = s(x) in standard-position coordinates, n = 0 only
    target_graph: TruncPoly            # Y = gamma(X) in direction-aligned target coordinates
    direction: tuple


class DegreeError(RuntimeError):
    """A regular value could not be certified within the search bounds."""


# ----------------------------------------------------------------------
# helpers


def _n_of(f: JetMap) -> int:
    return f.source_dim - 2


def rank_of_linear_part(f: JetMap) -> int:
    if f.target_dim != 2:
        raise JetError("expected a jet with two components")
    return linalg.rank(f.jacobian())


def primitive_direction(vec: Sequence[mpq]) -> tuple:
    """Coprime integer pair spanning the same line, first nonzero entry positive."""
    a, b = (as_scalar(v) for v in vec)
    if not a and not b:
        raise JetError("zero vector has no direction")
    den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    ia, ib = int(a * den), int(b * den)
    g = math.gcd(ia, ib)
    ia, ib = ia // g, ib // g
    if ia < 0 or (ia == 0 and ib < 0):
        ia, ib = -ia, -ib
    return ia, ib


def image_direction(f: JetMap) -> Optional[tuple]:
    """Line spanned by the image of a rank-1 linear part (else None)."""
    jac = f.jacobian()
    if linalg.rank(jac) != 1:
        return None
    for j in range(f.source_dim):
        col = (jac[0][j], jac[1][j])
        if col[0] or col[1]:
            return primitive_direction(col)
    return None


def aligning_matrix(direction: tuple) -> list:
    """Target linear map sending ``direction`` onto the first axis.

    Depends only on the direction, so branches sharing a direction are
    aligned by the same map.
    """
    a, b = direction
    return [[mpq(a), mpq(b)], [mpq(-b), mpq(a)]]


def restricted_hessian(f2: TruncPoly, idx: Sequence[int]) -> list:
    """Matrix of second partials at 0 over the variables ``idx``."""
    n = f2.nvars
    h = []
    for i in idx:
        row = []
        for j in idx:
            e = [0] * n
            e[i] += 1
            e[j] += 1
            c = f2.coeff(e)
            row.append(2 * c if i == j else c)
        h.append(row)
    return h


def _univariate(p: TruncPoly, keep: int) -> TruncPoly:
    return p.restrict([keep])


# ----------------------------------------------------------------------
# reduction


def to_standard_position(f: JetMap, split: bool = True) -> StandardPositionResult:
    """Bring a rank-1 jet to the form (x, f2) with d f2(0) = 0.

    With ``split`` (the default) the quadratic part is also split off when the
    restricted Hessian has nullity <= 1.
    """
    if f.target_dim != 2:
        raise JetError("expected a jet with two components")
    if rank_of_linear_part(f) != 1:
        raise JetError("standard position needs a rank-1 linear part")
    m, z = f.source_dim, f.order
    n = m - 2
    xi = n
    direction = image_direction(f)
    left = DiffeoJet(linear_jet(aligning_matrix(direction), z).components)
    g = jet_compose(left, f)
    g1 = g[0]
    xvar = TruncPoly.variable(m, z, xi)
    if g1 == xvar:
        right_inv = identity_jet(m, z)
    else:
        ell = g1.linear_coeffs()
        order_pref = [xi, n + 1] + list(range(n))
        pivot = next(i for i in order_pref if ell[i])
        comps = []
        for i in range(m):
            if i == xi:
                comps.append(g1)
            elif i == pivot:
                comps.append(TruncPoly.variable(m, z, xi))
            else:
                comps.append(TruncPoly.variable(m, z, i))
        right_inv = jet_invert(DiffeoJet(comps))
        g = jet_compose(g, right_inv)
    unsplit = JetMap([xvar, g[1]])
    kernel = [i for i in range(m) if i != xi]
    hess = restricted_hessian(g[1], kernel)
    nullity = len(kernel) - linalg.rank(hess)
    base = StandardPositionResult(
        reduced=unsplit, left=left, right_inverse=right_inv, unsplit=unsplit,
        direction=direction, hessian_nullity=min(nullity, 2))
    if not split or nullity >= 2:
        return base
    sp = split_off_quadratic(unsplit)
    base.reduced = sp.reduced
    base.left = jet_compose(sp.left, left)
    base.right_inverse = jet_compose(right_inv, sp.right_inverse)
    base.residual = sp.residual
    base.quad_form = sp.quad_form
    base.fold_graph = sp.fold_graph
    return base


def _check_standard(reduced: JetMap) -> None:
    m = reduced.source_dim
    if reduced.target_dim != 2 or m < 2:
        raise JetError("expected a jet (R^{n+2}, 0) -> (R^2, 0)")
    if reduced[0] != TruncPoly.variable(m, reduced.order, m - 2):
        raise JetError("first component is not x: not in standard position")
    if any(reduced[1].linear_coeffs()):
        raise JetError("second component has a linear part: not in standard position")


def split_off_quadratic(reduced: JetMap) -> StandardPositionResult:
    """Splitting lemma at jet level for a standard-position jet.

    Nullity 0: returns ``(x, Q(z, y))`` after a target shear removes the
    remaining function of ``x``.  Nullity 1: returns ``(x, f2r(x, y) + Q(z))``
    and the planar residual ``(x, f2r)``.
    """
    _check_standard(reduced)
    m, z = reduced.source_dim, reduced.order
    n = m - 2
    xi, yi = n, n + 1
    f2 = reduced[1]
    kernel = list(range(n)) + [yi]
    hess = restricted_hessian(f2, kernel)
    nullity = len(kernel) - linalg.rank(hess)
    if nullity >= 2:
        raise JetError("restricted Hessian has nullity >= 2")

    right_inv: JetMap = identity_jet(m, z)
    if nullity == 0:
        split_vars = kernel
    else:
        v = dict(zip(kernel, linalg.nullspace(hess)[0]))
        cols = [[mpq(int(i == j)) for i in range(m)] for j in range(m)]  # cols[j] = image of e_j
        if v[yi]:
            cols[yi] = [v.get(i, mpq(0)) / v[yi] for i in range(m)]
        else:
            j = next(i for i in range(n) if v[i])
            cols[j] = [mpq(int(i == yi)) for i in range(m)]
            cols[yi] = [v.get(i, mpq(0)) for i in range(m)]
        matrix = linalg.transpose(cols)
        if matrix != [[mpq(int(i == j)) for j in range(m)] for i in range(m)]:
            right_inv = DiffeoJet(linear_jet(matrix, z).components)
            f2 = jet_compose(JetMap([f2]), right_inv)[0]
        split_vars = list(range(n))

    block = restricted_hessian(f2, split_vars)
    if split_vars:
        block_inv = linalg.inverse(block)
        split_set = set(split_vars)
        for k in range(2, z + 1):
            for _ in range(z):
                gathered = [TruncPoly.zero(m, z) for _ in split_vars]
                for e, c in f2.items():
                    if sum(e) != k:
                        continue
                    present = [i for i in split_vars if e[i]]
                    if not present:
                        continue
                    if k == 2 and all(i in split_set for i, p in enumerate(e) if p):
                        continue
                    pos = split_vars.index(present[0])
                    rest = list(e)
                    rest[present[0]] -= 1
                    gathered[pos] = gathered[pos] + TruncPoly(m, z, {tuple(rest): c})
                if all(p.is_zero() for p in gathered):
                    break
                sigma = [TruncPoly.variable(m, z, i) for i in range(m)]
                for a, i in enumerate(split_vars):
                    shift = TruncPoly.zero(m, z)
                    for b in range(len(split_vars)):
                        if block_inv[a][b]:
                            shift = shift + gathered[b].scale(block_inv[a][b])
                    sigma[i] = sigma[i] - shift
                sigma_jet = DiffeoJet(sigma)
                f2 = jet_compose(JetMap([f2]), sigma_jet)[0]
                right_inv = jet_compose(right_inv, sigma_jet)
            else:
                raise AssertionError("splitting iteration did not settle")

    xvar = TruncPoly.variable(m, z, xi)
    if nullity == 0:
        graph = _univariate(f2, xi)
        shear_y = TruncPoly.variable(2, z, 1) - graph.embed(2, [0])
        shear = DiffeoJet([TruncPoly.variable(2, z, 0), shear_y])
        reduced_out = jet_compose(shear, JetMap([xvar, f2]))
        return StandardPositionResult(
            reduced=reduced_out, left=shear, right_inverse=DiffeoJet.of(right_inv),
            unsplit=reduced, direction=(1, 0), hessian_nullity=0,
            residual=None, quad_form=block, fold_graph=graph)
    residual_f2 = f2.restrict([xi, yi])
    stray = f2 - residual_f2.embed(m, [xi, yi])
    # what is left besides the residual must be exactly the quadratic form in z
    if any(sum(e) != 2 or e[xi] or e[yi] for e, _ in stray.items()):
        raise AssertionError("splitting left mixed terms behind")
    residual = JetMap([TruncPoly.variable(2, z, 0), residual_f2])
    return StandardPositionResult(
        reduced=JetMap([xvar, f2]), left=identity_jet(2, z),
        right_inverse=DiffeoJet.of(right_inv), unsplit=reduced, direction=(1, 0),
        hessian_nullity=1, residual=residual, quad_form=block)


# ----------------------------------------------------------------------
# classification


def classify_planar(residual: JetMap) -> GermClass:
    """Apply the coefficient table to a planar standard-position jet."""
    if residual.source_dim != 2 or residual.target_dim != 2:
        raise JetError("classify_planar expects a planar jet (x, f2(x, y))")
    if residual.order < 4:
        raise JetError("classification needs order >= 4")
    if residual[0] != TruncPoly.variable(2, residual.order, 0):
        raise JetError("first component is not x: not in standard position")
    if residual[1].coeff((1, 0)):
        raise JetError("f2 has a linear x term: not in standard position")
    k = PlanarCoefficients.of(residual[1])

    def unclassified(reason):
        return GermClass(Tag.UNCLASSIFIED, unclassified_reason=reason, coefficients=k)

    if k.a:
        return GermClass(Tag.REGULAR, coefficients=k)
    if k.b2:
        return GermClass(Tag.FOLD, coefficients=k)
    if k.b3:
        if k.c:
            return GermClass(Tag.CUSP, coefficients=k)
        q = k.q_form
        if q > 0:
            return GermClass(Tag.LIPS, coefficients=k)
        if q < 0:
            return GermClass(Tag.BEAK_TO_BEAK, coefficients=k)
        return unclassified(Reason.Q_FORM_ZERO)
    if k.b4 and k.c:
        return GermClass(Tag.SWALLOWTAIL, coefficients=k)
    return unclassified(Reason.OUTSIDE_TABLE)


def abs_signature(sym: Sequence[Sequence]) -> int:
    pos, neg, _ = linalg.signature(sym)
    return abs(pos - neg)


def classify(f: JetMap) -> GermClass:
    return classify_detailed(f)[0]


def classify_detailed(f: JetMap) -> tuple:
    """(GermClass, StandardPositionResult or None)."""
    if f.target_dim != 2:
        raise JetError("expected a jet with two components")
    if f.order < 4:
        raise JetError("classification needs order >= 4")
    r = rank_of_linear_part(f)
    if r == 2:
        return GermClass(Tag.REGULAR), None
    if r == 0:
        return GermClass(Tag.UNCLASSIFIED, unclassified_reason=Reason.RANK_ZERO), None
    sp = to_standard_position(f)
    if sp.hessian_nullity >= 2:
        return GermClass(Tag.UNCLASSIFIED, unclassified_reason=Reason.HESSIAN_NULLITY), sp
    if sp.hessian_nullity == 0:
        coeffs = PlanarCoefficients.of(sp.unsplit[1]) if f.source_dim == 2 else None
        return GermClass(Tag.FOLD, abs_signature(sp.quad_form), coefficients=coeffs), sp
    planar = classify_planar(sp.residual)
    if planar.tag is Tag.UNCLASSIFIED:
        return planar, sp
    return GermClass(planar.tag, abs_signature(sp.quad_form),
                     coefficients=planar.coefficients), sp


# ----------------------------------------------------------------------
# tables


def valid_signatures(tag: Tag, n: int) -> list:
    """Possible |signature| values: same parity as the number of variables."""
    k = n + 1 if tag is Tag.FOLD else n
    return list(range(k % 2, k + 1, 2))


def normal_form(tag: Tag, n: int, abs_sig: int, order: int = 4) -> JetMap:
    """Normal form (x, base(x, y) + q(z)) with q diagonal +-1.

    For the fold the signature refers to the form y^2 + q(z) in n + 1
    variables; otherwise to q itself.
    """
    tag = Tag(tag)
    if tag not in SINGULAR_TAGS:
        raise JetError(f"no normal form for {tag}")
    if abs_sig not in valid_signatures(tag, n):
        raise JetError(f"|signature| {abs_sig} impossible for {tag} with n={n}")
    if order < 4 and tag is not Tag.FOLD:
        raise JetError("normal forms need order >= 4")
    m = n + 2
    var = [TruncPoly.variable(m, order, i) for i in range(m)]
    x, y = var[n], var[n + 1]
    base = {
        Tag.FOLD: y ** 2,
        Tag.CUSP: y ** 3 + x * y,
        Tag.SWALLOWTAIL: y ** 4 + x * y,
        Tag.LIPS: y ** 3 + x ** 2 * y,
        Tag.BEAK_TO_BEAK: y ** 3 - x ** 2 * y,
    }[tag]
    q_sig = abs_sig - 1 if tag is Tag.FOLD else abs_sig
    positives = (n + q_sig) // 2
    q = TruncPoly.zero(m, order)
    for i in range(n):
        q = q + (var[i] ** 2 if i < positives else -(var[i] ** 2))
    return JetMap([x, base + q])


def count_orbits(n: int, tag: Tag) -> int:
    tag = Tag(tag)
    if tag is Tag.REGULAR:
        return 1
    if tag is Tag.FOLD:
        return (n + 3) // 2
    if tag in RESIDUAL_TAGS:
        return n // 2 + 1
    raise JetError("unclassified jets have no orbit count")


def stratum_codim(tag: Tag, n: int) -> int:
    tag = Tag(tag)
    table = {Tag.REGULAR: 0, Tag.FOLD: n + 1, Tag.CUSP: n + 2,
             Tag.SWALLOWTAIL: n + 3, Tag.LIPS: n + 3, Tag.BEAK_TO_BEAK: n + 3}
    if tag not in table:
        raise JetError("unclassified jets have no stratum codimension")
    return table[tag]


# ----------------------------------------------------------------------
# geometry


def fold_curve(f: JetMap) -> FoldCurveData:
    """Fold set and its image for a fold jet.

    The image is returned as a graph ``Y = gamma(X)`` in target coordinates
    aligned with the fold direction (see :func:`aligning_matrix`); only source
    changes are used besides that alignment, so the curve is comparable across
    branches sharing a direction.
    """
    if rank_of_linear_part(f) != 1:
        raise JetError("fold_curve needs a rank-1 jet")
    sp = to_standard_position(f)
    if sp.hessian_nullity != 0:
        raise JetError("not a fold: restricted Hessian is degenerate")
    source = None
    if f.source_dim == 2:
        dy = partial_derivative(sp.unsplit[1], 1)
        s = implicit_series_solve(dy, solve_for=1)
        source = s.truncate(f.order - 1).truncate(f.order)
    return FoldCurveData(source_graph=source, target_graph=sp.fold_graph, direction=sp.direction)


def _sign(v: mpq) -> int:
    return (v > 0) - (v < 0)


def _line_poly(f2: TruncPoly, x0: mpq, y_val: mpq, y0: mpq) -> list:
    """Coefficients in t of f2(t*x0, y_val) - t*y0."""
    deg = max(f2.degree(), 1)
    coeffs = [mpq(0)] * (deg + 1)
    for (a, b), c in f2.items():
        coeffs[a] += c * x0 ** a * y_val ** b
    coeffs[1] -= y0
    return coeffs


def _planar_degree(f2: TruncPoly) -> int:
    """Local degree at 0 of (x, y) -> (x, f2(x, y)).

    Works on the box [-a, a] x [-d, d]: the degree over a value v = (x0, y0)
    equals (sign p(d) - sign p(-d)) / 2 for p(y) = f2(x0, y) - y0, and v is
    joined to 0 by a segment certified (by Sturm counts) to miss the image of
    the horizontal box sides.  The origin must be the only zero of f2(0, .)
    in [-d, d].
    """
    p0 = to_coeffs(f2.restrict([1]))
    if not p0:
        raise DegreeError("f2(0, y) vanishes identically; the origin is not isolated")
    for j in range(1, 17):
        d = mpq(1, 2 ** j)
        if not evaluate(p0, d) or not evaluate(p0, -d):
            continue
        if sturm_root_count(p0, -d, d) != 1:
            continue
        for k in range(4, 33, 4):
            for r in (mpq(1), mpq(-1), mpq(1, 3), mpq(-1, 3)):
                x0 = mpq(1, 2 ** k)
                y0 = r * x0
                ends = []
                ok = True
                for s in (d, -d):
                    h = _line_poly(f2, x0, s, y0)
                    h_end = evaluate(h, 1)
                    if not h_end or sturm_root_count(h, 0, 1) != 0:
                        ok = False
                        break
                    ends.append(h_end)
                if ok:
                    return (_sign(ends[0]) - _sign(ends[1])) // 2
    raise DegreeError("could not certify a regular value near the origin")


def local_degree(f: JetMap) -> Optional[int]:
    """Local topological degree of a classified jet.

    Planar jets get -1, 0 or +1.  For n > 0 the planar degree is reported only
    when n is even and the split-off form is definite; otherwise None.
    """
    if f.target_dim != 2:
        raise JetError("expected a jet with two components")
    r = rank_of_linear_part(f)
    if f.source_dim == 2 and r == 2:
        return _sign(linalg.determinant(f.jacobian()))
    if r == 0:
        raise DegreeError("rank-0 jets are outside the classified strata")
    if f.source_dim != 2:
        if r == 2:
            return None
        cls, sp = classify_detailed(f)
        n = _n_of(f)
        if cls.tag is Tag.UNCLASSIFIED or n % 2:
            return None
        pos, neg, _ = linalg.signature(sp.quad_form)
        if cls.tag is Tag.FOLD:
            return 0 if (pos == 0 or neg == 0) else None
        if pos and neg:
            return None
        return local_degree(sp.residual)
    sp = to_standard_position(f, split=False)
    det_left = linalg.determinant(sp.left.jacobian())
    det_right_inv = linalg.determinant(sp.right_inverse.jacobian())
    return _sign(det_left) * _sign(det_right_inv) * _planar_degree(sp.unsplit[1])


# ----------------------------------------------------------------------
# discriminants


@dataclass(frozen=True)
class Surd:
    """Number a + b*sqrt(radicand) with rational a, b."""

    a: mpq
    b: mpq
    radicand: mpq

    def __add__(self, other: "Surd") -> "Surd":
        return Surd(self.a + other.a, self.b + other.b, self.radicand)

    def __mul__(self, other) -> "Surd":
        if isinstance(other, Surd):
            return Surd(self.a * other.a + self.b * other.b * self.radicand,
                        self.a * other.b + self.b * other.a, self.radicand)
        other = mpq(other)
        return Surd(self.a * other, self.b * other, self.radicand)

    __rmul__ = __mul__

    def rational(self) -> Optional[mpq]:
        if not self.b:
            return self.a
        root = _rational_sqrt(self.radicand)
        return None if root is None else self.a + self.b * root

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        root = f"sqrt({self.radicand})"
        tail = root if self.b == 1 else (f"-{root}" if self.b == -1 else f"{self.b}*{root}")
        if not self.a:
            return tail
        sep = " - " if tail.startswith("-") else " + "
        return f"{self.a}{sep}{tail.lstrip('-')}"


def _rational_sqrt(v: mpq) -> Optional[mpq]:
    if v < 0:
        return None
    rn, rd = math.isqrt(v.numerator), math.isqrt(v.denominator)
    if rn * rn == v.numerator and rd * rd == v.denominator:
        return mpq(rn, rd)
    return None


def _sample_ts() -> list:
    return [mpq(k, 4) for k in range(-4, 5)]


def discriminant_report(f: JetMap) -> dict:
    """Singular set and its image for a classified planar jet.

    Curves are exact series in the standard-position coordinates of the jet;
    source x-components are reliable through degree order - 1, images through
    the order.  ``samples`` rows are exact (t, X, Y) points on the image.
    """
    if f.source_dim != 2:
        raise JetError("discriminant_report handles planar jets only")
    cls, sp = classify_detailed(f)
    z = f.order
    if cls.tag is Tag.UNCLASSIFIED:
        raise JetError(f"unclassified jet ({cls.unclassified_reason})")
    if cls.tag is Tag.REGULAR:
        return {"tag": cls.tag, "kind": "empty", "samples": []}
    f2 = sp.unsplit[1]
    if cls.tag is Tag.FOLD:
        fc = fold_curve(f)
        samples = [(t, t, fc.target_graph.evaluate([t])) for t in _sample_ts()]
        return {"tag": cls.tag, "kind": "curve", "parameter": "x",
                "source": (TruncPoly.variable(1, z, 0), fc.source_graph),
                "image": (TruncPoly.variable(1, z, 0), fc.target_graph), "samples": samples}
    if cls.tag in (Tag.CUSP, Tag.SWALLOWTAIL):
        dy = partial_derivative(f2, 1)
        xs = implicit_series_solve(dy, solve_for=0)  # x = s(t) along y = t
        t = TruncPoly.variable(1, z, 0)
        image_y = f2.substitute([xs, t])
        xs = xs.truncate(z - 1).truncate(z)
        samples = [(v, xs.evaluate([v]), image_y.evaluate([v])) for v in _sample_ts()]
        return {"tag": cls.tag, "kind": "curve", "parameter": "t",
                "source": (xs, t), "image": (xs, image_y), "samples": samples}
    if cls.tag is Tag.LIPS:
        zero = mpq(0)
        return {"tag": cls.tag, "kind": "point", "source": (zero, zero), "image": (zero, zero),
                "samples": [(zero, zero, zero)]}
    # beak-to-beak: two lines through 0 in the source, cuspidal image branches
    k = cls.coefficients
    radicand = -k.q_form
    if k.d2:
        dirs = [(Surd(-k.d1 / k.d2, s / k.d2, radicand), Surd(mpq(1), mpq(0), radicand))
                for s in (mpq(1), mpq(-1))]
    else:
        dirs = [(Surd(mpq(1), mpq(0), radicand), Surd(mpq(0), mpq(0), radicand)),
                (Surd(-3 * k.b3 / (2 * k.d1), mpq(0), radicand),
                 Surd(mpq(1), mpq(0), radicand))]
    branches = []
    for u, v in dirs:
        cubic = k.b3 * v * v * v + k.d1 * u * v * v + k.d2 * u * u * v
        branches.append({"direction": (u, v), "image_leading": (u, cubic)})
    samples = []
    for br in branches:
        u, cubic = br["image_leading"]
        ur, cr = u.rational(), cubic.rational()
        if ur is not None and cr is not None:
            samples.extend((t, ur * t, cr * t ** 3) for t in _sample_ts())
    return {"tag": cls.tag, "kind": "node",
            "note": "image branches to leading order (u t, c t^3) after removing f2(x, 0)",
            "branches": branches, "samples": samples}
