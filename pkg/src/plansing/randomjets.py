"""Random jets, diffeomorphism jets and multijets for experiments and tests.

All generators take a :class:`random.Random` so runs are reproducible.
"""
from __future__ import annotations

import random
from typing import Optional, Sequence

from . import linalg
from .germclass import SINGULAR_TAGS, Tag, normal_form, valid_signatures
from .jetalg import DiffeoJet, JetMap, TruncPoly, jet_compose, linear_jet, monomials

DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, -1))


def random_poly(rng: random.Random, nvars: int, order: int, min_degree: int = 1,
                scale: int = 3, density: float = 0.5) -> TruncPoly:
    terms = {}
    for e in monomials(nvars, order, min_degree):
        if rng.random() < density:
            terms[e] = rng.randint(-scale, scale)
    return TruncPoly(nvars, order, terms)


def random_matrix(rng: random.Random, dim: int, scale: int = 3) -> list:
    while True:
        a = [[rng.randint(-scale, scale) for _ in range(dim)] for _ in range(dim)]
        if linalg.determinant(a):
            return a


def random_diffeo(rng: random.Random, dim: int, order: int = 4, scale: int = 3,
                  density: float = 0.5) -> DiffeoJet:
    """Integer-coefficient diffeomorphism jet: invertible linear part plus higher terms."""
    a = random_matrix(rng, dim, scale)
    comps = [TruncPoly.linear(a[i], order) + random_poly(rng, dim, order, 2, scale, density)
             for i in range(dim)]
    return DiffeoJet(comps)


def random_normal_form(rng: random.Random, n_max: int = 3, order: int = 4,
                       tags: Sequence[Tag] = SINGULAR_TAGS) -> tuple:
    """(tag, n, |signature|, jet) for a random normal form."""
    n = rng.randint(0, n_max)
    tag = rng.choice(list(tags))
    sig = rng.choice(valid_signatures(tag, n))
    return tag, n, sig, normal_form(tag, n, sig, order)


def toward(direction: tuple, order: int) -> JetMap:
    """Target linear map sending the first axis onto ``direction``."""
    a, b = direction
    return linear_jet([[a, -b], [b, a]], order)


def random_branch(rng: random.Random, n: int = 0, order: int = 4,
                  weights: Optional[dict] = None,
                  directions: Sequence[tuple] = DIRECTIONS) -> JetMap:
    """A branch drawn from a small pool of classes, directions and fold curves.

    Folds get the image curve ``Y = a x^2 + b x^3`` (a, b in {-1, 0, 1}) before
    being turned to their direction, so coincident directions, ordinary and
    higher tangencies all occur with positive probability.
    """
    weights = weights or {Tag.REGULAR: 2, Tag.FOLD: 10, Tag.CUSP: 2, Tag.SWALLOWTAIL: 1,
                          Tag.LIPS: 1, Tag.BEAK_TO_BEAK: 1, Tag.UNCLASSIFIED: 1}
    tags = list(weights)
    tag = rng.choices(tags, weights=[weights[t] for t in tags])[0]
    m = n + 2
    var = [TruncPoly.variable(m, order, i) for i in range(m)]
    x, y = var[n], var[n + 1]
    if tag is Tag.REGULAR:
        return JetMap([x, y])
    if tag is Tag.UNCLASSIFIED:
        base = JetMap([x, y ** 3])
    else:
        sig = rng.choice(valid_signatures(tag, n))
        base = normal_form(tag, n, sig, order)
        if tag is Tag.FOLD:
            a, b = rng.choice((-1, 0, 1)), rng.choice((-1, 0, 1))
            base = JetMap([base[0], base[1] + a * x ** 2 + b * x ** 3])
    return jet_compose(toward(rng.choice(list(directions)), order), base)


def random_multijet(rng: random.Random, r: int, n: int = 0, order: int = 4, **kwargs) -> list:
    return [random_branch(rng, n, order, **kwargs) for _ in range(r)]
