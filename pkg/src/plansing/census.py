"""Seeded Monte-Carlo census of classification frequencies on coefficient slices.

Samples are integer-coefficient jets with every coefficient uniform in
``[-M, M]``.  The sample stream is cut into fixed-size chunks; chunk ``i`` draws
from ``SeedSequence([seed, i])``, so the counts do not depend on how chunks are
distributed over workers.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .germclass import Tag, classify
from .jetalg import JetMap, TruncPoly, monomials

CHUNK = 1000
MAX_SAMPLES = 10 ** 7

# coefficient slots of f2, as exponents of (x, y)
SLOTS = {"b2": (0, 2), "b3": (0, 3), "b4": (0, 4), "c": (1, 1), "d1": (1, 2), "d2": (2, 1)}
SLICES = {"N": (), "B2": ("b2",), "B3": ("b3",), "B4": ("b4",), "C": ("c",)}


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class CensusSpec:
    n: int = 0
    coeff_range: int = 9
    constraints: tuple = ()
    samples: int = 10_000
    seed: int = 0
    order: int = 4

    def __post_init__(self):
        if not 0 < self.samples <= MAX_SAMPLES:
            raise ValueError(f"sample count must be in 1..{MAX_SAMPLES}")
        if self.coeff_range < 1:
            raise ValueError("coefficient range must be positive")
        self.zero_slots()  # validates the names

    def zero_slots(self) -> tuple:
        """(in slice N, sorted coefficient names forced to zero)."""
        slots = set()
        in_n = False
        for raw in self.constraints:
            c = raw.replace(" ", "")
            if c in SLICES:
                in_n = True
                slots.update(SLICES[c])
            elif c.endswith("=0") and c[:-2] in SLOTS:
                in_n = True
                slots.add(c[:-2])
            else:
                raise ConstraintError(f"unknown constraint {raw!r}; use N, B2, B3, B4, C "
                                      f"or one of {', '.join(k + '=0' for k in SLOTS)}")
        return in_n, tuple(sorted(slots))


@dataclass
class CensusResult:
    spec: CensusSpec
    tags: Counter = field(default_factory=Counter)
    reasons: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.tags.values())

    def fraction(self, tag: Tag) -> float:
        return self.tags[Tag(tag)] / self.total


def _sampler(spec: CensusSpec):
    """Return a function mapping one integer row to a jet, and the row width."""
    m, z = spec.n + 2, spec.order
    in_n, zeros = spec.zero_slots()
    xi, yi = spec.n, spec.n + 1
    if not in_n:
        mons = monomials(m, z, 1)

        def build(row):
            k = len(mons)
            return JetMap([TruncPoly(m, z, dict(zip(mons, row[:k]))),
                           TruncPoly(m, z, dict(zip(mons, row[k:])))])
        return build, 2 * len(mons)
    skip = set()
    for name in zeros:
        a, b = SLOTS[name]
        e = [0] * m
        e[xi], e[yi] = a, b
        skip.add(tuple(e))
    mons = [e for e in monomials(m, z, 2) if e not in skip]
    x = TruncPoly.variable(m, z, xi)

    def build(row):
        return JetMap([x, TruncPoly(m, z, dict(zip(mons, row)))])
    return build, len(mons)


def _run_chunk(spec: CensusSpec, index: int) -> tuple:
    build, width = _sampler(spec)
    count = min(CHUNK, spec.samples - index * CHUNK)
    rng = np.random.default_rng(np.random.SeedSequence([spec.seed, index]))
    rows = rng.integers(-spec.coeff_range, spec.coeff_range + 1, size=(count, width))
    tags, reasons = Counter(), Counter()
    for row in rows.tolist():
        cls = classify(build(row))
        tags[cls.tag] += 1
        if cls.unclassified_reason is not None:
            reasons[cls.unclassified_reason] += 1
    return tags, reasons


def run_census(spec: CensusSpec, workers: int = 1) -> CensusResult:
    chunks = range((spec.samples + CHUNK - 1) // CHUNK)
    result = CensusResult(spec)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, [spec] * len(chunks), chunks))
    else:
        parts = [_run_chunk(spec, i) for i in chunks]
    for tags, reasons in parts:
        result.tags.update(tags)
        result.reasons.update(reasons)
    return result
