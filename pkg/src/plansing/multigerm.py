"""Multijets: admissibility, stratum labels, bad events and codimension bounds.

A multijet is an ordered tuple of branch jets sharing one target point.  The
admissibility test reads the four clauses literally:

1. every branch is regular, fold, cusp, swallowtail, lips or beak-to-beak;
2. at most one branch is singular and not a fold;
3. either the singular branches have pairwise distinct directions,
4. or all singular branches are folds, exactly one pair shares a direction,
   and that pair is tangent to first order.

Branches are indexed from 1 in everything user-facing.
"""
from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .germclass import FoldCurveData, GermClass, Tag, classify_detailed
from .jetalg import JetError, JetMap, order_of_vanishing

MAX_BRANCHES = 16

_WORDS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
          "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen"]
_PLURAL = {Tag.FOLD: "folds", Tag.CUSP: "cusps", Tag.SWALLOWTAIL: "swallowtails", Tag.LIPS: "lips",
           Tag.BEAK_TO_BEAK: "beak-to-beaks", Tag.UNCLASSIFIED: "unclassified"}
_NON_FOLD_ORDER = (Tag.CUSP, Tag.SWALLOWTAIL, Tag.LIPS, Tag.BEAK_TO_BEAK, Tag.UNCLASSIFIED)


def _word(k: int) -> str:
    return _WORDS[k] if k < len(_WORDS) else str(k)


def _count_phrase(k: int, tag: Tag) -> str:
    return f"{_word(k)} {tag.value if k == 1 else _PLURAL[tag]}"


class Clause(str, enum.Enum):
    TYPES = "every branch is regular, fold, cusp, swallowtail, lips or beak-to-beak"
    ONE_NON_FOLD = "at most one singular branch is not a fold"
    DIRECTIONS = "distinct directions, or a single pair of folds in ordinary tangency"

    def __str__(self) -> str:
        return self.value


class Case(str, enum.Enum):
    """Shapes of minimal bad events.  UNLISTED covers anything else."""

    I = "i"
    II = "ii"
    III = "iii"
    IV = "iv"
    V = "v"
    VI = "vi"
    UNLISTED = "unlisted"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BranchSummary:
    germ_class: GermClass
    direction: Optional[tuple] = None
    fold_curve: Optional[FoldCurveData] = None
    order: int = 4

    @property
    def tag(self) -> Tag:
        return self.germ_class.tag

    @property
    def is_singular(self) -> bool:
        # unclassified branches with a rank-1 or rank-0 linear part are singular too
        return self.tag is not Tag.REGULAR


@dataclass
class MultiJet:
    branches: tuple

    def __init__(self, branches: Sequence[JetMap]):
        branches = tuple(branches)
        if not branches:
            raise JetError("a multijet needs at least one branch")
        first = branches[0]
        for b in branches:
            if (b.source_dim, b.target_dim, b.order) != (first.source_dim, 2, first.order):
                raise JetError("branches must share source dimension, target R^2 and order")
            if any(c.constant_term() for c in b):
                raise JetError("every branch must fix the origin")
        self.branches = branches

    @property
    def r(self) -> int:
        return len(self.branches)

    @property
    def n(self) -> int:
        return self.branches[0].source_dim - 2

    @property
    def order(self) -> int:
        return self.branches[0].order


@dataclass
class AdmissibilityReport:
    admissible: bool
    stratum_label: str
    branch_summaries: list
    violated_clause: Optional[Clause] = None
    tangency_pairs: list = field(default_factory=list)  # (i, j, order or None), 1-based

    @property
    def verdict(self) -> str:
        return "admissible" if self.admissible else "inadmissible"


@dataclass
class BadEventAnalysis:
    minimal_bad_events: list   # sorted tuples of 1-based indices
    bad_events: list
    size: int
    complexity: int
    case_tags: dict            # minimal event -> Case


@dataclass(frozen=True)
class CodimBound:
    s: int
    k: int
    n: int

    @property
    def chain_bound(self) -> int:
        return self.s * self.n + 2 * self.k + 4

    @property
    def minimal_case_bounds(self) -> dict:
        n = self.n
        return {Case.I: n + 4, Case.II: 2 * n + 4, Case.III: 2 * n + 4, Case.IV: 2 * n + 4,
                Case.V: 3 * n + 5, Case.VI: 3 * n + 5}

    @property
    def c_of_sk(self) -> int:
        return self.chain_bound + 2 * (self.s - 1)

    @property
    def capital_c(self) -> int:
        return self.chain_bound - self.s * self.n - 2

    @property
    def in_range(self) -> bool:
        """Whether (s, k) can occur when minimal bad events have at most three branches."""
        return 3 * (self.k + 1) >= self.s

    @property
    def condition_b(self) -> bool:
        return self.chain_bound >= self.s * self.n + 4

    @property
    def condition_c_step(self) -> bool:
        """chain_bound - s*n - k >= k + 4 > s/3."""
        excess = self.chain_bound - self.s * self.n - self.k
        return excess >= self.k + 4 and Fraction(self.k + 4) > Fraction(self.s, 3)


def codim_bounds(s: int, k: int, n: int) -> CodimBound:
    if s < 1 or k < 0 or n < 0:
        raise ValueError("need s >= 1, k >= 0, n >= 0")
    return CodimBound(s, k, n)


# ----------------------------------------------------------------------
# branches


def summarize_branch(f: JetMap) -> BranchSummary:
    cls, sp = classify_detailed(f)
    direction = sp.direction if sp is not None else None
    curve = None
    if cls.tag is Tag.FOLD:
        curve = FoldCurveData(source_graph=None, target_graph=sp.fold_graph, direction=sp.direction)
    return BranchSummary(cls, direction, curve, f.order)


def branch_summaries(m: MultiJet) -> list:
    return [summarize_branch(b) for b in m.branches]


def tangency_order(a: BranchSummary, b: BranchSummary) -> Optional[int]:
    """Contact order of two fold image curves with a common direction.

    Returns ``ord(gamma_a - gamma_b) - 1``, or None (unknown) when the
    difference vanishes up to the truncation order.
    """
    if a.tag is not Tag.FOLD or b.tag is not Tag.FOLD:
        raise ValueError("tangency order is defined for two folds")
    if a.direction != b.direction:
        raise ValueError("fold branches point in different directions")
    diff = a.fold_curve.target_graph - b.fold_curve.target_graph
    k = order_of_vanishing(diff)
    if k is None or k >= min(a.order, b.order):
        return None
    return k - 1


# ----------------------------------------------------------------------
# admissibility


def _decide(summaries: Sequence[BranchSummary]) -> tuple:
    """(violated clause or None, tangency pairs) for the given branches."""
    singular = [(i, s) for i, s in enumerate(summaries, 1) if s.is_singular]
    tangencies = []
    for (i, a), (j, b) in itertools.combinations(singular, 2):
        if a.tag is Tag.FOLD and b.tag is Tag.FOLD and a.direction == b.direction:
            tangencies.append((i, j, tangency_order(a, b)))
    if any(s.tag is Tag.UNCLASSIFIED for s in summaries):
        return Clause.TYPES, tangencies
    if sum(1 for _, s in singular if s.tag is not Tag.FOLD) > 1:
        return Clause.ONE_NON_FOLD, tangencies
    directions = [s.direction for _, s in singular]
    if len(set(directions)) == len(directions):
        return None, tangencies
    all_folds = all(s.tag is Tag.FOLD for _, s in singular)
    shared_pairs = sum(1 for a, b in itertools.combinations(directions, 2) if a == b)
    if all_folds and shared_pairs == 1 and tangencies[0][2] == 1:
        return None, tangencies
    return Clause.DIRECTIONS, tangencies


def stratum_label(summaries: Sequence[BranchSummary], tangencies: Sequence = ()) -> str:
    """Name of the stratum from class counts, directions and tangencies."""
    singular = [s for s in summaries if s.is_singular]
    regular = len(summaries) - len(singular)
    if not singular:
        return "one regular branch" if regular == 1 else f"{_word(regular)} regular"
    counts = Counter(s.tag for s in singular)
    parts = [_count_phrase(counts[t], t) for t in _NON_FOLD_ORDER if counts[t]]
    folds = counts[Tag.FOLD]
    kissing = [t for t in tangencies if t[2] == 1]
    directions = [s.direction for s in singular]
    n_dirs = len(set(directions))
    shared = len(directions) - n_dirs
    if folds:
        if folds == len(singular) and shared == 1 and len(kissing) == 1:
            rest = folds - 2
            phrase = "two kissing folds"
            if rest:
                phrase += f" and {_word(rest)} other {'fold' if rest == 1 else 'folds'}"
            parts.append(phrase)
        else:
            parts.append(_count_phrase(folds, Tag.FOLD))
    label = " and ".join(parts)
    if len(singular) >= 2 and None not in directions:
        if shared == 0:
            label += ", distinct directions"
        elif not (len(singular) == 2 and kissing):
            label += f", {_word(n_dirs)} {'direction' if n_dirs == 1 else 'distinct directions'}"
        higher = sorted("unknown" if t[2] is None else str(t[2]) for t in tangencies if t[2] != 1)
        if higher:
            label += f", fold tangency orders {' '.join(higher)}"
    if regular:
        label += f", plus {_word(regular)} regular"
    return label


def admissibility_of(summaries: Sequence[BranchSummary]) -> AdmissibilityReport:
    """Admissibility of the multijet whose branches have these summaries."""
    clause, tangencies = _decide(summaries)
    return AdmissibilityReport(admissible=clause is None,
                               stratum_label=stratum_label(summaries, tangencies),
                               branch_summaries=list(summaries),
                               violated_clause=clause,
                               tangency_pairs=tangencies)


def is_admissible(m: MultiJet) -> AdmissibilityReport:
    return admissibility_of(branch_summaries(m))


def two_branch_census(m: MultiJet) -> list:
    """Sorted stratum labels of all two-branch restrictions."""
    if m.r < 2:
        raise ValueError("the census needs at least two branches")
    summaries = branch_summaries(m)
    labels = [admissibility_of([summaries[i], summaries[j]]).stratum_label
              for i, j in itertools.combinations(range(m.r), 2)]
    return sorted(labels)


# ----------------------------------------------------------------------
# bad events


def _case_of(event: Sequence[int], summaries: Sequence[BranchSummary]) -> Case:
    tags = [summaries[i - 1].tag for i in event]
    folds = tags.count(Tag.FOLD)
    if len(event) == 1:
        return Case.I
    if len(event) == 2:
        if folds == 0:
            return Case.II
        if folds == 1:
            return Case.III
        return Case.IV
    if len(event) == 3:
        return Case.V if folds == 2 else Case.VI if folds == 3 else Case.UNLISTED
    return Case.UNLISTED


def _bits(mask: int) -> tuple:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def longest_chain(events: Sequence[int]) -> int:
    """Number of proper inclusions in the longest chain among bitmask sets."""
    ordered = sorted(set(events), key=lambda e: bin(e).count("1"))
    depth = {}
    for e in ordered:
        depth[e] = max((depth[d] + 1 for d in depth if d != e and d & e == d), default=0)
    return max(depth.values(), default=0)


def bad_event_analysis(m: MultiJet) -> BadEventAnalysis:
    r = m.r
    if r > MAX_BRANCHES:
        raise ValueError(f"bad-event enumeration is limited to {MAX_BRANCHES} branches")
    summaries = branch_summaries(m)
    bad = {}
    for mask in sorted(range(1, 1 << r), key=lambda v: bin(v).count("1")):
        sub = [summaries[i] for i in range(r) if mask >> i & 1]
        bad[mask] = _decide(sub)[0] is not None
    # below[mask]: some proper nonempty subset of mask is inadmissible
    below = {}
    minimal = []
    for mask in sorted(bad, key=lambda v: bin(v).count("1")):
        subs = [mask & ~(1 << i) for i in range(r) if mask >> i & 1]
        below[mask] = any(bad[s] or below[s] for s in subs if s)
        if bad[mask] and not below[mask]:
            minimal.append(mask)
    closure = set(minimal)
    frontier = set(minimal)
    while frontier:
        new = {a | b for a in frontier for b in minimal} - closure
        closure |= new
        frontier = new
    size = max((bin(e).count("1") for e in closure), default=0)
    events = sorted((_bits(e) for e in closure), key=lambda t: (len(t), t))
    min_events = sorted((_bits(e) for e in minimal), key=lambda t: (len(t), t))
    return BadEventAnalysis(minimal_bad_events=min_events,
                            bad_events=events,
                            size=size,
                            complexity=longest_chain(list(closure)),
                            case_tags={e: _case_of(e, summaries) for e in min_events})
