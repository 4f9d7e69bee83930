"""Admissibility, bad events and two-branch censuses for a fixed set of multijets,
followed by bad-event statistics over random multijets.

    python scripts/multigerm_examples.py --random 500 --seed 7
"""
import argparse
import random
from collections import Counter

from plansing.germclass import Tag, normal_form
from plansing.jetalg import jet_compose
from plansing.multigerm import MultiJet, bad_event_analysis, is_admissible, two_branch_census
from plansing.parsing import parse_jet
from plansing.randomjets import random_multijet, toward


def turned(direction, jet):
    return jet_compose(toward(direction, jet.order), jet)


def named_examples() -> dict:
    J = parse_jet
    fold, kiss, high, cusp = J("(x, y^2)"), J("(x, y^2+x^2)"), J("(x, y^2+x^3)"), J("(x, y^3+x*y)")
    swallow = normal_form(Tag.SWALLOWTAIL, 0, 0)
    dirs = [(0, 1), (1, 1), (1, -1), (1, 2)]
    return {
        "cusp and transverse fold": [cusp, turned((0, 1), fold)],
        "cusp and parallel fold": [cusp, fold],
        "kissing folds": [fold, kiss],
        "two cusps": [cusp, turned((0, 1), cusp)],
        "three kissing folds": [fold, kiss, J("(x, y^2-x^2)")],
        "two bad pairs": [fold, high, turned((0, 1), cusp), turned((0, 1), fold)],
        "two kissing pairs": [fold, kiss, turned((0, 1), fold), turned((0, 1), kiss)],
        "swallowtail and four folds": [swallow] + [turned(d, fold) for d in dirs],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--random", type=int, default=500, help="number of random multijets")
    ap.add_argument("--max-branches", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    for name, branches in named_examples().items():
        m = MultiJet(branches)
        rep = is_admissible(m)
        bad = bad_event_analysis(m)
        print(f"{name}: {rep.verdict}; {rep.stratum_label}")
        if bad.minimal_bad_events:
            cases = ", ".join(f"{list(e)} ({bad.case_tags[e]})" for e in bad.minimal_bad_events)
            print(f"    minimal bad events {cases}; size {bad.size}, complexity {bad.complexity}")
        if m.r >= 2:
            for label, count in sorted(Counter(two_branch_census(m)).items()):
                print(f"    {count} x {label}")

    rng = random.Random(args.seed)
    sizes, shapes, admissible = Counter(), Counter(), 0
    for _ in range(args.random):
        m = MultiJet(random_multijet(rng, rng.randint(1, args.max_branches)))
        bad = bad_event_analysis(m)
        admissible += not bad.minimal_bad_events
        sizes[(bad.size, bad.complexity)] += 1
        shapes.update(len(e) for e in bad.minimal_bad_events)
    print(f"\n{args.random} random multijets, {admissible} admissible")
    print("minimal bad events by cardinality:", dict(sorted(shapes.items())))
    print("(size, complexity) counts:", dict(sorted(sizes.items())))


if __name__ == "__main__":
    main()
