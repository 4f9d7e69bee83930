"""Tangent-space codimensions of the planar normal forms and their suspensions.

    python scripts/tangent_table.py --degrees 4,5,6 --max-n 2
"""
import argparse
import itertools

from plansing.germclass import SINGULAR_TAGS, normal_form
from plansing.jetalg import JetMap
from plansing.parsing import parse_jet
from plansing.tangent import inflate, tangent_codim

EXTRA = {"perturbed swallowtail": "(x, y^4+x*y^2+x*y)"}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--degrees", default="4,5,6")
    ap.add_argument("--max-n", type=int, default=2)
    args = ap.parse_args()
    degrees = [int(d) for d in args.degrees.split(",")]
    top = max(degrees)

    germs = {tag.value: normal_form(tag, 0, 0 if tag.value != "fold" else 1, top) for tag in SINGULAR_TAGS}
    germs.update({k: parse_jet(v, order=top) for k, v in EXTRA.items()})
    print(f"{'germ':<24}" + "".join(f"  d={d}" for d in degrees))
    for name, f in germs.items():
        row = [tangent_codim(f.truncate(d), d).codim for d in degrees]
        print(f"{name:<24}" + "".join(f"{c:>5}" for c in row))
        for n in range(1, args.max_n + 1):
            for signs in itertools.product((1, -1), repeat=n):
                g: JetMap = inflate(f, signs)
                row = [tangent_codim(g.truncate(d), d).codim for d in degrees]
                q = " ".join("+" if s > 0 else "-" for s in signs)
                print(f"{'  plus q = ' + q:<24}" + "".join(f"{c:>5}" for c in row))


if __name__ == "__main__":
    main()
