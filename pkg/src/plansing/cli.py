"""Command-line interface.

Subcommands: classify, multigerm, tangent, census, normal-form.  Exit codes:
0 on success (an inadmissible or unclassified verdict is a success), 1 on
usage and parse errors, 2 when an internal invariant fails.
"""
from __future__ import annotations

import argparse
import csv
import sys
from collections import Counter
from typing import Optional, Sequence

from . import germclass as gc
from . import multigerm as mg
from . import tangent as tg
from .census import CensusSpec, ConstraintError, run_census
from .germclass import DegreeError, Reason, Tag
from .jetalg import JetError, JetMap, mpq
from .parsing import ParseError, format_jet, infer_n, parse_jet, parse_polys, variables_used
from .report import jsonable, make_report, to_json, to_text


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ----------------------------------------------------------------------
# commands


def _class_dict(cls: gc.GermClass) -> dict:
    return {"tag": cls.tag, "abs_signature": cls.abs_signature,
            "unclassified_reason": cls.unclassified_reason}


def _coefficients_dict(k: Optional[gc.PlanarCoefficients]) -> Optional[dict]:
    if k is None:
        return None
    return {"a": k.a, "b2": k.b2, "b3": k.b3, "b4": k.b4, "c": k.c, "d1": k.d1, "d2": k.d2,
            "q": k.q_form}


def _discriminant(f: JetMap, cls: gc.GermClass) -> Optional[dict]:
    if f.source_dim != 2 or cls.tag is Tag.UNCLASSIFIED:
        return None
    rep = gc.discriminant_report(f)
    out = {"kind": rep["kind"]}
    for key in ("parameter", "source", "image", "note"):
        if key in rep:
            out[key] = rep[key]
    if "branches" in rep:
        out["branches"] = [{"direction": b["direction"], "image_leading": b["image_leading"]}
                           for b in rep["branches"]]
    out["samples"] = [list(row) for row in rep["samples"]]
    return out


def cmd_classify(text: str, n: Optional[int] = None, order: int = 4,
                 csv_path: Optional[str] = None) -> dict:
    f = parse_jet(text, n, order)
    n = f.source_dim - 2
    cls, sp = gc.classify_detailed(f)
    tagged = cls.tag is not Tag.UNCLASSIFIED
    try:
        degree, degree_note = gc.local_degree(f), None
    except DegreeError as exc:
        degree, degree_note = None, str(exc)
    if degree is None and degree_note is None:
        degree_note = "not defined for this jet"
    disc = _discriminant(f, cls)
    if csv_path and disc is not None:
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "x", "y"])
            for row in disc["samples"]:
                w.writerow(jsonable(row))
    nf = None
    if cls.is_singular:
        nf = gc.normal_form(cls.tag, n, cls.abs_signature, order=max(order, 4))
    results = {
        "class": _class_dict(cls),
        "direction": list(sp.direction) if sp else None,
        "hessian_nullity": sp.hessian_nullity if sp else None,
        "coefficients": _coefficients_dict(cls.coefficients),
        "quad_form": sp.quad_form if sp and sp.quad_form else None,
        "stratum_codim": gc.stratum_codim(cls.tag, n) if tagged else None,
        "orbit_count": gc.count_orbits(n, cls.tag) if tagged else None,
        "normal_form": nf,
        "local_degree": degree,
        "local_degree_note": degree_note,
        "discriminant": disc,
    }
    inputs = {"jet": text, "parsed": f, "n": n, "order": order}
    return make_report("classify", inputs, results)


def cmd_multigerm(texts: Sequence[str], n: Optional[int] = None, order: int = 4) -> dict:
    if not texts:
        raise UsageError("multigerm needs at least one branch")
    if len(texts) > mg.MAX_BRANCHES:
        raise UsageError(f"at most {mg.MAX_BRANCHES} branches")
    if n is None:
        n = infer_n(texts)
    m = mg.MultiJet([parse_jet(t, n, order) for t in texts])
    adm = mg.is_admissible(m)
    bad = mg.bad_event_analysis(m)
    branches = [{"index": i, "tag": s.tag, "abs_signature": s.germ_class.abs_signature,
                 "unclassified_reason": s.germ_class.unclassified_reason,
                 "direction": list(s.direction) if s.direction else None}
                for i, s in enumerate(adm.branch_summaries, 1)]
    results = {
        "verdict": adm.verdict,
        "stratum_label": adm.stratum_label,
        "violated_clause": adm.violated_clause,
        "branches": branches,
        "tangency_pairs": [{"branches": [i, j], "order": "unknown" if o is None else o}
                           for i, j, o in adm.tangency_pairs],
        "bad_events": {
            "minimal": [{"event": list(e), "case": bad.case_tags[e]} for e in bad.minimal_bad_events],
            "all": [list(e) for e in bad.bad_events],
            "size": bad.size,
            "complexity": bad.complexity,
        },
        "two_branch_census": None,
        "codim_bounds": None,
    }
    if m.r >= 2:
        census = Counter(mg.two_branch_census(m))
        results["two_branch_census"] = [{"label": k, "count": census[k]} for k in sorted(census)]
    if bad.size:
        b = mg.codim_bounds(bad.size, bad.complexity, n)
        results["codim_bounds"] = {
            "s": b.s, "k": b.k, "n": b.n, "chain_bound": b.chain_bound,
            "minimal_case_bounds": {str(c): v for c, v in b.minimal_case_bounds.items()},
            "c_of_sk": b.c_of_sk, "capital_C": b.capital_c,
            "condition_b": b.condition_b, "condition_c_step": b.condition_c_step,
        }
    inputs = {"branches": list(texts), "n": n, "order": order}
    return make_report("multigerm", inputs, results)


_CANON = {"x": (1, 0), "y": (2, 0)}


def _canonical_vars(names: Sequence[str]) -> list:
    def key(name):
        if name.startswith("z") and name[1:].isdigit():
            return (0, int(name[1:]), "")
        return _CANON.get(name, (3, 0)) + (name,)
    return sorted(names, key=key)


def cmd_tangent(text: str, degrees: Sequence[int] = (4,), variables: Optional[Sequence[str]] = None,
                unfolding: Optional[str] = None, params: Optional[Sequence[str]] = None) -> dict:
    degrees = list(degrees)
    if any(not 0 <= d <= tg.MAX_DEGREE for d in degrees):
        raise UsageError(f"degrees must lie in 0..{tg.MAX_DEGREE}")
    order = max(max(degrees), 4)
    names = list(variables) if variables else _canonical_vars(variables_used(text))
    if not names:
        raise UsageError("cannot infer the source variables; pass --vars")
    comps = parse_polys(text, names, order)
    f = JetMap(comps, source_dim=len(names), order=order)
    rep = tg.tangent_codim(f, degrees[0], degrees)
    results = {
        "degree": rep.degree, "ambient_dim": rep.ambient_dim,
        "generators_J": rep.generators_j, "generators_tau": rep.generators_tau,
        "rank": rep.rank, "codim": rep.codim,
        "stabilization": [{"degree": d, "codim": c} for d, c in rep.stabilization],
        "unfolding": None,
    }
    inputs = {"germ": text, "vars": names, "degrees": degrees, "unfolding": unfolding}
    if unfolding is not None:
        if params is None:
            params = [v for v in variables_used(unfolding) if v not in names]
        params = list(params)
        total = JetMap(parse_polys(unfolding, params + names, order),
                       source_dim=len(params) + len(names), order=order)
        spec = tg.UnfoldingSpec(f, len(params), total)
        res = tg.is_universal_unfolding(spec, degrees[0])
        results["unfolding"] = {"params": params, "universal": res.universal,
                                "deficiency": res.deficiency}
    return make_report("tangent", inputs, results)


def cmd_census(spec: CensusSpec, workers: int = 1) -> dict:
    res = run_census(spec, workers)
    total = res.total
    results = {
        "total": total,
        "tags": {t.value: res.tags[t] for t in Tag},
        "fractions": {t.value: mpq(res.tags[t], total) for t in Tag},
        "unclassified_reasons": {r.value: res.reasons[r] for r in Reason},
    }
    inputs = {"n": spec.n, "range": spec.coeff_range, "constraints": list(spec.constraints),
              "samples": spec.samples, "seed": spec.seed, "order": spec.order}
    return make_report("census", inputs, results)


def cmd_normal_form(tag: str, n: int = 0, signature: Optional[int] = None, order: int = 4) -> dict:
    try:
        tag = Tag(tag)
    except ValueError:
        raise UsageError(f"unknown type {tag!r}") from None
    if tag not in gc.SINGULAR_TAGS:
        raise UsageError("normal forms exist for fold, cusp, swallowtail, lips, beak-to-beak")
    sigs = gc.valid_signatures(tag, n) if signature is None else [signature]
    forms = [{"abs_signature": s, "jet": format_jet(gc.normal_form(tag, n, s, order))} for s in sigs]
    results = {"type": tag, "orbit_count": gc.count_orbits(n, tag),
               "stratum_codim": gc.stratum_codim(tag, n), "forms": forms}
    return make_report("normal-form", {"type": tag, "n": n, "signature": signature, "order": order},
                       results)


# ----------------------------------------------------------------------
# argument handling


def _degrees(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty degree list")
    return out


def _names(text: str) -> list:
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="plansing", description="Classify jets of maps (R^{n+2},0) -> (R^2,0).")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--output", help="write the report to this path instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, order=True):
        sp.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
        sp.add_argument("--output", default=argparse.SUPPRESS)
        if order:
            sp.add_argument("--order", type=int, default=4, help="jet order z (4..8)")

    c = sub.add_parser("classify", help="classify one jet")
    c.add_argument("jet", help='e.g. "(x, y^3 + x*y)"')
    c.add_argument("--n", type=int, help="number of z variables (inferred by default)")
    c.add_argument("--csv", help="write discriminant samples (t, x, y) to this CSV file")
    common(c)

    m = sub.add_parser("multigerm", help="admissibility and bad events of a multijet")
    m.add_argument("branches", nargs="+")
    m.add_argument("--n", type=int)
    common(m)

    t = sub.add_parser("tangent", help="tangent space codimension and unfolding universality")
    t.add_argument("germ")
    t.add_argument("--degrees", type=_degrees, default=[4], help='e.g. "4-6" or "4,5"')
    t.add_argument("--vars", type=_names, help="source variables, comma separated")
    t.add_argument("--unfolding", help='e.g. "(u, y^3 + u*y)"')
    t.add_argument("--params", type=_names, help="unfolding parameters, comma separated")
    common(t, order=False)

    s = sub.add_parser("census", help="Monte-Carlo frequencies of the classes")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--range", type=int, default=9, dest="coeff_range",
                   help="coefficients are uniform in [-M, M]")
    s.add_argument("--constraint", action="append", default=[],
                   help="N, B2, B3, B4, C or b2=0, b3=0, b4=0, c=0, d1=0, d2=0 (repeatable)")
    s.add_argument("--workers", type=int, default=1)
    common(s)

    nf = sub.add_parser("normal-form", help="print normal forms of a type")
    nf.add_argument("type", help="fold, cusp, swallowtail, lips or beak-to-beak")
    nf.add_argument("--n", type=int, default=0)
    nf.add_argument("--signature", type=int, help="|signature| (all legal values by default)")
    common(nf)
    return p


def run(args: argparse.Namespace) -> dict:
    order = getattr(args, "order", 4)
    if not 1 <= order <= 8:
        raise UsageError("--order must lie in 1..8")
    if args.command == "classify":
        return cmd_classify(args.jet, args.n, order, args.csv)
    if args.command == "multigerm":
        return cmd_multigerm(args.branches, args.n, order)
    if args.command == "tangent":
        return cmd_tangent(args.germ, args.degrees, args.vars, args.unfolding, args.params)
    if args.command == "census":
        spec = CensusSpec(n=args.n, coeff_range=args.coeff_range, constraints=tuple(args.constraint),
                          samples=args.samples, seed=args.seed, order=order)
        return cmd_census(spec, args.workers)
    return cmd_normal_form(args.type, args.n, args.signature, order)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        report = run(args)
    except ParseError as exc:
        print(f"parse error: {exc}\n{exc.pointer()}", file=sys.stderr)
        return 1
    except (UsageError, ConstraintError, JetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # an invariant broke somewhere below
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = to_text(report) if args.format == "text" else to_json(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
