"""Report serialization.

Reports are plain nested dicts built with a fixed key order.  Rationals are
written exactly as ``"p/q"`` strings, polynomials in the text syntax accepted
by :mod:`plansing.parsing`.
"""
from __future__ import annotations

import enum
import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__
from .jetalg import JetMap, TruncPoly, format_poly, mpq
from .parsing import format_jet

SCHEMA = "plansing-report/1"


def make_report(command: str, inputs: dict, results: dict) -> dict:
    return {"schema": SCHEMA, "version": __version__, "command": command,
            "inputs": inputs, "results": results}


def jsonable(value: Any, names: Optional[Sequence[str]] = None) -> Any:
    if isinstance(value, enum.Enum):
        return value.value
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, type(mpq(0)))):
        return str(mpq(int(value.numerator), int(value.denominator)))
    if isinstance(value, JetMap):
        return format_jet(value, names)
    if isinstance(value, TruncPoly):
        return format_poly(value, names if names and len(names) == value.nvars else None)
    if isinstance(value, dict):
        return {str(jsonable(k)): jsonable(v, names) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v, names) for v in value]
    if hasattr(value, "__str__") and type(value).__str__ is not object.__str__:
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def to_json(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2, ensure_ascii=False) + "\n"


def to_text(report: dict) -> str:
    lines = []

    def flat(v):
        return isinstance(v, list) and not any(isinstance(e, (dict, list)) for e in v)

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if flat(v) and v:
                    lines.append(f"{pad}{k}: [{', '.join(_scalar_text(e) for e in v)}]")
                elif isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_scalar_text(v)}")
        else:
            for v in obj:
                if flat(v) and v:
                    lines.append(f"{pad}- [{', '.join(_scalar_text(e) for e in v)}]")
                elif isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_scalar_text(v)}")

    walk(jsonable(report), 0)
    return "\n".join(lines) + "\n"


def _scalar_text(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return "none"
    return str(v)
