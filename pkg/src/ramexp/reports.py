"""JSON and CSV emission for result records.

Rationals are written as ``"n/d"`` strings (always with a denominator, so
``"3/1"`` rather than ``"3"``) and read back by :func:`loads`, which makes
exact-mode reports round-trip bit for bit. Floats go through ``json``'s
shortest repr, which also round-trips.
"""

from __future__ import annotations

import contextlib
import csv
import dataclasses
import io
import json
import re
import sys
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from .coefficients import CoefficientSpec, SpecError, spec_digest, spec_to_dict

_RATIONAL = re.compile(r"^-?\d+/\d+$")

# properties worth recording alongside the stored fields
_DERIVED = ("within_bound", "increments", "is_null")


@contextlib.contextmanager
def big_int_strings():
    """Temporarily lift the interpreter's int-to-str digit limit.

    Exact partial sums at Q = 10^4 carry denominators with thousands of
    digits, past the default guard on Python 3.11+ and 3.10.7+.
    """
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    old = getter()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        with big_int_strings():
            return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, CoefficientSpec):
        try:
            return spec_to_dict(obj)
        except SpecError:
            return obj.describe()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for name in _DERIVED:
            if hasattr(type(obj), name) and isinstance(getattr(type(obj), name), property):
                out[name] = to_jsonable(getattr(obj, name))
        return out
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def record(report: Any, spec: Optional[CoefficientSpec] = None, **extra) -> dict:
    """Wrap a report with its kind, and the spec plus its digest when given."""
    out: dict = {"kind": type(report).__name__}
    with big_int_strings():
        if spec is not None:
            out["spec"] = to_jsonable(spec)
            out["spec_digest"] = spec_digest(spec)
        out.update({k: to_jsonable(v) for k, v in extra.items()})
        out["report"] = to_jsonable(report)
    return out


def dumps(obj: Any, indent: Optional[int] = 2) -> str:
    with big_int_strings():
        return json.dumps(to_jsonable(obj), indent=indent)


def _restore(obj: Any) -> Any:
    if isinstance(obj, str) and _RATIONAL.match(obj):
        return Fraction(obj)
    if isinstance(obj, list):
        return [_restore(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _restore(v) for k, v in obj.items()}
    return obj


def loads(text: str) -> Any:
    """Parse emitted JSON, turning ``"n/d"`` strings back into Fractions."""
    with big_int_strings():
        return _restore(json.loads(text))


def _csv_rows(report: Any) -> tuple[list, list]:
    if hasattr(report, "checkpoints"):
        return ["Q", "value"], [[q, v] for q, v in report.checkpoints]
    if hasattr(report, "partial_products") and hasattr(report, "primes"):
        return ["p", "partial_product"], [
            [int(p), v] for p, v in zip(report.primes, report.partial_products)
        ]
    if hasattr(report, "evidence"):
        return ["description", "Q", "value", "tail_bound", "certified"], [
            [r.description, r.Q, r.value, r.tail_bound, r.certified] for r in report.evidence
        ]
    if hasattr(report, "rows"):
        return ["d", "lhs", "rhs", "difference", "tail_bound", "ratio", "expected_ratio"], [
            [r.d, r.identity.lhs, r.identity.rhs, r.identity.difference,
             r.identity.tail_bound, r.ratio, r.expected_ratio]
            for r in report.rows
        ]
    flat = to_jsonable(report)
    return ["field", "value"], [
        [k, v] for k, v in flat.items() if not isinstance(v, (list, dict))
    ]


def to_csv(report: Any) -> str:
    """Plot-ready table: checkpoints, running products, evidence or scalar fields."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    with big_int_strings():
        header, rows = _csv_rows(report)
        w.writerow(header)
        for row in rows:
            w.writerow([to_jsonable(x) if isinstance(x, Fraction) else x for x in row])
    return buf.getvalue()
