"""Deterministic JSON/CSV emission.

Reports must be byte-identical across runs and machines, and floats must
round-trip exactly, so numbers are written with 17 significant digits and
dict keys are emitted in insertion order (never sorted by the writer).
"""

from __future__ import annotations

import json
import math


def format_float(x: float) -> str:
    """Decimal form with 17 significant digits (exact float64 round-trip)."""
    if math.isnan(x):
        raise ValueError("cannot serialize NaN")
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def dumps(value, indent: int = 0) -> str:
    """Serialize nested dict/list/str/int/float/bool/None to JSON text.

    Non-finite floats are rejected; callers map infinities to the string
    "inf" where a schema allows them.
    """
    out: list[str] = []
    _write(value, out)
    return "".join(out)


def _write(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        s = format_float(value)
        if s in ("inf", "-inf"):
            raise ValueError("non-finite float in JSON payload; encode it as a string first")
        out.append(s)
    elif isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(k)))
            out.append(":")
            _write(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(",")
            _write(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")
