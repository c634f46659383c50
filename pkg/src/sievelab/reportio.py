"""Deterministic report formatting: 12-significant-digit CSV and stable JSON.

Reruns with identical inputs must produce byte-identical files, so floats are
canonicalized through %.12g everywhere and JSON keys are always sorted.
"""

from __future__ import annotations

import json
import math

import numpy as np


def fmt12(x) -> str:
    return "%.12g" % float(x)


def round12(x: float) -> float:
    return float(fmt12(x))


def _canonical(obj):
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        # json.dumps would emit bare Infinity/NaN tokens, which is not JSON
        return round12(f) if math.isfinite(f) else str(f)
    return obj


def stable_json(obj) -> str:
    """Sorted-key JSON with floats rounded to 12 significant digits."""
    return json.dumps(_canonical(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def csv_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt12(v)
    return str(v)


def csv_lines(header: list, rows) -> str:
    out = [",".join(str(h) for h in header)]
    for row in rows:
        out.append(",".join(csv_cell(v) for v in row))
    return "\n".join(out) + "\n"
