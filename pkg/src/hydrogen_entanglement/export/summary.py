"""Deterministic JSON summaries.

Floats pass through ``%.12e`` before serialization, keys are sorted and no
timestamps are written, so identical runs produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from collections.abc import Mapping, Sequence
from typing import Any

import numpy as np

FORMAT_VERSION = 1


def round_floats(value: Any) -> Any:
    """Recursively round floats to 13 significant digits; NaN/Inf become None."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            return None
        return float("%.12e" % x)
    if isinstance(value, np.ndarray):
        return [round_floats(v) for v in value.tolist()]
    if isinstance(value, Mapping):
        return {str(k): round_floats(v) for k, v in value.items()}
    if isinstance(value, Sequence):
        return [round_floats(v) for v in value]
    raise TypeError(f"Cannot serialize {type(value).__name__} in a summary")


def dump_summary(summary: Mapping[str, Any]) -> str:
    """Render a summary with format_version, sorted keys and a trailing newline."""
    document = {"format_version": FORMAT_VERSION, **summary}
    return json.dumps(round_floats(document), sort_keys=True, indent=2) + "\n"
