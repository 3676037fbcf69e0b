"""Frame files and report serialization.

Frame JSON::

    {"q":2,"n":3,"winning":[[0,0,0],[1,1,1]],"labels":["7","B"]}

Winning outcomes are digit vectors (first coordinate first).  When ``labels``
is present a vector may use label strings instead of digits.  Files are
written compactly with winners sorted by outcome index, so reading and
re-writing a canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .bounds import round_half_away
from .space import LotteryFrame, decode, encode

SCHEMA = "nml/1"


def _symbol(value: Any, q: int, lookup: dict[str, int] | None) -> int:
    if isinstance(value, bool):
        raise ValueError(f"invalid symbol {value!r}")
    if isinstance(value, int):
        if not 0 <= value < q:
            raise ValueError(f"digit out of range: {value} not in [0, {q})")
        return value
    if isinstance(value, str) and lookup is not None:
        if value not in lookup:
            raise ValueError(f"unknown label {value!r}; labels are {sorted(lookup)}")
        return lookup[value]
    raise ValueError(f"invalid symbol {value!r}")


def parse_frame(data: Any) -> tuple[LotteryFrame, list[str] | None, list[str]]:
    """Validate a decoded frame object; returns (frame, labels, warnings)."""
    if not isinstance(data, dict):
        raise ValueError("frame must be a JSON object")
    for key in ("q", "n", "winning"):
        if key not in data:
            raise ValueError(f"frame is missing {key!r}")
    q, n = data["q"], data["n"]
    if not isinstance(q, int) or isinstance(q, bool) or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    labels = data.get("labels")
    lookup = None
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != q or not all(isinstance(s, str) for s in labels):
            raise ValueError(f"labels must be a list of {q} strings")
        if len(set(labels)) != q:
            raise ValueError("labels must be distinct")
        lookup = {s: i for i, s in enumerate(labels)}
    winning = data["winning"]
    if not isinstance(winning, list):
        raise ValueError("winning must be a list of outcomes")
    if not winning:
        raise ValueError("winning set must be nonempty")
    indices = []
    for vec in winning:
        if not isinstance(vec, list):
            raise ValueError(f"outcome {vec!r} is not a list")
        if len(vec) != n:
            raise ValueError(f"n mismatch: outcome {vec} has length {len(vec)}, expected {n}")
        indices.append(encode([_symbol(v, q, lookup) for v in vec], q))
    warnings = []
    dupes = len(indices) - len(set(indices))
    if dupes:
        warnings.append(f"removed {dupes} duplicate winning outcome(s)")
    return LotteryFrame.from_indices(q, n, indices), labels, warnings


def read_frame(path: str | Path) -> tuple[LotteryFrame, list[str] | None, list[str]]:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed frame JSON in {path}: {exc}") from None
    return parse_frame(data)


def frame_to_dict(frame: LotteryFrame, labels: list[str] | None = None) -> dict:
    out: dict[str, Any] = {
        "q": frame.q,
        "n": frame.n,
        "winning": [list(decode(i, frame.q, frame.n)) for i in frame.winning],
    }
    if labels is not None:
        out["labels"] = list(labels)
    return out


def dump_frame(frame: LotteryFrame, labels: list[str] | None = None) -> str:
    return json.dumps(frame_to_dict(frame, labels), separators=(",", ":")) + "\n"


def rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal(x: Fraction | int, places: int = 4) -> str:
    return round_half_away(Fraction(x), places)


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
