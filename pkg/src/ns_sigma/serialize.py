"""JSON and text encodings.  Rationals are always written as "num/den"."""

from __future__ import annotations

import json
import re

from .algebra import GradedSeries, LambdaRing, rational
from .curve import SYM, NSCurve


def curve_from_spec(spec: dict) -> NSCurve:
    coeffs = {}
    for key, val in spec.get("lambda", {}).items():
        i, j = (int(x) for x in key.split(","))
        coeffs[(i, j)] = val
    return NSCurve(int(spec["n"]), int(spec["s"]), coeffs)


_LAMBDA_ARG = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*=\s*(\S+)\s*$")


def parse_lambda_arg(text: str):
    """'i,j=VAL' with VAL a rational ('3', '-1/2') or 'sym'."""
    m = _LAMBDA_ARG.match(text)
    if not m:
        raise ValueError(f"cannot parse coefficient {text!r}; expected i,j=VALUE")
    i, j, val = int(m.group(1)), int(m.group(2)), m.group(3)
    if val.lower() == SYM:
        return (i, j), SYM
    return (i, j), rational(val)


def series_to_json(series: GradedSeries, ring: LambdaRing) -> list[dict]:
    return [{"exponents": list(m), "coefficient": ring.to_json(c)}
            for m, c in series.sorted_terms()]


def series_from_json(data: list[dict], family, cutoff: int, ring: LambdaRing) -> GradedSeries:
    return GradedSeries(family, cutoff,
                        {tuple(t["exponents"]): ring.from_json(t["coefficient"]) for t in data})


def series_to_text(series: GradedSeries, ring: LambdaRing) -> str:
    lines = []
    for m, c in series.sorted_terms():
        lines.append(f"[{series.family.format_monomial(m)}]  {ring.format(c)}")
    return "\n".join(lines)


def gauge_from_json(data: dict, curve: NSCurve) -> dict:
    """Read {"gap_block": {"a,b": polynomial-json}} (the header written with sigma)."""
    block = data.get("gap_block", data)
    out = {}
    for key, val in block.items():
        a, b = (int(x) for x in key.split(","))
        out[(a, b)] = curve.ring.from_json(val) if isinstance(val, dict) else curve.ring.coerce(rational(val))
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=True) + "\n"
