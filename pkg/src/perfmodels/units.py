"""Unit tables and string conversion at the input/output boundary.

Everything inside the models is stored in base units: seconds for
durations and tasks (or bytes, or ops) per second for rates.  SI
prefixes are decimal, so ``G`` is 1e9 and ``GB/s`` is 1e9 bytes/s.
"""

from __future__ import annotations

import math
import re

from .errors import DomainError

SI_PREFIXES = {"": 1.0, "K": 1e3, "M": 1e6, "G": 1e9, "T": 1e12}

TIME_UNITS = {
    "ns": 1e-9,
    "us": 1e-6,
    "ms": 1e-3,
    "s": 1.0,
    "min": 60.0,
    "hr": 3600.0,
    "day": 86400.0,
}

# dimension family names
BYTES = "bytes/s"
OPS = "ops/s"
TASKS = "tasks/s"

# throughput units accepted in topology files: unit -> (dimension, multiplier)
THROUGHPUT_UNITS = {
    f"{p}{base}/s": (dim, mult)
    for base, dim in (("B", BYTES), ("ops", OPS))
    for p, mult in SI_PREFIXES.items()
}

BASE_UNIT = {BYTES: "B/s", OPS: "ops/s", TASKS: ""}

_NUMBER = r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?|[0-9]+\.(?:[eE][+-]?[0-9]+)?"
_TIME_RE = re.compile(rf"^\s*({_NUMBER})\s*([a-z]*)\s*$")
_RATE_RE = re.compile(rf"^\s*({_NUMBER})\s*([KMGT]?)\s*/\s*([a-z]+)\s*$")


def to_seconds(value: float, unit: str) -> float:
    per_unit = TIME_UNITS[unit]
    if per_unit < 1:
        # dividing by an exact integer keeps e.g. 100 ns at the nearest double to 1e-7
        return value / round(1 / per_unit)
    return value * per_unit


def _finite_number(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise DomainError(f"not a finite number: {text!r}")
    return value


def parse_time(text: str) -> tuple[float, str]:
    """Parse a duration such as ``"100ns"`` or ``"1.5 day"``.

    Returns ``(seconds, unit)``.  A bare number is taken as seconds.
    """
    m = _TIME_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse duration {text!r}")
    number, unit = m.groups()
    unit = unit or "s"
    if unit not in TIME_UNITS:
        raise DomainError(f"unknown time unit {unit!r} in {text!r}; use one of {', '.join(TIME_UNITS)}")
    return to_seconds(_finite_number(number), unit), unit


def parse_rate(text: str) -> tuple[float, str]:
    """Parse a rate such as ``"200/day"``, ``"0.3125G/s"`` or ``"6 GB/s"``.

    Returns ``(per_second, time_unit)``.  Rates use a count with an
    optional SI prefix over a time unit; the throughput units of topology
    files are also accepted.  A bare number is taken as per second.
    """
    stripped = text.strip()
    for unit, (_, mult) in THROUGHPUT_UNITS.items():
        if stripped.endswith(unit) and re.fullmatch(rf"(?:{_NUMBER})\s*", stripped[: -len(unit)]):
            return _finite_number(stripped[: -len(unit)]) * mult, "s"
    try:
        return _finite_number(stripped), "s"
    except ValueError:
        pass
    m = _RATE_RE.match(stripped)
    if not m:
        raise DomainError(f"cannot parse rate {text!r}")
    number, prefix, unit = m.groups()
    if unit not in TIME_UNITS:
        raise DomainError(f"unknown time unit {unit!r} in {text!r}; use one of {', '.join(TIME_UNITS)}")
    return _finite_number(number) * SI_PREFIXES[prefix] / to_seconds(1.0, unit), unit


def format_number(value: float, digits: int = 12) -> str:
    return f"{value:.{digits}g}"


def format_time(seconds: float, unit: str | None = None) -> str:
    """Render a duration, choosing among ns/us/ms/s when ``unit`` is None."""
    if unit is None:
        unit = "s"
        for name in ("ns", "us", "ms", "s"):
            if abs(seconds) >= TIME_UNITS[name]:
                unit = name
    return f"{format_number(seconds / TIME_UNITS[unit])} {unit}"


def format_rate(per_second: float, time_unit: str = "s") -> str:
    return f"{format_number(per_second * TIME_UNITS[time_unit])}/{time_unit}"


def auto_throughput_unit(value: float, dimension: str) -> str:
    """Largest prefixed unit of ``dimension`` that keeps ``value`` at or above 1."""
    if dimension == TASKS:
        return ""
    base = BASE_UNIT[dimension]
    best = base
    for prefix, mult in SI_PREFIXES.items():
        if abs(value) >= mult:
            best = prefix + base
    return best


def format_throughput(value: float, dimension: str, unit: str | None = None) -> str:
    if unit is None:
        unit = auto_throughput_unit(value, dimension)
    if not unit:
        return format_number(value)
    return f"{format_number(value / THROUGHPUT_UNITS[unit][1])} {unit}"
