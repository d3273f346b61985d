"""Closed-form models: Amdahl's Law, Little's Law and the M/M/1 queue.

All functions take plain numbers in base units (seconds, tasks per
second) and either return a value or raise a :class:`DomainError`.
Nothing is clamped silently.

The M/M/1 helpers are written so that exact numeric types pass through
unchanged: giving ``fractions.Fraction`` inputs yields exact results.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .errors import DomainError, StabilityError


class Unbounded(enum.Enum):
    """Marker for a speedup that grows without limit."""

    UNBOUNDED = "unbounded"

    def __repr__(self) -> str:
        return "UNBOUNDED"


UNBOUNDED = Unbounded.UNBOUNDED

# ceil() of a product that should be an integer but picked up rounding
# error must not jump to the next integer
_CEIL_REL_TOL = 1e-9


def _is_unbounded(value) -> bool:
    return value is UNBOUNDED or (isinstance(value, Real) and math.isinf(value) and value > 0)


def _require_positive(name: str, value) -> None:
    if not isinstance(value, Real) or isinstance(value, bool):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


def amdahl_speedup(f, s_x):
    """Upper bound on overall speedup when a fraction ``f`` of the work
    is sped up by ``s_x``.

    ``s_x`` may be :data:`UNBOUNDED` (or ``math.inf``); the bound then
    becomes ``1/(1-f)``, itself unbounded when ``f == 1``.

    >>> amdahl_speedup(0.75, 4)
    2.2857142857142856
    >>> amdahl_speedup(0.5, UNBOUNDED)
    2.0
    """
    if not isinstance(f, Real) or isinstance(f, bool) or not 0 <= f <= 1:
        raise DomainError(f"work fraction must lie in [0, 1], got {f!r}")
    if _is_unbounded(s_x):
        if f == 1:
            return UNBOUNDED
        return 1 / (1 - f)
    _require_positive("component speedup", s_x)
    return 1 / ((1 - f) + f / s_x)


def littles_solve(*, tasks=None, latency=None, rate=None) -> float:
    """Solve ``tasks = latency * rate`` for whichever argument is missing.

    Exactly two of the keyword arguments must be given.
    """
    given = {k: v for k, v in (("tasks", tasks), ("latency", latency), ("rate", rate)) if v is not None}
    if len(given) != 2:
        raise DomainError(f"exactly two of tasks, latency, rate are required, got {sorted(given) or 'none'}")
    for name, value in given.items():
        _require_positive(name, value)
    if tasks is None:
        return latency * rate
    if latency is None:
        return tasks / rate
    return tasks / latency


def _ceil(value: float) -> int:
    nearest = round(value)
    if abs(value - nearest) <= _CEIL_REL_TOL * max(1.0, abs(value)):
        return int(nearest)
    return math.ceil(value)


def buffer_sizing(rate, latency, headroom=1.0) -> int:
    """Number of buffers needed to sustain ``rate`` with ``latency`` per task.

    The minimal count is ``ceil(latency * rate)``; ``headroom`` scales that
    count (1.5 adds 50%) and is rounded up again.  Never less than 1.
    """
    _require_positive("rate", rate)
    _require_positive("latency", latency)
    if not isinstance(headroom, Real) or not math.isfinite(headroom) or headroom < 1:
        raise DomainError(f"headroom must be >= 1, got {headroom!r}")
    minimal = _ceil(latency * rate)
    return max(1, _ceil(headroom * minimal))


def mm1_utilization(rate, service):
    """Fraction of maximum throughput, ``rate * service``.

    Raises :class:`StabilityError` at or above 1.
    """
    _require_positive("rate", rate)
    _require_positive("service time", service)
    rho = rate * service
    if rho >= 1:
        raise StabilityError(
            f"utilization {float(rho):g} >= 1: arrivals at {float(rate):g}/s outpace service "
            f"({float(service):g} s each), latency grows without bound"
        )
    return rho


@dataclass(frozen=True)
class MM1Metrics:
    utilization: float
    latency: float
    queue_time: float
    num_in_system: float
    normalized_latency: float


def mm1_metrics(rate, service) -> MM1Metrics:
    """Steady-state averages of an M/M/1 queue."""
    rho = mm1_utilization(rate, service)
    latency = service / (1 - rho)
    return MM1Metrics(
        utilization=rho,
        latency=latency,
        queue_time=latency - service,
        num_in_system=latency * rate,
        normalized_latency=1 / (1 - rho),
    )


def mm1_normalized_latency(x):
    """Latency over service time, ``1/(1-x)``, at throughput fraction ``x``."""
    if not isinstance(x, Real) or isinstance(x, bool) or not x >= 0:
        raise DomainError(f"throughput fraction must be >= 0, got {x!r}")
    if x >= 1:
        raise StabilityError(f"throughput fraction {float(x):g} >= 1: latency is unbounded")
    return 1 / (1 - x)


def mm1_solve_service(rate, target_latency):
    """Mean service time that gives ``target_latency`` at arrival ``rate``.

    Inverts ``L/S = 1/(1 - R*S)`` to ``S = L/(1 + L*R)``.  The resulting
    utilization ``L*R/(1 + L*R)`` is always below 1.
    """
    _require_positive("rate", rate)
    _require_positive("target latency", target_latency)
    return target_latency / (1 + target_latency * rate)


def mm1_latency_curve(n_points: int, x_max: float = 0.99) -> list[tuple[float, float]]:
    """Evenly spaced ``(x, 1/(1-x))`` samples for x in ``[0, x_max]``."""
    if isinstance(n_points, bool) or not isinstance(n_points, (int, np.integer)) or n_points < 2:
        raise DomainError(f"n_points must be an integer >= 2, got {n_points!r}")
    if not isinstance(x_max, Real) or not 0 < x_max < 1:
        raise DomainError(f"x_max must lie in (0, 1), got {x_max!r}")
    xs = np.linspace(0.0, float(x_max), int(n_points))
    return [(float(x), float(mm1_normalized_latency(float(x)))) for x in xs]
