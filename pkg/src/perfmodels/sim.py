"""Discrete-event simulation of a single-server FIFO queue.

Arrivals are Poisson at rate ``R``; service times are exponential with
mean ``S`` (M/M/1) or constant ``S`` (M/D/1).  The buffer is unbounded
and the arrival process ignores the queue (an open system).  The run is
a next-event loop over two pending events, the next arrival and the
current task's departure.

Randomness comes from two SplitMix64 streams (see :mod:`perfmodels.rng`):
inter-arrival times from the stream starting at ``seed`` and service
times from the stream starting at ``mix64(seed ^ SERVICE_STREAM_KEY)``.
Because the streams are separate, M/M/1 and M/D/1 runs with the same
seed see the same arrivals.

Statistics skip the first ``warmup_tasks`` departures.  Time averages
cover the window from the last warmup departure (or time 0 without
warmup) to the final departure.  The confidence interval on mean latency
uses batch means: the measured latencies, in departure order, are cut
into equal consecutive batches (any remainder is dropped) and a Student
t interval is built from the batch averages.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import rng
from .core import mm1_utilization
from .errors import DomainError, UndefinedResultError

SERVICE_STREAM_KEY = 0x5851F42D4C957F2D
DEFAULT_BATCHES = 20


class ServiceDistribution(str, enum.Enum):
    MARKOVIAN = "m"
    DETERMINISTIC = "d"


@dataclass(frozen=True)
class SimConfig:
    arrival_rate: float
    service_time: float
    service_distribution: ServiceDistribution = ServiceDistribution.MARKOVIAN
    n_tasks: int = 200_000
    warmup_tasks: int = 20_000
    seed: int = 0
    batches: int = DEFAULT_BATCHES

    def __post_init__(self):
        object.__setattr__(self, "service_distribution", ServiceDistribution(self.service_distribution))
        for name in ("n_tasks", "warmup_tasks", "seed", "batches"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
        if self.n_tasks < 1:
            raise DomainError(f"n_tasks must be >= 1, got {self.n_tasks}")
        if self.warmup_tasks < 0:
            raise DomainError(f"warmup_tasks must be >= 0, got {self.warmup_tasks}")
        if not 0 <= self.seed <= rng.MASK64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.batches < 2:
            raise DomainError(f"batches must be >= 2, got {self.batches}")
        # raises DomainError / StabilityError
        mm1_utilization(self.arrival_rate, self.service_time)


@dataclass(frozen=True)
class SimTrace:
    """Per-task times for every simulated task, warmup included."""

    arrival: np.ndarray
    start: np.ndarray
    departure: np.ndarray
    window_start: float
    window_end: float
    area: float  # integral of number-in-system over the window
    busy: float  # server busy time within the window
    warmup_tasks: int

    @property
    def service(self) -> np.ndarray:
        return self.departure - self.start


@dataclass(frozen=True)
class SimResult:
    mean_latency: float
    mean_queue_time: float
    mean_num_in_system: float
    utilization: float
    throughput: float
    latency_ci_halfwidth: float
    n_measured: int


def _draws(config: SimConfig) -> tuple[list, list]:
    total = config.n_tasks + config.warmup_tasks
    gaps, _ = rng.exponential_samples(config.seed, config.arrival_rate, total)
    arrivals = list(itertools.accumulate(gaps.tolist()))
    if config.service_distribution is ServiceDistribution.MARKOVIAN:
        state = rng.mix64(config.seed ^ SERVICE_STREAM_KEY)
        services, _ = rng.exponential_samples(state, 1.0 / config.service_time, total)
        services = services.tolist()
    else:
        services = [float(config.service_time)] * total
    return arrivals, services


def simulate_trace(config: SimConfig) -> SimTrace:
    arrivals, services = _draws(config)
    total = len(arrivals)
    warmup = config.warmup_tasks
    start = [0.0] * total
    depart = [0.0] * total
    waiting: deque = deque()
    inf = math.inf

    n_sys = 0
    in_service = -1
    next_i = 0
    next_arrival = arrivals[0]
    next_departure = inf
    done = 0
    measuring = warmup == 0
    t0 = t_last = 0.0
    area = busy = 0.0

    while done < total:
        if next_arrival < next_departure:
            now = next_arrival
            if measuring and n_sys:
                area += n_sys * (now - t_last)
                busy += now - t_last
            t_last = now
            n_sys += 1
            i = next_i
            next_i += 1
            next_arrival = arrivals[next_i] if next_i < total else inf
            if in_service < 0:
                in_service = i
                start[i] = now
                next_departure = now + services[i]
            else:
                waiting.append(i)
        else:
            now = next_departure
            if measuring:
                area += n_sys * (now - t_last)
                busy += now - t_last
            t_last = now
            n_sys -= 1
            depart[in_service] = now
            done += 1
            if not measuring and done == warmup:
                measuring = True
                t0 = now
            if waiting:
                in_service = waiting.popleft()
                start[in_service] = now
                next_departure = now + services[in_service]
            else:
                in_service = -1
                next_departure = inf

    return SimTrace(
        arrival=np.array(arrivals),
        start=np.array(start),
        departure=np.array(depart),
        window_start=t0,
        window_end=t_last,
        area=area,
        busy=busy,
        warmup_tasks=warmup,
    )


def batch_means_halfwidth(samples: np.ndarray, batches: int = DEFAULT_BATCHES, confidence: float = 0.95) -> float:
    """Half-width of the batch-means confidence interval for the mean.

    Returns NaN when there are fewer samples than batches.
    """
    size = len(samples) // batches
    if size < 1:
        return math.nan
    means = np.asarray(samples[: size * batches], dtype=float).reshape(batches, size).mean(axis=1)
    t = stats.t.ppf(0.5 + confidence / 2, batches - 1)
    return float(t * means.std(ddof=1) / math.sqrt(batches))


def summarize(trace: SimTrace, batches: int = DEFAULT_BATCHES) -> SimResult:
    w = trace.warmup_tasks
    latency = trace.departure[w:] - trace.arrival[w:]
    queue = trace.start[w:] - trace.arrival[w:]
    n = len(latency)
    span = trace.window_end - trace.window_start
    return SimResult(
        mean_latency=math.fsum(latency.tolist()) / n,
        mean_queue_time=math.fsum(queue.tolist()) / n,
        mean_num_in_system=trace.area / span,
        utilization=trace.busy / span,
        throughput=n / span,
        latency_ci_halfwidth=batch_means_halfwidth(latency, batches),
        n_measured=n,
    )


def simulate(config: SimConfig) -> SimResult:
    """Run one simulation and summarize its measurement window."""
    return summarize(simulate_trace(config), config.batches)


def littles_check(result: SimResult) -> float:
    """Relative gap ``|N - L*R| / N`` between measured occupancy and
    measured latency times measured throughput."""
    n = result.mean_num_in_system
    if not n > 0:
        raise UndefinedResultError("mean number in system is zero; Little's Law check is undefined")
    return abs(n - result.mean_latency * result.throughput) / n
