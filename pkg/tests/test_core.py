import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perfmodels.core import (
    UNBOUNDED,
    amdahl_speedup,
    buffer_sizing,
    littles_solve,
    mm1_latency_curve,
    mm1_metrics,
    mm1_normalized_latency,
    mm1_solve_service,
    mm1_utilization,
)
from perfmodels.errors import DomainError, StabilityError


def weighted_time_speedup(f, s_x, work=1_000_000):
    """Speedup from simulating the run time of ``work`` unit tasks, a
    fraction ``f`` of which run ``s_x`` times faster."""
    fast = round(work * f)
    new_time = (work - fast) * 1.0 + fast / s_x
    return work / new_time


# ---------------------------------------------------------------- Amdahl


@pytest.mark.parametrize(
    "f, s_x, expected",
    [(0, 100, 1.0), (1, 8, 8.0), (0.5, UNBOUNDED, 2.0), (0.5, math.inf, 2.0)],
)
def test_amdahl_examples(f, s_x, expected):
    assert amdahl_speedup(f, s_x) == expected


def test_amdahl_derived_value_matches_weighted_time_oracle():
    oracle = weighted_time_speedup(0.75, 4)
    assert oracle == pytest.approx(2.2857142857, abs=1e-10)
    assert amdahl_speedup(0.75, 4) == pytest.approx(oracle, rel=1e-12)


def test_amdahl_fully_parallel_unbounded():
    assert amdahl_speedup(1, UNBOUNDED) is UNBOUNDED
    assert amdahl_speedup(1.0, math.inf) is UNBOUNDED


@pytest.mark.parametrize("f, s_x", [(-0.1, 2), (1.1, 2), (0.5, 0), (0.5, -3), (0.5, math.nan), (math.nan, 2)])
def test_amdahl_domain_errors(f, s_x):
    with pytest.raises(DomainError):
        amdahl_speedup(f, s_x)


@settings(max_examples=300)
@given(
    f=st.floats(0, 1),
    s_x=st.floats(1, 1e6),
    df=st.floats(0, 1),
    ds=st.floats(0, 1e3),
)
def test_amdahl_bounds_and_monotone(f, s_x, df, ds):
    s = amdahl_speedup(f, s_x)
    assert 1 - 1e-12 <= s <= s_x * (1 + 1e-12)
    if f < 1:
        assert s <= 1 / (1 - f) * (1 + 1e-12)
    f2 = min(1.0, f + df)
    assert amdahl_speedup(f2, s_x) >= s * (1 - 1e-12)
    assert amdahl_speedup(f, s_x + ds) >= s * (1 - 1e-12)


# ---------------------------------------------------------------- Little


def test_littles_cache_miss_buffers():
    assert littles_solve(latency=100e-9, rate=0.3125e9) == 31.25


def test_littles_reimbursement_days():
    # in day units the arithmetic is exact
    assert littles_solve(tasks=10_000, rate=200) == 50
    assert littles_solve(tasks=10_000, rate=200 / 86400) / 86400 == 50.0


def test_littles_unit_round_trip():
    assert littles_solve(tasks=1, latency=1) == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        {"tasks": 1},
        {"tasks": 1, "latency": 1, "rate": 1},
        {},
        {"tasks": 0, "latency": 1},
        {"tasks": -1, "latency": 1},
        {"latency": math.inf, "rate": 1},
        {"latency": math.nan, "rate": 1},
    ],
)
def test_littles_errors(kwargs):
    with pytest.raises(DomainError):
        littles_solve(**kwargs)


@settings(max_examples=500)
@given(
    latency=st.floats(1e-9, 1e6),
    rate=st.floats(1e-6, 1e9),
)
def test_littles_round_trip(latency, rate):
    tasks = littles_solve(latency=latency, rate=rate)
    assert littles_solve(tasks=tasks, rate=rate) == pytest.approx(latency, rel=1e-12)
    assert littles_solve(tasks=tasks, latency=latency) == pytest.approx(rate, rel=1e-12)


# ---------------------------------------------------------------- buffers


@pytest.mark.parametrize(
    "rate, latency, headroom, expected",
    [(0.3125e9, 100e-9, 1.0, 32), (0.3125e9, 100e-9, 1.5, 48), (1, 1, 1.0, 1), (1e-3, 1, 1.0, 1), (0.32e9, 100e-9, 1.0, 32)],
)
def test_buffer_sizing(rate, latency, headroom, expected):
    assert buffer_sizing(rate, latency, headroom) == expected


@pytest.mark.parametrize("args", [(0, 1), (1, 0), (1, 1, 0.5), (-1, 1), (1, 1, math.nan)])
def test_buffer_sizing_errors(args):
    with pytest.raises(DomainError):
        buffer_sizing(*args)


# ---------------------------------------------------------------- M/M/1


def test_utilization_examples():
    assert mm1_utilization(10, 0.050) == 0.5
    assert mm1_utilization(1, 0.001) == 0.001
    with pytest.raises(StabilityError):
        mm1_utilization(10, 0.100)


def test_metrics_packet_example():
    m = mm1_metrics(10, 0.050)
    assert m.latency == 0.1
    assert m.queue_time == 0.05
    assert m.utilization == 0.5
    assert m.num_in_system == 1.0
    assert m.normalized_latency == 2.0


def test_metrics_light_load_approaches_one():
    assert mm1_metrics(1, 1e-6).normalized_latency == pytest.approx(1, abs=2e-6)


def test_metrics_half_load_one_task_in_system():
    # N = rho/(1-rho) at rho = 1/2
    assert mm1_metrics(0.5, 1.0).num_in_system == 1.0


def test_metrics_unstable():
    with pytest.raises(StabilityError):
        mm1_metrics(10, 0.1)
    with pytest.raises(StabilityError):
        mm1_metrics(2, 1)


@pytest.mark.parametrize("x, y", [(0.25, 4 / 3), (0.5, 2.0), (0.75, 4.0), (0.9, 10.0), (0, 1.0), (0.999, 1000.0)])
def test_normalized_latency_values(x, y):
    assert mm1_normalized_latency(x) == pytest.approx(y, rel=1e-12)


@pytest.mark.parametrize("x", [1, 1.0, 1.5])
def test_normalized_latency_unstable(x):
    with pytest.raises(StabilityError):
        mm1_normalized_latency(x)


def test_normalized_latency_rejects_negative():
    with pytest.raises(DomainError):
        mm1_normalized_latency(-0.1)


@pytest.mark.parametrize("k", range(1, 10))
def test_latency_explodes_exact(k):
    eps = Fraction(1, 10**k)
    assert mm1_normalized_latency(1 - eps) == 1 / eps


@pytest.mark.parametrize("k", range(1, 10))
def test_latency_explodes_float(k):
    # 1 - 10**-k is rounded on input; the result must match the exact
    # value of 1/(1-x) for the x actually passed
    x = 1 - 10.0**-k
    exact = 1 / (1 - Fraction(x))
    assert mm1_normalized_latency(x) == pytest.approx(float(exact), rel=1e-12)


def test_solve_service_examples():
    assert mm1_solve_service(10, 0.1) == 0.05
    assert mm1_solve_service(1e-12, 1) == pytest.approx(1, rel=1e-11)
    s = mm1_solve_service(1, 1)
    assert s == 0.5
    assert mm1_metrics(1, s).latency == 1


@pytest.mark.parametrize("args", [(0, 1), (1, 0), (-1, 1), (1, math.inf)])
def test_solve_service_errors(args):
    with pytest.raises(DomainError):
        mm1_solve_service(*args)


def test_curve_endpoints():
    assert mm1_latency_curve(2, 0.5) == [(0.0, 1.0), (0.5, 2.0)]


def test_curve_includes_ninety_percent():
    pts = mm1_latency_curve(5, 0.9)
    assert pts[-1][0] == 0.9
    assert pts[-1][1] == pytest.approx(10.0, rel=1e-12)
    assert pts[0] == (0.0, 1.0)


def test_curve_monotone():
    pts = mm1_latency_curve(500)
    assert all(b[1] > a[1] for a, b in zip(pts, pts[1:]))
    assert pts[-1][0] == 0.99


@pytest.mark.parametrize("n, x_max", [(1, 0.5), (0, 0.5), (5, 0), (5, 1), (5, 1.2), (2.5, 0.5), (True, 0.5)])
def test_curve_errors(n, x_max):
    with pytest.raises(DomainError):
        mm1_latency_curve(n, x_max)


stable_pairs = st.tuples(
    st.floats(-6, 6).map(lambda e: 10.0**e),
    st.floats(1e-6, 0.999),
).map(lambda p: (p[0], p[1] / p[0]))


@settings(max_examples=1000)
@given(stable_pairs)
def test_mm1_identities(pair):
    rate, service = pair
    m = mm1_metrics(rate, service)
    assert m.latency == pytest.approx(m.queue_time + service, rel=1e-12)
    assert m.num_in_system == pytest.approx(m.latency * rate, rel=1e-12)
    assert m.normalized_latency == pytest.approx(1 / (1 - m.utilization), rel=1e-12)


@settings(max_examples=1000)
@given(stable_pairs)
def test_solve_service_round_trip_from_stable_pair(pair):
    rate, service = pair
    latency = mm1_metrics(rate, service).latency
    s = mm1_solve_service(rate, latency)
    assert s == pytest.approx(service, rel=1e-12)
    assert mm1_metrics(rate, s).latency == pytest.approx(latency, rel=1e-12)


@settings(max_examples=1000)
@given(
    rate=st.floats(-6, 6).map(lambda e: 10.0**e),
    latency=st.floats(-6, 6).map(lambda e: 10.0**e),
)
def test_solve_service_round_trip(rate, latency):
    s = mm1_solve_service(rate, latency)
    # latency as a function of service time has condition number 1 + L*R,
    # so rounding S alone costs that many ulps on the way back
    cond = 1 + latency * rate
    tol = max(1e-12, 8 * cond * 2.0**-53)
    assert mm1_metrics(rate, s).latency == pytest.approx(latency, rel=tol)
    if cond <= 1e3:
        assert mm1_metrics(rate, s).latency == pytest.approx(latency, rel=1e-12)


@settings(max_examples=1000)
@given(
    rate=st.floats(1e-3, 1e3),
    service=st.floats(1e-3, 1e3),
)
def test_stability_error_iff_saturated(rate, service):
    if rate * service >= 1:
        with pytest.raises(StabilityError):
            mm1_metrics(rate, service)
    else:
        mm1_metrics(rate, service)
