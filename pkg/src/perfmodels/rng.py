"""SplitMix64 random streams and exponential variates.

The generator is SplitMix64 (Steele, Lea and Flood, 2014): the state is a
64-bit counter advanced by the odd constant ``0x9E3779B97F4A7C15`` and
each output is a bijective mix of the new state.  It uses only wrapping
64-bit integer arithmetic, so the integer stream is identical on every
platform.  States are plain Python ints in ``[0, 2**64)``.

Uniforms take the top 53 bits of an output ``z`` as
``((z >> 11) + 1) / 2**53``, which lies in ``(0, 1]``: zero can never be
drawn, so ``-log(u)`` is always finite.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 2.0**-53


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def next_u64(state: int) -> tuple[int, int]:
    """Return ``(output, new_state)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    return mix64(state), state


def bits_to_uniform(z: int) -> float:
    return ((z >> 11) + 1) * _INV_2_53


def uniform(state: int) -> tuple[float, int]:
    z, state = next_u64(state)
    return bits_to_uniform(z), state


def inverse_exponential(u: float, rate: float) -> float:
    """Exponential quantile at ``1 - u``: ``-ln(u)/rate`` for u in (0, 1]."""
    if not rate > 0:
        raise ValueError(f"rate must be positive, got {rate!r}")
    if not 0 < u <= 1:
        raise ValueError(f"u must lie in (0, 1], got {u!r}")
    return -math.log(u) / rate


def exponential_sample(state: int, rate: float) -> tuple[float, int]:
    """Inverse-transform exponential variate with the given ``rate``.

    Returns ``(duration, new_state)``.
    """
    u, state = uniform(state)
    return inverse_exponential(u, rate), state


def uniforms(state: int, n: int) -> tuple[np.ndarray, int]:
    """``n`` consecutive uniforms from ``state``, as one array.

    Produces exactly the values that ``n`` calls to :func:`uniform`
    would, and the state those calls would leave behind.
    """
    steps = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(state) + steps * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    u = ((z >> np.uint64(11)) + np.uint64(1)).astype(np.float64) * _INV_2_53
    return u, (state + n * GOLDEN_GAMMA) & MASK64


def exponential_samples(state: int, rate: float, n: int) -> tuple[np.ndarray, int]:
    """Vector form of :func:`exponential_sample`; bit-identical values."""
    if not rate > 0:
        raise ValueError(f"rate must be positive, got {rate!r}")
    u, state = uniforms(state, n)
    # math.log rather than np.log so scalar and vector paths agree bit for bit
    logs = np.fromiter(map(math.log, u.tolist()), dtype=np.float64, count=n)
    return -logs / rate, state
