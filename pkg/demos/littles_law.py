"""
Little's Law: buffers for outstanding cache misses
==================================================

Average tasks in a system equals average latency times arrival rate.
"""

from perfmodels import buffer_sizing, littles_solve

###############################################################################
# 2 references per cycle at 2.5 GHz with a 6.25% miss ratio is
# 0.3125 G misses/s.  With 100 ns per miss, 31.25 misses are in flight
# on average, so 32 miss buffers are the minimum.
rate = 2 * 2.5e9 * 0.0625
latency = 100e-9
print("misses in flight:", littles_solve(latency=latency, rate=rate))
print("minimum buffers: ", buffer_sizing(rate, latency))

###############################################################################
# Bursty misses see longer latencies than the average; 50% extra buffers
# is a prudent margin.
print("with 50% margin: ", buffer_sizing(rate, latency, headroom=1.5))

###############################################################################
# The law works in any direction: 10,000 pending requests arriving at
# 200 per day means each waits 50 days on average.
print("days per request:", littles_solve(tasks=10_000, rate=200))
