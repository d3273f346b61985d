"""
Amdahl's Law: what a faster component can and cannot buy
=========================================================

Speeding up a component used by a fraction ``f`` of the work by ``s_x``
bounds the overall speedup at ``1/((1-f) + f/s_x)``.
"""

from perfmodels import UNBOUNDED, amdahl_speedup

###############################################################################
# Even an infinitely fast component leaves the untouched part of the work.
for f in (0.5, 0.75, 0.9, 0.99):
    print(f"f={f:<5} s_x=inf  ->  at most {amdahl_speedup(f, UNBOUNDED):7.2f}x")

###############################################################################
# A 4x faster component used 75% of the time gives about 2.29x overall.
print(f"f=0.75 s_x=4    ->  {amdahl_speedup(0.75, 4):.4f}x")

###############################################################################
# Doubling the component speedup again helps less and less.
for s_x in (2, 4, 8, 16, 32, 64):
    print(f"s_x={s_x:<3} -> {amdahl_speedup(0.75, s_x):.3f}x")
