"""
The M/M/1 latency/throughput trade-off, analytic and simulated
==============================================================

For unscheduled (Poisson) arrivals and exponential service, latency over
service time is ``1/(1-x)`` at throughput fraction ``x``.  The simulator
reproduces the curve, and constant service times queue half as long.

Needs matplotlib; the figure is written to ``mm1_tradeoff.png``.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from perfmodels import SimConfig, mm1_latency_curve, mm1_solve_service, simulate

curve = np.array(mm1_latency_curve(200, 0.95))

###############################################################################
# Simulate a few loads with unit mean service time.  Run lengths are kept
# short so the demo finishes in a couple of seconds, which makes the
# x = 0.9 point noisy; the test suite uses 200,000 tasks per load.
loads = [0.25, 0.5, 0.75, 0.9]
mm1 = [simulate(SimConfig(x, 1.0, "m", 50_000, 5_000, seed=i)) for i, x in enumerate(loads)]
md1 = [simulate(SimConfig(x, 1.0, "d", 50_000, 5_000, seed=i)) for i, x in enumerate(loads)]
for x, m, d in zip(loads, mm1, md1):
    print(f"x={x:.2f}  analytic {1 / (1 - x):6.2f}  M/M/1 {m.mean_latency:6.2f}  M/D/1 {d.mean_latency:6.2f}")

fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(curve[:, 0], curve[:, 1], label="1/(1-x)")
ax.errorbar(loads, [r.mean_latency for r in mm1], yerr=[r.latency_ci_halfwidth for r in mm1], fmt="o", label="simulated M/M/1")
ax.plot(loads, [r.mean_latency for r in md1], "s", label="simulated M/D/1")
ax.set_xlabel("fraction of maximum throughput x = R*S")
ax.set_ylabel("normalized latency L/S")
ax.set_ylim(0, 20)
ax.legend()
fig.tight_layout()
fig.savefig("mm1_tradeoff.png", dpi=120)

###############################################################################
# Packets arrive at 10/s and must be handled in 100 ms on average.  A
# 100 ms service time would saturate the server; the M/M/1 answer is 50 ms.
print("required service time:", mm1_solve_service(10, 0.100), "s")
