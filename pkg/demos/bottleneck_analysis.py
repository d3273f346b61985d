"""
Bottleneck analysis of a series/parallel system
===============================================

Parallel subsystems add their throughputs, series subsystems take the
minimum.  The system in ``memory_system.topo`` tops out at 6 GB/s.
"""

from pathlib import Path

from perfmodels import dsl
from perfmodels.topology import iter_leaves, slack_report
from perfmodels.units import BYTES, format_throughput

here = Path(__file__).resolve().parent
tree = dsl.parse_file(here / "memory_system.topo")
print(dsl.format(tree, "GB/s"))

report = slack_report(tree)
print("system throughput:", format_throughput(report.system_throughput, BYTES))

###############################################################################
# The bottleneck is the leaf whose improvement would raise system
# throughput.  Every other leaf has slack: capacity that could be cut
# (to save cost) without changing the 6 GB/s result.
for path, leaf in iter_leaves(tree):
    mark = "<- bottleneck" if path in report.bottleneck_leaves else ""
    print(
        f"{leaf.label:>9}: {format_throughput(leaf.throughput, BYTES):>9}"
        f"  slack {format_throughput(report.slack[path], BYTES, 'GB/s'):>16} {mark}"
    )

###############################################################################
# Two equal stages in series have no single bottleneck: raising either
# one alone leaves the minimum where it was.
tied = dsl.parse("series(4 GB/s, 4 GB/s)")
print("tied bottleneck set:", set(slack_report(tied).bottleneck_leaves))
print("tied stages:", slack_report(tied).tied_stages)
