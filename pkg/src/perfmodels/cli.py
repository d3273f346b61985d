"""Command-line front end: ``perfmodels <command> ...``.

Exit codes: 0 success, 2 domain or validation error, 3 topology parse
error, 4 internal error.  Every command accepts ``--format`` with
``table`` (default), ``json`` (one object, see
``schemas/cli-output.schema.json``) or ``csv`` (header row first).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import core, dsl, sim, topology
from .errors import DomainError, ParseError
from .units import (
    format_number,
    format_rate,
    format_throughput,
    format_time,
    parse_rate,
    parse_time,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PARSE = 3
EXIT_INTERNAL = 4

CURVE_HEADER = ("throughput_fraction", "normalized_latency")


class _Output:
    """Collects one command's result and renders it in the chosen format."""

    def __init__(self, command: str, fields: dict, display: dict, rows: list[dict] | None = None, csv_header=None):
        self.command = command
        self.fields = fields
        self.display = display
        self.rows = rows
        self.csv_header = csv_header

    def render(self, fmt: str) -> str:
        if fmt == "json":
            obj = {"schema_version": SCHEMA_VERSION, "command": self.command, **self.fields}
            if self.rows is not None:
                obj["rows"] = self.rows
            return json.dumps(obj, allow_nan=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            if self.rows is not None:
                header = self.csv_header or list(self.rows[0])
                writer.writerow(header)
                for row in self.rows:
                    writer.writerow([_csv_cell(row[k]) for k in header])
            else:
                scalars = {k: v for k, v in self.fields.items() if not isinstance(v, (dict, list))}
                writer.writerow(scalars)
                writer.writerow(_csv_cell(v) for v in scalars.values())
            return buf.getvalue()
        width = max(len(k) for k in self.display)
        lines = [f"{k.ljust(width)}  {v}" for k, v in self.display.items()]
        return "\n".join(lines) + "\n"


def _csv_cell(value):
    if isinstance(value, float):
        return format_number(value, 15)
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return ".".join(str(v) for v in value)
    return value


def _json_number(value):
    # json has no infinity or NaN
    if value is core.UNBOUNDED or (isinstance(value, float) and math.isinf(value)):
        return "inf"
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def cmd_amdahl(args) -> _Output:
    f = args.fraction
    text = args.speedup.strip().lower()
    if text in ("inf", "infinity"):
        s_x = core.UNBOUNDED
    else:
        try:
            s_x = float(text)
        except ValueError:
            raise DomainError(f"--speedup must be a number or 'inf', got {args.speedup!r}") from None
    result = core.amdahl_speedup(f, s_x)
    text = "inf" if result is core.UNBOUNDED else format_number(result)
    return _Output(
        "amdahl",
        {"fraction": f, "component_speedup": _json_number(s_x), "speedup": _json_number(result)},
        {"fraction": format_number(f), "component speedup": args.speedup, "speedup": text},
    )


def cmd_littles(args) -> _Output:
    tasks = args.tasks
    latency = rate = None
    unit = None
    if args.latency is not None:
        latency, unit = parse_time(args.latency)
    if args.rate is not None:
        rate, unit = parse_rate(args.rate)
    solved = core.littles_solve(tasks=tasks, latency=latency, rate=rate)
    if tasks is None:
        tasks, name = solved, "tasks"
    elif latency is None:
        latency, name = solved, "latency"
    else:
        rate, name = solved, "rate"
    unit = unit or "s"
    return _Output(
        "littles",
        {"solved": name, "tasks": tasks, "latency_s": latency, "rate_per_s": rate},
        {
            "tasks": format_number(tasks),
            "latency": format_time(latency, unit),
            "rate": format_rate(rate, unit),
            "solved": name,
        },
    )


def cmd_mm1(args) -> _Output:
    rate, _ = parse_rate(args.rate)
    if args.target_latency is not None:
        target, _ = parse_time(args.target_latency)
        service = core.mm1_solve_service(rate, target)
        solved = "service"
    else:
        service, _ = parse_time(args.service)
        solved = None
    m = core.mm1_metrics(rate, service)
    fields = {
        "solved": solved,
        "rate_per_s": rate,
        "service_s": service,
        "utilization": m.utilization,
        "latency_s": m.latency,
        "queue_time_s": m.queue_time,
        "num_in_system": m.num_in_system,
        "normalized_latency": m.normalized_latency,
    }
    display = {
        "rate": format_rate(rate),
        "service": format_time(service),
        "utilization": format_number(m.utilization),
        "latency": format_time(m.latency),
        "queue time": format_time(m.queue_time),
        "number in system": format_number(m.num_in_system),
        "normalized latency": format_number(m.normalized_latency),
    }
    if solved:
        display = {"solved": "service", **display}
    return _Output("mm1", fields, display)


def cmd_bottleneck(args) -> _Output:
    tree = dsl.parse_file(args.topo_file)
    dim = topology.dimension(tree)
    unit = args.unit
    if unit is not None:
        dsl.format(tree, unit)  # validates the unit against the tree
    report = topology.slack_report(tree)
    rows = []
    for path, leaf in topology.iter_leaves(tree):
        rows.append(
            {
                "path": list(path),
                "label": leaf.label,
                "throughput": leaf.throughput,
                "balanced_target": report.balanced_targets[path],
                "slack": report.slack[path],
                "bottleneck": path in report.bottleneck_leaves,
            }
        )
    fields = {
        "dimension": dim,
        "system_throughput": report.system_throughput,
        "tied_stages": [[list(p) for p in group] for group in report.tied_stages],
    }
    if args.format == "table":
        return _Output("bottleneck", fields, _bottleneck_table(report, rows, dim, unit))
    return _Output(
        "bottleneck",
        fields,
        {},
        rows=rows,
        csv_header=["path", "label", "throughput", "balanced_target", "slack", "bottleneck"],
    )


def _bottleneck_table(report, rows, dim, unit) -> dict:
    def fmt(v):
        return format_throughput(v, dim, unit)

    display = {"system throughput": fmt(report.system_throughput)}
    for row in rows:
        name = ".".join(map(str, row["path"])) or "root"
        if row["label"]:
            name += f" ({row['label']})"
        flag = "  BOTTLENECK" if row["bottleneck"] else ""
        display[f"leaf {name}"] = (
            f"{fmt(row['throughput'])}, target {fmt(row['balanced_target'])}, slack {fmt(row['slack'])}{flag}"
        )
    for i, group in enumerate(report.tied_stages):
        key = "tied bottleneck stages" + (f" [{i + 1}]" if len(report.tied_stages) > 1 else "")
        display[key] = ", ".join(".".join(map(str, p)) or "root" for p in group)
    return display


def cmd_curve(args) -> _Output:
    points = core.mm1_latency_curve(args.points, args.x_max)
    rows = [{CURVE_HEADER[0]: x, CURVE_HEADER[1]: y} for x, y in points]
    display = {format_number(x, 15): format_number(y, 15) for x, y in points}
    display = {CURVE_HEADER[0]: CURVE_HEADER[1], **display}
    return _Output(
        "curve",
        {"points": args.points, "x_max": args.x_max},
        display,
        rows=rows,
        csv_header=list(CURVE_HEADER),
    )


def cmd_simulate(args) -> _Output:
    rate, _ = parse_rate(args.rate)
    service, _ = parse_time(args.service)
    config = sim.SimConfig(
        arrival_rate=rate,
        service_time=service,
        service_distribution=args.dist,
        n_tasks=args.tasks,
        warmup_tasks=args.warmup,
        seed=args.seed,
        batches=args.batches,
    )
    r = sim.simulate(config)
    fields = {
        "rate_per_s": rate,
        "service_s": service,
        "distribution": config.service_distribution.value,
        "n_tasks": config.n_tasks,
        "warmup_tasks": config.warmup_tasks,
        "seed": config.seed,
        "mean_latency_s": r.mean_latency,
        "mean_queue_time_s": r.mean_queue_time,
        "mean_num_in_system": r.mean_num_in_system,
        "utilization": r.utilization,
        "throughput_per_s": r.throughput,
        "latency_ci_halfwidth_s": _json_number(r.latency_ci_halfwidth),
        "n_measured": r.n_measured,
        "littles_discrepancy": sim.littles_check(r),
    }
    display = {
        "mean latency": f"{format_time(r.mean_latency)} +/- {format_time(r.latency_ci_halfwidth)} (95%)",
        "mean queue time": format_time(r.mean_queue_time),
        "mean number in system": format_number(r.mean_num_in_system),
        "utilization": format_number(r.utilization),
        "throughput": format_rate(r.throughput),
        "measured tasks": str(r.n_measured),
        "little's law gap": format_number(fields["littles_discrepancy"], 3),
    }
    if config.service_distribution is sim.ServiceDistribution.MARKOVIAN:
        m = core.mm1_metrics(rate, service)
        fields.update(
            analytic_latency_s=m.latency,
            analytic_queue_time_s=m.queue_time,
            analytic_num_in_system=m.num_in_system,
            analytic_utilization=m.utilization,
        )
        display.update(
            {
                "analytic latency": format_time(m.latency),
                "analytic queue time": format_time(m.queue_time),
                "analytic number in system": format_number(m.num_in_system),
                "analytic utilization": format_number(m.utilization),
            }
        )
    return _Output("simulate", fields, display)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")

    parser = argparse.ArgumentParser(prog="perfmodels", description="Simple analytic performance models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("amdahl", parents=[common], help="Amdahl's Law speedup bound")
    p.add_argument("--fraction", required=True, type=float, help="fraction of work that is sped up, in [0, 1]")
    p.add_argument("--speedup", required=True, help="speedup of that fraction, or 'inf'")
    p.set_defaults(func=cmd_amdahl)

    p = sub.add_parser("littles", parents=[common], help="Little's Law: give two of tasks, latency, rate")
    p.add_argument("--tasks", type=float, help="average number of tasks in the system")
    p.add_argument("--latency", help="average latency, e.g. 100ns, 50 day")
    p.add_argument("--rate", help="average arrival rate, e.g. 200/day, 0.3125G/s")
    p.set_defaults(func=cmd_littles)

    p = sub.add_parser("mm1", parents=[common], help="M/M/1 queue metrics or required service time")
    p.add_argument("--rate", required=True, help="arrival rate, e.g. 10/s")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--service", help="mean service time, e.g. 50ms")
    g.add_argument("--target-latency", help="latency goal; solves for the service time")
    p.set_defaults(func=cmd_mm1)

    p = sub.add_parser("bottleneck", parents=[common], help="bottleneck analysis of a .topo file")
    p.add_argument("topo_file")
    p.add_argument("--unit", help="display unit for the table, e.g. GB/s")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("curve", parents=[common], help="M/M/1 normalized latency curve y = 1/(1-x)")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--x-max", type=float, default=0.99)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("simulate", parents=[common], help="simulate a single-server FIFO queue")
    p.add_argument("--rate", required=True, help="arrival rate, e.g. 0.5/s")
    p.add_argument("--service", required=True, help="mean service time, e.g. 1s")
    p.add_argument("--dist", choices=("m", "d"), default="m", help="service times: m exponential, d constant")
    p.add_argument("--tasks", type=int, default=200_000, help="measured tasks")
    p.add_argument("--warmup", type=int, default=20_000, help="tasks discarded before measuring")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--batches", type=int, default=sim.DEFAULT_BATCHES, help="batches for the confidence interval")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
        sys.stdout.write(out.render(args.format))
    except ParseError as err:
        print(f"{args.command}: parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, OSError) as err:
        print(f"{args.command}: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as err:  # noqa: BLE001
        print(f"{args.command}: internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
