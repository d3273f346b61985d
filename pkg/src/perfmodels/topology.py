"""Series/parallel system trees and bottleneck analysis.

A system is a tree whose leaves are subsystems with a maximum throughput.
Subsystems in parallel add their throughputs; subsystems in series are
limited by the slowest one.  Leaves are addressed by *paths*: tuples of
child indices from the root, with ``()`` naming the root itself.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import DomainError, SemanticError
from .units import TASKS

_LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Leaf:
    throughput: float
    label: str | None = None
    dimension: str = TASKS

    def __post_init__(self):
        t = self.throughput
        if isinstance(t, bool) or not isinstance(t, (int, float)) or not math.isfinite(t) or t <= 0:
            raise SemanticError(f"leaf throughput must be positive and finite, got {t!r}")
        if self.label is not None and (
            not _LABEL_RE.fullmatch(self.label) or self.label in ("series", "parallel")
        ):
            raise SemanticError(f"invalid leaf label {self.label!r}")


@dataclass(frozen=True)
class _Composite:
    children: tuple

    def __post_init__(self):
        children = tuple(self.children)
        object.__setattr__(self, "children", children)
        if not children:
            raise SemanticError(f"{type(self).__name__.lower()} needs at least one child")
        dims = {leaf.dimension for _, leaf in iter_leaves(self)}
        if len(dims) > 1:
            raise SemanticError(f"mixed throughput dimensions: {', '.join(sorted(dims))}")
        seen = set()
        for _, leaf in iter_leaves(self):
            if leaf.label is None:
                continue
            if leaf.label in seen:
                raise SemanticError(f"duplicate label {leaf.label!r}")
            seen.add(leaf.label)


class Series(_Composite):
    """Children traversed one after another; throughput is their minimum."""


class Parallel(_Composite):
    """Children sharing the load; throughput is their sum."""


SystemNode = Union[Leaf, Series, Parallel]


def series(*children) -> Series:
    return Series(tuple(_as_node(c) for c in children))


def parallel(*children) -> Parallel:
    return Parallel(tuple(_as_node(c) for c in children))


def _as_node(value) -> SystemNode:
    if isinstance(value, (Leaf, Series, Parallel)):
        return value
    return Leaf(value)


def iter_leaves(node: SystemNode, path: tuple = ()) -> Iterator[tuple[tuple, Leaf]]:
    """Yield ``(path, leaf)`` pairs in left-to-right order."""
    if isinstance(node, Leaf):
        yield path, node
        return
    for i, child in enumerate(node.children):
        yield from iter_leaves(child, path + (i,))


def dimension(node: SystemNode) -> str:
    return next(iter_leaves(node))[1].dimension


def subtree(node: SystemNode, path: tuple) -> SystemNode:
    for i in path:
        node = node.children[i]
    return node


def with_throughputs(node: SystemNode, values: dict, path: tuple = ()) -> SystemNode:
    """Copy of ``node`` with the leaves at the paths in ``values`` replaced."""
    if isinstance(node, Leaf):
        if path in values:
            return Leaf(values[path], node.label, node.dimension)
        return node
    return type(node)(tuple(with_throughputs(c, values, path + (i,)) for i, c in enumerate(node.children)))


def max_throughput(node: SystemNode) -> float:
    if isinstance(node, Leaf):
        return node.throughput
    values = [max_throughput(c) for c in node.children]
    if isinstance(node, Series):
        return min(values)
    return math.fsum(values)


def _critical(node: SystemNode, path: tuple, found: list, ties: list) -> None:
    # collects leaves whose small increase raises this subtree's throughput
    if isinstance(node, Leaf):
        found.append(path)
        return
    if isinstance(node, Parallel):
        for i, c in enumerate(node.children):
            _critical(c, path + (i,), found, ties)
        return
    values = [max_throughput(c) for c in node.children]
    low = min(values)
    at_min = [i for i, v in enumerate(values) if v == low]
    if len(at_min) > 1:
        ties.append(tuple(path + (i,) for i in at_min))
        return
    i = at_min[0]
    _critical(node.children[i], path + (i,), found, ties)


def bottleneck_leaves(node: SystemNode) -> frozenset:
    """Paths of the leaves that limit system throughput.

    A leaf is a bottleneck when raising its throughput by any positive
    amount raises the system's.  If two or more series stages tie for the
    minimum, raising one alone changes nothing, so that part of the tree
    contributes no bottleneck; see :func:`tied_stages`.
    """
    found: list = []
    _critical(node, (), found, [])
    return frozenset(found)


def tied_stages(node: SystemNode) -> list[tuple]:
    """Groups of series-stage paths that tie for the limiting throughput."""
    ties: list = []
    _critical(node, (), [], ties)
    return ties


@dataclass(frozen=True)
class BottleneckReport:
    system_throughput: float
    bottleneck_leaves: frozenset
    slack: dict
    balanced_targets: dict
    tied_stages: list = field(default_factory=list)


def _demands(node: SystemNode, demand: float, path: tuple, out: dict) -> None:
    if isinstance(node, Leaf):
        out[path] = demand
        return
    if isinstance(node, Series):
        for i, c in enumerate(node.children):
            _demands(c, demand, path + (i,), out)
        return
    caps = [max_throughput(c) for c in node.children]
    total = math.fsum(caps)
    for i, (c, cap) in enumerate(zip(node.children, caps)):
        share = cap if demand >= total else cap * (demand / total)
        _demands(c, share, path + (i,), out)


def slack_report(node: SystemNode) -> BottleneckReport:
    """Balance the system at its current maximum throughput.

    The system throughput is pushed down from the root as a demand.
    Series stages each carry the full demand; parallel branches split it
    in proportion to their capacity.  A leaf's slack is its throughput
    minus the demand reaching it, which is how far it can be reduced
    without lowering system throughput.
    """
    total = max_throughput(node)
    demand: dict = {}
    _demands(node, total, (), demand)
    slack = {}
    targets = {}
    for path, leaf in iter_leaves(node):
        # demand can exceed capacity by an ulp through the proportional split
        d = min(demand[path], leaf.throughput)
        slack[path] = leaf.throughput - d
        targets[path] = d
    return BottleneckReport(
        system_throughput=total,
        bottleneck_leaves=bottleneck_leaves(node),
        slack=slack,
        balanced_targets=targets,
        tied_stages=tied_stages(node),
    )


def trees_close(a: SystemNode, b: SystemNode, rel_tol: float = 1e-12) -> bool:
    """Structural equality with a relative tolerance on leaf throughputs."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Leaf):
        return (
            a.label == b.label
            and a.dimension == b.dimension
            and math.isclose(a.throughput, b.throughput, rel_tol=rel_tol)
        )
    return len(a.children) == len(b.children) and all(
        trees_close(x, y, rel_tol) for x, y in zip(a.children, b.children)
    )


def leaf_at(node: SystemNode, path: tuple) -> Leaf:
    found = subtree(node, path)
    if not isinstance(found, Leaf):
        raise DomainError(f"path {path} does not name a leaf")
    return found
