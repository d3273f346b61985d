"""Text format for system topologies (``.topo`` files).

Grammar::

    system   := node EOF
    node     := "series" "(" nodelist ")" | "parallel" "(" nodelist ")" | leaf
    nodelist := node ("," node)*
    leaf     := [IDENT "="] NUMBER [UNIT]

``#`` starts a comment running to the end of the line.  Units are
``B/s`` and ``ops/s`` with an optional decimal prefix K, M, G or T.  One
file uses one dimension family; plain numbers are allowed only when no
leaf in the file has a unit.

>>> max_throughput(parse("series(9 GB/s, parallel(4 GB/s, 3 GB/s), 6 GB/s, 10 GB/s)"))
6000000000.0
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DomainError, ParseError, SemanticError
from .topology import Leaf, Parallel, Series, SystemNode, dimension, max_throughput  # noqa: F401
from .units import BASE_UNIT, TASKS, THROUGHPUT_UNITS

KEYWORDS = ("series", "parallel")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)
  | (?P<unit>[A-Za-z]+/[A-Za-z]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # number, unit, ident, punct, eof, error
    text: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens.

    An unrecognised character ends the list with an ``error`` token, so
    the parser reports it only if nothing earlier was already wrong.
    """
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            tokens.append(Token("error", text[pos], line, col))
            return tokens
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        # (dimension, token) of every leaf, checked once the tree is built
        self.leaves: list[tuple[str, Token]] = []
        self.labels: dict[str, Token] = {}

    @property
    def tok(self) -> Token:
        t = self.tokens[self.i]
        if t.kind == "error":
            raise ParseError(f"unexpected character {t.text!r}", t.line, t.column)
        return t

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, expected: list[str]):
        t = self.tok
        raise ParseError(f"unexpected {t.describe()}", t.line, t.column, expected)

    def expect_punct(self, char: str) -> Token:
        if self.tok.kind == "punct" and self.tok.text == char:
            return self.advance()
        self.fail([repr(char)])

    def system(self) -> SystemNode:
        node = self.node()
        if self.tok.kind != "eof":
            expected = ["end of input"]
            if self.leaves and self.leaves[-1][1] is self.tokens[self.i - 1] and self.leaves[-1][0] == TASKS:
                expected.insert(0, "unit")
            self.fail(expected)
        return node

    def node(self) -> SystemNode:
        t = self.tok
        if t.kind == "ident" and t.text in KEYWORDS:
            self.advance()
            self.expect_punct("(")
            children = [self.node()]
            while self.tok.kind == "punct" and self.tok.text == ",":
                self.advance()
                children.append(self.node())
            if not (self.tok.kind == "punct" and self.tok.text == ")"):
                expected = ["','", "')'"]
                if self.tokens[self.i - 1].kind == "number":
                    expected.insert(0, "unit")
                self.fail(expected)
            self.advance()
            cls = Series if t.text == "series" else Parallel
            return cls(tuple(children))
        if t.kind in ("ident", "number"):
            return self.leaf()
        self.fail(["'series'", "'parallel'", "label", "number"])

    def leaf(self) -> Leaf:
        label = None
        first = self.tok
        if self.tok.kind == "ident":
            label = self.advance().text
            self.expect_punct("=")
            if label in self.labels:
                raise SemanticError(f"duplicate label {label!r}", first.line, first.column)
            self.labels[label] = first
        if self.tok.kind != "number":
            self.fail(["number"])
        num = self.advance()
        value = float(num.text)
        dim, mult = TASKS, 1.0
        if self.tok.kind == "unit":
            if self.tok.text not in THROUGHPUT_UNITS:
                raise ParseError(
                    f"unknown unit {self.tok.text!r}", self.tok.line, self.tok.column, sorted(THROUGHPUT_UNITS)
                )
            dim, mult = THROUGHPUT_UNITS[self.advance().text]
        if value <= 0:
            raise SemanticError(f"throughput must be positive, got {num.text}", num.line, num.column)
        if not math.isfinite(value * mult):
            raise SemanticError(f"throughput {num.text} is out of range", num.line, num.column)
        self.leaves.append((dim, num))
        return Leaf(value * mult, label, dim)


def parse(source: str) -> SystemNode:
    """Parse topology text into a :data:`SystemNode` tree.

    Raises :class:`ParseError` on malformed text and :class:`SemanticError`
    on well-formed text describing an invalid system.
    """
    p = _Parser(source)
    try:
        tree = p.system()
    except SemanticError as err:
        # composites reject mixed dimensions without a position; report the leaf
        if err.line is None and p.leaves:
            _check_dimensions(p.leaves)
        raise
    _check_dimensions(p.leaves)
    return tree


def _check_dimensions(leaves: list[tuple[str, Token]]) -> None:
    first_dim, _ = leaves[0]
    for dim, tok in leaves[1:]:
        if dim == first_dim:
            continue
        if TASKS in (dim, first_dim):
            msg = "plain numbers are only allowed when no leaf in the file has a unit"
        else:
            msg = f"mixed throughput dimensions: {first_dim} and {dim}"
        raise SemanticError(msg, tok.line, tok.column)


def parse_file(path) -> SystemNode:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _format_value(value: float) -> str:
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def format(node: SystemNode, unit: str | None = None) -> str:  # noqa: A001
    """Canonical single-line text for ``node``.

    ``unit`` selects the display unit (``"GB/s"``, ``"ops/s"``, ...); by
    default the base unit of the tree's dimension is used.  Pass ``""``
    for unitless trees.
    """
    dim = dimension(node)
    if unit is None:
        unit = BASE_UNIT[dim]
    if unit == "":
        unit_dim, mult = TASKS, 1.0
    elif unit in THROUGHPUT_UNITS:
        unit_dim, mult = THROUGHPUT_UNITS[unit]
    else:
        raise DomainError(f"unknown throughput unit {unit!r}")
    if unit_dim != dim:
        raise DomainError(f"display unit {unit!r} does not match tree dimension {dim}")
    return _format(node, unit, mult)


def _format(node: SystemNode, unit: str, mult: float) -> str:
    if isinstance(node, Leaf):
        text = _format_value(node.throughput / mult)
        if unit:
            text += " " + unit
        if node.label is not None:
            text = f"{node.label}={text}"
        return text
    name = "series" if isinstance(node, Series) else "parallel"
    return f"{name}({', '.join(_format(c, unit, mult) for c in node.children)})"
