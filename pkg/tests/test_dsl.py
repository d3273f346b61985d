import pytest
from hypothesis import given, settings

from perfmodels import dsl
from perfmodels.errors import DomainError, ParseError, SemanticError
from perfmodels.topology import Leaf, Parallel, Series, max_throughput, parallel, series, trees_close
from perfmodels.units import BYTES, OPS, TASKS

from .strategies import labelled_trees

MEMORY_TEXT = "series(9 GB/s, parallel(4 GB/s, 3 GB/s), 6 GB/s, 10 GB/s)"


def test_memory_system_parses_to_six_gb():
    tree = dsl.parse(MEMORY_TEXT)
    assert max_throughput(tree) == 6e9
    assert tree == Series(
        (
            Leaf(9e9, None, BYTES),
            Parallel((Leaf(4e9, None, BYTES), Leaf(3e9, None, BYTES))),
            Leaf(6e9, None, BYTES),
            Leaf(10e9, None, BYTES),
        )
    )


def test_unitless_leaf():
    assert dsl.parse("5") == Leaf(5.0)


def test_unit_canonicalization_exact():
    assert dsl.parse("6 GB/s").throughput == 6.0e9
    assert dsl.parse("6GB/s").throughput == 6.0e9
    assert dsl.parse("2.5 Kops/s") == Leaf(2500.0, None, OPS)
    assert dsl.parse("1 TB/s").throughput == 1e12


def test_labels_comments_and_layout():
    text = """
    # memory system
    series(
        l1=9 GB/s,   # cache
        parallel(a=4 GB/s, b=3 GB/s),
        dram = 6 GB/s,
        10 GB/s
    )
    """
    tree = dsl.parse(text)
    assert tree.children[2].label == "dram"
    assert tree.children[1].children[1].label == "b"
    assert max_throughput(tree) == 6e9


def test_format_memory_system():
    assert dsl.format(dsl.parse(MEMORY_TEXT), "GB/s") == MEMORY_TEXT


def test_format_unitless():
    assert dsl.format(Leaf(5.0)) == "5"
    assert dsl.format(series(1, parallel(2, 0.5))) == "series(1, parallel(2, 0.5))"


def test_format_default_is_base_unit():
    assert dsl.format(dsl.parse("parallel(x=1 KB/s, 2 B/s)")) == "parallel(x=1000 B/s, 2 B/s)"


@pytest.mark.parametrize("unit", ["ops/s", "", "furlongs"])
def test_format_dimension_mismatch(unit):
    with pytest.raises(DomainError):
        dsl.format(dsl.parse(MEMORY_TEXT), unit)


@pytest.mark.parametrize(
    "text",
    [
        "series(1 GB/s, 2 ops/s)",
        "series(1 GB/s, 2)",
        "series(1, 2 GB/s)",
        "0",
        "series(1, 0.0)",
        "series(a=1, a=2)",
        "1e400",
    ],
)
def test_semantic_errors(text):
    with pytest.raises(SemanticError) as info:
        dsl.parse(text)
    assert info.value.line is not None


def test_semantic_error_points_at_offending_leaf():
    with pytest.raises(SemanticError) as info:
        dsl.parse("series(1 GB/s,\n   2 ops/s)")
    assert (info.value.line, info.value.column) == (2, 4)
    with pytest.raises(SemanticError) as info:
        dsl.parse("parallel(a=1, b=2, a=3)")
    assert (info.value.line, info.value.column) == (1, 20)


# (text, line, column) of the first offending token
MALFORMED = [
    ("", 1, 1),
    ("   ", 1, 4),
    ("series", 1, 7),
    ("series 1", 1, 8),
    ("series()", 1, 8),
    ("series(1, )", 1, 11),
    ("series(1 2)", 1, 10),
    ("series(1,", 1, 10),
    ("series(1", 1, 9),
    ("5 GB/s extra", 1, 8),
    ("5 5", 1, 3),
    ("-5", 1, 1),
    ("1 XB/s", 1, 3),
    ("a 5", 1, 3),
    ("a = ", 1, 5),
    ("a = b", 1, 5),
    ("series(1 GB/s,\n  @)", 2, 3),
    ("parallel(1,\n2,\n# note\n   ))", 4, 4),
    ("series(1)) ", 1, 10),
    ("foo(1)", 1, 4),
    ("GB/s", 1, 1),
    ("series(1 GB/sx)", 1, 10),
    ("series(1 2) @", 1, 10),
    ("series(1, 2) @", 1, 14),
]


@pytest.mark.parametrize("text, line, column", MALFORMED)
def test_parse_error_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        dsl.parse(text)
    err = info.value
    assert (err.line, err.column) == (line, column), str(err)
    assert f"line {line}, column {column}" in str(err)


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        dsl.parse("series(1 2)")
    assert "')'" in info.value.expected and "','" in info.value.expected


def test_parse_file(tmp_path):
    path = tmp_path / "memory_system.topo"
    path.write_text(MEMORY_TEXT + "\n", encoding="utf-8")
    assert max_throughput(dsl.parse_file(path)) == 6e9


@settings(max_examples=1000)
@given(labelled_trees())
def test_round_trip(tree):
    text = dsl.format(tree)
    back = dsl.parse(text)
    assert trees_close(back, tree, rel_tol=1e-12), text
    assert "\n" not in text


@settings(max_examples=300)
@given(labelled_trees())
def test_round_trip_prefixed_unit(tree):
    unit = {TASKS: "", BYTES: "GB/s", OPS: "Mops/s"}[tree.dimension if isinstance(tree, Leaf) else dsl.dimension(tree)]
    back = dsl.parse(dsl.format(tree, unit))
    assert trees_close(back, tree, rel_tol=1e-12)
