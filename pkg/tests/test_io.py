import pytest

from pavingwalk.bitset import mask_of
from pavingwalk.errors import FormatError
from pavingwalk.hamilton import complete_graph
from pavingwalk.ioformats import (
    format_matroid,
    parse_graph,
    parse_matroid,
    read_graph_file,
    read_matroid_file,
    write_bases_file,
    write_family_file,
    write_graph_file,
    write_matroid_file,
)
from pavingwalk.matroid import uniform_matroid
from pavingwalk.paving import CircuitFamily


def test_matroid_roundtrip(tmp_path):
    M = uniform_matroid(4, 2)
    path = tmp_path / "u24.txt"
    write_bases_file(path, M)
    mf = read_matroid_file(path)
    assert (mf.kind, mf.m, mf.r) == ("bases", 4, 2)
    assert mf.to_matroid().bases == M.bases


def test_family_roundtrip(tmp_path, k4_family):
    path = tmp_path / "k4.txt"
    write_family_file(path, k4_family)
    mf = read_matroid_file(path)
    assert mf.kind == "circuits"
    assert mf.to_family().circuits == k4_family.circuits


def test_comments_and_blank_lines():
    text = """
# a paving matroid
4 2   # header

bases
0 1
# middle comment
0 2
"""
    mf = parse_matroid(text)
    assert mf.sets == (mask_of({0, 1}), mask_of({0, 2}))


def test_sets_must_be_strictly_increasing():
    with pytest.raises(FormatError):
        parse_matroid("3 2\nbases\n1 0\n")
    with pytest.raises(FormatError):
        parse_matroid("3 2\nbases\n0 0\n")


def test_header_and_keyword_errors():
    with pytest.raises(FormatError):
        parse_matroid("3\nbases\n0 1\n")
    with pytest.raises(FormatError):
        parse_matroid("3 2\nsets\n0 1\n")
    with pytest.raises(FormatError):
        parse_matroid("3 2\n")
    with pytest.raises(FormatError):
        parse_matroid("3 2\nbases\n0 7\n")


def test_kind_mismatch():
    mf = parse_matroid("3 2\nbases\n0 1\n")
    with pytest.raises(FormatError):
        mf.to_family()
    mf2 = parse_matroid("3 2\ncircuits\n0 1\n")
    with pytest.raises(FormatError):
        mf2.to_matroid()


def test_format_matroid_sorted_output():
    text = format_matroid("bases", 4, 2, [mask_of({1, 2}), mask_of({0, 3})])
    lines = text.splitlines()
    assert lines == ["4 2", "bases", "0 3", "1 2"]


def test_graph_roundtrip(tmp_path):
    g = complete_graph(4)
    path = tmp_path / "k4.graph"
    write_graph_file(path, g)
    again = read_graph_file(path)
    assert again == g


def test_graph_parse_errors():
    with pytest.raises(FormatError):
        parse_graph("")
    with pytest.raises(FormatError):
        parse_graph("x\n0 1\n")
    with pytest.raises(FormatError):
        parse_graph("3\n0 1 2\n")
    with pytest.raises(FormatError):
        parse_graph("3\n0 q\n")
