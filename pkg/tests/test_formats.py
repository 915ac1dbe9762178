import json

import pytest

from wlkit.engine import compare, run_refinement
from wlkit.formats import (
    COMPARE_SCHEMA,
    TRACE_SCHEMA,
    GraphFormatError,
    display_color,
    histogram_from_json,
    parse_graph,
    serialize_graph,
    trace_document,
    write_comparison_report,
    write_trace,
)
from wlkit.graph import GraphError, build_graph, cycle
from wlkit.oracle import enumerate_graphs
from wlkit.variants import kfwl, kwl, wl1


def test_parse_edgelist_hexagon():
    assert parse_graph("6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0", "edgelist") == cycle(6)


def test_parse_edgelist_single_node_and_comments():
    assert parse_graph("1\n", "edgelist") == build_graph(1, [])
    assert parse_graph("# header\n3  # nodes\n0 1 # edge\n\n", "edgelist") == build_graph(3, [(0, 1)])


def test_parse_json_triangle():
    assert parse_graph('{"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}') == cycle(3)


@pytest.mark.parametrize(
    "text, line",
    [("3\n0 x\n", 2), ("3\n0 1 2\n", 2), ("a\n", 1), ("2 3\n", 1)],
)
def test_edgelist_syntax_errors(text, line):
    with pytest.raises(GraphFormatError) as e:
        parse_graph(text, "edgelist")
    assert e.value.line == line


def test_semantic_errors_propagate():
    with pytest.raises(GraphError):
        parse_graph("2\n0 0\n", "edgelist")
    with pytest.raises(GraphFormatError):
        parse_graph('{"n": 3, "edges": [[0, 1]', "json")
    with pytest.raises(GraphFormatError):
        parse_graph("", "edgelist")


def test_features_round_trip():
    g = build_graph(3, [(0, 1), (1, 2)], [[1.0, 0.5], [2.0, 0.0], [1.0, -0.0]], {(0, 1): [1.5], (2, 1): [2.0]})
    assert parse_graph(serialize_graph(g)) == g
    with pytest.raises(ValueError):
        serialize_graph(g, "edgelist")


@pytest.mark.parametrize("fmt", ["json", "edgelist"])
def test_round_trip_enumeration(fmt):
    for n in range(1, 6):
        for g in enumerate_graphs(n):
            text = serialize_graph(g, fmt)
            h = parse_graph(text, fmt)
            assert h == g
            assert serialize_graph(h, fmt) == text


def test_trace_2wl_hexagon(hexagon):
    r = run_refinement(kwl(2), hexagon)
    doc = json.loads(write_trace(r, hexagon, "json"))
    assert doc["schema"] == TRACE_SCHEMA
    assert doc["rounds"] == r.rounds == len(doc["history"]) - 1
    grid = doc["history"][0]["grid"]
    labels = [x for row in grid for x in row]
    assert sorted(labels.count(x) for x in set(labels)) == [12, 24]
    for i, entry in enumerate(doc["history"]):
        assert histogram_from_json(entry["histogram"]) == r.history[i].histogram()
        assert sum(entry["histogram"].values()) == 36


def test_trace_2fwl_hexagon(hexagon):
    r = run_refinement(kfwl(2), hexagon)
    doc = trace_document(r, 6)
    assert len({x for row in doc["history"][1]["grid"] for x in row}) == 4
    dot = write_trace(r, hexagon, "dot")
    assert dot.startswith("graph trace {") and "round1" in dot and "<TABLE" in dot


def test_trace_single_node_1wl():
    g = build_graph(1, [])
    r = run_refinement(wl1(), g)
    doc = trace_document(r, 1)
    assert doc["rounds"] == 1 and doc["history"][-1]["num_classes"] == 1
    dot = write_trace(r, g, "dot")
    assert "r1_0" in dot and "fillcolor" in dot


def test_dot_rejects_k3(hexagon):
    r = run_refinement(kwl(3), cycle(4))
    with pytest.raises(ValueError):
        write_trace(r, cycle(4), "dot")
    json.loads(write_trace(r, cycle(4), "json"))


def test_palette():
    assert [display_color(i) for i in range(6)] == ["grey", "yellow", "orange", "brown", "blue", "purple"]
    assert display_color(7).startswith("#") and display_color(7) == display_color(7)
    assert display_color(7) != display_color(8)


def test_comparison_reports(triangles, hexagon):
    doc = json.loads(write_comparison_report(compare(kfwl(2), triangles, hexagon)))
    assert doc["schema"] == COMPARE_SCHEMA
    assert doc["verdict"] == "DISTINGUISHED" and doc["first_distinguishing_round"] == 1
    assert len(doc["history"]) == 2
    doc = json.loads(write_comparison_report(compare(kwl(2), triangles, hexagon)))
    assert doc["verdict"] == "EQUIVALENT_UNDER_TEST" and doc["first_distinguishing_round"] is None
    for alg in (wl1(), kwl(2), kfwl(2)):
        doc = json.loads(write_comparison_report(compare(alg, hexagon, hexagon)))
        assert doc["verdict"] == "EQUIVALENT_UNDER_TEST"
