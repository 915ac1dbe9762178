import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from reference import class_sizes, partition, ref_kfwl, ref_kwl, ref_wl1
from wlkit.engine import ColorTable, Verdict, compare, run_refinement, same_partition
from wlkit.graph import GraphError, build_graph, cycle, path, random_regular, star
from wlkit.variants import (
    AlgorithmDescriptor,
    Variant,
    certificate,
    init_colors,
    kfwl,
    kfwl_round,
    kfwl_signatures,
    kwl,
    kwl_round,
    parse_algorithm,
    tuple_index,
    wl1,
    wl1_round,
)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        AlgorithmDescriptor(Variant.KWL, 0)
    with pytest.raises(ValueError):
        AlgorithmDescriptor(Variant.KFWL, 1)
    with pytest.raises(ValueError):
        AlgorithmDescriptor(Variant.KWL)
    assert kfwl(2).name == "2-FWL" and kwl(3).name == "3-WL" and wl1().name == "1-WL"


@pytest.mark.parametrize(
    "text, expected",
    [("wl1", wl1()), ("1-wl", wl1()), ("2-wl", kwl(2)), ("2-FWL", kfwl(2)), ("kwl", kwl(3))],
)
def test_parse_algorithm(text, expected):
    k = 3 if text == "kwl" else None
    assert parse_algorithm(text, k) == expected


def test_tuple_index_row_major():
    assert tuple_index((1, 2), 6) == 8
    assert tuple_index((1, 0, 2), 3) == 11


def test_init_wl1_uniform(hexagon):
    c = init_colors(wl1(), hexagon, ColorTable())
    assert c.num_classes == 1


def test_init_2wl_counts(triangles):
    c = init_colors(kwl(2), triangles, ColorTable())
    assert sorted(c.histogram().values()) == [12, 24]


def test_init_kwl_equals_kfwl(hexagon):
    a = init_colors(kwl(2), hexagon, ColorTable())
    b = init_colors(kfwl(2), hexagon, ColorTable())
    assert same_partition(a, b)


def test_wl1_rejects_edge_features():
    g = build_graph(2, [(0, 1)], edge_features={(0, 1): [1.0]})
    with pytest.raises(GraphError):
        init_colors(wl1(), g, ColorTable())
    assert run_refinement(kwl(2), g).rounds >= 1


def test_edge_features_separate_tuples():
    g = build_graph(3, [(0, 1), (1, 2)], edge_features={(0, 1): [1.0], (1, 2): [2.0]})
    plain = build_graph(3, [(0, 1), (1, 2)])
    assert run_refinement(kwl(2), g).final.num_classes > run_refinement(kwl(2), plain).final.num_classes
    h = build_graph(3, [(0, 1), (1, 2)], edge_features={(0, 1): [1.0], (1, 2): [1.0]})
    assert compare(kfwl(2), g, h).verdict is Verdict.DISTINGUISHED


def test_wl1_round_examples(hexagon):
    ct = ColorTable()
    c0 = init_colors(wl1(), hexagon, ct)
    assert wl1_round(hexagon, c0, ct).num_classes == 1
    p = path(3)
    c1 = wl1_round(p, init_colors(wl1(), p, ct), ct)
    assert c1.colors[0] == c1.colors[2] != c1.colors[1]
    s = star(3)
    c1 = wl1_round(s, init_colors(wl1(), s, ct), ct)
    assert sorted(c1.histogram().values()) == [1, 3]
    with pytest.raises(ValueError):
        wl1_round(p, c0, ct)


def test_kwl_round_triangles_multisets(triangles):
    ct = ColorTable()
    c0 = init_colors(kwl(2), triangles, ct)
    grey, yellow = c0.colors[tuple_index((0, 0), 6)], c0.colors[tuple_index((0, 1), 6)]
    grid = c0.colors.reshape(6, 6)
    for a in range(6):
        for b in range(6):
            pos1 = sorted(grid[:, b].tolist())  # first entry varies
            pos2 = sorted(grid[a, :].tolist())
            assert pos1 == pos2 == sorted([grey] * 4 + [yellow] * 2)
    c1 = kwl_round(triangles, 2, c0, ct)
    assert sorted(c1.histogram().values()) == [12, 24]
    assert same_partition(c0, c1)


def test_kwl_k1_stabilizes_at_init():
    g = path(4)
    r = run_refinement(kwl(1), g)
    assert r.iterations == 1 and same_partition(r.history[0], r.history[1])


def test_kwl_single_edge():
    g = build_graph(2, [(0, 1)])
    ct = ColorTable()
    c0 = init_colors(kwl(2), g, ct)
    assert c0.colors[1] == c0.colors[2] != c0.colors[0] == c0.colors[3]
    assert kwl_round(g, 2, c0, ct).num_classes == 2


def test_kfwl_round_counts(triangles, hexagon):
    ct = ColorTable()
    for g, sizes in [(triangles, [6, 12, 18]), (hexagon, [6, 6, 12, 12])]:
        c1 = kfwl_round(g, 2, init_colors(kfwl(2), g, ct), ct)
        assert sorted(c1.histogram().values()) == sizes


def test_kfwl_hexagon_adjacent_signature(hexagon):
    ct = ColorTable()
    c0 = init_colors(kfwl(2), hexagon, ct)
    G, Y = int(c0.colors[0]), int(c0.colors[1])
    (sig,) = kfwl_signatures(6, 2, c0.colors, 1, 2)  # tuple (0, 1)
    assert sig[0] == Y
    vecs = sorted(zip(sig[1::2], sig[2::2]))
    assert vecs == sorted([(Y, G)] * 2 + [(G, Y)] * 2 + [(G, G)] * 2)


def test_kfwl_single_node():
    r = run_refinement(kfwl(2), build_graph(1, []))
    assert r.rounds == 1 and r.final.num_classes == 1
    with pytest.raises(ValueError):
        kfwl_round(build_graph(1, []), 1, r.final, ColorTable())


def test_certificates(hexagon, triangles):
    assert sorted(certificate(run_refinement(kwl(2), hexagon)).values()) == [12, 24]
    assert list(certificate(run_refinement(wl1(), triangles)).values()) == [6]
    assert sorted(certificate(run_refinement(kfwl(2), hexagon)).values()) == [6, 6, 12, 12]


def _adj(g):
    return [set(g.adj[v]) for v in range(g.n)]


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=5), st.sampled_from([("wl1", None), ("kwl", 1), ("kwl", 2), ("kwl", 3), ("kfwl", 2), ("kfwl", 3)]))
def test_matches_literal_reference(g, case):
    name, k = case
    alg = parse_algorithm(name, k)
    r = run_refinement(alg, g)
    if name == "wl1":
        ref = ref_wl1(g.n, _adj(g), r.iterations)
        keys = list(range(g.n))
    elif name == "kwl":
        ref = ref_kwl(g.n, _adj(g), k, r.iterations)
        keys = sorted(ref[0])
    else:
        ref = ref_kfwl(g.n, _adj(g), k, r.iterations)
        keys = sorted(ref[0])
    for coloring, expected in zip(r.history, ref):
        got = {key: int(c) for key, c in zip(keys, coloring.colors)}
        assert partition(got, keys) == partition(expected, keys)


def test_reference_distance_classes(triangles, hexagon):
    assert class_sizes(ref_kfwl(6, _adj(triangles), 2, 1)[1]) == [6, 12, 18]
    assert class_sizes(ref_kfwl(6, _adj(hexagon), 2, 1)[1]) == [6, 6, 12, 12]


@pytest.mark.parametrize("seed", range(5))
def test_regular_blindness_of_wl1(seed):
    a, b = random_regular(10, 3, seed), random_regular(10, 3, seed + 100)
    assert compare(wl1(), a, b).verdict is Verdict.EQUIVALENT_UNDER_TEST


def test_threads_give_identical_history():
    g = random_regular(14, 3, 1)
    for alg in (kwl(2), kfwl(2), kwl(3)):
        a, b = run_refinement(alg, g, threads=1), run_refinement(alg, g, threads=4)
        assert len(a.history) == len(b.history)
        assert all(np.array_equal(x.colors, y.colors) for x, y in zip(a.history, b.history))
