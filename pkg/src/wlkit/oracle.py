"""Exact isomorphism by backtracking, for validating WL verdicts on small graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .graph import Graph, GraphError, apply_permutation, build_graph, feature_key

MAX_ORACLE_NODES = 10
MAX_ENUM_NODES = 6


@dataclass(frozen=True)
class IsoWitness:
    isomorphic: bool
    permutation: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _node_label(g: Graph, v: int):
    nf = g.node_features
    return (g.degree(v), feature_key(nf[v]) if nf is not None else ())


def _edge_label(g: Graph, u: int, v: int):
    if not g.has_edge(u, v):
        return None
    return feature_key(g.edge_feature(u, v))


def _invariant(g: Graph):
    return (
        g.n,
        len(g.edges),
        g.node_features is None,
        g.edge_features is None,
        sorted(_node_label(g, v) for v in range(g.n)),
        sorted(feature_key(x) for x in g.edge_features.values()) if g.edge_features else None,
    )


def is_isomorphic(g1: Graph, g2: Graph) -> IsoWitness:
    """Decide isomorphism exactly; the witness maps nodes of ``g1`` onto ``g2``.

    Candidates are restricted to nodes with the same (degree, feature) label
    and consistent edges to every node already mapped. Graphs above
    ``MAX_ORACLE_NODES`` nodes are rejected.
    """
    if max(g1.n, g2.n) > MAX_ORACLE_NODES:
        raise GraphError(f"oracle is limited to {MAX_ORACLE_NODES} nodes")
    if _invariant(g1) != _invariant(g2):
        return IsoWitness(False)
    n = g1.n
    lab1 = [_node_label(g1, v) for v in range(n)]
    lab2 = [_node_label(g2, v) for v in range(n)]
    # Most constrained first: high degree, then visit neighbors of mapped nodes early.
    order: list[int] = []
    seen: set[int] = set()
    for root in sorted(range(n), key=lambda v: (-g1.degree(v), v)):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(g1.adj[v], key=lambda x: (-g1.degree(x), x)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    mapping = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        u = order[pos]
        for x in range(n):
            if used[x] or lab2[x] != lab1[u]:
                continue
            if any(
                _edge_label(g1, u, order[j]) != _edge_label(g2, x, mapping[order[j]])
                for j in range(pos)
            ):
                continue
            mapping[u] = x
            used[x] = True
            if extend(pos + 1):
                return True
            used[x] = False
            mapping[u] = -1
        return False

    if not extend(0):
        return IsoWitness(False)
    perm = tuple(mapping)
    if apply_permutation(g1, perm) != g2:
        raise AssertionError("oracle produced an invalid witness")
    return IsoWitness(True, perm)


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All labeled featureless simple graphs on ``n`` nodes, ordered by edge bitmask.

    Bit ``b`` of the mask selects the ``b``-th pair of ``combinations(range(n), 2)``.
    """
    if not 0 <= n <= MAX_ENUM_NODES:
        raise GraphError(f"enumeration is limited to n <= {MAX_ENUM_NODES}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield build_graph(n, [p for b, p in enumerate(pairs) if mask >> b & 1])


def isomorphism_classes(graphs: list[Graph]) -> list[int]:
    """Label each graph with the index of its isomorphism class.

    Classes are formed by testing against one representative per class, so the
    labels are exact; ``labels[i] == labels[j]`` iff the graphs are isomorphic.
    """
    reps: dict[tuple, list[tuple[int, Graph]]] = {}
    labels = []
    next_label = 0
    for g in graphs:
        bucket = reps.setdefault(repr(_invariant(g)), [])
        for label, rep in bucket:
            if is_isomorphic(rep, g):
                labels.append(label)
                break
        else:
            bucket.append((next_label, g))
            labels.append(next_label)
            next_label += 1
    return labels
