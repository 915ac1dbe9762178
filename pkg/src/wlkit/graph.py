"""Undirected simple graphs, relabelings and atomic types of node tuples."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

Edge = tuple[int, int]
Feature = tuple[float, ...]

MAX_NODES = 2**31 - 1


class GraphError(ValueError):
    pass


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _feature(vec) -> Feature:
    return tuple(float(x) for x in vec)


def feature_key(vec: Optional[Feature]) -> tuple[str, ...]:
    """Bitwise-exact key for a feature vector (0.0 and -0.0 differ)."""
    if vec is None:
        return ()
    return tuple(float(x).hex() for x in vec)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph on nodes ``0..n-1``.

    ``edges`` holds each unordered pair once as ``(u, v)`` with ``u < v``;
    adjacency is symmetric by construction. Build instances through
    :func:`build_graph`, which validates and normalizes the input.
    """

    n: int
    edges: frozenset[Edge]
    node_features: Optional[tuple[Feature, ...]] = None
    edge_features: Optional[Mapping[Edge, Feature]] = field(default=None, hash=False)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def edge_feature(self, u: int, v: int) -> Optional[Feature]:
        if self.edge_features is None:
            return None
        return self.edge_features.get(_edge(u, v))

    @property
    def feature_dim(self) -> Optional[int]:
        if self.node_features is None:
            return None
        return len(self.node_features[0]) if self.n else 0

    def __repr__(self) -> str:
        extra = ""
        if self.node_features is not None:
            extra += f", d={self.feature_dim}"
        if self.edge_features is not None:
            extra += ", edge_features"
        return f"Graph(n={self.n}, m={len(self.edges)}{extra})"


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]] = (),
    node_features: Optional[Sequence[Sequence[float]]] = None,
    edge_features: Optional[Mapping[Sequence[int], Sequence[float]]] = None,
) -> Graph:
    """Validate and normalize a graph description.

    Edges are deduplicated and symmetrized. Raises :class:`GraphError` on
    out-of-range endpoints, self-loops, ragged features, or edge-feature keys
    that are not edges.
    """
    if not isinstance(n, (int, np.integer)) or n < 0 or n > MAX_NODES:
        raise GraphError(f"node count must be an integer in [0, {MAX_NODES}], got {n!r}")
    n = int(n)
    es = set()
    for pair in edges:
        if len(pair) != 2:
            raise GraphError(f"edge must be a pair, got {pair!r}")
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at node {u}")
        es.add(_edge(u, v))

    nf = None
    if node_features is not None:
        if len(node_features) != n:
            raise GraphError(f"expected {n} node feature vectors, got {len(node_features)}")
        nf = tuple(_feature(x) for x in node_features)
        dims = {len(x) for x in nf}
        if len(dims) > 1:
            raise GraphError(f"node features have inconsistent dimensions {sorted(dims)}")

    ef = None
    if edge_features is not None:
        ef = {}
        for key, vec in edge_features.items():
            u, v = int(key[0]), int(key[1])
            e = _edge(u, v)
            if e not in es:
                raise GraphError(f"edge feature given for non-edge ({u}, {v})")
            ef[e] = _feature(vec)
        if set(ef) != es:
            missing = sorted(es - set(ef))
            raise GraphError(f"edges without features: {missing[:5]}")
        dims = {len(x) for x in ef.values()}
        if len(dims) > 1:
            raise GraphError(f"edge features have inconsistent dimensions {sorted(dims)}")

    return Graph(n, frozenset(es), nf, ef)


def neighbors(g: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise GraphError(f"node {v} out of range for n={g.n}")
    return g.adj[v]


def check_permutation(p: Sequence[int], n: Optional[int] = None) -> tuple[int, ...]:
    """Return ``p`` as a tuple after checking it is a bijection on ``0..len(p)-1``."""
    p = tuple(int(x) for x in p)
    if n is not None and len(p) != n:
        raise GraphError(f"permutation has size {len(p)}, graph has {n} nodes")
    if sorted(p) != list(range(len(p))):
        raise GraphError("permutation is not a bijection")
    return p


def apply_permutation(g: Graph, p: Sequence[int]) -> Graph:
    """Relabel ``g`` so node ``v`` becomes ``p[v]``; features follow their nodes and edges."""
    p = check_permutation(p, g.n)
    edges = frozenset(_edge(p[u], p[v]) for u, v in g.edges)
    nf = None
    if g.node_features is not None:
        out: list[Feature] = [()] * g.n
        for v, x in enumerate(g.node_features):
            out[p[v]] = x
        nf = tuple(out)
    ef = None
    if g.edge_features is not None:
        ef = {_edge(p[u], p[v]): x for (u, v), x in g.edge_features.items()}
    return Graph(g.n, edges, nf, ef)


def inverse_permutation(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


@dataclass(frozen=True)
class AtomicType:
    """Isomorphism type of the subgraph induced by an ordered node tuple.

    ``equality`` is only filled in equality-aware mode; by default a repeated
    entry such as ``(v, v)`` has the same type as a non-adjacent pair.
    """

    features: tuple[tuple[str, ...], ...]
    adjacency: tuple[tuple[int, ...], ...]
    edge_features: Optional[tuple[tuple[tuple[str, ...], ...], ...]] = None
    equality: Optional[tuple[tuple[int, ...], ...]] = None


def atomic_type(g: Graph, t: Sequence[int], equality_aware: bool = False) -> AtomicType:
    for v in t:
        if not 0 <= v < g.n:
            raise GraphError(f"tuple entry {v} out of range for n={g.n}")
    k = len(t)
    feats = tuple(
        feature_key(g.node_features[v] if g.node_features is not None else None) for v in t
    )
    adj = tuple(tuple(int(t[i] != t[j] and g.has_edge(t[i], t[j])) for j in range(k)) for i in range(k))
    ef = None
    if g.edge_features is not None:
        ef = tuple(
            tuple(feature_key(g.edge_feature(t[i], t[j]) if adj[i][j] else None) for j in range(k))
            for i in range(k)
        )
    eq = None
    if equality_aware:
        eq = tuple(tuple(int(t[i] == t[j]) for j in range(k)) for i in range(k))
    return AtomicType(feats, adj, ef, eq)


# --- generators -------------------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return build_graph(n, combinations(range(n), 2))


def star(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Nodes of ``g2`` are shifted by ``g1.n``. Both graphs must agree on feature presence."""
    if (g1.node_features is None) != (g2.node_features is None):
        raise GraphError("cannot union a featured graph with a featureless one")
    if (g1.edge_features is None) != (g2.edge_features is None):
        raise GraphError("cannot union graphs that disagree on edge features")
    s = g1.n
    edges = list(g1.edges) + [(u + s, v + s) for u, v in g2.edges]
    nf = None
    if g1.node_features is not None:
        nf = list(g1.node_features) + list(g2.node_features)
    ef = None
    if g1.edge_features is not None:
        ef = dict(g1.edge_features)
        ef.update({(u + s, v + s): x for (u, v), x in g2.edge_features.items()})
    return build_graph(g1.n + g2.n, edges, nf, ef)


def random_gnp(n: int, p: float, seed: int) -> Graph:
    if n < 0 or not 0.0 <= p <= 1.0:
        raise GraphError(f"infeasible G(n, p) parameters n={n}, p={p}")
    rng = random.Random(seed)
    return build_graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_regular(n: int, d: int, seed: int, max_tries: int = 10_000) -> Graph:
    """Uniform-ish d-regular graph via the pairing model, rejecting loops and multi-edges."""
    if n < 1 or d < 0 or d >= n or (n * d) % 2:
        raise GraphError(f"no simple {d}-regular graph on {n} nodes")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(stubs)
        es = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            e = _edge(u, v)
            if u == v or e in es:
                ok = False
                break
            es.add(e)
        if ok:
            return build_graph(n, es)
    raise GraphError(f"pairing model failed {max_tries} times for n={n}, d={d}")


def random_permutation(n: int, seed: int) -> tuple[int, ...]:
    p = list(range(n))
    random.Random(seed).shuffle(p)
    return tuple(p)


FAMILIES = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "star": star,
    "disjoint_union": disjoint_union,
    "random_gnp": random_gnp,
    "random_regular": random_regular,
}


def generate(family: str, **params) -> Graph:
    """Dispatch to a named generator, e.g. ``generate("random_regular", n=8, d=3, seed=7)``."""
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return fn(**params)
