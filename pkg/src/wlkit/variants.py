"""Initialization and round updates for 1-WL, k-WL and k-FWL.

k-tuples are indexed row-major: ``(v_1, ..., v_k) -> sum(v_i * n**(k - i))``.
Round signatures are flat tuples of color ids whose first entry is the
previous color, followed by the aggregated neighborhood in canonical order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Any, Optional

import numpy as np

from .engine import ColorTable, Coloring, Histogram, RefinementResult, Signature
from .graph import Graph, GraphError, atomic_type, feature_key


class Variant(str, enum.Enum):
    WL1 = "wl1"
    KWL = "kwl"
    KFWL = "kfwl"


@dataclass(frozen=True)
class AlgorithmDescriptor:
    variant: Variant
    k: Optional[int] = None
    equality_aware: bool = False

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.variant is Variant.WL1:
            if self.k not in (None, 1):
                raise ValueError("1-WL takes no dimension k")
            object.__setattr__(self, "k", None)
        elif self.k is None:
            raise ValueError(f"{self.variant.value} requires k")
        elif self.variant is Variant.KWL and self.k < 1:
            raise ValueError("k-WL requires k >= 1")
        elif self.variant is Variant.KFWL and self.k < 2:
            raise ValueError("k-FWL requires k >= 2")

    @property
    def name(self) -> str:
        if self.variant is Variant.WL1:
            return "1-WL"
        if self.variant is Variant.KWL and self.k == 1:
            return "k-WL(k=1)"
        return f"{self.k}-{'WL' if self.variant is Variant.KWL else 'FWL'}"

    @property
    def tuple_size(self) -> int:
        return 1 if self.variant is Variant.WL1 else self.k

    def describe(self) -> dict[str, Any]:
        return {"variant": self.variant.value, "k": self.k, "equality_aware": self.equality_aware}

    def validate(self, g: Graph) -> None:
        if self.variant is Variant.WL1 and g.edge_features is not None:
            raise GraphError("1-WL does not support edge features; use k-WL or k-FWL")

    def domain_size(self, g: Graph) -> int:
        return g.n**self.tuple_size

    def initial_signatures(self, g: Graph) -> list[Signature]:
        if self.variant is Variant.WL1:
            nf = g.node_features
            return [("x", feature_key(nf[v] if nf is not None else None)) for v in range(g.n)]
        return [
            atomic_type(g, t, self.equality_aware)
            for t in product(range(g.n), repeat=self.k)
        ]

    def round_signatures(self, g: Graph, prev: np.ndarray, start: int, stop: int) -> list[Signature]:
        if self.variant is Variant.WL1:
            return wl1_signatures(g, prev, start, stop)
        if self.variant is Variant.KWL:
            return kwl_signatures(g.n, self.k, prev, start, stop)
        return kfwl_signatures(g.n, self.k, prev, start, stop)

    def __str__(self) -> str:
        return self.name + (" (equality-aware)" if self.equality_aware else "")


def wl1(equality_aware: bool = False) -> AlgorithmDescriptor:
    return AlgorithmDescriptor(Variant.WL1, None, equality_aware)


def kwl(k: int, equality_aware: bool = False) -> AlgorithmDescriptor:
    return AlgorithmDescriptor(Variant.KWL, k, equality_aware)


def kfwl(k: int, equality_aware: bool = False) -> AlgorithmDescriptor:
    return AlgorithmDescriptor(Variant.KFWL, k, equality_aware)


def tuple_index(t, n: int) -> int:
    idx = 0
    for v in t:
        idx = idx * n + v
    return idx


def index_tuple(idx: int, n: int, k: int) -> tuple[int, ...]:
    return tuple(int(x) for x in np.unravel_index(idx, (n,) * k))


# --- signature builders (phase 1; read-only on prev) -------------------------


def wl1_signatures(g: Graph, prev: np.ndarray, start: int, stop: int) -> list[Signature]:
    out = []
    for v in range(start, stop):
        nb = sorted(prev[list(g.adj[v])].tolist())
        out.append((int(prev[v]), tuple(nb)))
    return out


def _substitutions(n: int, k: int, prev: np.ndarray, idx: np.ndarray, i: int) -> np.ndarray:
    """``out[a, w]`` is the previous color of tuple ``idx[a]`` with position ``i`` set to ``w``."""
    stride = n ** (k - 1 - i)
    base = idx - ((idx // stride) % n) * stride
    return prev[base[:, None] + np.arange(n) * stride]


def kwl_signatures(n: int, k: int, prev: np.ndarray, start: int, stop: int) -> list[Signature]:
    """``(c, {{position-1 colors}}, ..., {{position-k colors}})`` per tuple.

    The i-th multiset ranges over all n substitutions ``w`` in position i,
    including ``w = v_i`` itself.
    """
    if stop <= start:
        return []
    idx = np.arange(start, stop, dtype=np.int64)
    parts = [prev[idx][:, None]]
    for i in range(k):
        parts.append(np.sort(_substitutions(n, k, prev, idx, i), axis=1))
    return [tuple(row) for row in np.concatenate(parts, axis=1).tolist()]


def kfwl_signatures(n: int, k: int, prev: np.ndarray, start: int, stop: int) -> list[Signature]:
    """``(c, {{(c_{v[1]<-w}, ..., c_{v[k]<-w}) : w}})`` per tuple.

    The k-vectors stay ordered; only the collection over ``w`` is sorted
    (lexicographically), then flattened.
    """
    if stop <= start:
        return []
    idx = np.arange(start, stop, dtype=np.int64)
    vecs = np.stack([_substitutions(n, k, prev, idx, i) for i in range(k)], axis=2)
    m = idx.shape[0]
    # np.unique ranks rows lexicographically, so sorting ranks sorts the vectors.
    _, ranks = np.unique(vecs.reshape(m * n, k), axis=0, return_inverse=True)
    order = np.argsort(ranks.reshape(m, n), axis=1, kind="stable")
    vecs = np.take_along_axis(vecs, order[:, :, None], axis=1).reshape(m, n * k)
    body = np.concatenate([prev[idx][:, None], vecs], axis=1)
    return [tuple(row) for row in body.tolist()]


# --- per-round operations with interning (phase 2) ---------------------------


def _check_prev(prev: Coloring, expected: int) -> None:
    if prev.domain_size != expected:
        raise ValueError(f"coloring has {prev.domain_size} entries, expected {expected}")


def init_colors(alg: AlgorithmDescriptor, g: Graph, ct: ColorTable) -> Coloring:
    alg.validate(g)
    return Coloring(ct.intern_all(alg.initial_signatures(g)))


def wl1_round(g: Graph, prev: Coloring, ct: ColorTable) -> Coloring:
    _check_prev(prev, g.n)
    return Coloring(ct.intern_all(wl1_signatures(g, prev.colors, 0, g.n)))


def kwl_round(g: Graph, k: int, prev: Coloring, ct: ColorTable) -> Coloring:
    if k < 1:
        raise ValueError("k-WL requires k >= 1")
    _check_prev(prev, g.n**k)
    return Coloring(ct.intern_all(kwl_signatures(g.n, k, prev.colors, 0, g.n**k)))


def kfwl_round(g: Graph, k: int, prev: Coloring, ct: ColorTable) -> Coloring:
    if k < 2:
        raise ValueError("k-FWL requires k >= 2")
    _check_prev(prev, g.n**k)
    return Coloring(ct.intern_all(kfwl_signatures(g.n, k, prev.colors, 0, g.n**k)))


def certificate(r: RefinementResult) -> Histogram:
    """Multiset of final colors as ``{color id: multiplicity}``."""
    return r.certificate


def parse_algorithm(name: str, k: Optional[int] = None, equality_aware: bool = False) -> AlgorithmDescriptor:
    """Accept ``wl1``/``kwl``/``kfwl`` (with ``k``) or short forms such as ``2-fwl``."""
    s = name.strip().lower()
    if "-" in s:
        head, tail = s.split("-", 1)
        if head.isdigit():
            if tail == "wl" and head == "1" and k is None:
                return wl1(equality_aware)
            return AlgorithmDescriptor(Variant("k" + tail), int(head), equality_aware)
    return AlgorithmDescriptor(Variant(s), k, equality_aware)
