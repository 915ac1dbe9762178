"""Corpus-level property checks: hierarchy equivalences and soundness.

Pairwise verdicts are derived from refinement keys computed under one shared
color table per algorithm. Two graphs get equal keys exactly when
:func:`wlkit.engine.compare` reports them equivalent, which turns an all-pairs
sweep into one refinement per graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .engine import RefinementResult, refine_many
from .formats import graph_to_document
from .graph import (
    Graph,
    apply_permutation,
    cycle,
    disjoint_union,
    random_gnp,
    random_permutation,
    random_regular,
)
from .oracle import enumerate_graphs, isomorphism_classes
from .variants import AlgorithmDescriptor, kfwl, kwl, wl1


@dataclass
class Corpus:
    graphs: list[Graph]
    # None means every unordered pair of graphs.
    pairs: Optional[list[tuple[int, int]]] = None

    def iter_pairs(self) -> Iterator[tuple[int, int]]:
        if self.pairs is None:
            return combinations(range(len(self.graphs)), 2)
        return iter(self.pairs)

    @property
    def num_pairs(self) -> int:
        if self.pairs is None:
            m = len(self.graphs)
            return m * (m - 1) // 2
        return len(self.pairs)

    def __add__(self, other: "Corpus") -> "Corpus":
        off = len(self.graphs)
        return Corpus(
            self.graphs + other.graphs,
            list(self.iter_pairs()) + [(i + off, j + off) for i, j in other.iter_pairs()],
        )


def enumerated_corpus(max_n: int) -> Corpus:
    """Every labeled graph on 1..max_n nodes, all pairs."""
    return Corpus([g for n in range(1, max_n + 1) for g in enumerate_graphs(n)])


def _regular_degree(n: int, rng: random.Random) -> int:
    choices = [d for d in range(2, n - 1) if (n * d) % 2 == 0]
    return rng.choice(choices)


def random_pair(n: int, seed: int, kind: int) -> tuple[Graph, Graph]:
    """One seeded pair. ``kind`` cycles through regular/regular, G(n,p)/G(n,p), and
    graph/relabeled copy, so the corpus mixes hard, easy and isomorphic pairs."""
    rng = random.Random(seed)
    if kind % 3 == 0:
        d = _regular_degree(n, rng)
        return random_regular(n, d, rng.randrange(2**32)), random_regular(n, d, rng.randrange(2**32))
    if kind % 3 == 1:
        return random_gnp(n, 0.5, rng.randrange(2**32)), random_gnp(n, 0.5, rng.randrange(2**32))
    g = random_gnp(n, rng.uniform(0.2, 0.8), rng.randrange(2**32))
    return g, apply_permutation(g, random_permutation(n, rng.randrange(2**32)))


def random_corpus(num_pairs: int, sizes: Sequence[int], seed: int) -> Corpus:
    graphs: list[Graph] = []
    pairs = []
    for i in range(num_pairs):
        g1, g2 = random_pair(sizes[i % len(sizes)], seed * 1_000_003 + i, i)
        pairs.append((len(graphs), len(graphs) + 1))
        graphs.extend([g1, g2])
    return Corpus(graphs, pairs)


def example_corpus() -> Corpus:
    """The two-triangles vs hexagon pair."""
    return Corpus([disjoint_union(cycle(3), cycle(3)), cycle(6)], [(0, 1)])


@dataclass
class PropertyReport:
    name: str
    pairs_checked: int = 0
    violations: list[tuple[int, int]] = field(default_factory=list)
    distinguished: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> dict:
        return {
            "property": self.name,
            "pairs": self.pairs_checked,
            "violations": len(self.violations),
            "distinguished": self.distinguished,
            "ok": self.ok,
        }


class CorpusChecker:
    """Caches refinement results and oracle labels across the checks of one corpus."""

    def __init__(self, corpus: Corpus, threads: int = 1):
        self.corpus = corpus
        self.threads = threads
        self._results: dict[AlgorithmDescriptor, list[RefinementResult]] = {}
        self._keys: dict[AlgorithmDescriptor, list[tuple]] = {}
        self._iso: Optional[list[int]] = None

    def results(self, alg: AlgorithmDescriptor) -> list[RefinementResult]:
        if alg not in self._results:
            self._results[alg] = refine_many(alg, self.corpus.graphs, threads=self.threads)
        return self._results[alg]

    def keys(self, alg: AlgorithmDescriptor) -> list[tuple]:
        if alg not in self._keys:
            self._keys[alg] = [r.key() for r in self.results(alg)]
        return self._keys[alg]

    def iso_labels(self) -> list[int]:
        if self._iso is None:
            self._iso = isomorphism_classes(self.corpus.graphs)
        return self._iso

    def distinguished(self, alg: AlgorithmDescriptor, i: int, j: int) -> bool:
        k = self.keys(alg)
        return k[i] != k[j]

    def agreement(self, a: AlgorithmDescriptor, b: AlgorithmDescriptor) -> PropertyReport:
        ka, kb = self.keys(a), self.keys(b)
        rep = PropertyReport(f"{a.name} vs {b.name} verdict agreement", distinguished={a.name: 0, b.name: 0})
        for i, j in self.corpus.iter_pairs():
            da, db = ka[i] != ka[j], kb[i] != kb[j]
            rep.pairs_checked += 1
            rep.distinguished[a.name] += da
            rep.distinguished[b.name] += db
            if da != db:
                rep.violations.append((i, j))
        return rep

    def soundness(self, algs: Sequence[AlgorithmDescriptor]) -> PropertyReport:
        iso = self.iso_labels()
        rep = PropertyReport("soundness vs oracle", distinguished={a.name: 0 for a in algs})
        keys = [(a, self.keys(a)) for a in algs]
        rep.distinguished["oracle"] = 0
        for i, j in self.corpus.iter_pairs():
            rep.pairs_checked += 1
            same = iso[i] == iso[j]
            rep.distinguished["oracle"] += not same
            unsound = False
            for a, k in keys:
                if k[i] != k[j]:
                    rep.distinguished[a.name] += 1
                    unsound |= same
            if unsound:
                rep.violations.append((i, j))
        return rep

    def reproducer(self, i: int, j: int, algs: Sequence[AlgorithmDescriptor]) -> dict:
        return {
            "graphs": [graph_to_document(self.corpus.graphs[i]), graph_to_document(self.corpus.graphs[j])],
            "algorithms": [a.describe() for a in algs],
        }


REMARK1 = (wl1(), kwl(2))
REMARK2 = (kfwl(2), kwl(3))
SOUNDNESS_ALGS = (wl1(), kwl(2), kwl(3), kfwl(2))


def run_checks(
    corpus: Corpus,
    checks: Sequence[str] = ("remark1", "remark2", "soundness"),
    threads: int = 1,
    equality_aware: bool = False,
) -> tuple[list[PropertyReport], list[dict]]:
    """Run the named checks; returns reports plus a reproducer per violating pair."""

    def flag(a: AlgorithmDescriptor) -> AlgorithmDescriptor:
        return AlgorithmDescriptor(a.variant, a.k, equality_aware)

    checker = CorpusChecker(corpus, threads)
    reports, repros = [], []
    for name in checks:
        if name == "remark1":
            algs = tuple(map(flag, REMARK1))
            rep = checker.agreement(*algs)
        elif name == "remark2":
            algs = tuple(map(flag, REMARK2))
            rep = checker.agreement(*algs)
        elif name == "soundness":
            algs = tuple(map(flag, SOUNDNESS_ALGS))
            rep = checker.soundness(algs)
        else:
            raise ValueError(f"unknown check {name!r}")
        reports.append(rep)
        repros.extend({"property": rep.name, **checker.reproducer(i, j, algs)} for i, j in rep.violations)
    return reports, repros
