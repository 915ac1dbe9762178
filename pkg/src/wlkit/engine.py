"""Refinement machinery shared by every WL variant.

Colors are interned signatures: a :class:`ColorTable` maps each canonical
signature to a dense integer in first-seen order, which makes the "hash" of the
algorithms exactly injective. Each round runs in two phases. Signatures are
built from the previous coloring only (optionally on worker threads), then
interned sequentially in ascending object order so results never depend on the
thread count.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Optional, Protocol, Sequence

import numpy as np

from .graph import Graph

Signature = Hashable
Histogram = dict[int, int]


class RefinementInvariantError(AssertionError):
    """Raised when a round merges classes or the round cap bound is exceeded."""


def multiset(items: Iterable[int]) -> tuple[int, ...]:
    """Canonical form of a multiset of color ids: the sorted tuple."""
    return tuple(sorted(items))


class ColorTable:
    """Injective signature -> color id map with ids assigned in first-seen order."""

    def __init__(self) -> None:
        self._ids: dict[Signature, int] = {}

    def intern(self, sig: Signature) -> int:
        ids = self._ids
        cid = ids.get(sig)
        if cid is None:
            cid = ids[sig] = len(ids)
        return cid

    def intern_all(self, sigs: Iterable[Signature]) -> np.ndarray:
        ids = self._ids
        out = []
        for sig in sigs:
            cid = ids.get(sig)
            if cid is None:
                cid = ids[sig] = len(ids)
            out.append(cid)
        return np.asarray(out, dtype=np.int64)

    @property
    def next_id(self) -> int:
        return len(self._ids)

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, sig: Signature) -> bool:
        return sig in self._ids


@dataclass(frozen=True, eq=False)
class Coloring:
    """Color ids for ``domain_size`` objects (nodes, or k-tuples in row-major order)."""

    colors: np.ndarray

    @property
    def domain_size(self) -> int:
        return int(self.colors.shape[0])

    @property
    def num_classes(self) -> int:
        return int(np.unique(self.colors).shape[0])

    def histogram(self) -> Histogram:
        vals, counts = np.unique(self.colors, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Coloring) and np.array_equal(self.colors, other.colors)

    def __len__(self) -> int:
        return self.domain_size


def same_partition(c1: Coloring, c2: Coloring) -> bool:
    """True iff both colorings have the same level sets, whatever the color names."""
    if c1.domain_size != c2.domain_size:
        raise ValueError(f"domain sizes differ: {c1.domain_size} vs {c2.domain_size}")
    pairs = np.unique(np.stack([c1.colors, c2.colors], axis=1), axis=0).shape[0]
    return pairs == c1.num_classes == c2.num_classes


def refines(fine: Coloring, coarse: Coloring) -> bool:
    """True iff every class of ``fine`` lies inside a single class of ``coarse``."""
    if fine.domain_size != coarse.domain_size:
        raise ValueError("domain sizes differ")
    pairs = np.unique(np.stack([fine.colors, coarse.colors], axis=1), axis=0).shape[0]
    return pairs == fine.num_classes


class Algorithm(Protocol):
    """What the engine needs from a WL variant (see :mod:`wlkit.variants`)."""

    def validate(self, g: Graph) -> None: ...

    def domain_size(self, g: Graph) -> int: ...

    def initial_signatures(self, g: Graph) -> list[Signature]: ...

    def round_signatures(
        self, g: Graph, prev: np.ndarray, start: int, stop: int
    ) -> list[Signature]: ...

    def describe(self) -> dict[str, Any]: ...


def compute_signatures(
    alg: Algorithm,
    g: Graph,
    prev: Coloring,
    threads: int = 1,
    pool: Optional[ThreadPoolExecutor] = None,
) -> list[Signature]:
    """Phase 1 of a round: signatures for every object, in object order."""
    size = prev.domain_size
    if threads <= 1 or size < 2 * threads or pool is None:
        return alg.round_signatures(g, prev.colors, 0, size)
    bounds = np.linspace(0, size, threads + 1).astype(int)
    futures = [
        pool.submit(alg.round_signatures, g, prev.colors, int(a), int(b))
        for a, b in zip(bounds[:-1], bounds[1:])
        if b > a
    ]
    sigs: list[Signature] = []
    for fut in futures:
        sigs.extend(fut.result())
    return sigs


def _check_round(new: Coloring, old: Coloring, round_index: int) -> None:
    if not refines(new, old):
        raise RefinementInvariantError(f"round {round_index} merged color classes")
    if round_index > new.domain_size:
        raise RefinementInvariantError(
            f"round {round_index} exceeds the domain-size bound {new.domain_size}"
        )


@dataclass(frozen=True, eq=False)
class RefinementResult:
    """Coloring history of one refinement run.

    ``history`` holds round 0 (initialization) through the last computed round,
    including the final round that confirmed stability. ``stable_round`` is the
    first round whose partition equals the final one and ``rounds`` reports the
    number of iterations needed to reach it, never less than the one iteration
    the repeat-until loop always executes.
    """

    algorithm: dict[str, Any]
    history: list[Coloring]
    truncated: bool = False

    @property
    def iterations(self) -> int:
        return len(self.history) - 1

    @property
    def stable_round(self) -> int:
        final = self.history[-1]
        r = len(self.history) - 1
        # Monotone refinement: equal class count with the final round means same partition.
        target = final.num_classes
        while r > 0 and self.history[r - 1].num_classes == target:
            r -= 1
        return r

    @property
    def rounds(self) -> int:
        if self.truncated:
            return self.iterations
        return max(1, self.stable_round)

    @property
    def final(self) -> Coloring:
        return self.history[-1]

    @property
    def certificate(self) -> Histogram:
        return self.final.histogram()

    def histograms(self) -> list[Histogram]:
        return [c.histogram() for c in self.history]

    def key(self) -> tuple:
        """Per-round histograms as a hashable value.

        Within one shared :class:`ColorTable`, two runs have equal keys exactly
        when :func:`compare` would find the graphs equivalent.
        """
        return tuple(tuple(sorted(h.items())) for h in self.histograms())


def _default_cap(alg: Algorithm, g: Graph) -> int:
    return max(1, alg.domain_size(g))


def run_refinement(
    alg: Algorithm,
    g: Graph,
    max_rounds: Optional[int] = None,
    threads: int = 1,
    table: Optional[ColorTable] = None,
) -> RefinementResult:
    """Refine ``g`` until two consecutive rounds induce the same partition.

    ``max_rounds`` defaults to the domain size, which is the provable bound.
    Pass a shared ``table`` to make color ids comparable across several runs.
    """
    alg.validate(g)
    cap = _default_cap(alg, g) if max_rounds is None else max_rounds
    if cap < 1:
        raise ValueError("max_rounds must be at least 1")
    ct = ColorTable() if table is None else table
    history = [Coloring(ct.intern_all(alg.initial_signatures(g)))]
    truncated = True
    with ThreadPoolExecutor(threads) if threads > 1 else _nullpool() as pool:
        for r in range(1, cap + 1):
            prev = history[-1]
            new = Coloring(ct.intern_all(compute_signatures(alg, g, prev, threads, pool)))
            _check_round(new, prev, r)
            history.append(new)
            if new.num_classes == prev.num_classes:
                truncated = False
                break
    return RefinementResult(alg.describe(), history, truncated)


def refine_many(
    alg: Algorithm,
    graphs: Sequence[Graph],
    max_rounds: Optional[int] = None,
    threads: int = 1,
) -> list[RefinementResult]:
    """Refine each graph in turn under one shared color table."""
    ct = ColorTable()
    return [run_refinement(alg, g, max_rounds, threads, table=ct) for g in graphs]


class Verdict(str, enum.Enum):
    DISTINGUISHED = "DISTINGUISHED"
    EQUIVALENT_UNDER_TEST = "EQUIVALENT_UNDER_TEST"


@dataclass(frozen=True)
class ComparisonResult:
    algorithm: dict[str, Any]
    verdict: Verdict
    first_distinguishing_round: Optional[int]
    certificates: tuple[Histogram, Histogram]
    rounds_run: int
    history: list[tuple[Histogram, Histogram]] = field(repr=False)
    truncated: bool = False

    @property
    def distinguished(self) -> bool:
        return self.verdict is Verdict.DISTINGUISHED


class _nullpool:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False


def compare(
    alg: Algorithm,
    g1: Graph,
    g2: Graph,
    max_rounds: Optional[int] = None,
    threads: int = 1,
) -> ComparisonResult:
    """Refine both graphs in lockstep under one color table and compare histograms.

    Stops at the first round whose histograms differ (DISTINGUISHED) or once
    both colorings are stable with equal histograms at every round.
    """
    alg.validate(g1)
    alg.validate(g2)
    cap = max(_default_cap(alg, g1), _default_cap(alg, g2)) if max_rounds is None else max_rounds
    if cap < 1:
        raise ValueError("max_rounds must be at least 1")
    ct = ColorTable()
    c1 = Coloring(ct.intern_all(alg.initial_signatures(g1)))
    c2 = Coloring(ct.intern_all(alg.initial_signatures(g2)))
    hist = [(c1.histogram(), c2.histogram())]

    def done(verdict, first, r, truncated=False):
        return ComparisonResult(alg.describe(), verdict, first, hist[-1], r, hist, truncated)

    if hist[0][0] != hist[0][1]:
        return done(Verdict.DISTINGUISHED, 0, 0)
    with ThreadPoolExecutor(threads) if threads > 1 else _nullpool() as pool:
        for r in range(1, cap + 1):
            s1 = compute_signatures(alg, g1, c1, threads, pool)
            s2 = compute_signatures(alg, g2, c2, threads, pool)
            n1, n2 = Coloring(ct.intern_all(s1)), Coloring(ct.intern_all(s2))
            _check_round(n1, c1, r)
            _check_round(n2, c2, r)
            hist.append((n1.histogram(), n2.histogram()))
            if hist[-1][0] != hist[-1][1]:
                return done(Verdict.DISTINGUISHED, r, r)
            stable = n1.num_classes == c1.num_classes and n2.num_classes == c2.num_classes
            c1, c2 = n1, n2
            if stable:
                return done(Verdict.EQUIVALENT_UNDER_TEST, None, r)
    return done(Verdict.EQUIVALENT_UNDER_TEST, None, cap, truncated=True)
