"""Round-limited observation spreading.

Starting from a source set S, round 1 observes every node in a closed
neighborhood of S.  In each later round, an observed node u whose closed
neighborhood has exactly one unobserved member forces that member to become
observed.  All forcings within a round are applied simultaneously.  The
process is monotone, so it stabilizes after at most n-1 rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from powerdom.graphs import Graph

INF = math.inf


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class PropagationTrace:
    """Result of running the spreading process for a fixed number of rounds.

    times[v] is 0 for sources, the first round at which v became observed
    otherwise, or math.inf if v stayed unobserved within the round budget.
    """

    times: tuple[float, ...]
    rounds_run: int
    source_set: frozenset[int]

    def time(self, v: int) -> float:
        return self.times[v]

    def observed(self) -> frozenset[int]:
        return frozenset(v for v, t in enumerate(self.times) if t != INF)

    def covers(self, targets: Iterable[int]) -> bool:
        return all(self.times[v] != INF for v in targets)


def propagate(g: Graph, sources: Iterable[int], k: int) -> PropagationTrace:
    """Run k rounds of spreading from `sources` and record first-hit times.

    k must be at least 1.  Stops early once a round adds nothing, since the
    set can then never grow again.
    """
    if k < 1:
        raise ValueError("round budget k must be >= 1")
    src = frozenset(sources)
    for v in src:
        if not (0 <= v < g.n):
            raise ValueError(f"source {v} out of range")
    times: list[float] = [INF] * g.n
    for v in src:
        times[v] = 0
    closed = g.closed_masks()
    cur = 0
    for v in src:
        cur |= closed[v]
    for v in _bits(cur):
        if times[v] == INF:
            times[v] = 1
    r = 1
    while r < k:
        nxt = cur
        for u in _bits(cur):
            rem = closed[u] & ~cur
            if rem and rem & (rem - 1) == 0:
                nxt |= rem
        if nxt == cur:
            break
        r += 1
        for v in _bits(nxt & ~cur):
            times[v] = r
        cur = nxt
    return PropagationTrace(times=tuple(times), rounds_run=k, source_set=src)


def is_feasible(g: Graph, sources: Iterable[int], targets: Iterable[int], ell: int) -> bool:
    """Does `sources` observe every target within `ell` rounds?"""
    tgt = list(targets)
    if not tgt:
        return True
    return propagate(g, sources, ell).covers(tgt)
