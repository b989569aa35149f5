"""Exhaustive baseline solvers, used as ground truth in tests and benchmarks."""

from __future__ import annotations

import itertools
from typing import Iterable

from powerdom.graphs import Graph


def _covers(closed: tuple[int, ...], sources: Iterable[int], tmask: int, ell: int) -> bool:
    # Same spreading rule as powerdom.propagation, specialized to bitmasks
    # with an early exit once every target bit is set.
    cur = 0
    for v in sources:
        cur |= closed[v]
    if cur & tmask == tmask:
        return True
    r = 1
    while r < ell:
        nxt = cur
        m = cur
        while m:
            low = m & -m
            m ^= low
            rem = closed[low.bit_length() - 1] & ~cur
            if rem and rem & (rem - 1) == 0:
                nxt |= rem
        if nxt == cur:
            return False
        cur = nxt
        if cur & tmask == tmask:
            return True
        r += 1
    return False


def solve_bf(
    g: Graph,
    targets: Iterable[int],
    ell: int,
    size_cap: int | None = None,
    node_limit: int = 24,
    force: bool = False,
) -> tuple[int, frozenset[int]] | None:
    """Smallest source set observing all targets within ell rounds.

    Tries source sets in order of increasing size, lexicographic within a
    size, so the returned witness is canonical.  Returns None when size_cap
    is given and no set of at most that size works.  Guarded to small graphs
    unless force=True; the search is exponential in n.
    """
    if ell < 1:
        raise ValueError("round budget ell must be >= 1")
    tgt = frozenset(targets)
    for v in tgt:
        if not (0 <= v < g.n):
            raise ValueError(f"target {v} out of range")
    if not tgt:
        return 0, frozenset()
    if g.n > node_limit and not force:
        raise ValueError(
            f"refusing exhaustive search on n={g.n} > {node_limit}; pass force=True"
        )
    closed = g.closed_masks()
    tmask = 0
    for v in tgt:
        tmask |= 1 << v
    max_size = g.n if size_cap is None else min(size_cap, g.n)
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(range(g.n), size):
            if _covers(closed, combo, tmask, ell):
                return size, frozenset(combo)
    return None


def solve_domset_bf(
    g: Graph,
    node_limit: int = 24,
    force: bool = False,
) -> tuple[int, frozenset[int]]:
    """Smallest S whose closed neighborhoods cover every node of g.

    Written independently of solve_bf on purpose: with a one-round budget the
    two problems coincide, which makes this a cross-check oracle.
    """
    if g.n == 0:
        return 0, frozenset()
    if g.n > node_limit and not force:
        raise ValueError(
            f"refusing exhaustive search on n={g.n} > {node_limit}; pass force=True"
        )
    covers = {v: frozenset(g.adjacency[v]) | {v} for v in range(g.n)}
    everything = frozenset(range(g.n))
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            hit: set[int] = set()
            for v in combo:
                hit |= covers[v]
            if hit == everything:
                return size, frozenset(combo)
    return g.n, everything
