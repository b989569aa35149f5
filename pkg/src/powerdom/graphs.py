"""Simple undirected graphs on dense integer ids, plus text-format I/O.

Nodes are always 0..n-1 internally.  The text format (and the command line
tool) numbers nodes from 1, matching the usual edge-list conventions.
"""

from __future__ import annotations

from typing import Iterable


class GraphFormatError(ValueError):
    """A graph or decomposition file could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Immutable simple undirected graph.

    Self-loops and duplicate edges are rejected at construction time, so every
    algorithm downstream may assume a simple graph.
    """

    __slots__ = ("n", "edges", "adjacency", "_closed_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("node count must be >= 0")
        canon = []
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        canon.sort()
        self.n = n
        self.edges = tuple(canon)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        self._closed_masks: tuple[int, ...] | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def closed_masks(self) -> tuple[int, ...]:
        """Per-node closed neighborhoods as bitmasks (cached)."""
        if self._closed_masks is None:
            masks = []
            for v in range(self.n):
                m = 1 << v
                for u in self.adjacency[v]:
                    m |= 1 << u
                masks.append(m)
            self._closed_masks = tuple(masks)
        return self._closed_masks

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """N[v]: v together with its neighbors."""
    return frozenset(g.adjacency[v]) | {v}


def open_neighborhood(g: Graph, v: int) -> frozenset[int]:
    return frozenset(g.adjacency[v])


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise ValueError("min_degree is undefined on the empty graph")
    return min(g.degree(v) for v in range(g.n))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on `keep`, with an order-preserving old->new id map."""
    kept = sorted(set(keep))
    for v in kept:
        if not (0 <= v < g.n):
            raise ValueError(f"node {v} out of range")
    idmap = {old: new for new, old in enumerate(kept)}
    edges = [
        (idmap[u], idmap[v])
        for u, v in g.edges
        if u in idmap and v in idmap
    ]
    return Graph(len(kept), edges), idmap


def parse_graph(text: str) -> Graph:
    """Parse the `p edge <n> <m>` / `e <u> <v>` format (1-based node ids).

    Comment lines start with `c`.  Level lines (`l <v> <level>`) are allowed
    and skipped here; use powerdom.planar.parse_levels to read them.
    """
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphFormatError("problem line must be 'p edge <n> <m>'", lineno)
            try:
                n = int(parts[2])
                declared_m = int(parts[3])
            except ValueError:
                raise GraphFormatError("non-integer counts in problem line", lineno) from None
            if n < 0 or declared_m < 0:
                raise GraphFormatError("negative counts in problem line", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer node id", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"node id out of range 1..{n}", lineno)
            if u == v:
                raise GraphFormatError("self-loop", lineno)
            edges.append((u - 1, v - 1))
        elif parts[0] == "l":
            continue
        else:
            raise GraphFormatError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing problem line")
    if declared_m != len(edges):
        raise GraphFormatError(
            f"problem line declares {declared_m} edges but file has {len(edges)}"
        )
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def emit_graph(
    g: Graph,
    levels: Iterable[int] | None = None,
    comments: Iterable[str] = (),
) -> str:
    """Canonical text form: sorted edges, 1-based ids, optional level lines."""
    out = [f"c {c}" for c in comments]
    out.append(f"p edge {g.n} {g.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    if levels is not None:
        lv = list(levels)
        if len(lv) != g.n:
            raise ValueError("levels must assign every node")
        out.extend(f"l {v + 1} {lv[v]}" for v in range(g.n))
    return "\n".join(out) + "\n"
