"""Timed orientations: edge directions plus per-node round labels.

An orientation is valid for a target set when five properties hold; validity
of an orientation with origin S is equivalent to S observing all targets
within the round budget, which is what makes orientations usable as locally
checkable certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

from powerdom.graphs import Graph, GraphFormatError
from powerdom.propagation import INF, PropagationTrace


@dataclass(frozen=True)
class TimedOrientation:
    """Partition of a graph's edges into directed pairs (u, v) meaning u->v
    and undirected pairs, plus per-node labels in {0..ell} or infinity."""

    directed: frozenset[tuple[int, int]]
    undirected: frozenset[tuple[int, int]]
    times: tuple[float, ...]
    ell: int

    def in_degree(self, v: int) -> int:
        return sum(1 for _, y in self.directed if y == v)

    def out_degree(self, v: int) -> int:
        return sum(1 for x, _ in self.directed if x == v)


@dataclass(frozen=True)
class Violation:
    prop: str
    where: int | tuple[int, int]
    detail: str

    def __str__(self) -> str:
        return f"{self.prop} at {self.where}: {self.detail}"


def origin(to: TimedOrientation) -> frozenset[int]:
    """Label-0 nodes: the source set the orientation certifies."""
    return frozenset(v for v, t in enumerate(to.times) if t == 0)


def _check_edge_partition(g: Graph, to: TimedOrientation) -> None:
    as_undirected = set()
    for u, v in to.directed:
        e = (u, v) if u < v else (v, u)
        if e in as_undirected:
            raise ValueError(f"edge {e} directed twice")
        as_undirected.add(e)
    overlap = as_undirected & set(to.undirected)
    if overlap:
        raise ValueError(f"edge {min(overlap)} both directed and undirected")
    if as_undirected | set(to.undirected) != set(g.edges):
        raise ValueError("orientation edge set does not match the graph")


def validate(g: Graph, to: TimedOrientation, targets) -> Violation | None:
    """Check properties P1-P5; None means valid for the given targets.

    P1: every target has a finite label.
    P2: a node labeled 1..ell has exactly one incoming directed edge.
    P3: an infinity node is incident to no directed edge.
    P4: a label-0 node has no incoming directed edge.
    P5: each directed (u,v) satisfies the timing rule: label(v)=1 when
        label(u)=0, otherwise label(v) = 1 + max over w in N[u]\\{v} of
        label(w), with infinity absorbing.

    A label outside {0..ell, inf} is reported as a 'domain' violation.
    Raises ValueError when the orientation's edges do not partition g's.
    """
    _check_edge_partition(g, to)
    if len(to.times) != g.n:
        raise ValueError("times vector length does not match node count")
    t = to.times
    for v in range(g.n):
        if t[v] != INF and not (isinstance(t[v], int) and 0 <= t[v] <= to.ell):
            return Violation("domain", v, f"label {t[v]} not in 0..{to.ell} or inf")
    for v in sorted(set(targets)):
        if t[v] == INF:
            return Violation("P1", v, "target never observed")
    indeg = [0] * g.n
    outdeg = [0] * g.n
    for u, v in to.directed:
        outdeg[u] += 1
        indeg[v] += 1
    for v in range(g.n):
        if t[v] != INF and t[v] >= 1 and indeg[v] != 1:
            return Violation("P2", v, f"label {t[v]} but in-degree {indeg[v]}")
        if t[v] == INF and (indeg[v] or outdeg[v]):
            return Violation("P3", v, "unobserved node touches a directed edge")
        if t[v] == 0 and indeg[v]:
            return Violation("P4", v, f"origin node has in-degree {indeg[v]}")
    for u, v in sorted(to.directed):
        if t[u] == 0:
            if t[v] != 1:
                return Violation("P5", (u, v), f"origin points to label {t[v]}, expected 1")
            continue
        need = 1 + max(t[w] for w in g.adjacency[u] + (u,) if w != v)
        if t[v] != need:
            return Violation("P5", (u, v), f"label {t[v]}, timing rule requires {need}")
    return None


def orientation_from_trace(g: Graph, trace: PropagationTrace) -> TimedOrientation:
    """Orient one justifying edge into each non-source observed node.

    A node observed in round 1 points back to its smallest-id neighbor in
    the source set.  A node observed in round r >= 2 points back to the
    smallest-id neighbor u whose whole closed neighborhood minus v was
    observed by round r-1; the timing rule's equality then holds
    automatically, since an earlier-saturated u would have forced v sooner.
    """
    if len(trace.times) != g.n:
        raise ValueError("trace does not match the graph")
    t = trace.times
    directed = set()
    for v in range(g.n):
        if t[v] == INF or t[v] == 0:
            continue
        if t[v] == 1:
            cands = [u for u in g.adjacency[v] if t[u] == 0]
        else:
            cands = [
                u
                for u in g.adjacency[v]
                if all(t[w] <= t[v] - 1 for w in g.adjacency[u] + (u,) if w != v)
            ]
        if not cands:
            raise ValueError(f"no justifying neighbor for node {v} at round {t[v]}")
        directed.add((min(cands), v))
    as_undirected = {(u, v) if u < v else (v, u) for u, v in directed}
    undirected = frozenset(e for e in g.edges if e not in as_undirected)
    return TimedOrientation(
        directed=frozenset(directed),
        undirected=undirected,
        times=t,
        ell=trace.rounds_run,
    )


def parse_orientation(text: str, n: int, ell: int) -> TimedOrientation:
    """Orientation file: `d <u> <v>` directed u->v, `u <u> <v>` undirected,
    `t <v> <label|inf>` labels; 1-based ids, `c` comments.  Unlabeled nodes
    default to inf."""
    directed = set()
    undirected = set()
    times: list[float] = [INF] * n

    def node(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise GraphFormatError(f"non-integer node id {tok!r}", lineno) from None
        if not (1 <= v <= n):
            raise GraphFormatError(f"node id out of range 1..{n}", lineno)
        return v - 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "d" and len(parts) == 3:
            directed.add((node(parts[1], lineno), node(parts[2], lineno)))
        elif parts[0] == "u" and len(parts) == 3:
            a, b = node(parts[1], lineno), node(parts[2], lineno)
            undirected.add((a, b) if a < b else (b, a))
        elif parts[0] == "t" and len(parts) == 3:
            v = node(parts[1], lineno)
            if parts[2] == "inf":
                times[v] = INF
            else:
                try:
                    times[v] = int(parts[2])
                except ValueError:
                    raise GraphFormatError(
                        f"label must be an integer or 'inf', got {parts[2]!r}", lineno
                    ) from None
        else:
            raise GraphFormatError(f"unrecognized orientation line {line!r}", lineno)
    return TimedOrientation(frozenset(directed), frozenset(undirected), tuple(times), ell)


def emit_orientation(to: TimedOrientation) -> str:
    out = [f"d {u + 1} {v + 1}" for u, v in sorted(to.directed)]
    out += [f"u {u + 1} {v + 1}" for u, v in sorted(to.undirected)]
    for v, t in enumerate(to.times):
        out.append(f"t {v + 1} {'inf' if t == INF else t}")
    return "\n".join(out) + "\n"
