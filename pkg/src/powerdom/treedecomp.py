"""Tree decompositions: validation, a min-fill heuristic builder, conversion
to nice (rooted binary Leaf/Insert/Forget/Join) form, and PACE-style file I/O.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from powerdom.graphs import Graph, GraphFormatError


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed 0..len-1 plus an undirected tree on bag indices.

    Tree shape (connected, acyclic) is enforced at construction; coverage
    properties against a concrete graph go through validate_td.
    """

    bags: tuple[frozenset[int], ...]
    tree: tuple[tuple[int, int], ...]

    def __post_init__(self):
        nb = len(self.bags)
        if nb == 0:
            raise ValueError("a decomposition needs at least one bag")
        if len(self.tree) != nb - 1:
            raise ValueError(f"{nb} bags need {nb - 1} tree edges, got {len(self.tree)}")
        adj: list[list[int]] = [[] for _ in range(nb)]
        for i, j in self.tree:
            if not (0 <= i < nb and 0 <= j < nb) or i == j:
                raise ValueError(f"bad tree edge ({i}, {j})")
            adj[i].append(j)
            adj[j].append(i)
        seen = {0}
        stack = [0]
        while stack:
            for j in adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        if len(seen) != nb:
            raise ValueError("tree edges do not connect all bags")

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b in self.tree:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)


def max_bag_edges(g: Graph, td: TreeDecomposition) -> int:
    """Largest number of graph edges internal to any single bag."""
    return max(
        sum(1 for u, v in g.edges if u in bag and v in bag) for bag in td.bags
    )


@dataclass(frozen=True)
class TdViolation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def validate_td(g: Graph, td: TreeDecomposition) -> TdViolation | None:
    """Check the three decomposition properties against g; None if all hold."""
    union = set()
    for bag in td.bags:
        for v in bag:
            if not (0 <= v < g.n):
                return TdViolation("node-range", f"bag node {v} outside 0..{g.n - 1}")
        union |= bag
    missing = set(range(g.n)) - union
    if missing:
        return TdViolation("node-missing", f"node {min(missing)} is in no bag")
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in td.bags):
            return TdViolation("edge-uncovered", f"edge ({u}, {v}) is inside no bag")
    adj: list[list[int]] = [[] for _ in td.bags]
    for i, j in td.tree:
        adj[i].append(j)
        adj[j].append(i)
    for v in range(g.n):
        holders = {i for i, bag in enumerate(td.bags) if v in bag}
        start = min(holders)
        seen = {start}
        stack = [start]
        while stack:
            for j in adj[stack.pop()]:
                if j in holders and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if seen != holders:
            return TdViolation(
                "disconnected", f"bags containing node {v} do not form a subtree"
            )
    return None


def heuristic_td(g: Graph) -> TreeDecomposition:
    """Min-fill elimination ordering, ties to the smallest node id.

    Standard construction: eliminating v yields bag {v} + current neighbors,
    which are then made a clique; the bag hangs off the bag of v's first
    eliminated current neighbor.  Disconnected pieces are chained afterward
    so the result is a single tree.
    """
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    nbrs: dict[int, set[int]] = {v: set(g.adjacency[v]) for v in range(g.n)}
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    bag_of: dict[int, int] = {}
    pending: dict[int, set[int]] = {}
    roots: list[int] = []
    while nbrs:
        best = None
        for v in sorted(nbrs):
            nv = nbrs[v]
            fill = sum(
                1
                for a in nv
                for b in nv
                if a < b and b not in nbrs[a]
            )
            if best is None or fill < best[0]:
                best = (fill, v)
                if fill == 0:
                    break
        v = best[1]
        nv = nbrs.pop(v)
        idx = len(bags)
        bags.append(frozenset(nv | {v}))
        bag_of[v] = idx
        if nv:
            pending[idx] = set(nv)
        else:
            roots.append(idx)
        for a in nv:
            nbrs[a].discard(v)
            for b in nv:
                if a != b:
                    nbrs[a].add(b)
        # Attach earlier bags waiting for their first eliminated neighbor.
        for i, waiting in list(pending.items()):
            if v in waiting:
                edges.append((i, idx))
                del pending[i]
            # else keep waiting
    for extra in roots[1:]:
        edges.append((roots[0], extra))
    assert not pending, "every nonempty bag links to a later elimination"
    return TreeDecomposition(tuple(bags), tuple(edges))


@dataclass(frozen=True)
class NiceNode:
    """kind is 'leaf', 'insert', 'forget', or 'join'; node is the vertex
    inserted or forgotten (None otherwise)."""

    kind: str
    bag: frozenset[int]
    children: tuple[int, ...]
    node: int | None = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    nodes: tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def to_td(self) -> TreeDecomposition:
        edges = tuple(
            (i, c) for i, nd in enumerate(self.nodes) for c in nd.children
        )
        return TreeDecomposition(tuple(nd.bag for nd in self.nodes), edges)


def to_nice(td: TreeDecomposition) -> NiceTreeDecomposition:
    """Root at bag 0 and normalize: leaves become single-node Leaf bags grown
    by Insert chains, tree edges become Forget-then-Insert splices, and bags
    with several children become chains of equal-bag binary Joins.  Width is
    preserved and every original bag appears among the nice bags."""
    nodes: list[NiceNode] = []

    def add(kind: str, bag: frozenset[int], children: tuple[int, ...], node=None) -> int:
        nodes.append(NiceNode(kind, bag, children, node))
        return len(nodes) - 1

    children_of: dict[int, list[int]] = {i: [] for i in range(len(td.bags))}
    parent = {0: None}
    order = [0]
    stack = [0]
    while stack:
        i = stack.pop()
        for j in td.neighbors(i):
            if j not in parent:
                parent[j] = i
                children_of[i].append(j)
                order.append(j)
                stack.append(j)

    def splice(top: int, from_bag: frozenset[int], to_bag: frozenset[int]) -> int:
        bag = from_bag
        for x in sorted(from_bag - to_bag):
            bag = bag - {x}
            top = add("forget", bag, (top,), x)
        for x in sorted(to_bag - from_bag):
            bag = bag | {x}
            top = add("insert", bag, (top,), x)
        return top

    def build(i: int) -> int:
        bag = td.bags[i]
        kids = children_of[i]
        tops = [splice(build(j), td.bags[j], bag) for j in kids]
        if not tops:
            if not bag:
                return add("leaf", frozenset(), ())
            first = min(bag)
            top = add("leaf", frozenset({first}), ())
            return splice(top, frozenset({first}), bag)
        top = tops[0]
        for other in tops[1:]:
            top = add("join", bag, (top, other))
        return top

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(td.bags) + 100))
    try:
        root = build(0)
    finally:
        sys.setrecursionlimit(old)
    n_graph = len(set().union(*td.bags)) if td.bags else 0
    assert len(nodes) <= 8 * max(n_graph + len(td.bags), 1), "nice form grew nonlinearly"
    return NiceTreeDecomposition(tuple(nodes), root)


def parse_td(text: str) -> TreeDecomposition:
    """PACE-style: `s td <#bags> <width+1> <n>`, `b <i> <v...>` with 1-based
    ids, then one `<i> <j>` line per tree edge."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "c":
            continue
        if parts[0] == "s":
            if header is not None:
                raise GraphFormatError("duplicate solution line", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise GraphFormatError("header must be 's td <#bags> <width+1> <n>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise GraphFormatError("non-integer header fields", lineno) from None
        elif parts[0] == "b":
            if header is None:
                raise GraphFormatError("bag line before header", lineno)
            try:
                idx = int(parts[1])
                content = [int(x) for x in parts[2:]]
            except ValueError:
                raise GraphFormatError("non-integer bag entry", lineno) from None
            if not (1 <= idx <= header[0]):
                raise GraphFormatError(f"bag index out of range 1..{header[0]}", lineno)
            if idx - 1 in bags:
                raise GraphFormatError(f"duplicate bag {idx}", lineno)
            for v in content:
                if not (1 <= v <= header[2]):
                    raise GraphFormatError(f"bag node out of range 1..{header[2]}", lineno)
            bags[idx - 1] = frozenset(v - 1 for v in content)
        else:
            if len(parts) != 2:
                raise GraphFormatError(f"unrecognized line {line!r}", lineno)
            if header is None:
                raise GraphFormatError("tree edge before header", lineno)
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"unrecognized line {line!r}", lineno) from None
            if not (1 <= i <= header[0] and 1 <= j <= header[0]):
                raise GraphFormatError("tree edge bag index out of range", lineno)
            edges.append((i - 1, j - 1))
    if header is None:
        raise GraphFormatError("missing 's td' header line")
    full = tuple(bags.get(i, frozenset()) for i in range(header[0]))
    try:
        return TreeDecomposition(full, tuple(edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def emit_td(td: TreeDecomposition) -> str:
    n = max((max(b) for b in td.bags if b), default=-1) + 1
    out = [f"s td {len(td.bags)} {max(len(b) for b in td.bags)} {n}"]
    for i, bag in enumerate(td.bags):
        out.append("b " + " ".join([str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    out.extend(f"{i + 1} {j + 1}" for i, j in sorted(tuple(sorted(e)) for e in td.tree))
    return "\n".join(out) + "\n"
