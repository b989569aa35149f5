"""Round-by-round walkthrough on the two-ring graph.

Two concentric 8-cycles joined by spokes, with sources placed on one
outer node and on the inner node four spokes away.  The sources observe
their neighborhoods in the first round and then everything stops: each
frontier node faces two unobserved neighbors at once, so no node can
force, and a budget of four rounds observes exactly eight nodes.
"""

from powerdom.graphs import Graph
from powerdom.propagation import INF, propagate


def two_ring() -> Graph:
    edges = []
    for i in range(8):
        edges.append((i, (i + 1) % 8))          # outer cycle
        edges.append((8 + i, 8 + (i + 1) % 8))  # inner cycle
        edges.append((i, 8 + i))                # spoke
    return Graph(16, edges)


def label(v: int) -> str:
    return f"u{v + 1}" if v < 8 else f"v{v - 7}"


def main() -> None:
    g = two_ring()
    sources = {0, 12}
    print(f"sources: {', '.join(sorted(label(v) for v in sources))}")
    trace = propagate(g, sources, 4)
    for r in range(5):
        fresh = sorted(v for v in range(g.n) if trace.times[v] == r)
        if fresh:
            stage = "start" if r == 0 else f"round {r}"
            print(f"{stage}: " + ", ".join(label(v) for v in fresh))
    observed = sorted(v for v in range(g.n) if trace.times[v] <= 4)
    dark = sorted(v for v in range(g.n) if trace.times[v] == INF)
    print(f"observed after 4 rounds: {', '.join(label(v) for v in observed)}")
    print(f"never observed: {', '.join(label(v) for v in dark)}")

    later = propagate(g, sources, g.n)
    assert [t for t in later.times] == [t for t in trace.times]
    print("extra rounds add nothing; the process is stuck")


if __name__ == "__main__":
    main()
