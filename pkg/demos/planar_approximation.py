"""The shifting argument on nested rings.

Nodes of a planar graph are grouped by their distance from the outer
face.  Cutting the level sequence every k levels splits the graph into
shallow blocks that are solved exactly and unioned; some shift of the
cutting pattern is guaranteed to stay close to the optimum.  Five nested
triangles give five levels, enough for the cuts to land differently per
shift.
"""

from powerdom.bruteforce import solve_bf
from powerdom.graphs import Graph
from powerdom.planar import LevelAssignment, build_blocks, ptas_detailed
from powerdom.propagation import is_feasible


def nested_triangles(rings: int) -> tuple[Graph, LevelAssignment]:
    edges = []
    for r in range(rings):
        base = 3 * r
        for i in range(3):
            edges.append((base + i, base + (i + 1) % 3))
            if r + 1 < rings:
                edges.append((base + i, base + 3 + i))
    levels = LevelAssignment(tuple(r + 1 for r in range(rings) for _ in range(3)))
    return Graph(3 * rings, edges), levels


def main() -> None:
    g, levels = nested_triangles(5)
    ell, eps = 1, 1
    res = ptas_detailed(g, levels, ell, eps)
    print(f"{g.n} nodes in 5 levels, {ell} round, eps={eps} -> window size k={res.k}")
    for shift in range(1, res.k + 1):
        sizes = [len(b.C) for b in build_blocks(levels, shift, res.k, ell)]
        mark = "  <- chosen" if shift == res.shift else ""
        print(f"  shift {shift}: block core sizes {sizes}{mark}")
    opt = solve_bf(g, range(g.n), ell)[0]
    out = sorted(v + 1 for v in res.solution)
    print(f"returned {len(res.solution)} origins {out}, exact optimum {opt}")
    assert is_feasible(g, res.solution, range(g.n), ell)
    # k|out| <= (k + 4l - 2) opt, checked in integers
    assert res.k * len(res.solution) <= (res.k + 4 * ell - 2) * opt
    print(f"guarantee: {len(res.solution)} <= (1 + {4 * ell - 2}/{res.k}) * {opt}")


if __name__ == "__main__":
    main()
