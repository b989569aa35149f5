"""Two gadget constructions behind the hardness results.

First, hanging a path of length ell off every node turns domination into
ell-round power domination: the pendant paths burn the whole round
budget, so nothing is left for multi-step forcing and the origin set
must dominate outright.  Second, a label-cover style instance maps to a
power dominating instance whose optimum is the cover optimum plus one;
the connector gadget that wires it together only propagates one way.
"""

from powerdom.bruteforce import solve_bf, solve_domset_bf
from powerdom.generators import (
    MinRepInstance,
    attach_paths,
    connector_arm,
    minrep_cover_bf,
    minrep_to_pds,
)
from powerdom.graphs import Graph
from powerdom.propagation import INF, propagate


def main() -> None:
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    gamma, dom = solve_domset_bf(g)
    print(f"base graph: dominating set size {gamma},"
          f" e.g. {{{', '.join(str(v + 1) for v in sorted(dom))}}}")
    for ell in (2, 3):
        h = attach_paths(g, ell)
        opt, _ = solve_bf(h, range(h.n), ell)
        print(f"with pendant paths, {ell} rounds on {h.n} nodes: optimum {opt}")
    print()

    arm, roles = connector_arm()
    fwd = propagate(arm, {roles["master"], roles["center"]}, 3).times
    back = propagate(arm, {roles["master"], roles["terminal"]}, arm.n).times
    print("connector arm, lit from the near end:"
          f" far terminal observed at round {int(fwd[roles['terminal']])}")
    print("connector arm, lit from the far end:"
          f" center {'stays dark' if back[roles['center']] == INF else 'observed'}")
    print()

    inst = MinRepInstance(1, 2, 1, 2, ((0, 0), (1, 1)))
    cover, picks = minrep_cover_bf(inst)
    big, info = minrep_to_pds(inst)
    print(f"cover instance: {inst.n_elements} elements,"
          f" {len(inst.super_edges())} super-edge, cover optimum {cover}")
    print(f"reduction output: {big.n} nodes, hub plus {info.copies} copies per edge")
    assert solve_bf(big, range(big.n), big.n, size_cap=cover, force=True) is None
    opt, _ = solve_bf(big, range(big.n), big.n, size_cap=cover + 1, force=True)
    print(f"power domination optimum on the reduction: {opt} = cover + 1")


if __name__ == "__main__":
    main()
