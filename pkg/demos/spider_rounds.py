"""Round budget versus solution size on spider graphs.

A spider with m legs of length k can be observed from the center alone
when k rounds are allowed, but drop the budget by one and every leg
suddenly needs its own origin.  This script prints the optimum for a few
spiders across all budgets, computed independently by the subset solver
and the decomposition solver.
"""

from powerdom.bruteforce import solve_bf
from powerdom.dpsolve import solve_dp
from powerdom.generators import spider


def main() -> None:
    for m, k in ((2, 3), (3, 3), (4, 4)):
        g = spider(m, k)
        print(f"spider({m},{k}): {g.n} nodes, {g.m} edges")
        for ell in range(1, k + 2):
            opt, witness = solve_bf(g, range(g.n), ell)
            check, _ = solve_dp(g, range(g.n), ell)
            assert opt == check
            names = ", ".join(str(v + 1) for v in sorted(witness))
            unit = "round " if ell == 1 else "rounds"
            print(f"  {ell} {unit}: optimum {opt}  (e.g. {{{names}}})")
        print()


if __name__ == "__main__":
    main()
