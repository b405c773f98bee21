"""Reproduce the worked examples: the long-edge triangle, K5 sharpness and
the star metric of the figure complex.

    python scripts/worked_examples.py
"""

import math

import numpy as np

from indefembed import (
    Signature,
    SimplicialMap,
    build_complex,
    build_star_complex,
    complete_complex,
    metric_from_lengths,
    obstruction,
    signed_sqrt,
    solve_gluing,
    solve_greene,
    solve_spanning,
    verify,
)


def triangle():
    c = build_complex([[0, 1], [0, 2], [1, 2]])
    m = metric_from_lengths(c, [1.0, 1.0, 100.0])
    r = 7 * math.sqrt(51)
    hand = SimplicialMap(c, Signature.minkowski(1, 1), np.array([[0, 0], [50, r], [-50, r]]))
    print("triangle with edges 1, 1, 100")
    rep = verify(hand, m, 1e-12)
    print(f"  hand coordinates in R^1_1: residual {rep.max_edge_residual:.1e}, embedding {rep.is_embedding}")
    solvers = {
        "greene": lambda: solve_greene(c, m).map,
        "spanning": lambda: solve_spanning(c, m, 0)[0],
        "gluing": lambda: solve_gluing(c, m).map,
    }
    for name, run in solvers.items():
        f = run()
        rep = verify(f, m, 1e-8)
        print(f"  {name:9s} R^{f.signature.p}_{f.signature.q}: residual {rep.max_edge_residual:.1e}, "
              f"embedding {rep.is_embedding}")


def k5():
    c = complete_complex(5)
    print("K5 skeleton")
    for sign in (1, -1):
        m = metric_from_lengths(c, sign * np.ones(10))
        ob = obstruction(c, m)
        f = solve_greene(c, m).map
        print(f"  all edges {sign:+d}: needs p >= {ob.p_min}, q >= {ob.q_min}; "
              f"greene lands in R^{f.signature.p}_{f.signature.q}")


def figure_star():
    c = build_complex(
        [[0, 1, 3], [1, 2, 3], [2, 3, 4], [0, 5, 6], [3, 5], [4, 5], [5, 7], [4, 7]],
        vertex_labels=list("vABCDEFG"),
    )
    g = {(0, 1): 2, (0, 6): 3, (5, 6): -3, (0, 5): math.sqrt(2), (0, 3): 1, (1, 2): -9,
         (1, 3): -1, (2, 3): 0, (2, 4): -4, (3, 5): 11, (3, 4): -1, (4, 5): 7,
         (5, 7): -1, (4, 7): 100}
    sv = build_star_complex(c, metric_from_lengths(c, g), 0)
    print("star complex of v")
    labels = sv.complex.vertex_labels
    for (a, b), val in zip(sv.complex.edges, sv.metric.squared):
        print(f"  {labels[a]}{labels[b]}: {float(signed_sqrt(val)):.6f}")


if __name__ == "__main__":
    triangle()
    k5()
    figure_star()
