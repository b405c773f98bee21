"""Generators for the complex families used in tests and benchmarks."""

from __future__ import annotations

import itertools

import numpy as np

from .complex import SimplicialComplex, build_complex, complete_complex
from .errors import UnknownFamily

FAMILIES = ("skeleton", "grid", "glued-fan")


def skeleton(N: int) -> SimplicialComplex:
    """1-skeleton of the N-simplex: ``N + 1`` vertices, every degree ``N``."""
    return complete_complex(N + 1, 1)


def triangulated_grid(k: int) -> SimplicialComplex:
    """``k x k`` vertex grid, each unit square cut along the same diagonal.

    For ``k >= 3`` the maximum degree is 6 and the dimension is 2.
    """
    if k < 2:
        raise ValueError("grid needs at least 2 vertices per side")
    idx = lambda r, s: r * k + s  # noqa: E731
    tris = []
    for r, s in itertools.product(range(k - 1), repeat=2):
        a, b, c, d = idx(r, s), idx(r, s + 1), idx(r + 1, s), idx(r + 1, s + 1)
        tris += [[a, b, d], [a, c, d]]
    return build_complex(tris)


def glued_fan(count: int, N: int = 4) -> SimplicialComplex:
    """``count`` copies of the N-simplex 1-skeleton sharing vertex 0.

    The shared vertex has degree ``count * N``.
    """
    if count < 1:
        raise ValueError("need at least one copy")
    edges = []
    for j in range(count):
        verts = [0] + [1 + j * N + t for t in range(N)]
        edges += [list(e) for e in itertools.combinations(verts, 2)]
    return build_complex(edges)


def make_family(name: str, size: int) -> SimplicialComplex:
    if name == "skeleton":
        return skeleton(size)
    if name == "grid":
        return triangulated_grid(size)
    if name == "glued-fan":
        return glued_fan(size)
    raise UnknownFamily(f"unknown family {name!r}; choose from {FAMILIES}")


def random_complex(
    rng: np.random.Generator,
    max_vertices: int = 20,
    max_dim: int = 3,
    max_degree: int = 8,
    attempts: int = 200,
) -> SimplicialComplex:
    """Random complex grown simplex by simplex under degree and size caps."""
    n_vert = int(rng.integers(2, max_vertices + 1))
    simplices: list[tuple[int, ...]] = []
    nbrs = [set() for _ in range(n_vert)]
    for _ in range(attempts):
        k = int(rng.integers(1, max_dim + 1)) + 1
        if k > n_vert:
            continue
        s = tuple(sorted(rng.choice(n_vert, size=k, replace=False).tolist()))
        trial = [set(n) for n in nbrs]
        for a, b in itertools.combinations(s, 2):
            trial[a].add(b)
            trial[b].add(a)
        if max(len(n) for n in trial) > max_degree:
            continue
        simplices.append(s)
        nbrs = trial
    if not simplices:
        simplices.append((0, 1))
    return build_complex(simplices, vertex_count=n_vert)
