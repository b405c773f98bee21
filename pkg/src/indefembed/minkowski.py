"""Minkowski inner products and the squared induced-metric map.

``phi`` sends vertex coordinates to the vector of squared edge "lengths"
measured with the inner product of the target signature.  It is quadratic
in the coordinates, additive under concatenation of maps and scales with
the square of a scalar factor; its Jacobian has two nonzero vertex blocks
per edge row.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .complex import SimplicialComplex
from .errors import (
    CombinatorialBlowup,
    ComplexMismatch,
    LengthMismatch,
    NonFiniteScalar,
    NonFiniteValue,
)

EPS_RANK = 1e-9


@dataclass(frozen=True)
class Signature:
    """Sign vector of a flat inner product on ``R^(p+q)``."""

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signature entries must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def minkowski(cls, p: int, q: int) -> Signature:
        return cls((1,) * p + (-1,) * q)

    @classmethod
    def euclidean(cls, n: int) -> Signature:
        return cls((1,) * n)

    @property
    def p(self) -> int:
        return self.signs.count(1)

    @property
    def q(self) -> int:
        return self.signs.count(-1)

    @property
    def dim(self) -> int:
        return len(self.signs)

    def array(self) -> np.ndarray:
        return np.asarray(self.signs, dtype=float)

    def __add__(self, other: Signature) -> Signature:
        return Signature(self.signs + other.signs)


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """Vertex coordinates (one row per vertex) plus the target signature."""

    complex: SimplicialComplex
    signature: Signature
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float, copy=True)
        if coords.ndim != 2:
            coords = coords.reshape(self.complex.vertex_count, -1)
        if coords.shape != (self.complex.vertex_count, self.signature.dim):
            raise LengthMismatch(
                f"coords shape {coords.shape} does not match "
                f"({self.complex.vertex_count}, {self.signature.dim})"
            )
        if not np.all(np.isfinite(coords)):
            raise NonFiniteValue("coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return self.signature.dim

    def edge_vectors(self) -> np.ndarray:
        """``f(v_i) - f(v_j)`` for every edge ``(i, j)``, shape ``(|E|, N)``."""
        e = self.complex.edge_array()
        return self.coords[e[:, 0]] - self.coords[e[:, 1]]


def inner(x, y, sig: Signature) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != sig.dim or y.shape[-1] != sig.dim:
        raise LengthMismatch(
            f"vectors of length {x.shape[-1]}, {y.shape[-1]} vs signature of {sig.dim}"
        )
    return float(np.sum(sig.array() * x * y))


def phi(f: SimplicialMap) -> np.ndarray:
    """Squared induced metric, one value per edge in edge-index order."""
    diff = f.edge_vectors()
    return (diff * diff) @ f.signature.array()


def phi_from_coords(c: SimplicialComplex, signs: np.ndarray, coords: np.ndarray) -> np.ndarray:
    """``phi`` on a raw coordinate array; used in solver inner loops."""
    e = c.edge_array()
    diff = coords[e[:, 0]] - coords[e[:, 1]]
    return (diff * diff) @ signs


def jacobian_from_coords(
    c: SimplicialComplex, signs: np.ndarray, coords: np.ndarray
) -> sp.csr_matrix:
    n_vert, dim = coords.shape
    e = c.edge_array()
    m = len(e)
    block = 2.0 * signs * (coords[e[:, 0]] - coords[e[:, 1]])
    rows = np.repeat(np.arange(m), 2 * dim)
    k = np.arange(dim)
    cols = np.concatenate(
        [e[:, [0]] * dim + k, e[:, [1]] * dim + k], axis=1
    ).ravel()
    vals = np.concatenate([block, -block], axis=1).ravel()
    return sp.csr_matrix((vals, (rows, cols)), shape=(m, n_vert * dim))


def phi_jacobian(f: SimplicialMap) -> sp.csr_matrix:
    """Jacobian of :func:`phi` w.r.t. the flattened coordinates.

    Column ``l * N + k`` is coordinate ``k`` of vertex ``l``.  The row for
    edge ``(i, j)`` carries ``2 * sigma * (f(v_i) - f(v_j))`` in block ``i``
    and its negative in block ``j``.
    """
    return jacobian_from_coords(f.complex, f.signature.array(), f.coords)


def concat(f: SimplicialMap, h: SimplicialMap) -> SimplicialMap:
    """Direct sum of two maps of the same complex; ``f``'s coordinates first."""
    if f.complex is not h.complex and f.complex != h.complex:
        raise ComplexMismatch("maps are defined on different complexes")
    return SimplicialMap(
        f.complex, f.signature + h.signature, np.hstack([f.coords, h.coords])
    )


def scale(f: SimplicialMap, lam: float) -> SimplicialMap:
    if not math.isfinite(lam):
        raise NonFiniteScalar(f"scale factor {lam!r} is not finite")
    return SimplicialMap(f.complex, f.signature, lam * f.coords)


class EdgeIndependence(NamedTuple):
    free: bool
    per_vertex: np.ndarray
    smallest_singular: np.ndarray


def edge_independence(f: SimplicialMap, eps_rank: float = EPS_RANK) -> EdgeIndependence:
    """Per-vertex linear independence of the incident edge vectors.

    A vertex passes when the smallest singular value of its stacked edge
    vectors exceeds ``eps_rank`` times the largest.  Vertices of degree 0
    pass trivially.  ``free`` is the conjunction over vertices; this is the
    condition under which the Jacobian of ``phi`` has full row rank.
    """
    return free_coords(f.complex, f.coords, eps_rank)


def free_coords(c: SimplicialComplex, coords: np.ndarray, eps_rank: float = EPS_RANK) -> EdgeIndependence:
    """:func:`edge_independence` on a raw coordinate array."""
    dim = coords.shape[1]
    ok = np.ones(c.vertex_count, dtype=bool)
    smin = np.full(c.vertex_count, np.inf)
    for v in range(c.vertex_count):
        nb = sorted(c.neighbors[v])
        if not nb:
            continue
        vecs = coords[nb] - coords[v]
        if len(nb) > dim:
            ok[v] = False
            smin[v] = 0.0
            continue
        s = np.linalg.svd(vecs, compute_uv=False)
        smin[v] = s[-1]
        ok[v] = s[0] > 0 and s[-1] > eps_rank * s[0]
    return EdgeIndependence(bool(ok.all()), ok, smin)


def affinely_independent(points: np.ndarray, eps_rank: float = EPS_RANK) -> bool:
    points = np.asarray(points, dtype=float)
    if len(points) <= 1:
        return True
    diff = points[1:] - points[0]
    if len(diff) > diff.shape[1]:
        return False
    s = np.linalg.svd(diff, compute_uv=False)
    return bool(s[0] > 0 and s[-1] > eps_rank * s[0])


def general_position(points, k: int, eps_rank: float = EPS_RANK, limit: int = 10**6) -> bool:
    """True iff every subset of at most ``k + 1`` points is affinely independent.

    Only subsets of size exactly ``min(k + 1, len(points))`` are tested,
    since independence passes to subsets.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("points must be a nonempty 2-d array")
    size = min(k + 1, len(pts))
    if math.comb(len(pts), size) > limit:
        raise CombinatorialBlowup(
            f"C({len(pts)}, {size}) subsets exceeds the exhaustive-check guard {limit}"
        )
    return all(
        affinely_independent(pts[list(idx)], eps_rank)
        for idx in itertools.combinations(range(len(pts)), size)
    )


def random_map(
    c: SimplicialComplex, sig: Signature, rng: np.random.Generator, box: float = 1.0
) -> SimplicialMap:
    """Vertex coordinates drawn i.i.d. uniform in ``[-box, box]``."""
    if box < 0:
        raise ValueError("box must be nonnegative")
    coords = rng.uniform(-box, box, size=(c.vertex_count, sig.dim))
    return SimplicialMap(c, sig, coords)
