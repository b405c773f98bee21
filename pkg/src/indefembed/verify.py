"""Independent checks on candidate maps.

Isometry is checked by recomputing ``phi`` from raw coordinates.  The
embedding, local-embedding and immersion checks use ordinary affine
geometry of the coordinate space; the sign vector plays no role there.

A simplicial map is an embedding iff the image of every maximal simplex is
nondegenerate and any two maximal simplices meet exactly in the image of
their common face.  For a pair whose vertex images are affinely independent
the second condition is automatic; otherwise a small linear program looks
for a common point with positive weight outside the shared face.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .complex import IndefiniteMetric
from .errors import ComplexMismatch
from .minkowski import EPS_RANK, SimplicialMap, phi

EPS_GEO = 1e-9


@dataclass(frozen=True)
class IsometryCheck:
    passed: bool
    max_edge_residual: float
    worst_edge: int | None
    threshold: float


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class VerificationReport:
    max_edge_residual: float
    worst_edge: int | None
    isometric: bool
    is_embedding: bool
    is_local_embedding: bool
    is_immersion: bool
    embedding_witness: tuple | None
    local_witness: tuple | None
    immersion_witness: tuple | None
    tol: float
    eps_geo: float

    @property
    def passed(self) -> bool:
        return self.isometric and self.is_embedding


def verify_isometry(f: SimplicialMap, m: IndefiniteMetric, tol: float = 1e-10) -> IsometryCheck:
    """Pass iff ``max |phi(f) - g2| <= tol * max(1, max |g2|)``."""
    if len(m.squared) != f.complex.num_edges:
        raise ComplexMismatch("metric and map live on different complexes")
    threshold = tol * max(1.0, m.sup_norm())
    if f.complex.num_edges == 0:
        return IsometryCheck(True, 0.0, None, threshold)
    res = np.abs(phi(f) - m.squared)
    worst = int(np.argmax(res))
    return IsometryCheck(bool(res[worst] <= threshold), float(res[worst]), worst, threshold)


def _reduced(points: np.ndarray) -> tuple[np.ndarray, bool]:
    """Coordinates of ``points`` in their own affine span (scaled to unit size)
    and whether they are affinely independent."""
    diff = points - points[0]
    # constant coordinates carry no geometry; block-sparse maps have many
    diff = diff[:, np.any(diff != 0, axis=0)]
    _, s, vt = np.linalg.svd(diff[1:], full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((len(points), 0)), len(points) == 1
    rank = int(np.sum(s > EPS_RANK * s[0]))
    y = diff @ vt[:rank].T / s[0]
    return y, rank == len(points) - 1


def _nondegenerate(points: np.ndarray) -> bool:
    return _reduced(points)[1]


def _meet_properly(coords: np.ndarray, a: tuple, b: tuple, eps: float) -> bool:
    union = sorted(set(a) | set(b))
    y, independent = _reduced(coords[union])
    if independent:
        return True
    pos = {v: i for i, v in enumerate(union)}
    ya = y[[pos[v] for v in a]]
    yb = y[[pos[v] for v in b]]
    na, nb = len(a), len(b)
    shared = set(a) & set(b)
    # maximize the weight on vertices outside the common face
    cost = -np.array(
        [0.0 if v in shared else 1.0 for v in a] + [0.0 if v in shared else 1.0 for v in b]
    )
    eq = np.zeros((y.shape[1] + 2, na + nb))
    eq[: y.shape[1], :na] = ya.T
    eq[: y.shape[1], na:] = -yb.T
    eq[-2, :na] = 1.0
    eq[-1, na:] = 1.0
    rhs = np.zeros(y.shape[1] + 2)
    rhs[-2:] = 1.0
    res = linprog(cost, A_eq=eq, b_eq=rhs, bounds=(0, None), method="highs")
    if res.status == 2:  # infeasible: the images are disjoint
        return True
    if res.status != 0:
        raise RuntimeError(f"embedding LP failed: {res.message}")
    return -res.fun <= eps


def _check_simplices(coords: np.ndarray, simplices, eps: float) -> EmbeddingCheck:
    for s in simplices:
        if not _nondegenerate(coords[list(s)]):
            return EmbeddingCheck(False, (s,))
    if len(simplices) < 2:
        return EmbeddingCheck(True)
    lo = np.array([coords[list(s)].min(axis=0) for s in simplices])
    hi = np.array([coords[list(s)].max(axis=0) for s in simplices])
    for a, b in itertools.combinations(range(len(simplices)), 2):
        s, t = simplices[a], simplices[b]
        # an axis separating the bounding boxes rules out any intersection
        if not set(s) & set(t) and np.any((hi[a] < lo[b]) | (hi[b] < lo[a])):
            continue
        if not _meet_properly(coords, s, t, eps):
            return EmbeddingCheck(False, (s, t))
    return EmbeddingCheck(True)


def verify_immersion(f: SimplicialMap) -> EmbeddingCheck:
    """Every simplex image is nondegenerate (rank ``k`` for a ``k``-simplex)."""
    for s in f.complex.maximal_simplices:
        if not _nondegenerate(f.coords[list(s)]):
            return EmbeddingCheck(False, (s,))
    return EmbeddingCheck(True)


def verify_local_embedding(f: SimplicialMap, eps_geo: float = EPS_GEO) -> EmbeddingCheck:
    """The restriction to every closed vertex star is an embedding."""
    for v in range(f.complex.vertex_count):
        check = _check_simplices(f.coords, f.complex.simplices_containing(v), eps_geo)
        if not check.ok:
            return EmbeddingCheck(False, (v,) + check.witness)
    return EmbeddingCheck(True)


def verify_simplicial_embedding(f: SimplicialMap, eps_geo: float = EPS_GEO) -> EmbeddingCheck:
    return _check_simplices(f.coords, f.complex.maximal_simplices, eps_geo)


def check_mode(f: SimplicialMap, mode: str, eps_geo: float = EPS_GEO) -> EmbeddingCheck:
    """Dispatch to the geometric check matching a solver mode."""
    if mode == "embedding":
        return verify_simplicial_embedding(f, eps_geo)
    if mode == "local_embedding":
        return verify_local_embedding(f, eps_geo)
    if mode == "immersion":
        return verify_immersion(f)
    raise ValueError(f"unknown mode {mode!r}")


def verify(
    f: SimplicialMap,
    m: IndefiniteMetric,
    tol: float = 1e-10,
    eps_geo: float = EPS_GEO,
) -> VerificationReport:
    iso = verify_isometry(f, m, tol)
    emb = verify_simplicial_embedding(f, eps_geo)
    loc = verify_local_embedding(f, eps_geo)
    imm = verify_immersion(f)
    return VerificationReport(
        max_edge_residual=iso.max_edge_residual,
        worst_edge=iso.worst_edge,
        isometric=iso.passed,
        is_embedding=emb.ok,
        is_local_embedding=loc.ok,
        is_immersion=imm.ok,
        embedding_witness=emb.witness,
        local_witness=loc.witness,
        immersion_witness=imm.witness,
        tol=tol,
        eps_geo=eps_geo,
    )
