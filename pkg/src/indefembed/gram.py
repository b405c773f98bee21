"""Per-simplex Gram forms, segment energy, classification and signature bounds.

On a simplex with vertices ``v_0, ..., v_k`` the edge values determine the
inner products of the edge vectors ``v_i - v_0``::

    G_ij = (g2(v_0 v_i) + g2(v_0 v_j) - g2(v_i v_j)) / 2

so every simplex carries a symmetric bilinear form.  Its inertia bounds
the signature of any target space that can hold the simplex isometrically.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .complex import IndefiniteMetric, SimplicialComplex
from .errors import BadBarycentric, CliqueCapTooSmall, UnknownSimplex

ZERO_TOL = 1e-9


@dataclass(frozen=True)
class GramForm:
    simplex: tuple[int, ...]
    matrix: np.ndarray

    @property
    def base_vertex(self) -> int:
        return self.simplex[0]

    @property
    def k(self) -> int:
        return len(self.simplex) - 1


@dataclass(frozen=True)
class InertiaTriple:
    n_plus: int
    n_zero: int
    n_minus: int
    margin: float = float("inf")
    """Smallest |eigenvalue|; small values flag borderline cases."""

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)


def _pairwise_squares(c: SimplicialComplex, m: IndefiniteMetric, verts: Sequence[int]) -> np.ndarray:
    n = len(verts)
    out = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            out[a, b] = out[b, a] = m.squared[c.edge_id(verts[a], verts[b])]
    return out


def gram_from_squares(sq: np.ndarray) -> np.ndarray:
    """Gram matrix of ``x_i - x_0`` from a full table of pairwise squares."""
    d0 = sq[0, 1:]
    return 0.5 * (d0[:, None] + d0[None, :] - sq[1:, 1:])


def gram_form(
    c: SimplicialComplex,
    m: IndefiniteMetric,
    simplex: Sequence[int],
    order: Sequence[int] | None = None,
) -> GramForm:
    """Gram form of ``simplex``.

    The base vertex is the smallest index unless ``order`` gives an explicit
    vertex ordering (its first entry becomes the base).
    """
    key = tuple(sorted(int(v) for v in simplex))
    if len(key) < 2 or key not in c.faces:
        raise UnknownSimplex(f"{list(simplex)} is not a face of dimension >= 1")
    verts = tuple(int(v) for v in order) if order is not None else key
    if tuple(sorted(verts)) != key:
        raise ValueError("order must be a permutation of the simplex")
    return GramForm(verts, gram_from_squares(_pairwise_squares(c, m, verts)))


def segment_energy(G: GramForm, a_bary, b_bary, atol: float = 1e-12) -> float:
    """Energy of the straight segment between two barycentric points."""
    a = np.asarray(a_bary, dtype=float)
    b = np.asarray(b_bary, dtype=float)
    n = G.k + 1
    if a.shape != (n,) or b.shape != (n,):
        raise BadBarycentric(f"barycentric vectors must have length {n}")
    if abs(a.sum() - 1) > atol or abs(b.sum() - 1) > atol:
        raise BadBarycentric("barycentric coordinates must sum to 1")
    v = (a - b)[1:]
    return float(v @ G.matrix @ v)


def inertia(G: GramForm | np.ndarray, tol: float = ZERO_TOL) -> InertiaTriple:
    mat = G.matrix if isinstance(G, GramForm) else np.asarray(G, dtype=float)
    if mat.size == 0:
        return InertiaTriple(0, 0, 0)
    w = np.linalg.eigvalsh(0.5 * (mat + mat.T))
    cut = tol * max(1.0, float(np.max(np.abs(w))))
    return InertiaTriple(
        int(np.sum(w > cut)),
        int(np.sum(np.abs(w) <= cut)),
        int(np.sum(w < -cut)),
        float(np.min(np.abs(w))),
    )


class MetricClass(str, enum.Enum):
    EUCLIDEAN = "Euclidean"
    MINKOWSKI = "Minkowski"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class Classification:
    kind: MetricClass
    margin: float
    table: dict[tuple[int, ...], InertiaTriple]


def classify(c: SimplicialComplex, m: IndefiniteMetric, tol: float = ZERO_TOL) -> Classification:
    """Euclidean if every maximal simplex form is positive definite,
    Minkowski if every face form is non-degenerate, else Degenerate.

    ``table`` lists the inertia of every face of dimension >= 1.
    """
    faces = sorted((s for s in c.faces if len(s) >= 2), key=lambda s: (len(s), s))
    if not faces:
        raise ValueError("classification needs at least one simplex of dimension >= 1")
    table = {s: inertia(gram_form(c, m, s), tol) for s in faces}
    tops = [s for s in c.maximal_simplices if len(s) >= 2]
    margin = min(t.margin for t in table.values())
    if all(table[s].n_plus == len(s) - 1 for s in tops):
        kind = MetricClass.EUCLIDEAN
    elif all(t.n_zero == 0 for t in table.values()):
        kind = MetricClass.MINKOWSKI
    else:
        kind = MetricClass.DEGENERATE
    return Classification(kind, margin, table)


@dataclass(frozen=True)
class Obstruction:
    p_min: int
    q_min: int
    witness_plus: tuple[int, ...]
    witness_minus: tuple[int, ...]
    truncated: bool = False


def obstruction(
    c: SimplicialComplex,
    m: IndefiniteMetric,
    clique_cap: int = 12,
    cliques: bool = True,
    tol: float = ZERO_TOL,
) -> Obstruction:
    """Lower bounds on ``(p, q)`` for any simplicial isometric embedding.

    Every vertex set that is pairwise joined by edges has a Gram form fixed
    by the metric; an isometric image spans a subspace on which the target
    inner product restricts to that form, so its positive and negative
    counts bound ``p`` and ``q``.  With ``cliques=True`` the maximal cliques
    of the edge graph are examined (each truncated to ``clique_cap``
    vertices, which still yields valid bounds); otherwise only the maximal
    simplices.
    """
    n = c.dimension
    if clique_cap < n + 1:
        raise CliqueCapTooSmall(
            f"clique_cap={clique_cap} cannot hold a {n}-simplex ({n + 1} vertices)"
        )
    if cliques:
        graph = nx.Graph()
        graph.add_nodes_from(range(c.vertex_count))
        graph.add_edges_from(c.edges)
        candidates = [tuple(sorted(q)) for q in nx.find_cliques(graph)]
    else:
        candidates = list(c.maximal_simplices)
    truncated = False
    best_p, best_q = 0, 0
    wit_p: tuple[int, ...] = ()
    wit_q: tuple[int, ...] = ()
    for verts in sorted(candidates):
        if len(verts) > clique_cap:
            verts = verts[:clique_cap]
            truncated = True
        if len(verts) < 2:
            continue
        g = gram_from_squares(_pairwise_squares(c, m, verts))
        t = inertia(g, tol)
        if t.n_plus > best_p:
            best_p, wit_p = t.n_plus, verts
        if t.n_minus > best_q:
            best_q, wit_q = t.n_minus, verts
    return Obstruction(best_p, best_q, wit_p, wit_q, truncated)


def gram_of_points(points: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """Gram matrix of ``points[i] - points[0]`` under a signed inner product."""
    diff = points[1:] - points[0]
    return (diff * signs) @ diff.T
