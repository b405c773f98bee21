"""Finite simplicial complexes and indefinite edge metrics.

A complex is given by its maximal simplices; edges, faces and vertex
degrees are derived once at construction.  An indefinite metric assigns an
arbitrary real number to every edge and is stored as its signed square,
which is the only quantity the embedding constructions consume.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateVertexInSimplex,
    EmptyInput,
    IndexOutOfRange,
    MissingEdgeValue,
    NonFiniteValue,
    UnknownEdge,
)

Simplex = tuple[int, ...]
Edge = tuple[int, int]


def signed_square(x):
    """``x**2`` for ``x >= 0`` and ``-x**2`` otherwise (works elementwise)."""
    x = np.asarray(x, dtype=float)
    out = np.sign(x) * x * x
    return float(out) if out.ndim == 0 else out


def signed_sqrt(y):
    """Inverse of :func:`signed_square`."""
    y = np.asarray(y, dtype=float)
    out = np.sign(y) * np.sqrt(np.abs(y))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract finite simplicial complex.

    Build instances with :func:`build_complex`; the derived fields are
    filled in there and never change afterwards.
    """

    vertex_count: int
    maximal_simplices: tuple[Simplex, ...]
    vertex_labels: tuple[str, ...]
    edges: tuple[Edge, ...]
    faces: frozenset[Simplex] = field(repr=False)
    degrees: tuple[int, ...] = field(repr=False)
    neighbors: tuple[frozenset[int], ...] = field(repr=False)
    edge_index: Mapping[Edge, int] = field(repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return max(len(s) for s in self.maximal_simplices) - 1

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_id(self, i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        try:
            return self.edge_index[key]
        except KeyError:
            raise UnknownEdge(f"({i}, {j}) is not an edge") from None

    def has_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i < j else (j, i)) in self.edge_index

    def simplices_containing(self, v: int) -> list[Simplex]:
        """Maximal simplices that contain vertex ``v``."""
        return [s for s in self.maximal_simplices if v in s]

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(|E|, 2)`` integer array in edge-index order."""
        if not self.edges:
            return np.zeros((0, 2), dtype=int)
        return np.asarray(self.edges, dtype=int)


def _all_faces(simplices: Iterable[Simplex]) -> frozenset[Simplex]:
    faces: set[Simplex] = set()
    for s in simplices:
        for r in range(1, len(s) + 1):
            faces.update(itertools.combinations(s, r))
    return frozenset(faces)


def build_complex(
    maximal_simplices: Sequence[Sequence[int]],
    vertex_count: int | None = None,
    vertex_labels: Sequence[str] | None = None,
) -> SimplicialComplex:
    """Build a complex from a list of simplices.

    Non-maximal entries are absorbed into the simplices containing them.
    Vertices in ``range(vertex_count)`` that lie in no simplex become
    isolated 0-simplices.
    """
    if len(maximal_simplices) == 0 and not vertex_count:
        raise EmptyInput("a complex needs at least one simplex")
    simplices = []
    for raw in maximal_simplices:
        s = tuple(int(v) for v in raw)
        if not s:
            raise EmptyInput("empty simplex")
        if len(set(s)) != len(s):
            raise DuplicateVertexInSimplex(f"repeated vertex in {list(raw)}")
        if min(s) < 0:
            raise IndexOutOfRange(f"negative vertex index in {list(raw)}")
        simplices.append(tuple(sorted(s)))

    top = max((max(s) for s in simplices), default=-1)
    if vertex_count is None:
        vertex_count = top + 1
    elif top >= vertex_count:
        raise IndexOutOfRange(f"vertex {top} out of range for {vertex_count} vertices")
    if vertex_labels is not None and len(vertex_labels) != vertex_count:
        raise IndexOutOfRange("vertex_labels length does not match vertex_count")

    # keep only maximal simplices; larger first so containment is one pass
    unique = sorted(set(simplices), key=lambda s: (-len(s), s))
    kept: list[Simplex] = []
    for s in unique:
        ss = set(s)
        if not any(ss <= set(k) for k in kept if len(k) > len(s)):
            kept.append(s)
    covered = {v for s in kept for v in s}
    kept.extend((v,) for v in range(vertex_count) if v not in covered)
    kept.sort()

    edge_set = {e for s in kept for e in itertools.combinations(s, 2)}
    edges = tuple(sorted(edge_set))
    nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
    for i, j in edges:
        nbrs[i].add(j)
        nbrs[j].add(i)

    labels = tuple(vertex_labels) if vertex_labels is not None else tuple(
        str(v) for v in range(vertex_count)
    )
    return SimplicialComplex(
        vertex_count=vertex_count,
        maximal_simplices=tuple(kept),
        vertex_labels=labels,
        edges=edges,
        faces=_all_faces(kept),
        degrees=tuple(len(n) for n in nbrs),
        neighbors=tuple(frozenset(n) for n in nbrs),
        edge_index={e: k for k, e in enumerate(edges)},
    )


@dataclass(frozen=True)
class Star:
    """Iterated closed star ``St^k(v)`` as a subcomplex of its parent.

    ``boundary`` holds the vertices first reached at depth ``k``; for
    ``k = 1`` that is every star vertex other than ``v``.
    """

    center: int
    depth: int
    vertices: frozenset[int]
    maximal_simplices: tuple[Simplex, ...]
    boundary: frozenset[int]

    @property
    def faces(self) -> frozenset[Simplex]:
        return _all_faces(self.maximal_simplices)


def closed_star(c: SimplicialComplex, v: int, k: int = 1) -> Star:
    if not 0 <= v < c.vertex_count:
        raise IndexOutOfRange(f"vertex {v} out of range")
    if k < 1:
        raise ValueError("star depth k must be >= 1")
    inner = {v}
    simplices: set[Simplex] = set()
    for _ in range(k):
        layer = set()
        for u in inner:
            layer.update(c.simplices_containing(u))
        simplices |= layer
        reached = {w for s in simplices for w in s}
        previous, inner = inner, reached
    return Star(
        center=v,
        depth=k,
        vertices=frozenset(inner),
        maximal_simplices=tuple(sorted(simplices)),
        boundary=frozenset(inner - previous),
    )


def star_vertices(c: SimplicialComplex, v: int, k: int) -> frozenset[int]:
    """Vertex set of ``St^k(v)``: vertices within ``k`` edge-steps of ``v``.

    Equivalent to ``closed_star(c, v, k).vertices`` but skips building the
    simplex list.
    """
    seen = {v}
    frontier = {v}
    for _ in range(k):
        frontier = {w for u in frontier for w in c.neighbors[u]} - seen
        if not frontier:
            break
        seen |= frontier
    return frozenset(seen)


@dataclass(frozen=True)
class IndefiniteMetric:
    """Edge values of an indefinite metric, stored as signed squares."""

    squared: np.ndarray
    input_mode: str = "squared"

    def __post_init__(self):
        arr = np.array(self.squared, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "squared", arr)

    def __len__(self) -> int:
        return len(self.squared)

    @property
    def lengths(self) -> np.ndarray:
        """Signed lengths recovered from the stored squares."""
        return signed_sqrt(self.squared)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.squared))) if len(self.squared) else 0.0


def _edge_values(c: SimplicialComplex, values) -> np.ndarray:
    if isinstance(values, Mapping):
        out = np.full(c.num_edges, np.nan)
        for key, val in values.items():
            i, j = key
            out[c.edge_id(int(i), int(j))] = float(val)
        missing = np.flatnonzero(np.isnan(out))
        if missing.size:
            raise MissingEdgeValue(f"no value for edge {c.edges[missing[0]]}")
    else:
        out = np.asarray(list(values), dtype=float)
        if out.shape != (c.num_edges,):
            raise MissingEdgeValue(
                f"expected {c.num_edges} edge values, got {out.size}"
            )
    if not np.all(np.isfinite(out)):
        raise NonFiniteValue("edge values must be finite")
    return out


def metric_from_lengths(c: SimplicialComplex, lengths) -> IndefiniteMetric:
    """Metric from signed edge lengths (mapping ``(i, j) -> g`` or a sequence
    in edge-index order); each length is passed through the signed square."""
    return IndefiniteMetric(signed_square(_edge_values(c, lengths)), "length")


def metric_from_squares(c: SimplicialComplex, squares) -> IndefiniteMetric:
    return IndefiniteMetric(_edge_values(c, squares), "squared")


def complete_complex(n_vertices: int, dim: int = 1) -> SimplicialComplex:
    """The ``dim``-skeleton of the simplex on ``n_vertices`` vertices."""
    return build_complex(
        [list(s) for s in itertools.combinations(range(n_vertices), dim + 1)],
        vertex_count=n_vertices,
    )


def num_classes(d: int) -> int:
    """Number of distance-3 classes sufficient for max degree ``d``."""
    return d**3 - d**2 + d + 1
