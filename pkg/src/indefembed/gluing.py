"""Isometric embedding with target dimension depending only on (n, d).

Vertices are split into ``D = d^3 - d^2 + d + 1`` classes so that two
vertices of one class are more than three edge-steps apart.  Every vertex
``v`` gets a small star complex ``S_v``: the subcomplex spanned by the
vertices of its closed star plus an apex ``v*`` coning off every face that
continues outside.  Edges at ``v`` carry half of ``g2`` and every other edge
of ``S_v`` carries 0, so an embedding ``h_v`` of ``S_v`` with the apex at the
origin contributes ``g2 / 2`` to each edge at ``v`` and nothing elsewhere.
Stars of one class are disjoint and are placed on distinct linear copies of
``R^q_q`` inside ``R^2q_2q`` (via ``iota``), giving one block per class.
Each edge is counted once from each endpoint's class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from .complex import (
    IndefiniteMetric,
    SimplicialComplex,
    build_complex,
    num_classes,
    star_vertices,
)
from .errors import VerificationFailed
from .greene import GreeneOptions, GreeneResult, solve_greene, target_half_dimension
from .minkowski import Signature, SimplicialMap, phi_from_coords
from .verify import EPS_GEO, check_mode


@dataclass(frozen=True)
class Partition:
    classes: tuple[tuple[int, ...], ...]
    mu: tuple[int, ...]
    """1-based position of each vertex inside its class."""
    class_of: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.classes)


def partition_vertices(c: SimplicialComplex) -> Partition:
    """Greedy distance-3 class assignment in vertex-index order.

    Each vertex joins the lowest-index class containing no vertex of its
    third iterated star.  ``St^3(v)`` has at most ``d^3 - d^2 + d`` vertices
    besides ``v``, so ``D`` classes always suffice.
    """
    D = num_classes(c.max_degree)
    classes: list[list[int]] = [[] for _ in range(D)]
    members: list[set[int]] = [set() for _ in range(D)]
    mu = [0] * c.vertex_count
    class_of = [0] * c.vertex_count
    for v in range(c.vertex_count):
        near = star_vertices(c, v, 3)
        i = next(i for i in range(D) if not (members[i] & near))
        classes[i].append(v)
        members[i].add(v)
        mu[v] = len(classes[i])
        class_of[v] = i
    return Partition(tuple(tuple(k) for k in classes), tuple(mu), tuple(class_of))


@dataclass(frozen=True)
class StarComplex:
    parent_vertex: int
    complex: SimplicialComplex
    metric: IndefiniteMetric
    vertices: tuple[int, ...]
    """Parent index of each local vertex (the apex, if any, is excluded)."""
    apex: int | None
    """Local index of ``v*``; ``None`` when nothing leaves the star."""


def build_star_complex(c: SimplicialComplex, m: IndefiniteMetric, v: int) -> StarComplex:
    """Star complex of ``v`` with its halved edge metric.

    The local complex contains every simplex of ``c`` whose vertices all lie
    in the closed star of ``v`` (so edges between two neighbours of ``v``
    survive with value 0), and a cone ``tau + v*`` for every simplex of ``c``
    meeting the star vertex set in ``tau`` while leaving it.  ``v`` itself
    never meets the apex.
    """
    vset = {v} | set(c.neighbors[v])
    local = sorted(vset)
    index = {u: k for k, u in enumerate(local)}
    apex = len(local)
    simplices: set[tuple[int, ...]] = set()
    coned = False
    for s in c.maximal_simplices:
        inside = tuple(index[u] for u in s if u in vset)
        if not inside:
            continue
        simplices.add(inside)
        if len(inside) < len(s):
            simplices.add(inside + (apex,))
            coned = True
    sc = build_complex(
        sorted(simplices),
        vertex_count=apex + 1 if coned else apex,
        vertex_labels=[c.vertex_labels[u] for u in local] + (["*"] if coned else []),
    )
    vi = index[v]
    squared = np.zeros(sc.num_edges)
    for k, (a, b) in enumerate(sc.edges):
        if vi in (a, b):
            squared[k] = 0.5 * m.squared[c.edge_id(local[a], local[b])]
    if sc.dimension > c.dimension or sc.max_degree > c.max_degree:
        raise AssertionError(f"star complex of {v} exceeds (n, d) of the parent")
    return StarComplex(v, sc, IndefiniteMetric(squared, "squared"), tuple(local), apex if coned else None)


def iota(x: np.ndarray, mu: int) -> np.ndarray:
    """Linear isometry ``R^q_q -> R^2q_2q``, ``x -> (x / sqrt(mu), x sqrt(1 - 1/mu))``.

    Applied to the last axis; the target sign vector is two copies of the
    source one.  Different ``mu`` give subspaces meeting only at 0.
    """
    if mu < 1:
        raise ValueError("mu must be a positive integer")
    x = np.asarray(x, dtype=float)
    return np.concatenate([x * np.sqrt(1.0 / mu), x * np.sqrt(1.0 - 1.0 / mu)], axis=-1)


@dataclass(frozen=True)
class GluingOptions:
    tol: float = 1e-10
    seed: int = 0
    mode: str = "embedding"
    greene: GreeneOptions = field(default_factory=GreeneOptions)
    eps_geo: float = EPS_GEO
    verify: bool = True


@dataclass(frozen=True)
class GluingResult:
    map: SimplicialMap
    partition: Partition
    q: int
    block_width: int
    stars: tuple[StarComplex, ...]
    star_solutions: tuple[GreeneResult, ...]
    residual: float

    @property
    def p(self) -> int:
        return self.map.signature.p

    def class_blocks(self) -> list[np.ndarray]:
        w = self.block_width
        return [self.map.coords[:, i * w:(i + 1) * w] for i in range(self.partition.size)]

    def contributions(self) -> np.ndarray:
        """``(D, |E|)`` array of ``phi`` restricted to each class block."""
        w = self.block_width
        signs = np.asarray(self.map.signature.signs[:w], dtype=float)
        c = self.map.complex
        return np.array([phi_from_coords(c, signs, b) for b in self.class_blocks()])


def star_seed(seed: int, v: int, stream: int = 0) -> int:
    return int(np.random.SeedSequence([seed, v, stream]).generate_state(1)[0])


def solve_gluing(
    c: SimplicialComplex, m: IndefiniteMetric, opts: GluingOptions | None = None
) -> GluingResult:
    """Simplicial isometric embedding into ``R^p_p`` with ``p = 2qD``.

    In ``local_embedding`` and ``immersion`` modes the ``iota`` doubling is
    skipped and ``q`` drops to ``max(d, 2n)`` or ``d``, so ``p = qD``.
    """
    opts = opts or GluingOptions()
    part = partition_vertices(c)
    D = part.size
    q = target_half_dimension(c, opts.mode)
    doubled = opts.mode == "embedding"
    width = 4 * q if doubled else 2 * q
    star_opts = replace(opts.greene, tol=opts.tol / D, mode=opts.mode, q=q)

    stars, sols = [], []
    coords = np.zeros((c.vertex_count, D * width))
    for v in range(c.vertex_count):
        sv = build_star_complex(c, m, v)
        sol = solve_greene(sv.complex, sv.metric, replace(star_opts, seed=star_seed(opts.seed, v)))
        h = np.asarray(sol.map.coords)
        if sv.apex is not None:
            h = h - h[sv.apex]
        else:
            # nothing to pin at the origin: park the star at a generic offset
            rng = np.random.default_rng(star_seed(opts.seed, v, 1))
            scale = max(1.0, float(np.max(np.abs(h))))
            h = h - h.mean(axis=0) + rng.uniform(-scale, scale, size=h.shape[1])
        alpha = iota(h, part.mu[v]) if doubled else h
        i = part.class_of[v]
        coords[list(sv.vertices), i * width:(i + 1) * width] = alpha[: len(sv.vertices)]
        stars.append(sv)
        sols.append(sol)

    block_sig = Signature.minkowski(q, q)
    if doubled:
        block_sig = block_sig + block_sig
    sig = Signature(block_sig.signs * D)
    lam = SimplicialMap(c, sig, coords)
    g2 = np.asarray(m.squared, dtype=float)
    residual = float(np.max(np.abs(phi_from_coords(c, sig.array(), coords) - g2))) if g2.size else 0.0
    result = GluingResult(lam, part, q, width, tuple(stars), tuple(sols), residual)
    if opts.verify:
        check = check_mode(lam, opts.mode, opts.eps_geo)
        if not check.ok:
            raise VerificationFailed(f"assembled map fails the {opts.mode} check at {check.witness}")
    return result


def same_class_pairs(part: Partition):
    for members in part.classes:
        yield from itertools.combinations(members, 2)
