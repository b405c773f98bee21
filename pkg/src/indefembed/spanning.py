"""Isometric embedding through a basis of one-dimensional induced metrics.

The squared metrics ``((x_i - x_j)**2)_e`` of random maps ``x: V -> R`` span
the edge-value space: a vanishing combination ``sum_e c_e (x_i - x_j)**2``
as a polynomial in ``x`` forces every ``c_e`` to be zero.  Drawing maps
until the accumulated metrics reach full rank gives a basis; the defect
``g2 - phi(f)`` of a Euclidean embedding ``f`` into ``E^(2n+1)`` is then a
single linear solve away, and each coefficient contributes one scaled
coordinate with the sign of the coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .complex import IndefiniteMetric, SimplicialComplex
from .errors import RetriesExhausted, SingularFamily
from .minkowski import Signature, SimplicialMap, random_map
from .verify import EPS_GEO, verify_simplicial_embedding

COND_LIMIT = 1e12


@dataclass(frozen=True)
class SpanningFamily:
    maps: np.ndarray
    """``(|E|, |V|)``: row ``k`` holds the vertex values of map ``h_k``."""
    induced: np.ndarray
    """``(|E|, |E|)``: column ``k`` is ``phi(h_k)``."""
    draws: int

    @property
    def condition(self) -> float:
        if self.induced.size == 0:
            return 1.0
        return float(np.linalg.cond(self.induced))


def induced_1d(c: SimplicialComplex, values: np.ndarray) -> np.ndarray:
    e = c.edge_array()
    return (values[e[:, 0]] - values[e[:, 1]]) ** 2


def spanning_family(
    c: SimplicialComplex,
    rng: np.random.Generator,
    max_draws: int | None = None,
    rel_tol: float = 1e-8,
) -> SpanningFamily:
    """Accumulate random one-dimensional maps whose induced metrics are
    linearly independent until they span all edge values."""
    n_edges = c.num_edges
    if n_edges == 0:
        raise ValueError("spanning family needs at least one edge")
    max_draws = max_draws if max_draws is not None else 10 * n_edges + 100
    maps, cols = [], []
    basis = np.zeros((n_edges, 0))
    draws = 0
    while len(cols) < n_edges:
        if draws >= max_draws:
            raise RetriesExhausted(
                f"rank stalled at {len(cols)}/{n_edges} after {draws} draws"
            )
        draws += 1
        x = rng.uniform(-1.0, 1.0, size=c.vertex_count)
        col = induced_1d(c, x)
        # two rounds of Gram-Schmidt against the accepted directions
        resid = col - basis @ (basis.T @ col)
        resid -= basis @ (basis.T @ resid)
        norm = np.linalg.norm(resid)
        if norm <= rel_tol * np.linalg.norm(col):
            continue
        basis = np.hstack([basis, (resid / norm)[:, None]])
        maps.append(x)
        cols.append(col)
    return SpanningFamily(np.array(maps), np.array(cols).T, draws)


@dataclass(frozen=True)
class SpanningSolution:
    base: SimplicialMap
    alphas: np.ndarray
    family: SpanningFamily
    condition: float
    redraws: int

    @property
    def p(self) -> int:
        return self.base.signature.p + int(np.sum(self.alphas >= 0))

    @property
    def q(self) -> int:
        return self.base.signature.q + int(np.sum(self.alphas < 0))


def assemble(base: SimplicialMap, family: SpanningFamily, alphas: np.ndarray) -> SimplicialMap:
    """``base (+) sqrt(a_k) h_k [a_k >= 0] (+) sqrt(|a_l|) h_l [a_l < 0]``."""
    pos = np.flatnonzero(alphas >= 0)
    neg = np.flatnonzero(alphas < 0)
    order = np.concatenate([pos, neg])
    blocks = family.maps[order].T * np.sqrt(np.abs(alphas[order]))
    signs = base.signature.signs + (1,) * len(pos) + (-1,) * len(neg)
    return SimplicialMap(base.complex, Signature(signs), np.hstack([base.coords, blocks]))


def solve_spanning(
    c: SimplicialComplex,
    m: IndefiniteMetric,
    rng: np.random.Generator | int = 0,
    base_signs: tuple[int, ...] | None = None,
    max_retries: int = 100,
    cond_limit: float = COND_LIMIT,
    drop_zero: bool = False,
    eps_geo: float = EPS_GEO,
) -> tuple[SimplicialMap, SpanningSolution]:
    """Isometric embedding into ``R^p_q`` with ``p + q = 2n + 1 + |E|``.

    ``base_signs`` assigns signs to the ``2n + 1`` base coordinates (all
    ``+1`` by default); any assignment works since only the base map's
    induced metric enters the linear system.
    """
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    n = c.dimension
    width = 2 * n + 1
    sig = Signature(base_signs) if base_signs is not None else Signature.euclidean(width)
    if sig.dim != width:
        raise ValueError(f"base_signs must have length {width}")

    for attempt in range(max_retries):
        f = random_map(c, sig, rng)
        if verify_simplicial_embedding(f, eps_geo).ok:
            break
    else:
        raise RetriesExhausted(f"no embedding into R^{width} after {max_retries} draws")

    g2 = np.asarray(m.squared, dtype=float)
    if c.num_edges == 0:
        fam = SpanningFamily(np.zeros((0, c.vertex_count)), np.zeros((0, 0)), 0)
        sol = SpanningSolution(f, np.zeros(0), fam, 1.0, 0)
        return f, sol

    e = c.edge_array()
    diff = f.coords[e[:, 0]] - f.coords[e[:, 1]]
    rhs = g2 - (diff * diff) @ sig.array()
    for redraw in range(max_retries):
        fam = spanning_family(c, rng)
        u, s, vt = sla.svd(fam.induced)
        cond = float(s[0] / s[-1]) if s[-1] > 0 else np.inf
        if cond > cond_limit:
            continue
        alphas = vt.T @ ((u.T @ rhs) / s)
        break
    else:
        raise SingularFamily(f"every spanning family exceeded condition {cond_limit:g}")

    sol = SpanningSolution(f, alphas, fam, cond, redraw)
    if drop_zero:
        keep = alphas != 0
        fam = SpanningFamily(fam.maps[keep], fam.induced[:, keep], fam.draws)
        alphas = alphas[keep]
    return assemble(f, fam, alphas), sol
