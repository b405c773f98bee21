"""Isometric embedding into R^q_q by deforming a zero-metric double.

A generic Euclidean map ``f`` into ``E^q`` is free: at every vertex the
incident edge vectors are independent, so the Jacobian of ``phi`` has full
row rank.  Its double ``f (+) f`` into ``R^q_q`` induces the zero metric and
is still free.  For a scale ``lam`` large enough the target ``g2 / lam**2``
lies close to zero, Newton's method started at the double reaches a map
``h`` with ``phi(h) = g2 / lam**2``, and ``lam * h`` is the answer.

Steps are minimum-norm solutions of the underdetermined linearization,
which keeps the iterate near the free start.  When Newton stalls or the
iterate loses freeness ``lam`` is doubled and the solve restarts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .complex import IndefiniteMetric, SimplicialComplex
from .errors import RetriesExhausted, SolverDiverged
from .minkowski import (
    EPS_RANK,
    Signature,
    SimplicialMap,
    edge_independence,
    free_coords,
    jacobian_from_coords,
    phi_from_coords,
    random_map,
)
from .verify import EPS_GEO, check_mode

log = logging.getLogger(__name__)

MODES = ("embedding", "local_embedding", "immersion")


@dataclass(frozen=True)
class GreeneOptions:
    tol: float = 1e-10
    max_newton_iters: int = 200
    max_lambda_doublings: int = 60
    seed: int = 0
    box: float = 1.0
    mode: str = "embedding"
    max_retries: int = 100
    eps_rank: float = EPS_RANK
    eps_geo: float = EPS_GEO
    q: int | None = None
    """Override for the half-dimension; must be at least the mode's bound."""

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_newton_iters < 1 or self.max_lambda_doublings < 0 or self.max_retries < 1:
            raise ValueError("iteration caps must be positive")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


def target_half_dimension(c: SimplicialComplex, mode: str = "embedding") -> int:
    """``max(d, 2n+1)``, ``max(d, 2n)`` or ``d`` depending on the mode."""
    d, n = c.max_degree, c.dimension
    if mode == "embedding":
        return max(d, 2 * n + 1)
    if mode == "local_embedding":
        return max(d, 2 * n)
    if mode == "immersion":
        return d
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class GreeneResult:
    map: SimplicialMap
    lam: float
    newton_iters: int
    lambda_doublings: int
    start_retries: int
    residual: float
    history: tuple[float, ...]
    """Euclidean norm of the scaled residual after each accepted step of the
    final solve; nonincreasing by construction of the line search."""


def free_euclidean_start(
    c: SimplicialComplex,
    q: int,
    rng: np.random.Generator,
    mode: str = "embedding",
    box: float = 1.0,
    max_retries: int = 100,
    eps_rank: float = EPS_RANK,
    eps_geo: float = EPS_GEO,
) -> tuple[SimplicialMap, int]:
    """Sample a free map into ``E^q`` that also passes the mode's geometric check.

    Returns the map and the number of rejected draws.
    """
    need = target_half_dimension(c, mode)
    if q < need:
        raise ValueError(f"q={q} is below the {mode} bound {need}")
    sig = Signature.euclidean(q)
    for attempt in range(max_retries):
        f = random_map(c, sig, rng, box)
        if not edge_independence(f, eps_rank).free:
            continue
        if check_mode(f, mode, eps_geo).ok:
            return f, attempt
    raise RetriesExhausted(f"no free {mode} into E^{q} after {max_retries} draws")


def _newton(c, signs, x0, target, thresh, max_iters, eps_rank):
    """Damped minimum-norm Newton on ``phi(x) = target``.

    Returns ``(x, iterations, converged, history)``.
    """
    x = x0.copy()
    r = phi_from_coords(c, signs, x) - target
    err = float(np.max(np.abs(r))) if r.size else 0.0
    history = [float(np.linalg.norm(r))]
    it = 0
    while err > thresh:
        if it >= max_iters:
            return x, it, False, history
        it += 1
        J = jacobian_from_coords(c, signs, x)
        JJt = (J @ J.T).toarray()
        try:
            y = sla.cho_solve(sla.cho_factor(JJt), -r)
        except np.linalg.LinAlgError:
            return x, it, False, history
        step = (J.T @ y).reshape(x.shape)
        f0 = float(r @ r)
        t = 1.0
        while True:
            xt = x + t * step
            rt = phi_from_coords(c, signs, xt) - target
            ft = float(rt @ rt)
            if ft <= (1.0 - 1e-4 * t) * f0 or (ft < f0 and t < 1e-3):
                break
            t *= 0.5
            if t < 1e-10:
                return x, it, False, history
        x, r = xt, rt
        err = float(np.max(np.abs(r)))
        history.append(float(np.linalg.norm(r)))
        # Newton is only trusted near the free start
        if not free_coords(c, x, eps_rank).free:
            return x, it, False, history
    return x, it, True, history


def solve_greene(
    c: SimplicialComplex, m: IndefiniteMetric, opts: GreeneOptions | None = None
) -> GreeneResult:
    """Simplicial isometric embedding (or local embedding / immersion) into R^q_q."""
    opts = opts or GreeneOptions()
    rng = np.random.default_rng(opts.seed)
    q = opts.q if opts.q is not None else target_half_dimension(c, opts.mode)
    f, retries = free_euclidean_start(
        c, q, rng, opts.mode, opts.box, opts.max_retries, opts.eps_rank, opts.eps_geo
    )
    sig = Signature.minkowski(q, q)
    signs = sig.array()
    x0 = np.hstack([f.coords, f.coords])
    g2 = np.asarray(m.squared, dtype=float)
    abs_thresh = opts.tol * max(1.0, m.sup_norm())

    lam = max(1.0, np.sqrt(m.sup_norm()))
    total_iters = 0
    for doubling in range(opts.max_lambda_doublings + 1):
        target = g2 / lam**2
        x, iters, converged, history = _newton(
            c, signs, x0, target, abs_thresh / lam**2,
            opts.max_newton_iters, opts.eps_rank,
        )
        total_iters += iters
        if converged:
            h = SimplicialMap(c, sig, lam * x)
            if check_mode(h, opts.mode, opts.eps_geo).ok:
                res = float(np.max(np.abs(phi_from_coords(c, signs, h.coords) - g2))) if g2.size else 0.0
                return GreeneResult(h, lam, total_iters, doubling, retries, res, tuple(history))
            log.debug("lambda=%g: converged but %s check failed", lam, opts.mode)
        else:
            log.debug("lambda=%g: newton stalled after %d iterations", lam, iters)
        lam *= 2.0
    raise SolverDiverged(
        f"no solution after {opts.max_lambda_doublings} doublings of lambda (last {lam / 2:g})"
    )
