"""Classical MaxCut references and the ratio bounds derived from a Goemans-Williamson cut."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph

__all__ = ["GW_ALPHA", "MAX_EXACT_VERTICES", "RatioBounds", "exact_maxcut", "gw_maxcut", "ratio_bounds"]

GW_ALPHA = 0.87856
MAX_EXACT_VERTICES = 24


@dataclass(frozen=True)
class RatioBounds:
    lower: float
    upper: float


def ratio_bounds(cut: float, gw_cut: float) -> RatioBounds:
    """Bracket the unknown approximation ratio using a GW cut as yardstick."""
    if not gw_cut > 0:
        raise ValueError(f"gw_cut must be positive, got {gw_cut!r}")
    upper = cut / gw_cut
    return RatioBounds(GW_ALPHA * upper, upper)


def _cut_of(W: np.ndarray, signs: np.ndarray) -> float:
    s = signs.astype(float)
    return float(W.sum() / 2.0 - s @ W @ s / 2.0) / 2.0


def exact_maxcut(g: Graph) -> tuple[float, np.ndarray]:
    """Global MaxCut by exhaustive enumeration, vertex 0 on side +1."""
    V = g.num_vertices
    if V > MAX_EXACT_VERTICES:
        raise ValueError(
            f"exact_maxcut is limited to {MAX_EXACT_VERTICES} vertices (got {V}); "
            "use gw_maxcut for larger graphs"
        )
    W = np.ascontiguousarray(g.weight_matrix())
    _, mask = _kernels.gray_maxcut(W)
    signs = np.ones(V, dtype=np.int8)
    for v in range(1, V):
        if (mask >> (v - 1)) & 1:
            signs[v] = -1
    return _cut_of(W, signs), signs


def _burer_monteiro(W: np.ndarray, rank: int, rng: np.random.Generator,
                    max_steps: int, tol: float) -> tuple[float, np.ndarray]:
    """Projected gradient ascent of sum_ij w_ij (1 - v_i.v_j) / 4 over unit rows."""
    V = W.shape[0]
    X = rng.standard_normal((V, rank))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    step = 1.0 / max(float(np.abs(W).sum(axis=1).max()), 1e-12)
    total = W.sum()
    value = (total - np.sum(X * (W @ X))) / 4.0
    for _ in range(max_steps):
        Y = X - step * (W @ X)
        norms = np.linalg.norm(Y, axis=1, keepdims=True)
        # rows with vanishing update keep their previous direction
        X = np.where(norms > 1e-15, Y / np.where(norms > 1e-15, norms, 1.0), X)
        new = (total - np.sum(X * (W @ X))) / 4.0
        if new - value <= tol * max(1.0, abs(new)):
            value = new
            break
        value = new
    return float(value), X


def gw_maxcut(g: Graph, rank: int | None = None, roundings: int = 200, seed: int = 0,
              restarts: int = 20, max_steps: int = 5000, tol: float = 1e-10) -> tuple[float, np.ndarray]:
    """Goemans-Williamson style cut from a low-rank vector relaxation.

    The relaxation is solved in Burer-Monteiro form (``V x rank`` unit
    vectors, default rank ``ceil(sqrt(2|V|))``) with ``restarts`` random
    starts; the best relaxation is rounded by ``roundings`` random
    hyperplanes and the best resulting cut is returned.
    """
    V = g.num_vertices
    if rank is None:
        rank = max(2, math.ceil(math.sqrt(2 * V)))
    if rank < 2:
        raise ValueError("rank must be >= 2")
    if roundings < 1:
        raise ValueError("roundings must be >= 1")
    W = g.weight_matrix()
    best_val, best_X = -np.inf, None
    for k in range(restarts):
        val, X = _burer_monteiro(W, rank, np.random.default_rng([seed, k]), max_steps, tol)
        if val > best_val:
            best_val, best_X = val, X
    rng = np.random.default_rng([seed, restarts])
    planes = rng.standard_normal((rank, roundings))
    signs = np.where(best_X @ planes >= 0, 1, -1).astype(np.int8)  # (V, roundings)
    s = signs.astype(float)
    cuts = (W.sum() / 2.0 - np.einsum("ik,ij,jk->k", s, W, s) / 2.0) / 2.0
    k = int(np.argmax(cuts))
    best = signs[:, k].copy()
    if best[0] < 0:
        best = -best
    return _cut_of(W, best), best
