"""Pure numpy versions of the compiled kernels in ``_speedups.pyx``."""
from __future__ import annotations

import numpy as np


def _parity(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.uint64, copy=True)
    p = np.zeros(a.shape, dtype=np.uint64)
    while np.any(a):
        p ^= a & np.uint64(1)
        a >>= np.uint64(1)
    return p.astype(np.int8)


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.uint64, copy=True)
    out = np.zeros(a.shape, dtype=np.int64)
    while np.any(a):
        out += (a & np.uint64(1)).astype(np.int64)
        a >>= np.uint64(1)
    return out


def _hadamard_signs(N: int) -> np.ndarray:
    idx = np.arange(N)
    return 1.0 - 2.0 * _parity(idx[:, None] & idx[None, :])


def pauli_coefficients(L: np.ndarray) -> np.ndarray:
    L = np.ascontiguousarray(L, dtype=np.float64)
    N = L.shape[0]
    c = np.arange(N)
    # D[c, x] = L[c, c ^ x]; one Sylvester-Hadamard product handles every z at once.
    D = L[c[:, None], c[:, None] ^ c[None, :]]
    S = _hadamard_signs(N) @ D  # S[z, x]
    ny = _popcount(c[:, None] & c[None, :])  # indexed [x, z]
    phase = np.where(ny % 2 == 1, 0.0, np.where(ny % 4 == 2, -1.0, 1.0))
    return phase * S.T / N


def pauli_expectations(psi: np.ndarray, x_masks: np.ndarray, z_masks: np.ndarray,
                       chunk: int = 4096) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    x_masks = np.asarray(x_masks, dtype=np.int64)
    z_masks = np.asarray(z_masks, dtype=np.int64)
    N = psi.shape[0]
    c = np.arange(N)
    out = np.empty(x_masks.shape[0])
    for start in range(0, x_masks.shape[0], chunk):
        x = x_masks[start:start + chunk, None]
        z = z_masks[start:start + chunk, None]
        signs = 1.0 - 2.0 * _parity(z & c[None, :])
        S = (np.conj(psi[c[None, :] ^ x]) * signs * psi[None, :]).sum(axis=1)
        ny = _popcount(x[:, 0] & z[:, 0]) % 4
        out[start:start + chunk] = (S * (1j ** ny)).real
    return out


def gray_maxcut(W: np.ndarray, chunk: int = 1 << 15) -> tuple[float, int]:
    """Enumerate all masks directly (no Gray order); same result contract."""
    W = np.asarray(W, dtype=np.float64)
    V = W.shape[0]
    if V > 63:
        raise ValueError("gray_maxcut supports at most 63 vertices")
    if V <= 1:
        return 0.0, 0
    total = float(W.sum()) / 2.0
    best, best_mask = 0.0, 0
    count = 1 << (V - 1)
    shifts = np.arange(V - 1, dtype=np.int64)
    for start in range(0, count, chunk):
        masks = np.arange(start, min(count, start + chunk), dtype=np.int64)
        s = np.ones((masks.size, V))
        s[:, 1:] -= 2.0 * ((masks[:, None] >> shifts[None, :]) & 1)
        cuts = (total - 0.5 * np.einsum("ki,ij,kj->k", s, W, s, optimize=True)) / 2.0
        k = int(np.argmax(cuts))
        if cuts[k] > best:
            best, best_mask = float(cuts[k]), int(masks[k])
    return best, best_mask
