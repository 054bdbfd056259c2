# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Signatures and results match ``logcut._fallback``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline void _fwht(double* a, Py_ssize_t N) noexcept nogil:
    cdef Py_ssize_t h = 1, i, j
    cdef double u, v
    while h < N:
        i = 0
        while i < N:
            for j in range(i, i + h):
                u = a[j]
                v = a[j + h]
                a[j] = u + v
                a[j + h] = u - v
            i += 2 * h
        h *= 2


def pauli_coefficients(const double[:, ::1] L):
    """Coefficients ``Tr(P L) / N`` for every Pauli string of a real symmetric ``L``.

    Returns an ``(N, N)`` array indexed ``[x_mask, z_mask]``; strings with an
    odd number of Y factors are left at zero.
    """
    cdef Py_ssize_t N = L.shape[0]
    cdef Py_ssize_t x, z, c
    cdef int ny
    cdef double scale = 1.0 / N
    out = np.zeros((N, N), dtype=np.float64)
    cdef double[:, ::1] C = out
    buf = np.empty(N, dtype=np.float64)
    cdef double[::1] d = buf
    with nogil:
        for x in range(N):
            for c in range(N):
                d[c] = L[c, c ^ x]
            _fwht(&d[0], N)
            for z in range(N):
                ny = __builtin_popcountll(<unsigned long long>(x & z))
                if ny & 1:
                    continue
                if ny & 2:
                    C[x, z] = -d[z] * scale
                else:
                    C[x, z] = d[z] * scale
    return out


def pauli_expectations(const double complex[::1] psi, const long long[::1] x_masks, const long long[::1] z_masks):
    """``<psi|P_i|psi>`` for each string given as ``(x_mask, z_mask)``."""
    cdef Py_ssize_t N = psi.shape[0]
    cdef Py_ssize_t T = x_masks.shape[0]
    cdef Py_ssize_t t, c
    cdef long long x, z
    cdef int ny
    cdef double sr, si, ar, ai, br, bi
    out = np.empty(T, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for t in range(T):
            x = x_masks[t]
            z = z_masks[t]
            sr = 0.0
            si = 0.0
            for c in range(N):
                # conj(psi[c ^ x]) * psi[c]
                ar = psi[c ^ x].real
                ai = -psi[c ^ x].imag
                br = psi[c].real
                bi = psi[c].imag
                if __builtin_popcountll(<unsigned long long>(z & c)) & 1:
                    sr -= ar * br - ai * bi
                    si -= ar * bi + ai * br
                else:
                    sr += ar * br - ai * bi
                    si += ar * bi + ai * br
            ny = __builtin_popcountll(<unsigned long long>(x & z)) & 3
            # real part of i**ny * (sr + i si)
            if ny == 0:
                res[t] = sr
            elif ny == 1:
                res[t] = -si
            elif ny == 2:
                res[t] = -sr
            else:
                res[t] = si
    return out


def gray_maxcut(const double[:, ::1] W):
    """Exhaustive MaxCut with vertex 0 pinned to side +1.

    Walks the reflected Gray code over vertices ``1..V-1`` updating the cut
    incrementally. Returns ``(best_cut, best_mask)`` where bit ``v-1`` of the
    mask marks vertex ``v`` on side -1; ties keep the smallest mask.
    """
    cdef Py_ssize_t V = W.shape[0]
    cdef Py_ssize_t j, v
    cdef unsigned long long k, steps, mask = 0, best_mask = 0
    cdef double cut = 0.0, best = 0.0, delta, sv
    if V > 63:
        raise ValueError("gray_maxcut supports at most 63 vertices")
    sign_arr = np.ones(V, dtype=np.float64)
    field_arr = np.asarray(W).sum(axis=1)
    cdef double[::1] s = sign_arr
    cdef double[::1] h = field_arr
    if V <= 1:
        return 0.0, 0
    steps = (<unsigned long long>1) << (V - 1)
    with nogil:
        for k in range(1, steps):
            v = __builtin_ctzll(k) + 1
            sv = s[v]
            delta = sv * h[v]
            cut += delta
            for j in range(V):
                h[j] -= 2.0 * W[j, v] * sv
            s[v] = -sv
            mask ^= (<unsigned long long>1) << (v - 1)
            if cut > best or (cut == best and mask < best_mask):
                best = cut
                best_mask = mask
    return best, best_mask
