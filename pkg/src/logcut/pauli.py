"""Pauli-basis decomposition of real symmetric matrices and its expectation values.

String convention: character ``k`` of a Pauli string acts on the ``k``-th
tensor factor, i.e. on bit ``n-1-k`` of a basis-state index, so ``"XZ"``
is ``kron(X, Z)``.

Every Pauli string is a signed permutation matrix. Writing a string as an
``(x_mask, z_mask)`` pair, row ``r`` has its single nonzero entry in column
``r ^ x_mask`` with value ``i**popcount(x&z) * (-1)**popcount(z & column)``.
All routines below work from the masks and never build the matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .graph import is_power_of_two

__all__ = [
    "PauliTerm",
    "PauliSum",
    "decompose",
    "reconstruct",
    "expectation_exact",
    "expectation_sampled",
    "sampled_std_error",
    "string_masks",
]

DROP_TOL = 1e-12
_LETTERS = "IXZY"  # indexed by x_bit + 2 * z_bit


def string_masks(string: str) -> tuple[int, int]:
    """``(x_mask, z_mask)`` of a Pauli string."""
    n = len(string)
    x = z = 0
    for k, ch in enumerate(string):
        bit = 1 << (n - 1 - k)
        if ch == "X":
            x |= bit
        elif ch == "Z":
            z |= bit
        elif ch == "Y":
            x |= bit
            z |= bit
        elif ch != "I":
            raise ValueError(f"invalid Pauli letter {ch!r} in {string!r}")
    return x, z


def _mask_string(x: int, z: int, n: int) -> str:
    return "".join(_LETTERS[((x >> b) & 1) + 2 * ((z >> b) & 1)] for b in range(n - 1, -1, -1))


@dataclass(frozen=True)
class PauliTerm:
    coeff: float
    string: str

    def __post_init__(self):
        object.__setattr__(self, "coeff", float(self.coeff))
        string_masks(self.string)


@dataclass(frozen=True)
class PauliSum:
    n: int
    terms: tuple[PauliTerm, ...] = field(default=())

    def __post_init__(self):
        terms = tuple(self.terms)
        strings = [t.string for t in terms]
        if any(len(s) != self.n for s in strings):
            raise ValueError(f"all strings must have length {self.n}")
        if len(set(strings)) != len(strings):
            raise ValueError("duplicate Pauli strings")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    @cached_property
    def coeffs(self) -> np.ndarray:
        return np.array([t.coeff for t in self.terms], dtype=float)

    @cached_property
    def masks(self) -> tuple[np.ndarray, np.ndarray]:
        xz = np.array([string_masks(t.string) for t in self.terms], dtype=np.int64).reshape(-1, 2)
        return np.ascontiguousarray(xz[:, 0]), np.ascontiguousarray(xz[:, 1])

    def to_text(self) -> str:
        lines = [f"{t.coeff!r} {t.string}" for t in sorted(self.terms, key=lambda t: t.string)]
        return "".join(line + "\n" for line in lines)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "PauliSum":
        terms = []
        for line in text.splitlines():
            if not line.strip():
                continue
            parts = line.split()
            coeff = float(parts[0].replace("−", "-"))
            terms.append(PauliTerm(coeff, parts[1] if len(parts) > 1 else ""))
        if n is None:
            if not terms:
                raise ValueError("cannot infer qubit count from an empty sum; pass n")
            n = len(terms[0].string)
        return cls(n, tuple(terms))


def _as_square(matrix) -> np.ndarray:
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not is_power_of_two(a.shape[0]):
        raise ValueError(f"matrix dimension {a.shape[0]} is not a power of two")
    return a


def decompose(L) -> PauliSum:
    """Write a real symmetric ``2**n``-square matrix as ``sum_i c_i P_i``.

    ``c_i = Tr(P_i L) / 2**n``; coefficients with ``|c_i| <= 1e-12`` are
    dropped and strings with an odd number of Y factors are skipped outright
    since their trace against a real symmetric matrix vanishes.
    """
    a = _as_square(L)
    if np.iscomplexobj(a):
        if np.any(a.imag != 0):
            raise ValueError("only real symmetric matrices are supported")
        a = a.real
    a = np.ascontiguousarray(a, dtype=np.float64)
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0].bit_length() - 1
    C = _kernels.pauli_coefficients(a)
    xs, zs = np.nonzero(np.abs(C) > DROP_TOL)
    terms = [PauliTerm(C[x, z], _mask_string(int(x), int(z), n)) for x, z in zip(xs, zs)]
    terms.sort(key=lambda t: t.string)
    return PauliSum(n, tuple(terms))


def reconstruct(s: PauliSum) -> np.ndarray:
    """Dense ``sum_i c_i P_i``; real dtype unless an odd-Y term is present."""
    N = 1 << s.n
    M = np.zeros((N, N), dtype=np.complex128)
    if len(s):
        x, z = s.masks
        rows = np.arange(N)
        cols = rows[None, :] ^ x[:, None]
        signs = 1.0 - 2.0 * _parity(z[:, None] & cols)
        phase = 1j ** (_popcount(x & z) % 4)
        vals = (s.coeffs * phase)[:, None] * signs
        np.add.at(M, (np.broadcast_to(rows, cols.shape), cols), vals)
    return M.real.copy() if not np.any(M.imag) else M


def _amplitudes(state) -> np.ndarray:
    return np.ascontiguousarray(getattr(state, "amps", state), dtype=np.complex128)


def _check_state(s: PauliSum, psi: np.ndarray) -> None:
    if psi.shape != (1 << s.n,):
        raise ValueError(f"state of dimension {psi.shape[0]} does not match {s.n}-qubit operator")


def string_expectations(s: PauliSum, state) -> np.ndarray:
    """Exact ``<psi|P_i|psi>`` for every term of ``s``."""
    psi = _amplitudes(state)
    _check_state(s, psi)
    if not len(s):
        return np.zeros(0)
    x, z = s.masks
    return _kernels.pauli_expectations(psi, x, z)


def expectation_exact(s: PauliSum, state) -> float:
    ev = string_expectations(s, state)
    return float(s.coeffs @ ev) if len(s) else 0.0


_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
_ROTATIONS = {
    "X": _H,
    "Y": _H @ np.diag([1, -1j]),  # S^dagger first, then H
}


def _rotated_probabilities(psi: np.ndarray, strings: list[str], n: int) -> np.ndarray:
    """Computational-basis distributions after rotating each string to Z."""
    T = len(strings)
    states = np.broadcast_to(psi.reshape((1,) + (2,) * n), (T,) + (2,) * n).copy()
    eye = np.eye(2, dtype=np.complex128)
    for k in range(n):
        gates = np.array([_ROTATIONS.get(st[k], eye) for st in strings])
        if not np.any(gates != eye):
            continue
        moved = np.moveaxis(states, k + 1, -1)
        states = np.moveaxis(np.einsum("tab,t...b->t...a", gates, moved), -1, k + 1)
    probs = np.abs(states.reshape(T, -1)) ** 2
    return probs / probs.sum(axis=1, keepdims=True)


def expectation_sampled(s: PauliSum, state, shots: int, seed: int, chunk: int = 512) -> float:
    """Finite-shot estimate of ``sum_i c_i <P_i>``.

    Each string is rotated into the Z basis (X by H, Y by S^dagger then H)
    and ``shots`` basis outcomes are drawn from the exact distribution; the
    estimate is the mean parity over the string's support. String ``i`` draws from
    its own stream seeded with ``(seed, i)``, so results do not depend on
    evaluation order.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    psi = _amplitudes(state)
    _check_state(s, psi)
    if not len(s):
        return 0.0
    x, z = s.masks
    support = x | z
    outcomes = np.arange(1 << s.n)
    estimates = np.ones(len(s))
    active = np.nonzero(support)[0]
    for start in range(0, active.size, chunk):
        idx = active[start:start + chunk]
        probs = _rotated_probabilities(psi, [s.terms[i].string for i in idx], s.n)
        for row, i in enumerate(idx):
            rng = np.random.default_rng([seed, int(i)])
            counts = rng.multinomial(shots, probs[row])
            signs = 1 - 2 * _parity(outcomes & support[i])
            estimates[i] = (counts @ signs) / shots
    return float(s.coeffs @ estimates)


def sampled_std_error(s: PauliSum, state, shots: int) -> float:
    """Standard error of :func:`expectation_sampled` at the given shot count."""
    ev = string_expectations(s, state)
    var = np.clip(1.0 - ev ** 2, 0.0, None) / shots
    return float(np.sqrt(np.sum(s.coeffs ** 2 * var)))


def _parity(a) -> np.ndarray:
    return _popcount(a) & 1


def _popcount(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint64).copy()
    out = np.zeros(a.shape, dtype=np.int64)
    while np.any(a):
        out += (a & np.uint64(1)).astype(np.int64)
        a >>= np.uint64(1)
    return out
