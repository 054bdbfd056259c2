"""The tiny statevector engine behind the cut estimator.

Only one circuit family is ever needed, a Hadamard layer followed by a
diagonal phase gate, so nothing here builds circuits: ``U H|0>`` is just
the phase vector scaled by ``2**(-n/2)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pauli as _pauli
from .graph import Laplacian, is_power_of_two

__all__ = [
    "StateVector",
    "PhaseVector",
    "uniform_state",
    "apply_diagonal",
    "prepare_state",
    "n_cuts",
    "n_cuts_std_error",
    "gate_count_estimate",
    "MODES",
]

MODES = ("dense", "pauli-exact", "pauli-sampled")


def _qubits(dim: int) -> int:
    if not is_power_of_two(dim):
        raise ValueError(f"dimension {dim} is not a power of two")
    return dim.bit_length() - 1


@dataclass(frozen=True, eq=False)
class StateVector:
    amps: np.ndarray

    def __post_init__(self):
        a = np.array(self.amps, dtype=np.complex128).reshape(-1)
        _qubits(a.size)
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state is not normalised (|psi|^2 = {norm!r})")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    @property
    def n(self) -> int:
        return _qubits(self.amps.size)


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Diagonal of a diagonal unitary; every entry has modulus one."""

    phases: np.ndarray

    def __post_init__(self):
        p = np.array(self.phases, dtype=np.complex128).reshape(-1)
        _qubits(p.size)
        if np.any(np.abs(np.abs(p) - 1.0) > 1e-12):
            raise ValueError("phase entries must have unit modulus")
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)

    @property
    def dim(self) -> int:
        return self.phases.size


def uniform_state(n: int) -> StateVector:
    if n < 0:
        raise ValueError("n must be non-negative")
    dim = 1 << n
    return StateVector(np.full(dim, dim ** -0.5, dtype=np.complex128))


def apply_diagonal(state: StateVector, u: PhaseVector) -> StateVector:
    if state.amps.size != u.dim:
        raise ValueError(f"state has dimension {state.amps.size}, gate has {u.dim}")
    return StateVector(u.phases * state.amps)


def prepare_state(u: PhaseVector) -> StateVector:
    """``U H|0>`` for the diagonal gate ``u``."""
    return StateVector(u.phases * u.dim ** -0.5)


def _check_dims(L, u: PhaseVector) -> np.ndarray:
    entries = np.asarray(L)
    if entries.shape != (u.dim, u.dim):
        raise ValueError(f"Laplacian of shape {entries.shape} does not match {u.dim} phases")
    return entries


def n_cuts(L: Laplacian, u: PhaseVector, mode: str = "dense", *, shots: int | None = None,
           seed: int | None = None, pauli: "_pauli.PauliSum | None" = None) -> float:
    """Cut estimate ``2**(n-2) <psi|L|psi>`` with ``psi = U H|0>``.

    ``dense`` evaluates the quadratic form directly. The Pauli modes sum
    per-string expectations, either exact or estimated from ``shots``
    measurements.
    Pass a precomputed ``pauli`` decomposition to skip recomputing it.
    """
    entries = _check_dims(L, u)
    n = _qubits(u.dim)
    if mode == "dense":
        phi = u.phases
        # 2**(n-2) * 2**(-n) * phi^H L phi
        return float(np.vdot(phi, entries @ phi).real) / 4.0
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    s = pauli if pauli is not None else _pauli.decompose(L)
    state = prepare_state(u)
    if mode == "pauli-exact":
        value = _pauli.expectation_exact(s, state)
    else:
        if shots is None or seed is None:
            raise ValueError("pauli-sampled mode needs shots and seed")
        value = _pauli.expectation_sampled(s, state, shots, seed)
    return float(np.ldexp(value, n - 2))


def n_cuts_std_error(L: Laplacian, u: PhaseVector, shots: int,
                     pauli: "_pauli.PauliSum | None" = None) -> float:
    """Standard error of the ``pauli-sampled`` estimate at ``shots`` shots."""
    _check_dims(L, u)
    s = pauli if pauli is not None else _pauli.decompose(L)
    n = _qubits(u.dim)
    return float(np.ldexp(_pauli.sampled_std_error(s, prepare_state(u), shots), n - 2))


def gate_count_estimate(n: int) -> tuple[int, int, int]:
    """Closed-form gate budget of the diagonal ansatz on ``n`` qubits.

    Returns ``(cnot, single, total)``; no circuit is synthesised.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cnot = 2 ** n - 2
    single = 2 ** n - 2 * n + 5
    return cnot, single, cnot + single
