"""Multi-oscillatory relaxation of binary variables.

``r_f(x, q, m)`` is a smooth map from the real line to ``[0, 1]`` that, as
``x`` sweeps ``[0, 2*pi)``, behaves like bit ``q`` of a binary counter.
Stacking ``q = 0 .. b-1`` lets one continuous variable stand in for ``b``
binary ones. :class:`AnsatzLayout` splits the ``2**n`` diagonal phases of the
ansatz into ``r`` such blocks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .statevector import PhaseVector

__all__ = ["AnsatzLayout", "x0", "r_f", "encode_phases", "decode_partition", "relaxed_bits"]

# ln(-ln(0.5)); r_f(0, q, m) == 0.5 exactly when 2**(m-q) * sin(x0) equals this.
_HALF_LOGLOG = math.log(-math.log(0.5))

# |t| beyond this saturates exp(-exp(t)) to 0 or 1 in double precision.
_SATURATION = 700.0


def _x0_array(q, m):
    k = np.asarray(m, dtype=np.int64) - np.asarray(q, dtype=np.int64)
    arg = np.ldexp(_HALF_LOGLOG, -k)
    if np.any(np.abs(arg) > 1.0):
        raise ValueError(f"x0 undefined: |ln(-ln 0.5) / 2**(m-q)| > 1 for q={q}, m={m}")
    return np.arcsin(arg)


def x0(q: int, m: int) -> float:
    """Offset that centres ``r_f(0, q, m)`` on 0.5."""
    return float(_x0_array(q, m))


def r_f(x, q, m):
    """``exp(-exp(2**(m-q) * sin(2**q * x + x0(q, m))))``, overflow-safe.

    ``x`` and ``q`` broadcast against each other. The exponent is assembled
    from the mantissa/exponent of the sine so ``2**(m-q)`` never has to be
    represented; once ``|t| > 700`` the result is pinned to 0 or 1.
    """
    x = np.asarray(x, dtype=float)
    q = np.asarray(q, dtype=np.int64)
    k = np.int64(m) - q
    # underflow to 0 is the intended saturation, overflow is routed to +-inf below
    with np.errstate(over="ignore", under="ignore"):
        s = np.sin(np.ldexp(x, q) + _x0_array(q, m))
        _, e = np.frexp(s)
        # |t| = |mant| * 2**(e + k) with |mant| in [0.5, 1); e + k <= 11 keeps |t| < 2048.
        finite = (e + k <= 11) | (s == 0)
        t = np.where(finite, np.ldexp(s, np.where(finite, k, 0)), np.sign(s) * np.inf)
        inner = np.exp(np.clip(t, -_SATURATION, _SATURATION))
        out = np.where(t > _SATURATION, 0.0, np.where(t < -_SATURATION, 1.0, np.exp(-inner)))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class AnsatzLayout:
    """How ``r`` continuous variables drive the ``2**n`` diagonal phases.

    Variable ``v`` owns phases ``v*block_size .. (v+1)*block_size - 1`` and
    uses bit indices ``q = 0 .. block_size-1`` within its block. The last
    phase is pinned to 1.
    """

    n: int
    r: int
    m_r: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        dim = 1 << self.n
        if not (1 <= self.r <= dim) or dim % self.r:
            raise ValueError(f"r={self.r} must divide 2**n={dim}")
        if self.m_r is None:
            object.__setattr__(self, "m_r", self.block_size + 2)
        elif self.m_r < self.block_size + 2:
            raise ValueError(f"m_r={self.m_r} must be >= block_size + 2 = {self.block_size + 2}")

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def block_size(self) -> int:
        return self.dim // self.r

    @cached_property
    def _index(self) -> tuple[np.ndarray, np.ndarray]:
        k = np.arange(self.dim - 1)
        return k // self.block_size, k % self.block_size


def relaxed_bits(xs, layout: AnsatzLayout) -> np.ndarray:
    """``r_f`` value of every controlled phase (length ``2**n - 1``)."""
    xs = np.asarray(xs, dtype=float)
    if xs.shape != (layout.r,):
        raise ValueError(f"expected {layout.r} variables, got shape {xs.shape}")
    var, q = layout._index
    return np.asarray(r_f(xs[var], q, layout.m_r), dtype=float)


def encode_phases(xs, layout: AnsatzLayout) -> PhaseVector:
    bits = relaxed_bits(xs, layout)
    phases = np.ones(layout.dim, dtype=np.complex128)
    phases[:-1] = np.exp(1j * np.pi * bits)
    return PhaseVector(phases)


def decode_partition(xs, layout: AnsatzLayout) -> np.ndarray:
    """Round the relaxed bits: ``r_f > 0.5`` becomes -1, everything else +1."""
    bits = relaxed_bits(xs, layout)
    signs = np.ones(layout.dim, dtype=np.int8)
    signs[:-1][bits > 0.5] = -1
    return signs
