"""End-to-end variational MaxCut: pad, encode, optimise, decode, recount."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pauli
from .genetic import GAConfig, RunResult, optimize, with_noise
from .graph import Graph, Laplacian, cut_value, laplacian, pad_to_power_of_two
from .relaxation import AnsatzLayout, decode_partition, encode_phases
from .statevector import MODES, n_cuts

__all__ = ["CutObjective", "SolveResult", "layout_for", "solve"]


def layout_for(g: Graph, r: int, m_r: int | None = None) -> AnsatzLayout:
    """Layout for the padded version of ``g`` with ``r`` variables."""
    n = (g.num_vertices - 1).bit_length()
    return AnsatzLayout(n, r, m_r)


class CutObjective:
    """``xs -> N_cuts`` for a fixed Laplacian under one layout and evaluation mode.

    In ``pauli-sampled`` mode call ``k`` uses shot seed ``(seed, k)`` mixed
    into a single integer, so a rerun with the same seed replays the same
    measurement stream.
    """

    def __init__(self, L: Laplacian, layout: AnsatzLayout, mode: str = "dense",
                 shots: int | None = None, seed: int = 0):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
        if mode == "pauli-sampled" and (shots is None or shots < 1):
            raise ValueError("pauli-sampled mode needs shots >= 1")
        if L.dim != layout.dim:
            raise ValueError(f"Laplacian dimension {L.dim} does not match layout dimension {layout.dim}")
        self.L = L
        self.layout = layout
        self.mode = mode
        self.shots = shots
        self.seed = seed
        self.pauli = pauli.decompose(L) if mode != "dense" else None
        self.calls = 0

    def __call__(self, xs) -> float:
        u = encode_phases(xs, self.layout)
        if self.mode == "pauli-sampled":
            call_seed = int(np.random.SeedSequence([self.seed, self.calls]).generate_state(1)[0])
            self.calls += 1
            return n_cuts(self.L, u, self.mode, shots=self.shots, seed=call_seed, pauli=self.pauli)
        self.calls += 1
        return n_cuts(self.L, u, self.mode, pauli=self.pauli)


@dataclass
class SolveResult:
    layout: AnsatzLayout
    run: RunResult
    partition: np.ndarray  # length of the original graph
    cut: float  # classical recount of the decoded partition


def solve(g: Graph, r: int, config: GAConfig = GAConfig(), mode: str = "dense", *,
          shots: int | None = None, noise: float = 0.0, noise_seed: int | None = None,
          m_r: int | None = None) -> SolveResult:
    """Run the genetic optimiser on the relaxed cut landscape of ``g``.

    The reported cut is always recomputed from the decoded partition, never
    taken from the (possibly noisy) objective value.
    """
    padded = pad_to_power_of_two(g)
    L = laplacian(padded)
    layout = layout_for(g, r, m_r)
    objective = CutObjective(L, layout, mode, shots, seed=config.seed)
    fn = with_noise(objective, noise, config.seed if noise_seed is None else noise_seed)
    run = optimize(fn, config, layout.r)
    signs = decode_partition(run.best_xs, layout)
    return SolveResult(layout, run, signs[:g.num_vertices].copy(), cut_value(L, signs))
