"""Experiment drivers behind the ``logcut`` command line.

Each driver returns plain dicts/rows so the CLI only has to serialise them.
Records carry every seed and setting needed to rerun them.
"""
from __future__ import annotations

import hashlib
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import MAX_EXACT_VERTICES, exact_maxcut, gw_maxcut, ratio_bounds
from .genetic import GAConfig
from .graph import (Graph, cut_value, format_edgelist, laplacian, pad_to_power_of_two,
                    random_bipartition_stats, random_regular_graph, read_edgelist)
from .relaxation import decode_partition, encode_phases
from .solver import layout_for, solve
from .statevector import n_cuts, n_cuts_std_error
from . import pauli

__all__ = [
    "GraphSource",
    "Baselines",
    "solve_record",
    "rerun_record",
    "landscape_rows",
    "sweep_rows",
    "compare_table",
    "EXACT_IN_RECORDS",
]

# Records include the exhaustive optimum up to this size.
EXACT_IN_RECORDS = 20


@dataclass(frozen=True)
class GraphSource:
    graph: Graph
    kind: str  # "file" or "random-regular"
    path: str | None = None
    n_vertices: int | None = None
    degree: int | None = None
    seed: int | None = None

    @classmethod
    def from_file(cls, path: str) -> "GraphSource":
        return cls(read_edgelist(path), "file", path=str(Path(path)))

    @classmethod
    def from_random_regular(cls, spec: str) -> "GraphSource":
        """Parse ``N,D,SEED`` for a random regular graph."""
        try:
            n, d, seed = (int(p) for p in spec.split(","))
        except ValueError:
            raise ValueError(f"--random-regular expects N,D,SEED, got {spec!r}") from None
        return cls(random_regular_graph(n, d, seed), "random-regular", n_vertices=n, degree=d, seed=seed)

    def sha256(self) -> str:
        return hashlib.sha256(format_edgelist(self.graph).encode()).hexdigest()

    def describe(self) -> dict:
        g = self.graph
        return {
            "source": self.kind,
            "path": self.path,
            "num_vertices": g.num_vertices,
            "num_edges": g.num_edges,
            "degree": self.degree,
            "graph_seed": self.seed,
            "padded_vertices": pad_to_power_of_two(g).num_vertices,
            "sha256": self.sha256(),
        }

    @classmethod
    def from_description(cls, d: dict) -> "GraphSource":
        if d["source"] == "random-regular":
            src = cls.from_random_regular(f"{d['num_vertices']},{d['degree']},{d['graph_seed']}")
        else:
            src = cls.from_file(d["path"])
        if src.sha256() != d["sha256"]:
            raise ValueError("graph does not match the recorded hash")
        return src


class Baselines:
    """Lazily computed classical references for one graph, shared across seeds."""

    def __init__(self, g: Graph, gw_seed: int = 0, gw_roundings: int = 200,
                 gw_rank: int | None = None, random_samples: int = 10_000, random_seed: int = 0):
        self.g = g
        self.gw_seed = gw_seed
        self.gw_roundings = gw_roundings
        self.gw_rank = gw_rank
        self.random_samples = random_samples
        self.random_seed = random_seed
        self._gw = self._random = self._exact = None

    @property
    def gw(self) -> tuple[float, np.ndarray]:
        if self._gw is None:
            self._gw = gw_maxcut(self.g, self.gw_rank, self.gw_roundings, self.gw_seed)
        return self._gw

    @property
    def random(self) -> tuple[float, float]:
        if self._random is None:
            self._random = random_bipartition_stats(self.g, self.random_samples, self.random_seed)
        return self._random

    @property
    def exact(self) -> tuple[float, np.ndarray]:
        if self._exact is None:
            self._exact = exact_maxcut(self.g)
        return self._exact

    def summary(self, include_exact: bool) -> dict:
        mean, std = self.random
        return {
            "gw": {"cut": self.gw[0], "seed": self.gw_seed, "rank": self.gw_rank,
                   "roundings": self.gw_roundings},
            "random": {"mean": mean, "std": std, "samples": self.random_samples,
                       "seed": self.random_seed},
            "exact": self.exact[0] if include_exact else None,
        }


def solve_record(source: GraphSource, r: int, config: GAConfig, mode: str = "dense", *,
                 shots: int | None = None, noise: float = 0.0, noise_seed: int | None = None,
                 m_r: int | None = None, baselines: Baselines | None = None) -> dict:
    g = source.graph
    baselines = baselines or Baselines(g)
    t0 = time.perf_counter()
    res = solve(g, r, config, mode, shots=shots, noise=noise, noise_seed=noise_seed, m_r=m_r)
    duration = time.perf_counter() - t0
    summary = baselines.summary(include_exact=g.num_vertices <= EXACT_IN_RECORDS)
    gw_cut = summary["gw"]["cut"]
    bounds = ratio_bounds(res.cut, gw_cut) if gw_cut > 0 else None
    layout = res.layout
    return {
        "command": "solve",
        "version": __version__,
        "seed": config.seed,
        "graph": source.describe(),
        "layout": {"n": layout.n, "r": layout.r, "block_size": layout.block_size, "m_r": layout.m_r},
        "mode": {"name": mode, "shots": shots, "noise": noise,
                 "noise_seed": config.seed if noise_seed is None else noise_seed},
        "ga_config": config.to_dict(),
        "run": res.run.to_dict(),
        "partition": [int(v) for v in res.partition],
        "maxcut": res.cut,
        "baselines": summary,
        "ratio_bounds": None if bounds is None else {"lower": bounds.lower, "upper": bounds.upper},
        "duration_s": duration,
    }


def rerun_record(record: dict) -> dict:
    """Replay a ``solve`` record from its embedded configuration."""
    source = GraphSource.from_description(record["graph"])
    mode = record["mode"]
    b = record["baselines"]
    baselines = Baselines(source.graph, gw_seed=b["gw"]["seed"], gw_roundings=b["gw"]["roundings"],
                          gw_rank=b["gw"]["rank"], random_samples=b["random"]["samples"],
                          random_seed=b["random"]["seed"])
    return solve_record(source, record["layout"]["r"], GAConfig.from_dict(record["ga_config"]),
                        mode["name"], shots=mode["shots"], noise=mode["noise"],
                        noise_seed=mode["noise_seed"], m_r=record["layout"]["m_r"],
                        baselines=baselines)


LANDSCAPE_HEADER = ("x", "n_cuts", "std_error", "decoded_cut")


def landscape_rows(g: Graph, points: int, mode: str = "dense", *, shots: int | None = None,
                   seed: int = 0, m_r: int | None = None) -> list[tuple[float, float, float, float]]:
    """``N_cuts`` along ``points`` equidistant x in ``[0, 2*pi]`` with one variable."""
    if points < 1:
        raise ValueError("points must be >= 1")
    padded = pad_to_power_of_two(g)
    L = laplacian(padded)
    layout = layout_for(g, 1, m_r)
    s = pauli.decompose(L) if mode != "dense" else None
    rows = []
    for k, x in enumerate(np.linspace(0.0, 2.0 * math.pi, points)):
        xs = np.array([x])
        u = encode_phases(xs, layout)
        point_seed = int(np.random.SeedSequence([seed, k]).generate_state(1)[0])
        value = n_cuts(L, u, mode, shots=shots, seed=point_seed, pauli=s)
        err = n_cuts_std_error(L, u, shots, pauli=s) if mode == "pauli-sampled" else 0.0
        rows.append((float(x), value, err, cut_value(L, decode_partition(xs, layout))))
    return rows


SWEEP_HEADER = ("r", "mean_cut", "min_cut", "max_cut")


def sweep_rows(g: Graph, r_values: list[int], noise: float, repeats: int, config: GAConfig,
               mode: str = "dense", shots: int | None = None, map_fn=map) -> list[tuple]:
    """Decoded-cut statistics over ``repeats`` noisy GA runs per variable count.

    The GA seed stays fixed at ``config.seed``; repeat ``k`` uses noise
    stream ``k``. Without noise every repeat is therefore identical.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    for r in r_values:
        layout_for(g, r)  # validate before spending time

    def one(job):
        r, k = job
        return r, solve(g, r, config, mode, shots=shots, noise=noise, noise_seed=k).cut

    cuts: dict[int, list[float]] = {r: [] for r in r_values}
    for r, cut in map_fn(one, [(r, k) for r in r_values for k in range(repeats)]):
        cuts[r].append(cut)
    return [(r, float(np.mean(c)), float(np.min(c)), float(np.max(c))) for r, c in cuts.items()]


METHODS = ("quantum-ga", "gw", "exact", "random")


def compare_table(source: GraphSource, methods: list[str], r: int, config: GAConfig,
                  seeds: list[int], mode: str = "dense", shots: int | None = None,
                  baselines: Baselines | None = None) -> dict:
    if not methods:
        raise ValueError("at least one method is required")
    unknown = set(methods) - set(METHODS)
    if unknown:
        raise ValueError(f"unknown methods {sorted(unknown)}; choose from {METHODS}")
    g = source.graph
    if "exact" in methods and g.num_vertices > MAX_EXACT_VERTICES:
        raise ValueError(f"exact requested on {g.num_vertices} vertices (limit {MAX_EXACT_VERTICES})")
    baselines = baselines or Baselines(g)
    out: dict = {"command": "compare", "version": __version__, "graph": source.describe(), "methods": {}}
    table = out["methods"]
    for method in methods:
        if method == "quantum-ga":
            runs = [solve(g, r, GAConfig.from_dict({**config.to_dict(), "seed": s}), mode, shots=shots)
                    for s in seeds]
            best_i = int(np.argmax([run.cut for run in runs]))
            best = runs[best_i]
            table[method] = {"cut": best.cut, "seed": seeds[best_i], "r": r, "mode": mode,
                             "cuts_per_seed": [run.cut for run in runs],
                             "partition": [int(v) for v in best.partition]}
        elif method == "gw":
            cut, part = baselines.gw
            table[method] = {"cut": cut, "seed": baselines.gw_seed, "partition": [int(v) for v in part]}
        elif method == "exact":
            cut, part = baselines.exact
            table[method] = {"cut": cut, "partition": [int(v) for v in part]}
        else:
            mean, std = baselines.random
            table[method] = {"mean": mean, "std": std, "samples": baselines.random_samples}
    if "quantum-ga" in table and "gw" in table and table["gw"]["cut"] > 0:
        b = ratio_bounds(table["quantum-ga"]["cut"], table["gw"]["cut"])
        out["ratio_bounds"] = {"lower": b.lower, "upper": b.upper}
    return out
