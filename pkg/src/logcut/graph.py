"""Weighted graphs and their Laplacians.

A :class:`Graph` is an immutable weighted undirected simple graph. The
variational solver works on graphs whose vertex count is a power of two,
so :func:`pad_to_power_of_two` adds isolated vertices before the
:func:`laplacian` is built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from os import PathLike
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "Laplacian",
    "as_partition",
    "cut_value",
    "is_power_of_two",
    "laplacian",
    "pad_to_power_of_two",
    "random_bipartition_stats",
    "random_regular_graph",
    "read_edgelist",
    "write_edgelist",
    "format_edgelist",
    "parse_edgelist",
]


def is_power_of_two(k: int) -> bool:
    return k >= 1 and (k & (k - 1)) == 0


@dataclass(frozen=True)
class Graph:
    """Weighted undirected simple graph on vertices ``0 .. num_vertices-1``.

    ``edges`` holds ``(i, j, w)`` triples with ``i < j`` after
    normalisation, sorted by ``(i, j)``.
    """

    num_vertices: int
    edges: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self):
        if int(self.num_vertices) != self.num_vertices or self.num_vertices < 1:
            raise ValueError(f"num_vertices must be a positive integer, got {self.num_vertices!r}")
        object.__setattr__(self, "num_vertices", int(self.num_vertices))
        seen = set()
        normalised = []
        for edge in self.edges:
            if len(edge) == 2:
                i, j = edge
                w = 1.0
            else:
                i, j, w = edge
            i, j, w = int(i), int(j), float(w)
            if not (0 <= i < self.num_vertices and 0 <= j < self.num_vertices):
                raise ValueError(f"edge ({i}, {j}) out of range for {self.num_vertices} vertices")
            if i == j:
                raise ValueError(f"self-loop on vertex {i}")
            if not math.isfinite(w) or w < 0:
                raise ValueError(f"edge ({i}, {j}) has invalid weight {w!r}")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            normalised.append((i, j, w))
        normalised.sort()
        object.__setattr__(self, "edges", tuple(normalised))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.num_vertices, dtype=np.int64)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def weight_matrix(self) -> np.ndarray:
        W = np.zeros((self.num_vertices, self.num_vertices))
        for i, j, w in self.edges:
            W[i, j] = W[j, i] = w
        return W

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.num_vertices)):
            raise ValueError("perm must be a permutation of the vertex set")
        return Graph(self.num_vertices, tuple((perm[i], perm[j], w) for i, j, w in self.edges))


@dataclass(frozen=True, eq=False)
class Laplacian:
    """Dense graph Laplacian ``D - W``; ``entries`` is read-only."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"Laplacian must be square, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        if not is_power_of_two(self.dim):
            raise ValueError(f"dimension {self.dim} is not a power of two")
        return self.dim.bit_length() - 1

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


def pad_to_power_of_two(g: Graph) -> Graph:
    """Add isolated vertices until the vertex count is ``2**ceil(log2 |V|)``."""
    target = 1 << (g.num_vertices - 1).bit_length()
    if target == g.num_vertices:
        return g
    return Graph(target, g.edges)


def laplacian(g: Graph) -> Laplacian:
    if not is_power_of_two(g.num_vertices):
        raise ValueError(
            f"graph has {g.num_vertices} vertices; pad it to a power of two first "
            "(see pad_to_power_of_two)"
        )
    W = g.weight_matrix()
    L = np.diag(W.sum(axis=1)) - W
    return Laplacian(L)


def as_partition(v: Iterable[float], length: int | None = None) -> np.ndarray:
    """Validate a +1/-1 partition vector and return it as an int8 array."""
    a = np.asarray(v)
    if a.ndim != 1:
        raise ValueError("partition vector must be one-dimensional")
    if length is not None and a.shape[0] != length:
        raise ValueError(f"partition vector has length {a.shape[0]}, expected {length}")
    if not np.all((a == 1) | (a == -1)):
        raise ValueError("partition vector entries must be +1 or -1")
    return a.astype(np.int8)


def cut_value(L: Laplacian, v: Iterable[float]) -> float:
    """Total weight of edges crossing the partition ``v``, as ``v^T L v / 4``."""
    entries = np.asarray(L)
    s = as_partition(v, entries.shape[0]).astype(float)
    return float(s @ entries @ s) / 4.0


def random_regular_graph(n_vertices: int, degree: int, seed: int, max_tries: int = 100_000) -> Graph:
    """Uniform-ish random ``degree``-regular simple graph from the pairing model.

    Stubs are shuffled and paired; pairings containing a self-loop or a
    repeated edge are thrown away and redrawn.
    """
    if degree < 0 or n_vertices < 1:
        raise ValueError("n_vertices must be positive and degree non-negative")
    if (n_vertices * degree) % 2:
        raise ValueError(
            f"no {degree}-regular graph on {n_vertices} vertices exists: "
            f"n_vertices * degree = {n_vertices * degree} is odd"
        )
    if degree >= n_vertices:
        raise ValueError(f"degree must be smaller than n_vertices ({degree} >= {n_vertices})")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n_vertices), degree)
    for _ in range(max_tries):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        pairs.sort(axis=1)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        keys = pairs[:, 0] * n_vertices + pairs[:, 1]
        if np.unique(keys).size != keys.size:
            continue
        return Graph(n_vertices, tuple((int(i), int(j), 1.0) for i, j in pairs))
    raise RuntimeError(f"pairing model failed to produce a simple graph in {max_tries} tries")


def random_bipartition_stats(g: Graph, samples: int, seed: int) -> tuple[float, float]:
    """Mean and standard deviation of the cut of uniformly random bipartitions."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    if g.num_edges == 0:
        return 0.0, 0.0
    e = np.array([(i, j) for i, j, _ in g.edges])
    w = np.array([w for _, _, w in g.edges])
    cuts = np.empty(samples)
    chunk = 4096
    for start in range(0, samples, chunk):
        k = min(chunk, samples - start)
        side = rng.integers(0, 2, size=(k, g.num_vertices), dtype=np.int8)
        cuts[start:start + k] = (side[:, e[:, 0]] != side[:, e[:, 1]]) @ w
    return float(cuts.mean()), float(cuts.std(ddof=1) if samples > 1 else 0.0)


# Edge-list text format: "<num_vertices> <num_edges>" header, then "i j w" lines.

def _format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def format_edgelist(g: Graph) -> str:
    lines = [f"{g.num_vertices} {g.num_edges}"]
    lines += [f"{i} {j} {_format_weight(w)}" for i, j, w in g.edges]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with '<num_vertices> <num_edges>'")
    num_vertices, num_edges = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != num_edges:
        raise ValueError(f"header announces {num_edges} edges, found {len(body)}")
    edges = []
    for lineno, row in enumerate(body, start=2):
        if len(row) not in (2, 3):
            raise ValueError(f"line {lineno}: expected 'i j [w]', got {' '.join(row)!r}")
        w = float(row[2]) if len(row) == 3 else 1.0
        edges.append((int(row[0]), int(row[1]), w))
    return Graph(num_vertices, tuple(edges))


def read_edgelist(path: str | PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edgelist(fh.read())


def write_edgelist(g: Graph, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edgelist(g))
