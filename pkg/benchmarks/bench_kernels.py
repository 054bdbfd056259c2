"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from logcut._kernels import available_backends
from logcut.graph import laplacian, random_regular_graph
from logcut.pauli import decompose


def _cases():
    rng = np.random.default_rng(0)
    for V in (64, 256):
        L = np.ascontiguousarray(laplacian(random_regular_graph(V, 3, 0)).entries)
        yield f"pauli_coefficients V={V}", "pauli_coefficients", (L,)
    for V in (64, 256):
        s = decompose(laplacian(random_regular_graph(V, 3, 1)))
        x, z = s.masks
        psi = rng.normal(size=V) + 1j * rng.normal(size=V)
        psi /= np.linalg.norm(psi)
        yield f"pauli_expectations V={V} terms={len(s)}", "pauli_expectations", (psi, x, z)
    for V in (16, 20):
        W = np.ascontiguousarray(random_regular_graph(V, 3, 2).weight_matrix())
        yield f"gray_maxcut V={V}", "gray_maxcut", (W,)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'case':<42}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn, call_args in _cases():
        times = {}
        for name in names:
            f = getattr(backends[name], fn)
            f(*call_args)  # warm up
            times[name] = min(timeit.repeat(lambda: f(*call_args), number=1, repeat=args.repeat))
        row = f"{label:<42}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
