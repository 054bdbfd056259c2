import os
import subprocess
import sys

import numpy as np
import pytest

from battery import random_weighted_graph
from logcut import _fallback, _kernels
from logcut.graph import laplacian, pad_to_power_of_two, random_regular_graph

BACKENDS = _kernels.available_backends()
compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")


def _random_state(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return v / np.linalg.norm(v)


def test_backend_flag():
    assert _kernels.BACKEND in BACKENDS
    assert _kernels.pauli_coefficients is BACKENDS[_kernels.BACKEND].pauli_coefficients


@pytest.mark.parametrize("name", sorted(BACKENDS))
class TestEachBackend:
    def test_k2_coefficients(self, name):
        C = BACKENDS[name].pauli_coefficients(np.array([[1.0, -1.0], [-1.0, 1.0]]))
        # C[x, z]: I at (0,0), X at (1,0)
        np.testing.assert_allclose(C, [[1.0, 0.0], [-1.0, 0.0]])

    def test_expectation_of_identity(self, name):
        psi = _random_state(3, 0)
        ev = BACKENDS[name].pauli_expectations(psi, np.array([0], dtype=np.int64), np.array([0], dtype=np.int64))
        assert ev[0] == pytest.approx(1.0)

    def test_gray_maxcut_c4(self, name, c4):
        cut, mask = BACKENDS[name].gray_maxcut(np.ascontiguousarray(c4.weight_matrix()))
        # vertices 1 and 3 on the other side
        assert cut == 4 and mask == 0b101

    def test_gray_maxcut_tie_goes_to_smallest_mask(self, name):
        cut, mask = BACKENDS[name].gray_maxcut(np.zeros((4, 4)))
        assert (cut, mask) == (0, 0)


@compiled
class TestBackendsAgree:
    @pytest.mark.parametrize("seed", range(4))
    def test_coefficients(self, seed):
        L = laplacian(pad_to_power_of_two(random_weighted_graph(16, 0.3, seed))).entries
        a = BACKENDS["cython"].pauli_coefficients(np.ascontiguousarray(L))
        b = BACKENDS["python"].pauli_coefficients(np.ascontiguousarray(L))
        np.testing.assert_allclose(a, b, atol=1e-13)

    def test_expectations(self):
        n = 5
        psi = _random_state(n, 1)
        rng = np.random.default_rng(2)
        x = rng.integers(0, 2 ** n, 200).astype(np.int64)
        z = rng.integers(0, 2 ** n, 200).astype(np.int64)
        np.testing.assert_allclose(BACKENDS["cython"].pauli_expectations(psi, x, z),
                                   BACKENDS["python"].pauli_expectations(psi, x, z), atol=1e-13)

    @pytest.mark.parametrize("seed", range(4))
    def test_gray_maxcut(self, seed):
        W = np.ascontiguousarray(random_weighted_graph(14, 0.5, seed).weight_matrix())
        assert BACKENDS["cython"].gray_maxcut(W) == BACKENDS["python"].gray_maxcut(W)

    def test_gray_maxcut_regular(self):
        W = np.ascontiguousarray(random_regular_graph(16, 3, 7).weight_matrix())
        assert BACKENDS["cython"].gray_maxcut(W) == BACKENDS["python"].gray_maxcut(W)


def test_fallback_chunking():
    # chunk boundaries must not change the winner
    W = np.ascontiguousarray(random_weighted_graph(13, 0.5, 3).weight_matrix())
    assert _fallback.gray_maxcut(W, chunk=64) == _fallback.gray_maxcut(W)


def test_env_forces_fallback():
    env = dict(os.environ, LOGCUT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from logcut import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
