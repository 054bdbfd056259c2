import math

import numpy as np
import pytest

from logcut.genetic import GAConfig, RunResult, optimize, with_noise
from logcut.solver import solve


def _neg_quadratic(x):
    return -float(np.sum(np.asarray(x) ** 2))


def _same(a: RunResult, b: RunResult) -> bool:
    return (np.array_equal(a.best_xs, b.best_xs) and a.best_objective == b.best_objective
            and a.history == b.history and a.evaluations == b.evaluations)


class TestConfig:
    def test_defaults(self):
        c = GAConfig()
        assert (c.population, c.max_iterations, c.mutation_prob, c.crossover_prob,
                c.elitism_count, c.parents_fraction) == (14, 200, 0.1, 0.5, 1, 0.3)
        np.testing.assert_array_equal(c.box(2), [[0, 2 * math.pi]] * 2)

    @pytest.mark.parametrize("kwargs", [dict(population=1), dict(max_iterations=0), dict(mutation_prob=1.5),
                                        dict(crossover_prob=-0.1), dict(elitism_count=14),
                                        dict(parents_fraction=0.0), dict(stall_limit=0),
                                        dict(bounds=((1.0, 1.0),))])
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            GAConfig(**kwargs)

    def test_dict_round_trip(self):
        c = GAConfig(population=8, bounds=((-1, 1), (0, 3)), seed=9, stall_limit=4)
        assert GAConfig.from_dict(c.to_dict()) == c

    def test_box_shapes(self):
        assert GAConfig(bounds=((-5, 5),)).box(3).shape == (3, 2)
        with pytest.raises(ValueError):
            GAConfig(bounds=((-5, 5), (0, 1))).box(3)


class TestOptimize:
    def test_quadratic(self):
        res = optimize(_neg_quadratic, GAConfig(bounds=((-5, 5),) * 4, max_iterations=300))
        assert res.best_objective >= -1e-2

    def test_four_cycle_single_variable(self, c4):
        res = solve(c4, 1)
        assert res.cut == 4
        assert res.run.best_objective == pytest.approx(4.0, abs=1e-6)

    def test_deterministic(self):
        cfg = GAConfig(bounds=((-5, 5),) * 3, max_iterations=50, seed=3)
        assert _same(optimize(_neg_quadratic, cfg), optimize(_neg_quadratic, cfg))
        other = optimize(_neg_quadratic, GAConfig(bounds=((-5, 5),) * 3, max_iterations=50, seed=4))
        assert not np.array_equal(other.best_xs, optimize(_neg_quadratic, cfg).best_xs)

    def test_threaded_matches_serial(self):
        cfg = GAConfig(bounds=((-5, 5),) * 3, max_iterations=30, seed=1)
        assert _same(optimize(_neg_quadratic, cfg), optimize(_neg_quadratic, cfg, workers=4))

    def test_history_monotone_and_budget(self):
        cfg = GAConfig(population=10, max_iterations=40, bounds=((-5, 5),) * 2)
        res = optimize(_neg_quadratic, cfg)
        assert len(res.history) == 40
        assert all(b >= a for a, b in zip(res.history, res.history[1:]))
        assert res.evaluations == 10 * 41
        assert res.history[-1] == res.best_objective

    def test_respects_box(self):
        seen = []

        def record(x):
            seen.append(np.array(x))
            return float(np.sum(x))

        box = ((1.0, 2.0), (-3.0, -2.5))
        res = optimize(record, GAConfig(bounds=box, max_iterations=20, mutation_prob=0.5))
        pts = np.array(seen)
        assert np.all(pts[:, 0] >= 1.0) and np.all(pts[:, 0] <= 2.0)
        assert np.all(pts[:, 1] >= -3.0) and np.all(pts[:, 1] <= -2.5)
        assert res.best_xs[0] <= 2.0

    def test_stall_limit_stops_early(self):
        res = optimize(lambda x: 1.0, GAConfig(bounds=((0, 1),), max_iterations=100, stall_limit=5))
        assert len(res.history) == 5
        assert res.evaluations == 14 * 6

    def test_nan_counts_as_worst(self):
        def f(x):
            return math.nan if x[0] < 0 else -abs(x[0] - 1)

        res = optimize(f, GAConfig(bounds=((-1, 2),), max_iterations=30))
        assert res.nan_evaluations > 0
        assert res.best_xs[0] >= 0
        assert not math.isnan(res.best_objective)

    def test_dim_required_without_bounds(self):
        with pytest.raises(ValueError):
            optimize(_neg_quadratic, GAConfig())
        assert optimize(_neg_quadratic, GAConfig(max_iterations=2), dim=2).best_xs.shape == (2,)


class TestNoise:
    def test_zero_level_is_identity(self):
        assert with_noise(_neg_quadratic, 0.0, 1) is _neg_quadratic

    def test_multiplicative_band(self):
        f = with_noise(lambda x: 10.0, 0.2, 7)
        vals = np.array([f([0.0]) for _ in range(2000)])
        assert np.all((vals >= 8.0) & (vals <= 12.0))
        assert vals.mean() == pytest.approx(10.0, abs=0.1)
        assert vals.std() > 0.5

    def test_stream_is_seeded(self):
        a, b = with_noise(lambda x: 1.0, 0.5, 3), with_noise(lambda x: 1.0, 0.5, 3)
        assert [a([0]) for _ in range(5)] == [b([0]) for _ in range(5)]
        c = with_noise(lambda x: 1.0, 0.5, 4)
        assert a([0]) != c([0])

    def test_negative_level_rejected(self):
        with pytest.raises(ValueError):
            with_noise(_neg_quadratic, -0.1, 0)
