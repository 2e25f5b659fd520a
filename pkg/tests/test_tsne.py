import math

import numpy as np
import pytest

import attrscope.tsne as tsne_mod
from attrscope.clustering import silhouette_score
from attrscope.errors import CalibrationError, NumericalFailureError, ValidationError
from attrscope.tsne import (
    _conditional_row,
    calibrate_bandwidth,
    joint_probabilities,
    squared_distance_matrix,
    tsne_embed,
)


def two_gaussians(n_per=100, dims=10, separation=6.0, seed=42):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n_per, dims)) * 0.5
    b = rng.standard_normal((n_per, dims)) * 0.5 + separation
    labels = np.array([0] * n_per + [1] * n_per)
    return np.vstack([a, b]), labels


class TestCalibration:
    def test_random_rows_hit_target_entropy(self):
        for seed in range(10):
            row = np.random.default_rng(seed).uniform(0.1, 20.0, size=60)
            sigma = calibrate_bandwidth(row, 12.0)
            _, entropy = _conditional_row(row, sigma)
            assert abs(entropy - math.log2(12.0)) <= 1e-5

    def test_uniform_distances_accept_immediately(self):
        # every sigma yields the uniform conditional, so the first probe wins
        row = np.full(40, 3.7)
        assert calibrate_bandwidth(row, 40.0) == 1.0

    def test_single_near_neighbor_concentrates_mass(self):
        row = np.array([0.01] + [100.0] * 30)
        sigma = calibrate_bandwidth(row, 2.0)
        probs, entropy = _conditional_row(row, sigma)
        assert abs(entropy - 1.0) <= 1e-5
        assert probs[0] == max(probs)

    def test_cap_reports_achieved_entropy(self):
        # uniform row pins entropy at log2(len); a different target is unreachable
        row = np.full(40, 3.7)
        with pytest.raises(CalibrationError) as err:
            calibrate_bandwidth(row, 20.0)
        assert err.value.achieved_entropy == pytest.approx(math.log2(40), abs=1e-9)

    def test_too_few_neighbors_rejected(self):
        with pytest.raises(ValidationError):
            calibrate_bandwidth(np.array([1.0, 2.0]), 5.0)


class TestJointProbabilities:
    def test_sums_to_one_symmetric_nonnegative(self):
        x = np.random.default_rng(1).standard_normal((50, 8))
        p = joint_probabilities(x, 10.0)
        assert abs(p.sum() - 1.0) <= 1e-9
        assert np.max(np.abs(p - p.T)) <= 1e-15
        assert np.all(p >= 0.0)
        assert np.all(np.diag(p) == 0.0)

    def test_perplexity_at_point_count_rejected(self):
        x = np.random.default_rng(2).standard_normal((10, 3))
        with pytest.raises(ValidationError):
            joint_probabilities(x, 10.0)


class TestTsneEmbed:
    def test_fixed_seed_bitwise_deterministic(self):
        x, _ = two_gaussians(n_per=30)
        a, trace_a = tsne_embed(x, perplexity=10, iterations=300, seed=9)
        b, trace_b = tsne_embed(x, perplexity=10, iterations=300, seed=9)
        assert np.array_equal(a, b)
        assert trace_a == trace_b

    def test_different_seed_changes_layout(self):
        x, _ = two_gaussians(n_per=20)
        a, _ = tsne_embed(x, perplexity=10, iterations=300, seed=1)
        b, _ = tsne_embed(x, perplexity=10, iterations=300, seed=2)
        assert not np.array_equal(a, b)

    def test_duplicate_records_coincide(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal((30, 5))
        x[17] = x[4]
        coords, _ = tsne_embed(x, perplexity=5, iterations=500, learning_rate=100, seed=2)
        assert np.linalg.norm(coords[17] - coords[4]) <= 1e-6
        distinct = min(
            np.linalg.norm(coords[i] - coords[j])
            for i in range(30)
            for j in range(i + 1, 30)
            if (i, j) != (4, 17)
        )
        assert distinct > 1e-3

    def test_two_gaussian_fixture_separates(self):
        x, labels = two_gaussians()
        coords, trace = tsne_embed(x, perplexity=30, iterations=1000, seed=0)
        checkpoints = dict(trace)
        assert checkpoints[1000] < checkpoints[250]
        assert silhouette_score(coords, labels) > 0.5

    def test_kl_non_increasing_after_exaggeration(self):
        x, _ = two_gaussians()
        _, trace = tsne_embed(x, perplexity=30, iterations=1000, seed=0)
        post = [kl for it, kl in trace if it >= 300]
        bumps = [
            (post[i + 1] - post[i]) / post[i]
            for i in range(len(post) - 1)
            if post[i + 1] > post[i]
        ]
        assert len(bumps) <= 1
        assert all(b < 0.01 for b in bumps)

    def test_trace_recorded_every_50(self):
        x, _ = two_gaussians(n_per=20)
        _, trace = tsne_embed(x, perplexity=5, iterations=300, seed=0)
        assert [it for it, _ in trace] == [50, 100, 150, 200, 250, 300]

    def test_perplexity_too_large_rejected(self):
        x = np.random.default_rng(0).standard_normal((10, 4))
        with pytest.raises(ValidationError):
            tsne_embed(x, perplexity=10, iterations=300, seed=0)

    def test_too_few_points_rejected(self):
        x = np.random.default_rng(0).standard_normal((4, 4))
        with pytest.raises(ValidationError):
            tsne_embed(x, perplexity=2, iterations=300, seed=0)

    def test_non_finite_gradient_reports_iteration(self, monkeypatch):
        x = np.random.default_rng(0).standard_normal((12, 3))
        real = tsne_mod.squared_distance_matrix
        calls = {"n": 0}

        def sabotage(y):
            d = real(y)
            # first call computes input distances; poison the third update
            calls["n"] += 1
            if calls["n"] == 4:
                d = d.copy()
                d[0, 1] = np.nan
            return d

        monkeypatch.setattr(tsne_mod, "squared_distance_matrix", sabotage)
        with pytest.raises(NumericalFailureError) as err:
            tsne_embed(x, perplexity=3, iterations=300, seed=0)
        assert err.value.detail == {"iteration": 3}


class TestSquaredDistances:
    def test_matches_direct_computation(self):
        x = np.random.default_rng(4).standard_normal((20, 6))
        d = squared_distance_matrix(x)
        direct = ((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2)
        assert np.max(np.abs(d - direct)) < 1e-9

    def test_diagonal_exactly_zero(self):
        x = np.random.default_rng(5).standard_normal((15, 3)) * 100
        assert np.all(np.diag(squared_distance_matrix(x)) == 0.0)
