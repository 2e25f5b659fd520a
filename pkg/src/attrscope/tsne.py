"""Exact (O(n^2)) t-SNE with seed-deterministic output.

At the reference scale (~1000 points) the dense formulation is fast
enough to be interactive and avoids the nondeterminism of tree-based
approximations.  Per-point Gaussian bandwidths are calibrated by
bisection so each conditional distribution's entropy hits
log2(perplexity); the embedding is optimized by momentum gradient
descent with early exaggeration.

The recorded KL trace is always computed against the un-exaggerated
joint distribution so checkpoints are comparable across phases.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import CalibrationError, NumericalFailureError, ValidationError

ENTROPY_TOLERANCE = 1e-5
MAX_BISECTION_STEPS = 200
EXAGGERATION_PHASE_ITERS = 250
MOMENTUM_EARLY = 0.5
MOMENTUM_LATE = 0.8
TRACE_EVERY = 50
INITIAL_SCALE = 1e-4
_Q_FLOOR = 1e-12


def squared_distance_matrix(x: np.ndarray) -> np.ndarray:
    """Pairwise squared Euclidean distances, exact zeros on the diagonal."""
    x = np.asarray(x, dtype=np.float64)
    sq = np.einsum("ij,ij->i", x, x)
    d = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.maximum(d, 0.0, out=d)
    np.fill_diagonal(d, 0.0)
    return d


def _conditional_row(sq_row: np.ndarray, sigma: float) -> tuple[np.ndarray, float]:
    """Conditional neighbor distribution for one point and its entropy in bits.

    ``sq_row`` holds squared distances to the *other* points.
    """
    # shift by the row minimum so the largest kernel value is exp(0)
    shifted = (sq_row - sq_row.min()) / (2.0 * sigma * sigma)
    weights = np.exp(-shifted)
    total = weights.sum()
    probs = weights / total
    nonzero = probs[probs > 0.0]
    entropy = float(-np.sum(nonzero * np.log2(nonzero)))
    return probs, entropy


def calibrate_bandwidth(
    sq_row: np.ndarray,
    perplexity: float,
    *,
    tolerance: float = ENTROPY_TOLERANCE,
    max_steps: int = MAX_BISECTION_STEPS,
) -> float:
    """Bisect sigma until the conditional entropy matches log2(perplexity).

    Raises CalibrationError (reporting the achieved entropy) if the step
    cap is hit first.
    """
    sq_row = np.asarray(sq_row, dtype=np.float64)
    # the row excludes the point itself, so n = len + 1 must exceed perplexity
    if len(sq_row) < perplexity:
        raise ValidationError(
            f"need at least perplexity+1 points, got {len(sq_row) + 1} for perplexity {perplexity}"
        )
    target = math.log2(perplexity)
    sigma = 1.0
    lo: float | None = None
    hi: float | None = None
    entropy = 0.0
    for _ in range(max_steps):
        _, entropy = _conditional_row(sq_row, sigma)
        if abs(entropy - target) <= tolerance:
            return sigma
        if entropy < target:
            lo = sigma
            sigma = sigma * 2.0 if hi is None else (lo + hi) / 2.0
        else:
            hi = sigma
            sigma = sigma / 2.0 if lo is None else (lo + hi) / 2.0
    raise CalibrationError(
        f"bandwidth bisection did not reach entropy {target:.6f} in {max_steps} steps",
        achieved_entropy=entropy,
    )


def joint_probabilities(x: np.ndarray, perplexity: float) -> np.ndarray:
    """Symmetrized joint neighbor distribution P; sums to 1, zero diagonal."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if perplexity >= n:
        raise ValidationError(f"perplexity must be below the point count, got {perplexity} >= {n}")
    sq = squared_distance_matrix(x)
    cond = np.zeros((n, n), dtype=np.float64)
    other = np.arange(n)
    for i in range(n):
        row = sq[i, other != i]
        sigma = calibrate_bandwidth(row, perplexity)
        probs, _ = _conditional_row(row, sigma)
        cond[i, other != i] = probs
    joint = (cond + cond.T) / (2.0 * n)
    return joint


def _kl_divergence(p: np.ndarray, q: np.ndarray) -> float:
    mask = p > 0.0
    return float(np.sum(p[mask] * np.log(p[mask] / np.maximum(q[mask], _Q_FLOOR))))


def tsne_embed(
    x: np.ndarray,
    *,
    perplexity: float = 30.0,
    iterations: int = 1000,
    learning_rate: float = 200.0,
    exaggeration: float = 12.0,
    seed: int = 0,
) -> tuple[np.ndarray, list[tuple[int, float]]]:
    """Run the full embedding; returns (coords n x 2, KL trace).

    The trace holds (iteration, KL) pairs recorded every 50 iterations.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if n < 5:
        raise ValidationError(f"need at least 5 points, got {n}")
    if perplexity < 2:
        raise ValidationError(f"perplexity must be at least 2, got {perplexity}")
    if perplexity >= n:
        raise ValidationError(f"perplexity must be below the point count, got {perplexity} >= {n}")

    p = joint_probabilities(x, perplexity)
    rng = np.random.default_rng(seed)
    y = rng.standard_normal((n, 2)) * INITIAL_SCALE
    # identical input rows receive identical forces in exact arithmetic, so
    # start them at identical coordinates and share one gradient per group;
    # their trajectories then coincide bitwise instead of drifting apart on
    # float summation-order noise
    _, first_index, inverse = np.unique(x, axis=0, return_index=True, return_inverse=True)
    representative = first_index[inverse]
    has_duplicates = len(first_index) < n
    if has_duplicates:
        y = y[representative]
    velocity = np.zeros_like(y)
    trace: list[tuple[int, float]] = []

    for it in range(iterations):
        exaggerating = it < EXAGGERATION_PHASE_ITERS and exaggeration != 1.0
        p_eff = p * exaggeration if exaggerating else p
        momentum = MOMENTUM_EARLY if it < EXAGGERATION_PHASE_ITERS else MOMENTUM_LATE

        d = squared_distance_matrix(y)
        w = 1.0 / (1.0 + d)
        np.fill_diagonal(w, 0.0)
        z = w.sum()
        q = w / z
        pq = (p_eff - q) * w
        grad = 4.0 * (pq.sum(axis=1)[:, None] * y - pq @ y)
        if has_duplicates:
            grad = grad[representative]
        if not np.all(np.isfinite(grad)):
            raise NumericalFailureError(
                f"non-finite gradient at iteration {it + 1}", detail={"iteration": it + 1}
            )
        velocity = momentum * velocity - learning_rate * grad
        y = y + velocity
        y = y - y.mean(axis=0)

        if (it + 1) % TRACE_EVERY == 0:
            d = squared_distance_matrix(y)
            w = 1.0 / (1.0 + d)
            np.fill_diagonal(w, 0.0)
            q = w / w.sum()
            trace.append((it + 1, _kl_divergence(p, q)))

    return y, trace
