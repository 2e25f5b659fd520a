"""Two-component PCA via SVD of the mean-centered data matrix.

Components come out in descending explained-variance order with a fixed
sign convention (the largest-magnitude loading of each component is made
positive), so repeated runs produce identical coordinates.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateDataError, ValidationError


def pca_project(x: np.ndarray) -> tuple[np.ndarray, tuple[float, float], np.ndarray]:
    """Project rows of ``x`` onto the top-2 principal directions.

    Returns (coords n x 2, explained-variance pair, components 2 x d).
    Explained variance uses the sample (n-1) normalization.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise ValidationError("input must be a 2-D matrix")
    n, d = x.shape
    if n < 3:
        raise ValidationError(f"need at least 3 points for a projection, got {n}")
    if d < 2:
        raise ValidationError(f"need at least 2 input dimensions, got {d}")
    centered = x - x.mean(axis=0)
    if not np.any(centered):
        raise DegenerateDataError("all points are identical; nothing to project")
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:2].copy()
    for i in range(2):
        peak = np.argmax(np.abs(components[i]))
        if components[i, peak] < 0:
            components[i] = -components[i]
    coords = centered @ components.T
    explained = (singular[:2] ** 2) / (n - 1)
    return coords, (float(explained[0]), float(explained[1])), components
