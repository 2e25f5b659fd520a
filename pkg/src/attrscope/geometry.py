"""Lasso-selection geometry: edge-inclusive even-odd point-in-polygon.

The server owns the inclusion rule so the interactive client and
headless tests select exactly the same points.
"""

from __future__ import annotations

import numpy as np

from .embedding import Embedding
from .errors import ValidationError


def _on_segment(px: float, py: float, x1: float, y1: float, x2: float, y2: float) -> bool:
    cross = (x2 - x1) * (py - y1) - (px - x1) * (y2 - y1)
    if cross != 0.0:
        return False
    return min(x1, x2) <= px <= max(x1, x2) and min(y1, y2) <= py <= max(y1, y2)


def point_in_polygon(px: float, py: float, vertices) -> bool:
    """Even-odd (ray-casting) test; points exactly on an edge count inside."""
    if len(vertices) < 3:
        raise ValidationError("polygon needs at least 3 vertices", code="invalid_polygon")
    inside = False
    m = len(vertices)
    for i in range(m):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % m]
        if _on_segment(px, py, x1, y1, x2, y2):
            return True
        if (y1 > py) != (y2 > py):
            x_cross = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if px < x_cross:
                inside = not inside
    return inside


def select_in_polygon(embedding: Embedding, vertices) -> list[str]:
    """Image ids whose embedded coordinates fall inside the lasso polygon.

    Result preserves the embedding's id order.
    """
    vertices = [(float(x), float(y)) for x, y in vertices]
    if len(vertices) < 3:
        raise ValidationError("polygon needs at least 3 vertices", code="invalid_polygon")
    coords = np.asarray(embedding.coords, dtype=np.float64)
    return [
        image_id
        for image_id, (x, y) in zip(embedding.ids, coords)
        if point_in_polygon(float(x), float(y), vertices)
    ]
