import numpy as np
import pytest

from attrscope.embedding import Embedding, EmbeddingParams
from attrscope.errors import ValidationError
from attrscope.geometry import point_in_polygon, select_in_polygon
from attrscope.model import Space

UNIT_SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def winding_number_inside(px, py, vertices):
    """Independent winding-number test with the same on-edge rule."""
    wn = 0
    m = len(vertices)
    for i in range(m):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % m]
        cross = (x2 - x1) * (py - y1) - (px - x1) * (y2 - y1)
        if cross == 0.0 and min(x1, x2) <= px <= max(x1, x2) and min(y1, y2) <= py <= max(y1, y2):
            return True
        if y1 <= py:
            if y2 > py and cross > 0:
                wn += 1
        elif y2 <= py and cross < 0:
            wn -= 1
    return wn != 0


def star_polygon(seed, n_vertices=8):
    """Random simple polygon: points sorted by angle around their centroid."""
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-5, 5, size=(n_vertices, 2))
    center = pts.mean(axis=0)
    angles = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0])
    ordered = pts[np.argsort(angles)]
    return [(float(x), float(y)) for x, y in ordered]


class TestPointInPolygon:
    def test_interior_point(self):
        assert point_in_polygon(0.5, 0.5, UNIT_SQUARE)

    def test_exterior_point(self):
        assert not point_in_polygon(2.0, 2.0, UNIT_SQUARE)

    def test_point_on_edge_included(self):
        assert point_in_polygon(1.0, 0.5, UNIT_SQUARE)
        assert point_in_polygon(0.5, 0.0, UNIT_SQUARE)

    def test_vertex_included(self):
        assert point_in_polygon(0.0, 0.0, UNIT_SQUARE)

    def test_too_few_vertices(self):
        with pytest.raises(ValidationError):
            point_in_polygon(0.0, 0.0, [(0.0, 0.0), (1.0, 1.0)])

    def test_matches_winding_oracle_on_random_simple_polygons(self):
        rng = np.random.default_rng(77)
        for seed in range(30):
            polygon = star_polygon(seed)
            points = rng.uniform(-6, 6, size=(50, 2))
            for px, py in points:
                assert point_in_polygon(px, py, polygon) == winding_number_inside(
                    px, py, polygon
                )


def make_embedding(ids, coords):
    params = EmbeddingParams(space=Space.ACT, method="pca", seed=0)
    return Embedding(params=params, ids=tuple(ids), coords=np.asarray(coords, dtype=np.float64))


class TestSelectInPolygon:
    def test_selection_preserves_embedding_order(self):
        embedding = make_embedding(
            ["a", "b", "c", "d"],
            [[0.5, 0.5], [2.0, 2.0], [0.2, 0.8], [0.9, 0.1]],
        )
        assert select_in_polygon(embedding, UNIT_SQUARE) == ["a", "c", "d"]

    def test_empty_selection(self):
        embedding = make_embedding(["a"], [[5.0, 5.0]])
        assert select_in_polygon(embedding, UNIT_SQUARE) == []

    def test_invalid_polygon_rejected(self):
        embedding = make_embedding(["a"], [[0.0, 0.0]])
        with pytest.raises(ValidationError):
            select_in_polygon(embedding, [(0.0, 0.0), (1.0, 1.0)])
