"""K-Means and DBSCAN over a group's coordinates, with validation scores.

Everything here is pinned deterministic so interactive parameter tuning
re-runs reproduce exactly: K-Means uses seeded k-means++ initialization,
DBSCAN discovers clusters scanning points in input order, assignment
ties go to the lowest cluster id, and border points stay with the first
cluster that reaches them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .embedding import Embedding, space_matrix
from .errors import ValidationError
from .model import Dataset, Space

NOISE = -1
MAX_LLOYD_ITERATIONS = 300


@dataclass(frozen=True)
class ClusterParams:
    method: str
    space: Space
    k: int | None = None
    eps: float | None = None
    min_pts: int | None = None
    seed: int = 0
    coordinate_source: str = "embedded-2d"

    def __post_init__(self):
        object.__setattr__(self, "space", Space(self.space))
        if self.method not in ("kmeans", "dbscan"):
            raise ValidationError(f"method must be 'kmeans' or 'dbscan', got {self.method!r}")
        if self.coordinate_source not in ("embedded-2d", "original"):
            raise ValidationError(
                f"coordinate_source must be 'embedded-2d' or 'original', got {self.coordinate_source!r}"
            )
        if self.method == "kmeans":
            if self.k is None or self.k < 1:
                raise ValidationError("kmeans requires k >= 1", code="invalid_k")
            if self.seed < 0:
                raise ValidationError("seed must be a non-negative integer")
        else:
            if self.eps is None or self.eps <= 0:
                raise ValidationError("dbscan requires eps > 0", code="invalid_eps")
            if self.min_pts is None or self.min_pts < 1:
                raise ValidationError("dbscan requires min_pts >= 1", code="invalid_min_pts")


@dataclass(frozen=True)
class KMeansRun:
    labels: np.ndarray
    centroids: np.ndarray
    inertia: float
    inertia_trace: tuple[float, ...]


@dataclass(frozen=True)
class ClusterResult:
    ids: tuple[str, ...]
    labels: tuple[int, ...]
    k_found: int
    inertia: float | None
    silhouette: float | None
    davies_bouldin: float | None
    degenerate_centroids: bool = False
    params: ClusterParams | None = None

    def to_payload(self) -> dict:
        return {
            "labels": {i: int(l) for i, l in zip(self.ids, self.labels)},
            "k_found": self.k_found,
            "inertia": self.inertia,
            "silhouette": self.silhouette,
            "davies_bouldin": self.davies_bouldin,
            "degenerate_centroids": self.degenerate_centroids,
        }


def _sq_dists_to(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    while len(chosen) < k:
        d2 = _sq_dists_to(points, points[chosen]).min(axis=1)
        total = d2.sum()
        if total == 0.0:
            # all remaining mass on already-chosen points: take the first unchosen index
            remaining = [i for i in range(n) if i not in chosen]
            chosen.append(remaining[0])
            continue
        chosen.append(int(rng.choice(n, p=d2 / total)))
    return points[chosen].copy()


def kmeans(points: np.ndarray, k: int, seed: int) -> KMeansRun:
    """Lloyd's algorithm with k-means++ seeding.

    Runs to assignment fixpoint (or 300 iterations); an empty cluster is
    repaired by re-seeding its centroid at the point farthest from its
    currently assigned centroid.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValidationError("points must be a 2-D matrix")
    if not np.all(np.isfinite(points)):
        raise ValidationError("points must be finite")
    n = points.shape[0]
    if k < 1:
        raise ValidationError("k must be at least 1", code="invalid_k")
    if k > n:
        raise ValidationError(f"k={k} exceeds the number of points ({n})", code="invalid_k")

    rng = np.random.default_rng(seed)
    centroids = _kmeans_pp_init(points, k, rng)
    labels = np.full(n, -1, dtype=np.intp)
    trace: list[float] = []

    for _ in range(MAX_LLOYD_ITERATIONS):
        d2 = _sq_dists_to(points, centroids)
        new_labels = d2.argmin(axis=1)

        # repair empty clusters: move each to the point farthest from its own centroid
        used_repair: set[int] = set()
        for c in range(k):
            if np.any(new_labels == c):
                continue
            per_point = d2[np.arange(n), new_labels].copy()
            for taken in used_repair:
                per_point[taken] = -1.0
            farthest = int(per_point.argmax())
            used_repair.add(farthest)
            centroids[c] = points[farthest]
            d2 = _sq_dists_to(points, centroids)
            new_labels = d2.argmin(axis=1)

        trace.append(float(d2[np.arange(n), new_labels].sum()))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            members = points[labels == c]
            if len(members):
                centroids[c] = members.mean(axis=0)

    d2 = _sq_dists_to(points, centroids)
    labels = d2.argmin(axis=1)
    inertia = float(d2[np.arange(n), labels].sum())
    return KMeansRun(
        labels=labels.astype(np.intp),
        centroids=centroids,
        inertia=inertia,
        inertia_trace=tuple(trace),
    )


def dbscan(points: np.ndarray, eps: float, min_pts: int) -> np.ndarray:
    """Standard core/border/noise labeling; noise is -1.

    The eps-neighborhood is a closed ball and includes the point itself.
    Clusters are numbered in first-discovery order scanning input order,
    and a border point reachable from several clusters keeps the first.
    """
    points = np.asarray(points, dtype=np.float64)
    if eps <= 0:
        raise ValidationError("eps must be positive", code="invalid_eps")
    if min_pts < 1:
        raise ValidationError("min_pts must be at least 1", code="invalid_min_pts")
    n = points.shape[0]
    d2 = _sq_dists_to(points, points)
    adjacency = d2 <= eps * eps
    neighbor_counts = adjacency.sum(axis=1)
    core = neighbor_counts >= min_pts

    UNVISITED = -2
    labels = np.full(n, UNVISITED, dtype=np.intp)
    cluster = 0
    for start in range(n):
        if labels[start] != UNVISITED:
            continue
        if not core[start]:
            labels[start] = NOISE
            continue
        labels[start] = cluster
        queue = list(np.flatnonzero(adjacency[start]))
        while queue:
            p = queue.pop(0)
            if labels[p] == NOISE:
                labels[p] = cluster  # noise adopted as border
            if labels[p] != UNVISITED and labels[p] != cluster:
                continue
            labels[p] = cluster
            if core[p]:
                for q in np.flatnonzero(adjacency[p]):
                    if labels[q] == UNVISITED or labels[q] == NOISE:
                        queue.append(int(q))
        cluster += 1
    return labels


def silhouette_score(points: np.ndarray, labels: np.ndarray) -> float | None:
    """Mean silhouette over non-noise points; None below 2 clusters.

    Per-point terms of singleton clusters are 0 by convention.
    """
    points = np.asarray(points, dtype=np.float64)
    labels = np.asarray(labels)
    keep = labels != NOISE
    points = points[keep]
    labels = labels[keep]
    clusters = sorted(set(labels.tolist()))
    if len(clusters) < 2:
        return None
    dist = np.sqrt(np.maximum(_sq_dists_to(points, points), 0.0))
    members = {c: np.flatnonzero(labels == c) for c in clusters}
    total = 0.0
    for i in range(len(points)):
        own = members[labels[i]]
        if len(own) == 1:
            continue  # singleton term is 0
        a = dist[i, own].sum() / (len(own) - 1)
        b = min(dist[i, members[c]].mean() for c in clusters if c != labels[i])
        total += (b - a) / max(a, b)
    return total / len(points)


def davies_bouldin_score(points: np.ndarray, labels: np.ndarray) -> tuple[float | None, bool]:
    """(score, degenerate_centroids) over non-noise points; None below 2 clusters.

    Coincident centroids make the pairwise ratio singular; the score is
    then None with the degenerate flag set.
    """
    points = np.asarray(points, dtype=np.float64)
    labels = np.asarray(labels)
    keep = labels != NOISE
    points = points[keep]
    labels = labels[keep]
    clusters = sorted(set(labels.tolist()))
    if len(clusters) < 2:
        return None, False
    centroids = np.array([points[labels == c].mean(axis=0) for c in clusters])
    spreads = np.array(
        [
            np.sqrt(((points[labels == c] - centroids[k]) ** 2).sum(axis=1)).mean()
            for k, c in enumerate(clusters)
        ]
    )
    m = len(clusters)
    centroid_dist = np.sqrt(np.maximum(_sq_dists_to(centroids, centroids), 0.0))
    if np.any(centroid_dist[~np.eye(m, dtype=bool)] == 0.0):
        return None, True
    total = 0.0
    for i in range(m):
        total += max(
            (spreads[i] + spreads[j]) / centroid_dist[i, j] for j in range(m) if j != i
        )
    return total / m, False


def cluster_group(
    dataset: Dataset,
    group,
    params: ClusterParams,
    embedding: Embedding | None = None,
) -> ClusterResult:
    """Cluster a group's coordinates and attach both validation scores."""
    group = list(group)
    if not group:
        raise ValidationError("group must not be empty", code="empty_group")
    if params.coordinate_source == "embedded-2d":
        if embedding is None:
            raise ValidationError("embedded-2d clustering requires an embedding")
        if embedding.params.space != params.space:
            raise ValidationError(
                f"embedding space {embedding.params.space.value} does not match requested space {params.space.value}"
            )
        known = set(embedding.ids)
        missing = [i for i in group if i not in known]
        if missing:
            raise ValidationError(
                "group contains ids absent from the embedding", detail={"missing": missing}
            )
        rows = [embedding.index_of(i) for i in group]
        points = embedding.coords[rows]
    else:
        idx = dataset.indices_for(group)
        points = space_matrix(dataset, params.space)[idx]

    if params.method == "kmeans":
        if params.k > len(group):
            raise ValidationError(
                f"k={params.k} exceeds the group size ({len(group)})", code="invalid_k"
            )
        run = kmeans(points, params.k, params.seed)
        labels = run.labels
        inertia = run.inertia
    else:
        labels = dbscan(points, params.eps, params.min_pts)
        inertia = None

    k_found = len(set(labels.tolist()) - {NOISE})
    sil = silhouette_score(points, labels)
    db, degenerate = davies_bouldin_score(points, labels)
    return ClusterResult(
        ids=tuple(group),
        labels=tuple(int(l) for l in labels),
        k_found=k_found,
        inertia=inertia,
        silhouette=sil,
        davies_bouldin=db,
        degenerate_centroids=degenerate,
        params=params,
    )
