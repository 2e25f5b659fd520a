"""Pydantic request/response models for the HTTP API.

Request models validate structure; semantic validation (id existence,
parameter ranges) stays in the engine so the CLI shares it.  Responses
are serialized through canonical JSON, so these models document shape
rather than drive serialization.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class LoadDatasetRequest(BaseModel):
    manifest: str


class EmbeddingParamsModel(BaseModel):
    space: str
    method: str = "tsne"
    seed: int | None = None
    perplexity: float = 30.0
    iterations: int = 1000
    learning_rate: float = 200.0
    exaggeration: float = 12.0


class GroupCreateRequest(BaseModel):
    name: str
    color: str | None = None
    image_ids: list[str] | None = None
    embedding: EmbeddingParamsModel | None = None
    polygon: list[tuple[float, float]] | None = None


class ClusterRequest(BaseModel):
    method: str
    space: str
    k: int | None = None
    eps: float | None = None
    min_pts: int | None = None
    seed: int = 0
    coordinate_source: str = "embedded-2d"
    embedding: EmbeddingParamsModel | None = None


class ErrorPayload(BaseModel):
    code: str
    message: str
    detail: object | None = None


class DatasetSummary(BaseModel):
    name: str
    A: int
    F: int
    record_count: int
    attributes: list[str]


class GroupModel(BaseModel):
    id: str
    name: str
    color: str
    image_ids: list[str]


class AttributeMetricsRow(BaseModel):
    attribute: int
    name: str
    tp: int
    tn: int
    fp: int
    fn: int
    positives: int
    accuracy: float | None
    precision: float | None
    recall: float | None
    f1: float | None


class MetricsTableModel(BaseModel):
    group_id: str | None
    rows: list[AttributeMetricsRow]


class MatrixModel(BaseModel):
    measure: str
    layout: str
    attributes: list[str]
    values: list[list[float | None]]


class CoexistenceRowModel(BaseModel):
    combination: list[int]
    names: list[str]
    number: int
    corNum: int


class CoexistenceTableModel(BaseModel):
    k: int
    rank_by: str
    rows: list[CoexistenceRowModel]


class PatternModel(BaseModel):
    correct: list[bool]
    count: int
    image_ids: list[str]


class AttributeSetModel(BaseModel):
    attributes: list[int]
    names: list[str]
    universe: int
    universe_ids: list[str]
    patterns: list[PatternModel]


class ClusterResultModel(BaseModel):
    labels: dict[str, int]
    k_found: int
    inertia: float | None
    silhouette: float | None
    davies_bouldin: float | None
    degenerate_centroids: bool


class GalleryBucket(BaseModel):
    attribute_count: int
    image_ids: list[str]


class GalleryModel(BaseModel):
    space: str
    buckets: list[GalleryBucket]


class ImageDetailModel(BaseModel):
    id: str
    act: list[int]
    prd: list[float]
    decisions: list[int]
    flower: list[str]
    error_rate: float


class EmbeddingStatusModel(BaseModel):
    status: str = Field(description="computing | ready")
    params: dict
