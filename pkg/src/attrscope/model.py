"""Core data model: the attribute catalog, the three per-image vector
spaces (actual labels, prediction probabilities, deep features), and the
immutable dataset container every analytics module reads from.

ACT values are binary ground-truth indicators, PRD values are classifier
probabilities in [0, 1] thresholded into decisions, and FEA values are the
real-valued deep-feature activations.  Attribute order in the catalog
defines the vector index in ACT and PRD.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import UnknownImageError, ValidationError

DEFAULT_THRESHOLD = 0.5


class Space(str, Enum):
    ACT = "ACT"
    FEA = "FEA"
    PRD = "PRD"


@dataclass(frozen=True)
class AttributeCatalog:
    """Ordered list of attribute names; position == vector index."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValidationError("attribute catalog must not be empty")
        seen = set()
        for name in self.names:
            if not name:
                raise ValidationError("attribute names must be non-empty")
            if name in seen:
                raise ValidationError(f"duplicate attribute name: {name!r}")
            seen.add(name)

    def __len__(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"unknown attribute name: {name!r}") from None


@dataclass(frozen=True)
class ImageRecord:
    """One image's id and its three vectors (read-only array views)."""

    id: str
    act: np.ndarray
    prd: np.ndarray
    fea: np.ndarray
    thumbnail_ref: str | None = None


class Dataset:
    """Immutable catalog + per-image vectors, shared read-only.

    Rows of ``act``/``prd``/``fea`` are aligned by position with ``ids``.
    Arrays are marked non-writable on construction; every analytics
    operation downstream is a pure read.
    """

    def __init__(
        self,
        catalog: AttributeCatalog,
        ids: list[str],
        act: np.ndarray,
        prd: np.ndarray,
        fea: np.ndarray,
        thumbnails: dict[str, str] | None = None,
        name: str = "dataset",
    ):
        n = len(ids)
        a = len(catalog)
        if len(set(ids)) != n:
            raise ValidationError("image ids must be unique")
        if any(not i for i in ids):
            raise ValidationError("image ids must be non-empty")
        act = np.ascontiguousarray(act, dtype=np.uint8)
        prd = np.ascontiguousarray(prd, dtype=np.float64)
        fea = np.ascontiguousarray(fea, dtype=np.float64)
        if act.shape != (n, a):
            raise ValidationError(f"ACT matrix must be {n}x{a}, got {act.shape}")
        if prd.shape != (n, a):
            raise ValidationError(f"PRD matrix must be {n}x{a}, got {prd.shape}")
        if fea.ndim != 2 or fea.shape[0] != n:
            raise ValidationError(f"FEA matrix must have {n} rows, got {fea.shape}")
        if not np.all((act == 0) | (act == 1)):
            raise ValidationError("ACT values must be 0 or 1")
        if np.any(prd < 0.0) or np.any(prd > 1.0) or not np.all(np.isfinite(prd)):
            raise ValidationError("PRD values must lie in [0, 1]")
        if not np.all(np.isfinite(fea)):
            raise ValidationError("FEA values must be finite")
        for arr in (act, prd, fea):
            arr.setflags(write=False)
        self.name = name
        self.catalog = catalog
        self.ids = tuple(ids)
        self.act = act
        self.prd = prd
        self.fea = fea
        self.thumbnails = dict(thumbnails or {})
        self._index = {image_id: i for i, image_id in enumerate(ids)}

    @property
    def n_images(self) -> int:
        return len(self.ids)

    @property
    def n_attributes(self) -> int:
        return len(self.catalog)

    @property
    def n_features(self) -> int:
        return self.fea.shape[1]

    def index_of(self, image_id: str) -> int:
        try:
            return self._index[image_id]
        except KeyError:
            raise UnknownImageError(image_id) from None

    def indices_for(self, image_ids) -> np.ndarray:
        return np.fromiter((self.index_of(i) for i in image_ids), dtype=np.intp, count=len(image_ids))

    def record(self, image_id: str) -> ImageRecord:
        i = self.index_of(image_id)
        return ImageRecord(
            id=image_id,
            act=self.act[i],
            prd=self.prd[i],
            fea=self.fea[i],
            thumbnail_ref=self.thumbnails.get(image_id),
        )

    @property
    def records(self) -> list[ImageRecord]:
        return [self.record(i) for i in self.ids]

    def decisions(self, threshold: float = DEFAULT_THRESHOLD) -> np.ndarray:
        """Thresholded PRD matrix for the whole dataset."""
        return decide(self.prd, threshold)


def decide(prd, threshold: float = DEFAULT_THRESHOLD) -> np.ndarray:
    """Threshold probabilities into binary decisions.

    A value exactly at the threshold maps to positive (>= rule); the
    boundary side is a deliberate, documented choice.
    """
    if not (0.0 < threshold < 1.0):
        raise ValidationError(f"threshold must lie in (0, 1), got {threshold}")
    prd = np.asarray(prd, dtype=np.float64)
    return (prd >= threshold).astype(np.uint8)


def attribute_indicator(dataset: Dataset, group, attribute: int, space: Space) -> np.ndarray:
    """Binary per-image indicator of one attribute over a group.

    ACT reads the label directly; PRD applies the 0.5 decision rule.
    Output order follows group order.
    """
    if not 0 <= attribute < dataset.n_attributes:
        raise ValidationError(
            f"attribute index {attribute} out of range [0, {dataset.n_attributes})"
        )
    idx = dataset.indices_for(list(group))
    if space == Space.ACT:
        return dataset.act[idx, attribute].astype(np.uint8)
    if space == Space.PRD:
        return decide(dataset.prd[idx, attribute])
    raise ValidationError(f"indicator space must be ACT or PRD, got {space}")
