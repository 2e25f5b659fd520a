"""2-D projections of the three data spaces, plus CSV/JSON interchange.

Every embedding is fully determined by (dataset, space, method, params,
seed); no hidden randomness.  Coordinates cover exactly the dataset's
image ids, in dataset order.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .model import Dataset, Space
from .pca import pca_project
from .tsne import tsne_embed

DEFAULT_PERPLEXITY = 30.0
DEFAULT_ITERATIONS = 1000
DEFAULT_LEARNING_RATE = 200.0
DEFAULT_EXAGGERATION = 12.0


@dataclass(frozen=True)
class EmbeddingParams:
    space: Space
    method: str
    seed: int
    perplexity: float = DEFAULT_PERPLEXITY
    iterations: int = DEFAULT_ITERATIONS
    learning_rate: float = DEFAULT_LEARNING_RATE
    exaggeration: float = DEFAULT_EXAGGERATION

    def __post_init__(self):
        object.__setattr__(self, "space", Space(self.space))
        if self.method not in ("tsne", "pca"):
            raise ValidationError(f"method must be 'tsne' or 'pca', got {self.method!r}")
        if self.seed < 0:
            raise ValidationError("seed must be a non-negative integer")
        if self.method == "tsne":
            if self.perplexity < 2:
                raise ValidationError(f"perplexity must be at least 2, got {self.perplexity}")
            if self.iterations < 1:
                raise ValidationError("iterations must be positive")
            if self.exaggeration != 1.0 and self.iterations < 250:
                raise ValidationError("need at least 250 iterations when exaggeration is applied")
            if self.learning_rate <= 0:
                raise ValidationError("learning rate must be positive")

    def key(self) -> tuple:
        return (
            self.space.value,
            self.method,
            self.seed,
            self.perplexity,
            self.iterations,
            self.learning_rate,
            self.exaggeration,
        )

    def to_payload(self) -> dict:
        return {
            "space": self.space.value,
            "method": self.method,
            "seed": self.seed,
            "perplexity": self.perplexity,
            "iterations": self.iterations,
            "learning_rate": self.learning_rate,
            "exaggeration": self.exaggeration,
        }


@dataclass(frozen=True)
class Embedding:
    params: EmbeddingParams
    ids: tuple[str, ...]
    coords: np.ndarray
    objective_trace: list = field(default_factory=list)

    def __post_init__(self):
        self.coords.setflags(write=False)
        if not np.all(np.isfinite(self.coords)):
            raise ValidationError("embedding coordinates must be finite")

    def index_of(self, image_id: str) -> int:
        if not hasattr(self, "_index"):
            object.__setattr__(self, "_index", {i: k for k, i in enumerate(self.ids)})
        return self._index[image_id]

    def to_payload(self) -> dict:
        points = {i: [float(x), float(y)] for i, (x, y) in zip(self.ids, self.coords)}
        return {
            "params": self.params.to_payload(),
            "points": points,
            "objective_trace": [list(entry) for entry in self.objective_trace],
        }


def space_matrix(dataset: Dataset, space: Space) -> np.ndarray:
    space = Space(space)
    if space == Space.ACT:
        return dataset.act.astype(np.float64)
    if space == Space.PRD:
        return dataset.prd
    return dataset.fea


def compute_embedding(dataset: Dataset, params: EmbeddingParams) -> Embedding:
    x = space_matrix(dataset, params.space)
    if params.method == "pca":
        coords, explained, _ = pca_project(x)
        trace = [list(explained)]
    else:
        coords, kl_trace = tsne_embed(
            x,
            perplexity=params.perplexity,
            iterations=params.iterations,
            learning_rate=params.learning_rate,
            exaggeration=params.exaggeration,
            seed=params.seed,
        )
        trace = [[it, kl] for it, kl in kl_trace]
    return Embedding(params=params, ids=dataset.ids, coords=coords, objective_trace=trace)


def write_embedding(embedding: Embedding, prefix) -> tuple[Path, Path]:
    """Emit ``<prefix>.csv`` (image_id,x,y) and a ``<prefix>.json`` sidecar."""
    prefix = Path(prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    csv_path = prefix.with_suffix(".csv")
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["image_id", "x", "y"])
        for image_id, (x, y) in zip(embedding.ids, embedding.coords):
            writer.writerow([image_id, repr(float(x)), repr(float(y))])
    json_path = prefix.with_suffix(".json")
    sidecar = {
        "params": embedding.params.to_payload(),
        "objective_trace": embedding.objective_trace,
    }
    json_path.write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return csv_path, json_path


def read_embedding_csv(path) -> tuple[list[str], np.ndarray]:
    """Read an ``image_id,x,y`` CSV back into (ids, coords)."""
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"embedding file does not exist: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["image_id", "x", "y"]:
            raise ValidationError(f"{path}: expected header image_id,x,y")
        ids: list[str] = []
        rows: list[tuple[float, float]] = []
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise ValidationError(f"{path}: malformed row {row!r}")
            ids.append(row[0])
            try:
                rows.append((float(row[1]), float(row[2])))
            except ValueError:
                raise ValidationError(f"{path}: non-numeric coordinates in row {row!r}") from None
    if not ids:
        raise ValidationError(f"{path}: no embedding rows")
    return ids, np.array(rows, dtype=np.float64)
