"""Shared server state: the loaded dataset, the group store, and the
embedding cache with single-flight computation.

Embeddings are long-running, so the cache computes each parameter tuple
at most once, off the request path, and concurrent requests for the same
tuple share one computation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

from ..embedding import Embedding, EmbeddingParams, compute_embedding
from ..errors import EngineError, NumericalFailureError, ValidationError
from ..groups import GroupStore
from ..ingest import load_dataset, read_manifest
from ..model import Dataset

COMPUTING = "computing"
READY = "ready"
FAILED = "failed"


@dataclass
class CacheEntry:
    status: str
    embedding: Embedding | None = None
    error: EngineError | None = None


class EmbeddingCache:
    def __init__(self):
        self._lock = threading.Lock()
        self._entries: dict[tuple, CacheEntry] = {}

    def get_or_start(self, params: EmbeddingParams, compute) -> CacheEntry:
        """Return the entry for ``params``, starting one computation if absent."""
        key = params.key()
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None:
                return entry
            entry = CacheEntry(status=COMPUTING)
            self._entries[key] = entry

        def run():
            try:
                embedding = compute()
            except EngineError as exc:
                with self._lock:
                    entry.status = FAILED
                    entry.error = exc
            except Exception as exc:  # pragma: no cover - unexpected kernel failure
                with self._lock:
                    entry.status = FAILED
                    entry.error = NumericalFailureError(str(exc))
            else:
                with self._lock:
                    entry.embedding = embedding
                    entry.status = READY

        threading.Thread(target=run, daemon=True).start()
        return entry

    def peek(self, params: EmbeddingParams) -> CacheEntry | None:
        with self._lock:
            return self._entries.get(params.key())

    def clear(self):
        with self._lock:
            self._entries.clear()


@dataclass
class AppState:
    default_seed: int = 0
    cache_dir: Path | None = None
    dataset: Dataset | None = None
    embeddings: EmbeddingCache = field(default_factory=EmbeddingCache)
    groups: GroupStore = field(default_factory=GroupStore)

    def require_dataset(self) -> Dataset:
        if self.dataset is None:
            raise ValidationError("no dataset loaded; POST /api/dataset/load first", code="no_dataset")
        return self.dataset

    def load_manifest(self, manifest_path) -> Dataset:
        manifest = read_manifest(manifest_path)
        dataset = load_dataset(manifest)
        self.dataset = dataset
        self.embeddings.clear()
        self.groups.clear()
        return dataset

    def start_embedding(self, params: EmbeddingParams) -> CacheEntry:
        dataset = self.require_dataset()
        return self.embeddings.get_or_start(params, lambda: compute_embedding(dataset, params))


def build_state(manifest_path=None, cache_dir=None, default_seed: int = 0) -> AppState:
    cache_dir = Path(cache_dir) if cache_dir else None
    snapshot = cache_dir / "groups.json" if cache_dir else None
    state = AppState(
        default_seed=default_seed,
        cache_dir=cache_dir,
        groups=GroupStore(snapshot_path=snapshot),
    )
    if manifest_path is not None:
        manifest = read_manifest(manifest_path)
        state.dataset = load_dataset(manifest)
        known = set(state.dataset.ids)
        for group in state.groups.list():
            if not set(group.image_ids) <= known:
                state.groups.delete(group.id)
    return state
