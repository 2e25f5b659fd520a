"""Server-side image group store.

Groups live in memory and are snapshotted to JSON on every mutation when
a cache directory is configured, so a restarted server keeps its groups
and headless workflows can inspect them.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass
from pathlib import Path

from .errors import UnknownGroupError, ValidationError

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")

DEFAULT_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


@dataclass(frozen=True)
class Group:
    id: str
    name: str
    color: str
    image_ids: tuple[str, ...]

    def to_payload(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "color": self.color,
            "image_ids": list(self.image_ids),
        }


def dedupe_preserving_order(ids) -> tuple[str, ...]:
    seen = set()
    out = []
    for image_id in ids:
        if image_id not in seen:
            seen.add(image_id)
            out.append(image_id)
    return tuple(out)


class GroupStore:
    def __init__(self, snapshot_path: Path | None = None):
        self._lock = threading.RLock()
        self._groups: dict[str, Group] = {}
        self._counter = 0
        self._snapshot_path = Path(snapshot_path) if snapshot_path else None
        if self._snapshot_path and self._snapshot_path.is_file():
            self._restore()

    def _restore(self):
        raw = json.loads(self._snapshot_path.read_text(encoding="utf-8"))
        self._counter = raw.get("counter", 0)
        for g in raw.get("groups", []):
            group = Group(
                id=g["id"],
                name=g["name"],
                color=g["color"],
                image_ids=tuple(g["image_ids"]),
            )
            self._groups[group.id] = group

    def _persist(self):
        if not self._snapshot_path:
            return
        self._snapshot_path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "counter": self._counter,
            "groups": [g.to_payload() for g in self._groups.values()],
        }
        self._snapshot_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")

    def create(self, name: str, image_ids, color: str | None = None) -> Group:
        if not name:
            raise ValidationError("group name must not be empty")
        with self._lock:
            if color is None:
                color = DEFAULT_PALETTE[self._counter % len(DEFAULT_PALETTE)]
            elif not _HEX_COLOR.match(color):
                raise ValidationError(f"color must be a #RRGGBB hex string, got {color!r}")
            self._counter += 1
            group = Group(
                id=f"g{self._counter}",
                name=name,
                color=color,
                image_ids=dedupe_preserving_order(image_ids),
            )
            self._groups[group.id] = group
            self._persist()
            return group

    def get(self, group_id: str) -> Group:
        with self._lock:
            try:
                return self._groups[group_id]
            except KeyError:
                raise UnknownGroupError(group_id) from None

    def delete(self, group_id: str):
        with self._lock:
            if group_id not in self._groups:
                raise UnknownGroupError(group_id)
            del self._groups[group_id]
            self._persist()

    def list(self) -> list[Group]:
        with self._lock:
            return list(self._groups.values())

    def clear(self):
        with self._lock:
            self._groups.clear()
            self._counter = 0
            self._persist()
