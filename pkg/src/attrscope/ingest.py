"""Dataset loading from disk.

File contract (plain text/CSV so exports from any tooling interoperate):

* ``attributes.txt`` — one attribute name per non-empty line, UTF-8.
* ``act.csv`` — header ``image_id,<name_0>,...``; values 0 or 1.
* ``prd.csv`` — same header; decimals in [0, 1].
* ``fea.csv`` — header ``image_id,f0,...,f{F-1}``; finite decimals.
* ``manifest.json`` — names the four files (paths relative to the
  manifest's own directory) plus an optional thumbnail directory.

The three CSVs are joined by image id.  Record order follows act.csv row
order regardless of how prd/fea rows are ordered.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .model import AttributeCatalog, Dataset

THUMBNAIL_EXTENSIONS = (".png", ".jpg")


@dataclass(frozen=True)
class DatasetManifest:
    name: str
    attributes_file: Path
    act_file: Path
    prd_file: Path
    fea_file: Path
    images_dir: Path | None = None

    def validate(self):
        for label, path in (
            ("attributes_file", self.attributes_file),
            ("act_file", self.act_file),
            ("prd_file", self.prd_file),
            ("fea_file", self.fea_file),
        ):
            if not path.is_file():
                raise ValidationError(f"manifest {label} does not exist: {path}")
        if self.images_dir is not None and not self.images_dir.is_dir():
            raise ValidationError(f"manifest images_dir does not exist: {self.images_dir}")


def read_manifest(path) -> DatasetManifest:
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"manifest file does not exist: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"manifest is not valid JSON: {exc}") from exc
    base = path.parent
    for key in ("name", "attributes_file", "act_file", "prd_file", "fea_file"):
        if key not in raw:
            raise ValidationError(f"manifest missing required field {key!r}")
    manifest = DatasetManifest(
        name=raw["name"],
        attributes_file=base / raw["attributes_file"],
        act_file=base / raw["act_file"],
        prd_file=base / raw["prd_file"],
        fea_file=base / raw["fea_file"],
        images_dir=(base / raw["images_dir"]) if raw.get("images_dir") else None,
    )
    manifest.validate()
    return manifest


def load_attribute_names(path) -> AttributeCatalog:
    """Parse the attribute name file; line order defines vector index."""
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"attribute file does not exist: {path}")
    names = [line.strip() for line in path.read_text(encoding="utf-8").splitlines()]
    names = [n for n in names if n]
    if not names:
        raise ValidationError(f"attribute file is empty: {path}")
    seen = set()
    for name in names:
        if name in seen:
            raise ValidationError(f"duplicate attribute name {name!r} in {path}")
        seen.add(name)
    return AttributeCatalog(tuple(names))


def _read_csv_rows(path: Path) -> tuple[list[str], list[list[str]]]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path} is empty") from None
        rows = [row for row in reader if row]
    return header, rows


def _parse_vector_file(
    path: Path,
    expected_header: list[str] | None,
    kind: str,
) -> tuple[list[str], np.ndarray]:
    """Read one vector CSV into (ids, matrix) with per-cell validation."""
    header, rows = _read_csv_rows(path)
    if header[0] != "image_id":
        raise ValidationError(f"{path}: first column must be image_id, got {header[0]!r}")
    if expected_header is not None and header != expected_header:
        raise ValidationError(
            f"{path}: header columns must match the attribute catalog order exactly"
        )
    width = len(header) - 1
    if width < 1:
        raise ValidationError(f"{path}: no value columns")
    ids: list[str] = []
    values = np.empty((len(rows), width), dtype=np.float64)
    seen = set()
    for r, row in enumerate(rows):
        if len(row) != width + 1:
            raise ValidationError(
                f"{path}: row {r + 2} has {len(row)} fields, expected {width + 1}"
            )
        image_id = row[0]
        if not image_id:
            raise ValidationError(f"{path}: row {r + 2} has an empty image_id")
        if image_id in seen:
            raise ValidationError(f"{path}: duplicate image_id {image_id!r}")
        seen.add(image_id)
        ids.append(image_id)
        for c, cell in enumerate(row[1:], start=1):
            try:
                value = float(cell)
            except ValueError:
                raise ValidationError(
                    f"{path}: non-numeric value {cell!r} at ({image_id}, column {c})"
                ) from None
            if kind == "act" and value not in (0.0, 1.0):
                raise ValidationError(
                    f"{path}: ACT value must be 0 or 1, got {cell!r} at ({image_id}, column {c})"
                )
            if kind == "prd" and not (0.0 <= value <= 1.0):
                raise ValidationError(
                    f"{path}: PRD value must lie in [0, 1], got {cell!r} at ({image_id}, column {c})"
                )
            if kind == "fea" and not np.isfinite(value):
                raise ValidationError(
                    f"{path}: FEA value must be finite, got {cell!r} at ({image_id}, column {c})"
                )
            values[r, c - 1] = value
    return ids, values


def load_dataset(manifest: DatasetManifest) -> Dataset:
    manifest.validate()
    catalog = load_attribute_names(manifest.attributes_file)
    attr_header = ["image_id", *catalog.names]
    act_ids, act = _parse_vector_file(manifest.act_file, attr_header, "act")
    prd_ids, prd = _parse_vector_file(manifest.prd_file, attr_header, "prd")
    fea_ids, fea = _parse_vector_file(manifest.fea_file, None, "fea")

    act_set = set(act_ids)
    for label, other_ids, other_path in (
        ("prd", prd_ids, manifest.prd_file),
        ("fea", fea_ids, manifest.fea_file),
    ):
        other_set = set(other_ids)
        if other_set != act_set:
            missing = sorted(act_set - other_set)
            extra = sorted(other_set - act_set)
            raise ValidationError(
                f"image id sets differ between {manifest.act_file.name} and {other_path.name}",
                detail={"missing_from_" + label: missing, "extra_in_" + label: extra},
            )

    prd_pos = {image_id: i for i, image_id in enumerate(prd_ids)}
    fea_pos = {image_id: i for i, image_id in enumerate(fea_ids)}
    prd_order = np.array([prd_pos[i] for i in act_ids], dtype=np.intp)
    fea_order = np.array([fea_pos[i] for i in act_ids], dtype=np.intp)

    thumbnails: dict[str, str] = {}
    if manifest.images_dir is not None:
        for image_id in act_ids:
            for ext in THUMBNAIL_EXTENSIONS:
                candidate = manifest.images_dir / f"{image_id}{ext}"
                if candidate.is_file():
                    thumbnails[image_id] = str(candidate)
                    break

    return Dataset(
        catalog=catalog,
        ids=act_ids,
        act=act.astype(np.uint8),
        prd=prd[prd_order],
        fea=fea[fea_order],
        thumbnails=thumbnails,
        name=manifest.name,
    )


def _format_value(value: float) -> str:
    # repr round-trips exactly, so export -> reload is lossless
    return repr(float(value))


def export_dataset(dataset: Dataset, directory) -> DatasetManifest:
    """Write the dataset back to the four-file layout (round-trip safe)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    attributes_file = directory / "attributes.txt"
    attributes_file.write_text("\n".join(dataset.catalog.names) + "\n", encoding="utf-8")

    attr_header = ["image_id", *dataset.catalog.names]
    act_file = directory / "act.csv"
    with act_file.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(attr_header)
        for i, image_id in enumerate(dataset.ids):
            writer.writerow([image_id, *(str(int(v)) for v in dataset.act[i])])

    prd_file = directory / "prd.csv"
    with prd_file.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(attr_header)
        for i, image_id in enumerate(dataset.ids):
            writer.writerow([image_id, *(_format_value(v) for v in dataset.prd[i])])

    fea_file = directory / "fea.csv"
    with fea_file.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["image_id", *(f"f{j}" for j in range(dataset.n_features))])
        for i, image_id in enumerate(dataset.ids):
            writer.writerow([image_id, *(_format_value(v) for v in dataset.fea[i])])

    manifest = DatasetManifest(
        name=dataset.name,
        attributes_file=attributes_file,
        act_file=act_file,
        prd_file=prd_file,
        fea_file=fea_file,
    )
    manifest_path = directory / "manifest.json"
    manifest_path.write_text(
        json.dumps(
            {
                "name": dataset.name,
                "attributes_file": "attributes.txt",
                "act_file": "act.csv",
                "prd_file": "prd.csv",
                "fea_file": "fea.csv",
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    return manifest
