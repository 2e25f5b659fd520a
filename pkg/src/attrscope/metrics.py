"""Per-attribute classification metrics over arbitrary image groups.

Scores that divide by zero are Undefined, represented as None and
serialized as JSON null.  Undefinedness is user-visible signal (an
attribute with no actual positives has no recall), never an error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .model import Dataset, ImageRecord, decide


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class AttributeMetrics:
    attribute: int
    name: str
    counts: ConfusionCounts
    accuracy: float | None
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True)
class GroupMetricsTable:
    group_id: str | None
    rows: tuple[AttributeMetrics, ...]


@dataclass(frozen=True)
class CorrectnessPattern:
    """One observed per-attribute correct/incorrect combination."""

    attributes: tuple[int, ...]
    correct: tuple[bool, ...]
    count: int
    image_ids: tuple[str, ...] = ()


def confusion(dataset: Dataset, group, attribute: int) -> ConfusionCounts:
    group = list(group)
    if not group:
        raise ValidationError("group must not be empty", code="empty_group")
    if not 0 <= attribute < dataset.n_attributes:
        raise ValidationError(
            f"attribute index {attribute} out of range [0, {dataset.n_attributes})"
        )
    idx = dataset.indices_for(group)
    act = dataset.act[idx, attribute].astype(bool)
    dec = decide(dataset.prd[idx, attribute]).astype(bool)
    tp = int(np.count_nonzero(act & dec))
    tn = int(np.count_nonzero(~act & ~dec))
    fp = int(np.count_nonzero(~act & dec))
    fn = int(np.count_nonzero(act & ~dec))
    return ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)


def scores(counts: ConfusionCounts) -> tuple[float, float | None, float | None, float | None]:
    """(accuracy, precision, recall, f1); None where the denominator is zero."""
    total = counts.total
    if total == 0:
        raise ValidationError("counts describe an empty group", code="empty_group")
    accuracy = (counts.tp + counts.tn) / total
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp > 0 else None
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn > 0 else None
    if precision is None or recall is None or precision + recall == 0:
        f1 = None
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return accuracy, precision, recall, f1


def attribute_metrics(dataset: Dataset, group, attribute: int) -> AttributeMetrics:
    counts = confusion(dataset, group, attribute)
    accuracy, precision, recall, f1 = scores(counts)
    return AttributeMetrics(
        attribute=attribute,
        name=dataset.catalog.names[attribute],
        counts=counts,
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
    )


def group_metrics_table(dataset: Dataset, group, group_id: str | None = None) -> GroupMetricsTable:
    """One row per attribute, most-frequent (by in-group ACT positives) first.

    Ties keep catalog order so the table is deterministic.
    """
    group = list(group)
    if not group:
        raise ValidationError("group must not be empty", code="empty_group")
    idx = dataset.indices_for(group)
    positives = dataset.act[idx].sum(axis=0)
    order = sorted(range(dataset.n_attributes), key=lambda a: (-int(positives[a]), a))
    rows = tuple(attribute_metrics(dataset, group, a) for a in order)
    return GroupMetricsTable(group_id=group_id, rows=rows)


def error_rate(record: ImageRecord) -> float:
    """Fraction of attributes misclassified: Hamming(ACT, decision) / A."""
    dec = decide(record.prd)
    return float(np.count_nonzero(record.act != dec)) / len(record.act)


def error_rates(dataset: Dataset) -> np.ndarray:
    """Vectorized error_rate over every record, in dataset order."""
    dec = dataset.decisions()
    return (dataset.act != dec).sum(axis=1) / dataset.n_attributes


def attribute_set_patterns(dataset: Dataset, selected) -> list[CorrectnessPattern]:
    """Correctness combinations over the images carrying every selected attribute.

    The universe is the set of images whose ACT has 1 for *all* selected
    attributes.  Each universe image contributes the tuple of per-attribute
    correctness flags (ACT == decision).  Rows are sorted all-wrong first
    (ascending number of correct flags, then flag tuple) and their counts
    sum to the universe size.
    """
    selected = tuple(selected)
    if not 1 <= len(selected) <= dataset.n_attributes:
        raise ValidationError(
            f"selected attribute count must lie in [1, {dataset.n_attributes}]"
        )
    if len(set(selected)) != len(selected):
        raise ValidationError("selected attributes must be distinct")
    for a in selected:
        if not 0 <= a < dataset.n_attributes:
            raise ValidationError(
                f"attribute index {a} out of range [0, {dataset.n_attributes})"
            )
    sel = list(selected)
    universe = np.all(dataset.act[:, sel] == 1, axis=1)
    if not np.any(universe):
        return []
    member_ids = [dataset.ids[i] for i in np.flatnonzero(universe)]
    dec = dataset.decisions()[universe][:, sel]
    act = dataset.act[universe][:, sel]
    correct = act == dec
    patterns: dict[tuple[bool, ...], list[str]] = {}
    for image_id, row in zip(member_ids, correct):
        key = tuple(bool(v) for v in row)
        patterns.setdefault(key, []).append(image_id)
    ordered = sorted(patterns.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    return [
        CorrectnessPattern(
            attributes=selected, correct=flags, count=len(ids), image_ids=tuple(ids)
        )
        for flags, ids in ordered
    ]
