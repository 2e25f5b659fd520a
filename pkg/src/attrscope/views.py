"""Per-image detail assembly and gallery bucketing for the client views."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .metrics import error_rate
from .model import Dataset, Space, decide

FLOWER_STATES = ("TP", "TN", "FP", "FN")


def flower_state(act_bit: int, decision_bit: int) -> str:
    """Petal encoding of one attribute's outcome.

    TP renders as a solid petal, FN blank, TN missing, FP solid with a
    black border.
    """
    if act_bit not in (0, 1) or decision_bit not in (0, 1):
        raise ValidationError("flower state inputs must be binary")
    if act_bit == 1:
        return "TP" if decision_bit == 1 else "FN"
    return "FP" if decision_bit == 1 else "TN"


def image_detail(dataset: Dataset, image_id: str) -> dict:
    record = dataset.record(image_id)
    decisions = decide(record.prd)
    flower = [flower_state(int(a), int(d)) for a, d in zip(record.act, decisions)]
    return {
        "id": record.id,
        "act": [int(v) for v in record.act],
        "prd": [float(v) for v in record.prd],
        "decisions": [int(v) for v in decisions],
        "flower": flower,
        "error_rate": error_rate(record),
    }


def gallery_buckets(dataset: Dataset, group, space: Space = Space.ACT) -> list[dict]:
    """Bucket a group's images by how many attributes each carries.

    The key counts positive attributes in the chosen space (ACT labels or
    thresholded predictions); buckets come out in ascending key order and
    keep group order within a bucket.
    """
    space = Space(space)
    if space not in (Space.ACT, Space.PRD):
        raise ValidationError("gallery counting space must be ACT or PRD")
    group = list(group)
    idx = dataset.indices_for(group)
    if space == Space.ACT:
        counts = dataset.act[idx].sum(axis=1)
    else:
        counts = decide(dataset.prd[idx]).sum(axis=1)
    buckets: dict[int, list[str]] = {}
    for image_id, count in zip(group, counts):
        buckets.setdefault(int(count), []).append(image_id)
    return [
        {"attribute_count": key, "image_ids": buckets[key]} for key in sorted(buckets)
    ]
