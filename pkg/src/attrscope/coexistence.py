"""Attribute co-existence statistics over binary indicators.

Pairwise measures (Pearson correlation, mutual information, conditional
entropy) are computed from 2x2 joint counts of two indicators over a
group; multivariate structure is exposed by enumerating the attribute
combinations that actually occur.

Conventions: logs are base 2 (bits), 0*log(0) := 0, and degenerate
results are None (serialized null), never an exception.

The source equation for the correlation prints a single combined radical
in its denominator; the standard two-factor sample form (consistent with
the accompanying dot-product reading) is what is computed here.  The
conditional entropy as printed divides by the marginal of the uncertain
variable; the standard H(X|Y) with p(y) in the denominator matches the
prose orientation of the matrix and is what is computed here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError
from .model import Dataset, Space, attribute_indicator

MIN_COMBINATION_SIZE = 2
MAX_COMBINATION_SIZE = 8


class Measure(str, Enum):
    CORRELATION = "correlation"
    MUTUAL_INFORMATION = "mutual_information"
    CONDITIONAL_ENTROPY = "conditional_entropy"


class Layout(str, Enum):
    ACT = "ACT"
    PRD = "PRD"
    CROSS = "cross"


@dataclass(frozen=True)
class JointCounts:
    """Joint occurrence counts of two binary indicators."""

    n11: int
    n10: int
    n01: int
    n00: int

    def __post_init__(self):
        if min(self.n11, self.n10, self.n01, self.n00) < 0:
            raise ValidationError("joint counts must be non-negative")
        if self.n == 0:
            raise ValidationError("joint counts must describe at least one sample", code="empty_group")

    @property
    def n(self) -> int:
        return self.n11 + self.n10 + self.n01 + self.n00

    @classmethod
    def from_indicators(cls, x, y) -> "JointCounts":
        x = np.asarray(x, dtype=bool)
        y = np.asarray(y, dtype=bool)
        if x.shape != y.shape:
            raise ValidationError("indicator vectors must have equal length")
        return cls(
            n11=int(np.count_nonzero(x & y)),
            n10=int(np.count_nonzero(x & ~y)),
            n01=int(np.count_nonzero(~x & y)),
            n00=int(np.count_nonzero(~x & ~y)),
        )


def joint_counts(
    dataset: Dataset,
    group,
    attr_x: int,
    attr_y: int,
    space_x: Space = Space.ACT,
    space_y: Space = Space.ACT,
) -> JointCounts:
    group = list(group)
    if not group:
        raise ValidationError("group must not be empty", code="empty_group")
    x = attribute_indicator(dataset, group, attr_x, space_x)
    y = attribute_indicator(dataset, group, attr_y, space_y)
    return JointCounts.from_indicators(x, y)


def pearson(counts: JointCounts) -> float | None:
    """Sample Pearson correlation of the two indicators; None if either is constant."""
    n = counts.n
    sx = counts.n11 + counts.n10
    sy = counts.n11 + counts.n01
    # binary vectors: sum of squares == sum
    var_x = n * sx - sx * sx
    var_y = n * sy - sy * sy
    if var_x == 0 or var_y == 0:
        return None
    cov = n * counts.n11 - sx * sy
    return cov / math.sqrt(var_x) / math.sqrt(var_y)


def _plogp_ratio(p: float, q: float) -> float:
    # p * log2(p / q) with the 0*log0 convention
    if p == 0.0:
        return 0.0
    return p * math.log2(p / q)


def mutual_information(counts: JointCounts) -> float:
    """I(X;Y) in bits."""
    n = counts.n
    px = (counts.n11 + counts.n10) / n
    py = (counts.n11 + counts.n01) / n
    total = 0.0
    for p_xy, mx, my in (
        (counts.n11 / n, px, py),
        (counts.n10 / n, px, 1.0 - py),
        (counts.n01 / n, 1.0 - px, py),
        (counts.n00 / n, 1.0 - px, 1.0 - py),
    ):
        total += _plogp_ratio(p_xy, mx * my)
    return total


def conditional_entropy(counts: JointCounts) -> float:
    """H(X | Y) in bits: the remaining uncertainty of X once Y is known."""
    n = counts.n
    py = (counts.n11 + counts.n01) / n
    total = 0.0
    for p_xy, my in (
        (counts.n11 / n, py),
        (counts.n10 / n, 1.0 - py),
        (counts.n01 / n, py),
        (counts.n00 / n, 1.0 - py),
    ):
        total -= _plogp_ratio(p_xy, my)
    return total


def entropy_x(counts: JointCounts) -> float:
    """Marginal entropy H(X) in bits."""
    px = (counts.n11 + counts.n10) / counts.n
    total = 0.0
    for p in (px, 1.0 - px):
        if p > 0.0:
            total -= p * math.log2(p)
    return total


@dataclass(frozen=True)
class PairwiseMatrix:
    measure: Measure
    layout: Layout
    attributes: tuple[str, ...]
    values: tuple[tuple[float | None, ...], ...]


_MEASURE_FN = {
    Measure.CORRELATION: pearson,
    Measure.MUTUAL_INFORMATION: mutual_information,
    Measure.CONDITIONAL_ENTROPY: conditional_entropy,
}


def pairwise_matrix(
    dataset: Dataset,
    measure: Measure,
    layout: Layout,
    group=None,
) -> PairwiseMatrix:
    """A x A measure matrix over a group (full dataset when group is None).

    ACT/PRD layouts take both indicators from the same space.  The cross
    layout fills only the diagonal, pairing attribute i's actual indicator
    with its predicted one.  For conditional entropy, rows are the
    uncertain attribute and columns the conditioning one.
    """
    measure = Measure(measure)
    layout = Layout(layout)
    group = list(group) if group is not None else list(dataset.ids)
    if not group:
        raise ValidationError("group must not be empty", code="empty_group")
    a = dataset.n_attributes
    fn = _MEASURE_FN[measure]

    if layout == Layout.CROSS:
        values = [[None] * a for _ in range(a)]
        for i in range(a):
            counts = joint_counts(dataset, group, i, i, Space.ACT, Space.PRD)
            values[i][i] = fn(counts)
        return PairwiseMatrix(
            measure=measure,
            layout=layout,
            attributes=dataset.catalog.names,
            values=tuple(tuple(row) for row in values),
        )

    space = Space.ACT if layout == Layout.ACT else Space.PRD
    indicators = [attribute_indicator(dataset, group, i, space) for i in range(a)]
    values = [[None] * a for _ in range(a)]
    symmetric = measure in (Measure.CORRELATION, Measure.MUTUAL_INFORMATION)
    for i in range(a):
        for j in range(a):
            if symmetric and j < i:
                values[i][j] = values[j][i]
                continue
            counts = JointCounts.from_indicators(indicators[i], indicators[j])
            values[i][j] = fn(counts)
    return PairwiseMatrix(
        measure=measure,
        layout=layout,
        attributes=dataset.catalog.names,
        values=tuple(tuple(row) for row in values),
    )


@dataclass(frozen=True)
class CoexistenceRow:
    combination: tuple[int, ...]
    names: tuple[str, ...]
    number: int
    cor_num: int


def coexistence_table(
    dataset: Dataset,
    k: int,
    rank_by: str = "number",
    limit: int | None = None,
    group=None,
) -> list[CoexistenceRow]:
    """Every k-attribute combination that occurs, with its prediction tally.

    ``number`` counts images whose ACT contains all k attributes;
    ``cor_num`` counts those whose decision is positive for all k.
    Rows sort descending by the chosen rank, ties broken by ascending
    attribute indices.  ``group`` restricts the scan (full dataset when
    None).
    """
    if not MIN_COMBINATION_SIZE <= k <= MAX_COMBINATION_SIZE:
        raise ValidationError(
            f"combination size must lie in [{MIN_COMBINATION_SIZE}, {MAX_COMBINATION_SIZE}], got {k}"
        )
    if rank_by not in ("number", "corNum"):
        raise ValidationError(f"rank_by must be 'number' or 'corNum', got {rank_by!r}")
    if limit is not None and limit < 1:
        raise ValidationError(f"limit must be positive, got {limit}")
    if group is not None:
        group = list(group)
        if not group:
            raise ValidationError("group must not be empty", code="empty_group")
        idx = dataset.indices_for(group)
        act = dataset.act[idx].astype(bool)
        dec = dataset.decisions()[idx].astype(bool)
    else:
        act = dataset.act.astype(bool)
        dec = dataset.decisions().astype(bool)
    rows: list[CoexistenceRow] = []
    for combo in itertools.combinations(range(dataset.n_attributes), k):
        members = np.all(act[:, combo], axis=1)
        number = int(np.count_nonzero(members))
        if number == 0:
            continue
        cor_num = int(np.count_nonzero(np.all(dec[members][:, combo], axis=1)))
        rows.append(
            CoexistenceRow(
                combination=combo,
                names=tuple(dataset.catalog.names[i] for i in combo),
                number=number,
                cor_num=cor_num,
            )
        )
    key = (lambda r: (-r.number, r.combination)) if rank_by == "number" else (
        lambda r: (-r.cor_num, r.combination)
    )
    rows.sort(key=key)
    if limit is not None:
        rows = rows[:limit]
    return rows
