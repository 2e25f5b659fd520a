"""Shared fixtures: synthetic datasets built from explicit matrices."""

from __future__ import annotations

import numpy as np
import pytest

from attrscope.model import AttributeCatalog, Dataset

XRAY_ATTRIBUTES = (
    "BCC",
    "Beam off image",
    "Circular beamstop",
    "Diffuse low-q",
    "Diffuse high-q",
    "FCC",
    "Halo",
    "High background",
    "Higher order",
    "Linear beamstop",
    "Many rings",
    "Polycrystalline",
    "Ring",
    "Strong scattering",
    "Structure factor",
    "Weak scattering",
    "Wedge beamstop",
)

MANY_RINGS = XRAY_ATTRIBUTES.index("Many rings")
RING = XRAY_ATTRIBUTES.index("Ring")
STRONG = XRAY_ATTRIBUTES.index("Strong scattering")


def build_dataset(act, prd, fea=None, names=None, ids=None, name="fixture", seed=7) -> Dataset:
    act = np.asarray(act, dtype=np.uint8)
    n, a = act.shape
    if names is None:
        names = tuple(f"attr{i}" for i in range(a))
    if ids is None:
        ids = [f"img{i}" for i in range(n)]
    if fea is None:
        fea = np.random.default_rng(seed).standard_normal((n, 8))
    return Dataset(
        catalog=AttributeCatalog(tuple(names)),
        ids=list(ids),
        act=act,
        prd=np.asarray(prd, dtype=np.float64),
        fea=np.asarray(fea, dtype=np.float64),
        name=name,
    )


def prd_from_decisions(decisions, positive=0.9, negative=0.1) -> np.ndarray:
    decisions = np.asarray(decisions)
    return np.where(decisions == 1, positive, negative)


@pytest.fixture
def tiny_dataset() -> Dataset:
    """4 images x 3 attributes with one error per image pattern."""
    act = [
        [1, 0, 1],
        [1, 1, 0],
        [0, 1, 1],
        [0, 0, 0],
    ]
    dec = [
        [1, 0, 1],  # fully correct
        [1, 0, 0],  # attr1 FN
        [1, 1, 1],  # attr0 FP
        [0, 0, 1],  # attr2 FP
    ]
    return build_dataset(act, prd_from_decisions(dec), names=("A0", "A1", "A2"))


def build_rings_dataset() -> Dataset:
    """Synthetic dataset engineered around three co-existing ring attributes.

    The 54 images carrying all of {Many rings, Ring, Strong scattering}
    split into correctness patterns 34 all-correct / 5 all-wrong /
    6 only-many-rings-wrong / 3 only-strong-wrong / 2 only-ring-wrong /
    4 many-rings-correct-only, plus 20 unrelated images.
    """
    a = len(XRAY_ATTRIBUTES)
    rows_act = []
    rows_dec = []

    def add(count, correct_flags):
        for _ in range(count):
            act = np.zeros(a, dtype=np.uint8)
            act[[MANY_RINGS, RING, STRONG]] = 1
            dec = np.zeros(a, dtype=np.uint8)
            for attr, ok in zip((MANY_RINGS, RING, STRONG), correct_flags):
                dec[attr] = 1 if ok else 0
            rows_act.append(act)
            rows_dec.append(dec)

    add(34, (True, True, True))
    add(5, (False, False, False))
    add(6, (False, True, True))
    add(3, (True, True, False))
    add(2, (True, False, True))
    add(4, (True, False, False))

    halo = XRAY_ATTRIBUTES.index("Halo")
    rng = np.random.default_rng(20)
    for i in range(20):
        act = np.zeros(a, dtype=np.uint8)
        # never all three of the ring set, so the universe stays at 54
        act[halo] = 1
        act[RING] = i % 2
        act[STRONG] = (i // 2) % 2
        dec = act.copy()
        if i % 5 == 0:
            dec[halo] = 1 - dec[halo]
        rows_act.append(act)
        rows_dec.append(dec)

    act = np.array(rows_act, dtype=np.uint8)
    dec = np.array(rows_dec, dtype=np.uint8)
    fea = rng.standard_normal((len(act), 16))
    return build_dataset(act, prd_from_decisions(dec), fea=fea, names=XRAY_ATTRIBUTES, name="rings")


def build_bcc_dataset() -> Dataset:
    """247 images where one attribute is always wrong and another always TN."""
    a = len(XRAY_ATTRIBUTES)
    bcc = XRAY_ATTRIBUTES.index("BCC")
    n = 247
    act = np.zeros((n, a), dtype=np.uint8)
    dec = np.zeros((n, a), dtype=np.uint8)
    act[:150, bcc] = 1  # false negatives
    dec[150:, bcc] = 1  # false positives
    ring = XRAY_ATTRIBUTES.index("Ring")
    act[:, ring] = 1
    dec[:, ring] = 1
    fea = np.random.default_rng(33).standard_normal((n, 12))
    return build_dataset(act, prd_from_decisions(dec), fea=fea, names=XRAY_ATTRIBUTES, name="bcc")


@pytest.fixture
def rings_dataset() -> Dataset:
    return build_rings_dataset()


@pytest.fixture
def bcc_dataset() -> Dataset:
    return build_bcc_dataset()
