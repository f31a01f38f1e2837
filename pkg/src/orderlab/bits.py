"""Bitmask subsets and small vectorized family algebra.

A subset of an indexed carrier is a Python int with bit i set for element i.
A family is a tuple of such masks in canonical order: sorted by cardinality,
then lexicographically by the sorted index tuple.  The quadratic family
scans are backed by numpy uint64 views, so carriers are capped at 60 bits
(far above the sizes this workbench targets).
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded

MAX_CARRIER = 60


def check_carrier(n: int) -> None:
    if n > MAX_CARRIER:
        raise BudgetExceeded(f"carrier of size {n} exceeds the {MAX_CARRIER}-bit cap")


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def subset_key(mask: int):
    """Canonical sort key: cardinality, then sorted index tuple."""
    return (mask.bit_count(), indices_of(mask))


def canon(family) -> tuple[int, ...]:
    """Deduplicate and order a family canonically."""
    return tuple(sorted(set(family), key=subset_key))


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def family_array(family) -> np.ndarray:
    return np.array(family, dtype=np.uint64)


def minimal_members(family) -> tuple[int, ...]:
    """Inclusion-minimal members of a family of masks."""
    ordered = sorted(set(family), key=subset_key)
    mins: list[int] = []
    for m in ordered:
        if not any(is_subset(k, m) for k in mins):
            mins.append(m)
    return canon(mins)


def maximal_members(family) -> tuple[int, ...]:
    ordered = sorted(set(family), key=subset_key, reverse=True)
    maxs: list[int] = []
    for m in ordered:
        if not any(is_subset(m, k) for k in maxs):
            maxs.append(m)
    return canon(maxs)


def closure_rows(masks: np.ndarray, point_down: np.ndarray) -> np.ndarray:
    """Vectorized down-closure: row-wise OR of point_down[i] over set bits.

    masks: uint64 array of subsets; point_down: uint64 array, entry i is the
    down-mask of point i.  Returns the closure of each row.
    """
    out = np.zeros_like(masks)
    for i in range(len(point_down)):
        has = (masks >> np.uint64(i)) & np.uint64(1)
        out |= np.where(has.astype(bool), point_down[i], np.uint64(0))
    return out


def subset_rows(rows: np.ndarray, mask: int) -> np.ndarray:
    """Boolean vector: which rows are subsets of mask."""
    m = np.uint64(mask)
    return (rows & ~m) == np.uint64(0)


def meets_rows(rows: np.ndarray, mask: int) -> np.ndarray:
    """Boolean vector: which rows intersect mask."""
    return (rows & np.uint64(mask)) != np.uint64(0)
