"""Closed-set families between point closures and irreducible closed sets.

Three families drive the classifiers: the point closures, the sets
obtainable as minimal closed sets meeting every member of a filtered
compact-saturated family, and the irreducible closed sets.  The
image-closure family sits between the middle one and the irreducible
family; it is never evaluated from its definition (which quantifies over
all continuous maps into well-filtered spaces) but squeezed: when the
bounds coincide the family is DETERMINED, otherwise an explicit BRACKET
is reported and nothing more is claimed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import bits
from .errors import (
    CheckFailed,
    InvalidFamily,
    KindNotDetermined,
    PreconditionViolated,
)
from .spaces import (
    ContinuousMap,
    FinSpace,
    compact_saturated_sets,
    irreducible_closed_sets,
    point_closures,
)


@dataclass(frozen=True)
class ClosedFamily:
    space: FinSpace
    members: tuple[int, ...]
    role: str

    def starred(self) -> "ClosedFamily":
        """Drop the whole carrier from the family (the proper version)."""
        full = self.space.full_mask
        return ClosedFamily(
            self.space,
            tuple(m for m in self.members if m != full),
            self.role + "*",
        )


@dataclass(frozen=True)
class FilteredFamily:
    """Nonempty family of compact saturated sets, filtered under inclusion."""

    space: FinSpace
    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members:
            raise InvalidFamily("family is empty")
        qx = set(compact_saturated_sets(self.space))
        for m in self.members:
            if m not in qx:
                raise InvalidFamily(
                    "member is not a nonempty compact saturated set",
                    self.space.labels_of_mask(m),
                )
        for a in self.members:
            for b in self.members:
                if not any(
                    bits.is_subset(c, a) and bits.is_subset(c, b)
                    for c in self.members
                ):
                    raise InvalidFamily(
                        "family is not filtered",
                        (self.space.labels_of_mask(a), self.space.labels_of_mask(b)),
                    )

    def least_member(self) -> int:
        for m in self.members:
            if all(bits.is_subset(m, other) for other in self.members):
                return m
        raise CheckFailed("finite filtered family has no least member", self.members)


@dataclass(frozen=True)
class WdStatus:
    status: str
    value: tuple[int, ...] | None
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    how: str

    @property
    def determined(self) -> bool:
        return self.status == "DETERMINED"

    def starred(self, space: FinSpace) -> "WdStatus":
        full = space.full_mask
        drop = lambda fam: tuple(m for m in fam if m != full)
        return WdStatus(
            self.status,
            drop(self.value) if self.value is not None else None,
            drop(self.lower),
            drop(self.upper),
            self.how,
        )


def _meeting_all(space: FinSpace, members) -> list[int]:
    """Closed sets meeting every member of a family (definitional scan)."""
    out = []
    for c in space.closed:
        if c and all(c & k for k in members):
            out.append(c)
    return out


def minimal_closed_meeting(space: FinSpace, family: FilteredFamily) -> tuple[int, ...]:
    """Minimal closed sets meeting every member of a filtered family.

    Two routes are computed and compared: the definitional scan over the
    whole closed family, and the reduction to the least member (a
    singleton family is cofinal in any finite filtered family).
    """
    full = bits.minimal_members(_meeting_all(space, family.members))
    least = family.least_member()
    reduced = bits.minimal_members(_meeting_all(space, (least,)))
    if full != reduced:
        raise CheckFailed("least-member reduction disagrees with the full scan")
    return full


def _m_single_fast(space: FinSpace, k_mask: int) -> tuple[int, ...]:
    """Minimal closed sets meeting one up-set K, by the point-closure law.

    Any closed set meeting K at a point contains that point's closure,
    which still meets K; so the minimal ones are minimal point closures
    of minimal points of K.  This relies only on the validated law that
    closed sets are specialization down-sets.
    """
    candidates = []
    for x in bits.indices_of(k_mask):
        if space.spec_down[x] & k_mask == 1 << x:
            candidates.append(space.spec_down[x])
    return bits.minimal_members(candidates)


def rudin_refine(space: FinSpace, family: FilteredFamily, c_mask: int) -> int:
    """Shrink a closed set meeting every member to a minimal such subset.

    Greedy descent through the closed family in canonical order.  The
    result is verified irreducible and a member of the minimal family.
    """
    if c_mask not in space.closed_set:
        raise InvalidFamily("refinement start is not closed",
                            space.labels_of_mask(c_mask))
    if not all(c_mask & k for k in family.members):
        raise InvalidFamily("refinement start misses a family member")
    current = c_mask
    while True:
        step = None
        for c in space.closed:
            if c != current and bits.is_subset(c, current) and c and all(
                c & k for k in family.members
            ):
                step = c
                break
        if step is None:
            break
        current = step
    if current not in set(minimal_closed_meeting(space, family)):
        raise CheckFailed("refined set is not minimal-meeting", current)
    if current not in set(irreducible_closed_sets(space)):
        raise CheckFailed("refined set is not irreducible", current)
    return current


@lru_cache(maxsize=4096)
def kf_sets(space: FinSpace) -> tuple[int, ...]:
    """Closed sets arising as minimal sets meeting a filtered family.

    The production scan runs over single compact saturated sets (the
    least-member reduction makes that exhaustive); a definitional sample
    and a bounded two-member scan are run alongside and must agree.  The
    point-closure/irreducible sandwich is asserted on the result.
    """
    qx = compact_saturated_sets(space)
    out: set[int] = set()
    per_k: dict[int, tuple[int, ...]] = {}
    for k in qx:
        m = _m_single_fast(space, k)
        per_k[k] = m
        out.update(m)
    sample = qx if len(qx) * len(space.closed) <= 20_000 else qx[:24] + qx[-24:]
    for k in sample:
        definitional = bits.minimal_members(_meeting_all(space, (k,)))
        if definitional != per_k[k]:
            raise CheckFailed("single-set scan disagrees with definition", k)
    pairs = []
    for i, big in enumerate(qx):
        for small in qx[i:]:
            if small != big and bits.is_subset(small, big):
                pairs.append((big, small))
            if len(pairs) >= 64:
                break
        if len(pairs) >= 64:
            break
    for big, small in pairs:
        fam = FilteredFamily(space, (big, small))
        two = bits.minimal_members(_meeting_all(space, fam.members))
        if two != per_k[small]:
            raise CheckFailed("two-member scan disagrees with least member")
        if not set(two) <= out:
            raise CheckFailed("two-member scan escaped the single-set scan")
    result = bits.canon(out)
    sc = set(point_closures(space))
    irr = set(irreducible_closed_sets(space))
    if not sc <= set(result) <= irr:
        raise CheckFailed("family sandwich violated by the meeting family")
    return result


@lru_cache(maxsize=4096)
def wd_status(space: FinSpace) -> WdStatus:
    """Squeeze the image-closure family between its proven bounds.

    DETERMINED when the meeting family equals the irreducible family
    (squeeze from above) or the point closures (the well-filtered
    collapse); otherwise an honest BRACKET of both bounds.
    """
    kf = kf_sets(space)
    irr = irreducible_closed_sets(space)
    sc = point_closures(space)
    if kf == irr:
        return WdStatus("DETERMINED", irr, kf, irr, "squeeze: meeting family equals irreducible family")
    if kf == sc:
        return WdStatus("DETERMINED", sc, kf, irr, "well-filtered collapse: meeting family equals point closures")
    return WdStatus("BRACKET", None, kf, irr, "bounds do not meet")


def sc_family(space: FinSpace) -> ClosedFamily:
    return ClosedFamily(space, point_closures(space), "Sc")


def irr_family(space: FinSpace) -> ClosedFamily:
    return ClosedFamily(space, irreducible_closed_sets(space), "Irr")


def kf_family(space: FinSpace) -> ClosedFamily:
    return ClosedFamily(space, kf_sets(space), "KF")


def pushforward_family(f: ContinuousMap, a_mask: int, kind: str) -> int:
    """Closure of the image of a family member, verified to stay in kind.

    For the image-closure kind both endpoint families must be DETERMINED;
    otherwise the membership question is refused rather than guessed.
    """
    src, tgt = f.source, f.target
    def members(space):
        if kind == "Sc":
            return point_closures(space)
        if kind == "Irr":
            return irreducible_closed_sets(space)
        if kind == "KF":
            return kf_sets(space)
        if kind == "WD":
            st = wd_status(space)
            if not st.determined:
                raise KindNotDetermined(
                    "image-closure family is undetermined on " + ",".join(space.labels)
                )
            return st.value
        raise PreconditionViolated(f"unknown family kind {kind!r}")

    if a_mask not in set(members(src)):
        raise PreconditionViolated("set is not a member of the source family")
    image_closure = tgt.closure(f.image(a_mask))
    if image_closure not in set(members(tgt)):
        raise CheckFailed("pushforward left the family", image_closure)
    return image_closure
