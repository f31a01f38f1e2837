"""Finite partial orders over an indexed carrier, with exact bitmask relations.

A `FinPoset` stores, for each element index i, the mask `up[i]` of every j
with i <= j.  Input relations are given as generating pairs (Hasse-style or
arbitrary); `validate_poset` takes the reflexive-transitive closure and
rejects antisymmetry violations with a witness pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import bits
from .errors import (
    AntisymmetryViolation,
    BudgetExceeded,
    CheckFailed,
    DuplicateLabel,
    UnknownLabel,
)


@dataclass(frozen=True)
class FinPoset:
    labels: tuple[str, ...]
    up: tuple[int, ...]

    def __post_init__(self):
        bits.check_carrier(len(self.labels))
        n = len(self.labels)
        full = (1 << n) - 1
        for i in range(n):
            u = self.up[i]
            if u & ~full or not u >> i & 1:
                raise CheckFailed("up-mask not reflexive or out of range", i)
            for j in bits.indices_of(u):
                if self.up[j] & ~u:
                    raise CheckFailed("relation not transitive", (i, j))
                if i != j and self.up[j] >> i & 1:
                    raise CheckFailed("relation not antisymmetric", (i, j))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def down(self) -> tuple[int, ...]:
        d = [0] * self.n
        for i in range(self.n):
            for j in bits.indices_of(self.up[i]):
                d[j] |= 1 << i
        return tuple(d)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def mask_of_labels(self, labels) -> int:
        return bits.mask_of(self.index(l) for l in labels)

    def labels_of_mask(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits.indices_of(mask))

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits.indices_of(mask):
            out |= self.up[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits.indices_of(mask):
            out |= self.down[i]
        return out

    def is_up_set(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def is_down_set(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs (i, j): i < j with nothing strictly between."""
        out = []
        for i in range(self.n):
            strict_up = self.up[i] & ~(1 << i)
            for j in bits.indices_of(strict_up):
                between = strict_up & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return tuple(out)


def validate_poset(labels, pairs) -> FinPoset:
    """Build a poset from labels and generating <=-pairs.

    The relation is closed reflexively and transitively; duplicate labels,
    unknown labels in pairs, and antisymmetry violations are rejected with
    witnesses.
    """
    labels = tuple(labels)
    seen = set()
    for l in labels:
        if l in seen:
            raise DuplicateLabel(l)
        seen.add(l)
    bits.check_carrier(len(labels))
    index = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    up = [1 << i for i in range(n)]
    for a, b in pairs:
        if a not in index:
            raise UnknownLabel(a)
        if b not in index:
            raise UnknownLabel(b)
        up[index[a]] |= 1 << index[b]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            merged = up[i]
            for j in bits.indices_of(up[i]):
                merged |= up[j]
            if merged != up[i]:
                up[i] = merged
                changed = True
    for i in range(n):
        for j in bits.indices_of(up[i]):
            if i != j and up[j] >> i & 1:
                raise AntisymmetryViolation(labels[i], labels[j])
    return FinPoset(labels, tuple(up))


def upper_bounds(poset: FinPoset, mask: int) -> int:
    ubs = poset.full_mask
    for i in bits.indices_of(mask):
        ubs &= poset.up[i]
    return ubs


def supremum(poset: FinPoset, mask: int):
    """Least upper bound index of a subset, or None if it does not exist.

    The supremum of the empty set is the least element (when present).
    """
    ubs = upper_bounds(poset, mask)
    for u in bits.indices_of(ubs):
        if bits.is_subset(ubs, poset.up[u]):
            return u
    return None


def maximal_elements(poset: FinPoset) -> int:
    m = 0
    for i in range(poset.n):
        if poset.up[i] == 1 << i:
            m |= 1 << i
    return m


def minimal_elements(poset: FinPoset) -> int:
    m = 0
    for i in range(poset.n):
        if poset.down[i] == 1 << i:
            m |= 1 << i
    return m


def is_bounded_complete(poset: FinPoset):
    """Exhaustively check that every subset with an upper bound has a supremum.

    The empty subset is included: it is bounded whenever the poset is
    nonempty, so a bottom element is required.  Returns (verdict, witness)
    where the witness is the canonically-first bounded subset without a
    supremum.
    """
    failures = []
    for s in range(1 << poset.n):
        if upper_bounds(poset, s) and supremum(poset, s) is None:
            failures.append(s)
    if failures:
        return False, min(failures, key=bits.subset_key)
    return True, None


def bounded_complete_oracle(poset: FinPoset):
    """Independent brute-force path for `is_bounded_complete`.

    Scans all subsets, collecting upper bounds by per-element comparison
    loops and testing least-ness pairwise rather than via mask inclusion.
    """
    elements = list(range(poset.n))
    failures = []
    for s in range(1 << poset.n):
        members = [i for i in elements if s >> i & 1]
        ubs = [u for u in elements if all(poset.leq(i, u) for i in members)]
        if not ubs:
            continue
        least = [u for u in ubs if all(poset.leq(u, v) for v in ubs)]
        if not least:
            failures.append(s)
    if failures:
        return False, min(failures, key=bits.subset_key)
    return True, None


def is_directed(poset: FinPoset, mask: int) -> bool:
    """Nonempty, and every pair of members has an upper bound in the set."""
    if not mask:
        return False
    members = bits.indices_of(mask)
    for a in members:
        for b in members:
            if not upper_bounds(poset, (1 << a) | (1 << b)) & mask:
                return False
    return True


def directed_subsets(poset: FinPoset) -> tuple[tuple[int, int], ...]:
    """All directed subsets with their supremum indices.

    A nonempty subset of a finite poset is directed exactly when it has a
    greatest element, so the enumeration runs over (m, S) with S inside the
    strict down-set of m.  Suprema are still computed by the definitional
    least-upper-bound routine and checked against the greatest element.
    """
    out = []
    for m in range(poset.n):
        below = poset.down[m] & ~(1 << m)
        sub = below
        while True:
            d = sub | (1 << m)
            s = supremum(poset, d)
            if s != m:
                raise CheckFailed("directed set supremum differs from maximum", d)
            out.append((d, s))
            if sub == 0:
                break
            sub = (sub - 1) & below
    return tuple(out)


def compact_elements(poset: FinPoset) -> int:
    """Definitional compact elements: k with k << k (way below itself)."""
    directed = directed_subsets(poset)
    mask = 0
    for k in range(poset.n):
        if all(d & poset.up[k] for d, s in directed if poset.leq(k, s)):
            mask |= 1 << k
    return mask


def is_algebraic_and_dcpo(poset: FinPoset) -> bool:
    """Definitional check: directed-complete and algebraic.

    Every directed subset must have a supremum, and every element must be
    the supremum of its (directed) set of compact elements below it.  On
    finite posets both always hold; the value is computed, not assumed.
    """
    if poset.n > 16:
        raise BudgetExceeded("algebraicity scan limited to 16 elements")
    directed = []
    for s in range(1, 1 << poset.n):
        if is_directed(poset, s):
            if supremum(poset, s) is None:
                return False
            directed.append((s, supremum(poset, s)))
    compact = 0
    for k in range(poset.n):
        if all(d & poset.up[k] for d, sup in directed if poset.leq(k, sup)):
            compact |= 1 << k
    for x in range(poset.n):
        kx = compact & poset.down[x]
        if not is_directed(poset, kx) or supremum(poset, kx) != x:
            return False
    return True


def linear_extension(poset: FinPoset) -> tuple[int, ...]:
    remaining = set(range(poset.n))
    order = []
    while remaining:
        pick = min(
            i for i in remaining if all(j == i or j not in remaining
                                        for j in bits.indices_of(poset.down[i]))
        )
        order.append(pick)
        remaining.remove(pick)
    return tuple(order)


def down_sets(poset: FinPoset) -> tuple[int, ...]:
    """All order ideals (down-closed subsets), including the empty set."""
    ideals = [0]
    for x in linear_extension(poset):
        need = poset.down[x] & ~(1 << x)
        grown = [i | (1 << x) for i in ideals if bits.is_subset(need, i)]
        ideals.extend(grown)
    return bits.canon(ideals)


def up_sets(poset: FinPoset) -> tuple[int, ...]:
    full = poset.full_mask
    return bits.canon(full & ~d for d in down_sets(poset))


def induced_subposet(poset: FinPoset, mask: int) -> tuple[FinPoset, tuple[int, ...]]:
    """Subposet on the masked elements; returns it plus the index embedding."""
    keep = bits.indices_of(mask)
    pos = {old: new for new, old in enumerate(keep)}
    labels = tuple(poset.labels[i] for i in keep)
    up = []
    for old in keep:
        m = 0
        for j in bits.indices_of(poset.up[old] & mask):
            m |= 1 << pos[j]
        up.append(m)
    return FinPoset(labels, tuple(up)), keep
