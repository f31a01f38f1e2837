"""Finite topological spaces with explicit open families.

A `FinSpace` stores every open set as a bitmask.  Construction validates the
closure laws (binary union, binary intersection, empty and full member) and
then asserts the Alexandrov law: the open family coincides with the family
of all up-sets of its own specialization preorder.  That law is what makes
the fast closure/saturation paths exact; the definitional paths stay
available and are cross-checked by the oracle harness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import bits
from .errors import (
    BudgetExceeded,
    CheckFailed,
    DuplicateLabel,
    FamilyNotIrreducible,
    MissingEmptyOrFull,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    NotT0,
    UnknownLabel,
)
from .posets import FinPoset, down_sets as poset_down_sets


@dataclass(frozen=True)
class FinSpace:
    labels: tuple[str, ...]
    opens: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def open_set(self) -> frozenset:
        return frozenset(self.opens)

    @cached_property
    def closed(self) -> tuple[int, ...]:
        full = self.full_mask
        return bits.canon(full & ~u for u in self.opens)

    @cached_property
    def closed_set(self) -> frozenset:
        return frozenset(self.closed)

    @cached_property
    def spec_down(self) -> tuple[int, ...]:
        """spec_down[x] = cl{x}; x <= y in specialization iff x in cl{y}."""
        out = []
        for x in range(self.n):
            acc = self.full_mask
            for c in self.closed:
                if c >> x & 1:
                    acc &= c
            out.append(acc)
        return tuple(out)

    @cached_property
    def spec_up(self) -> tuple[int, ...]:
        up = [0] * self.n
        for y in range(self.n):
            for x in bits.indices_of(self.spec_down[y]):
                up[x] |= 1 << y
        return tuple(up)

    @cached_property
    def t0_witness(self):
        """A pair of topologically indistinguishable points, or None."""
        seen = {}
        for x in range(self.n):
            key = self.spec_up[x]
            if key in seen:
                return (self.labels[seen[key]], self.labels[x])
            seen[key] = x
        return None

    @property
    def is_t0(self) -> bool:
        return self.t0_witness is None

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def mask_of_labels(self, labels) -> int:
        return bits.mask_of(self.index(l) for l in labels)

    def labels_of_mask(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits.indices_of(mask))

    def closure(self, mask: int) -> int:
        """Smallest closed superset (fast path via the Alexandrov law)."""
        out = 0
        for i in bits.indices_of(mask):
            out |= self.spec_down[i]
        return out

    def closure_definitional(self, mask: int) -> int:
        acc = self.full_mask
        for c in self.closed:
            if bits.is_subset(mask, c):
                acc &= c
        return acc

    def saturation(self, mask: int) -> int:
        """Intersection of all open supersets."""
        acc = self.full_mask
        for u in self.opens:
            if bits.is_subset(mask, u):
                acc &= u
        return acc


def _quotient_poset(spec_up: tuple[int, ...]) -> tuple[FinPoset, tuple[int, ...]]:
    """T0 quotient of a specialization preorder, plus each point's class mask."""
    reps: list[int] = []
    key_to_class: dict[int, int] = {}
    class_masks: list[int] = []
    for x, key in enumerate(spec_up):
        if key not in key_to_class:
            key_to_class[key] = len(reps)
            reps.append(x)
            class_masks.append(0)
        class_masks[key_to_class[key]] |= 1 << x
    k = len(reps)
    up = []
    for ci, rep in enumerate(reps):
        m = 0
        for cj, other in enumerate(reps):
            if spec_up[rep] >> other & 1:
                m |= 1 << cj
        up.append(m)
    quot = FinPoset(tuple(f"c{i}" for i in range(k)), tuple(up))
    return quot, tuple(class_masks)


def _preorder_up_sets(spec_up: tuple[int, ...]) -> tuple[int, ...]:
    """All up-closed subsets of a preorder, via its T0 quotient's ideals."""
    quot, class_masks = _quotient_poset(spec_up)
    full = (1 << quot.n) - 1
    out = []
    for ideal in poset_down_sets(quot):
        up_q = full & ~ideal
        m = 0
        for ci in bits.indices_of(up_q):
            m |= class_masks[ci]
        out.append(m)
    return bits.canon(out)


def _check_family_closure(labels, masks: tuple[int, ...]) -> None:
    n = len(labels)
    full = (1 << n) - 1
    fam = frozenset(masks)
    if 0 not in fam:
        raise MissingEmptyOrFull("empty")
    if full not in fam:
        raise MissingEmptyOrFull("full")
    arr = bits.family_array(masks)
    k = len(masks)
    if k <= 256:
        for a, b in itertools.combinations(masks, 2):
            if a | b not in fam:
                raise NotClosedUnderUnion(
                    tuple(labels[i] for i in bits.indices_of(a)),
                    tuple(labels[i] for i in bits.indices_of(b)),
                )
            if a & b not in fam:
                raise NotClosedUnderIntersection(
                    tuple(labels[i] for i in bits.indices_of(a)),
                    tuple(labels[i] for i in bits.indices_of(b)),
                )
    else:
        sorted_arr = np.sort(arr)
        for op, exc in (
            (np.bitwise_or, NotClosedUnderUnion),
            (np.bitwise_and, NotClosedUnderIntersection),
        ):
            prod = op(arr[:, None], arr[None, :])
            present = sorted_arr[
                np.minimum(np.searchsorted(sorted_arr, prod), len(sorted_arr) - 1)
            ] == prod
            if not present.all():
                i, j = np.argwhere(~present)[0]
                raise exc(
                    tuple(labels[x] for x in bits.indices_of(int(arr[i]))),
                    tuple(labels[x] for x in bits.indices_of(int(arr[j]))),
                )


def make_space(labels, opens) -> FinSpace:
    """Build a finite space from labels and opens (label lists or masks).

    Validates the closure laws, then asserts that the family equals the
    up-set family of its own specialization preorder (always a theorem for
    a validated family; checked anyway).
    """
    labels = tuple(labels)
    seen = set()
    for l in labels:
        if l in seen:
            raise DuplicateLabel(l)
        seen.add(l)
    bits.check_carrier(len(labels))
    index = {l: i for i, l in enumerate(labels)}
    masks = []
    for u in opens:
        if isinstance(u, int):
            masks.append(u)
        else:
            m = 0
            for l in u:
                if l not in index:
                    raise UnknownLabel(l)
                m |= 1 << index[l]
            masks.append(m)
    canon_masks = bits.canon(masks)
    _check_family_closure(labels, canon_masks)
    space = FinSpace(labels, canon_masks)
    if _preorder_up_sets(space.spec_up) != space.opens:
        raise CheckFailed("Alexandrov law: opens differ from specialization up-sets")
    for x in range(space.n):
        nbhd = space.full_mask
        for u in space.opens:
            if u >> x & 1:
                nbhd &= u
        if nbhd != space.spec_up[x]:
            raise CheckFailed("minimal neighborhood differs from up-set", x)
    return space


def specialization_order(space: FinSpace) -> FinPoset:
    """Specialization order of a T0 space (raises NotT0 with a witness pair)."""
    if not space.is_t0:
        raise NotT0(*space.t0_witness)
    return FinPoset(space.labels, space.spec_up)


def space_from_poset(poset: FinPoset) -> FinSpace:
    """Alexandrov space of a poset: opens are exactly the up-sets."""
    from .posets import up_sets

    space = make_space(poset.labels, up_sets(poset))
    if space.spec_up != poset.up:
        raise CheckFailed("specialization of up-set space differs from the poset")
    return space


@dataclass(frozen=True)
class ContinuousMap:
    source: FinSpace
    target: FinSpace
    graph: tuple[int, ...]

    def __post_init__(self):
        if len(self.graph) != self.source.n:
            raise CheckFailed("graph length mismatch")
        for w in self.target.opens:
            if self.preimage(w) not in self.source.open_set:
                raise CheckFailed(
                    "map not continuous",
                    (self.graph, self.target.labels_of_mask(w)),
                )

    def preimage(self, target_mask: int) -> int:
        m = 0
        for i, fi in enumerate(self.graph):
            if target_mask >> fi & 1:
                m |= 1 << i
        return m

    def image(self, source_mask: int) -> int:
        m = 0
        for i in bits.indices_of(source_mask):
            m |= 1 << self.graph[i]
        return m

    @property
    def image_mask(self) -> int:
        return self.image(self.source.full_mask)

    def compose(self, other: "ContinuousMap") -> "ContinuousMap":
        """self after other (other's target must be self's source)."""
        if other.target != self.source:
            raise CheckFailed("composition type mismatch")
        return ContinuousMap(
            other.source, self.target, tuple(self.graph[i] for i in other.graph)
        )


def is_injective(f: ContinuousMap) -> bool:
    return len(set(f.graph)) == len(f.graph)


def is_relatively_open(f: ContinuousMap) -> bool:
    """Image of every source open is open in the subspace image."""
    img = f.image_mask
    relative_opens = {w & img for w in f.target.opens}
    return all(f.image(u) in relative_opens for u in f.source.opens)


def is_embedding(f: ContinuousMap) -> bool:
    return is_injective(f) and is_relatively_open(f)


def is_homeomorphism(f: ContinuousMap) -> bool:
    if not is_injective(f) or f.image_mask != f.target.full_mask:
        return False
    inverse = [0] * f.target.n
    for i, fi in enumerate(f.graph):
        inverse[fi] = i
    try:
        ContinuousMap(f.target, f.source, tuple(inverse))
    except CheckFailed:
        return False
    return True


def continuous_maps(source: FinSpace, target: FinSpace, budget: int = 1_000_000):
    """All continuous maps, enumerated exhaustively.

    Candidates are prefiltered by specialization monotonicity (equivalent to
    continuity here by the validated Alexandrov law); every accepted map is
    still validated definitionally by `ContinuousMap`.
    """
    total = target.n ** source.n if source.n else 1
    if total > budget:
        raise BudgetExceeded(
            f"{total} candidate maps exceed the budget of {budget}"
        )
    out = []
    su, tu = source.spec_up, target.spec_up
    for graph in itertools.product(range(target.n), repeat=source.n):
        ok = True
        for x in range(source.n):
            fx_up = tu[graph[x]]
            for y in bits.indices_of(su[x]):
                if not fx_up >> graph[y] & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(ContinuousMap(source, target, graph))
    return tuple(out)


@lru_cache(maxsize=4096)
def point_closures(space: FinSpace) -> tuple[int, ...]:
    return bits.canon(space.spec_down)


@lru_cache(maxsize=4096)
def irreducible_closed_sets(space: FinSpace) -> tuple[int, ...]:
    """Nonempty closed sets not covered by two proper closed subsets.

    Definitional scan: A is reducible iff some closed B has A not inside B
    and A not inside cl(A \\ B); then A = (A n B) u (A n cl(A\\B)) splits it.
    The result is cross-checked against the point-closure family (finite
    spaces are sober, so the two must coincide).
    """
    closed = [c for c in space.closed if c]
    if not closed:
        return ()
    arr = bits.family_array(closed)
    down = bits.family_array(space.spec_down)
    out = []
    if len(closed) ** 2 <= 4_000_000:
        r_matrix = arr[:, None] & ~arr[None, :]
        cl_matrix = bits.closure_rows(r_matrix, down)
        not_in_b = r_matrix != np.uint64(0)
        not_in_cl = (arr[:, None] & ~cl_matrix) != np.uint64(0)
        reducible = (not_in_b & not_in_cl).any(axis=1)
        out = [c for c, red in zip(closed, reducible) if not red]
    else:
        for a in closed:
            r = np.uint64(a) & ~arr
            clr = bits.closure_rows(r, down)
            not_in_b = (np.uint64(a) & ~arr) != np.uint64(0)
            not_in_cl = (np.uint64(a) & ~clr) != np.uint64(0)
            if not (not_in_b & not_in_cl).any():
                out.append(a)
    result = bits.canon(out)
    if result != point_closures(space):
        raise CheckFailed("irreducible closed sets differ from point closures")
    return result


def _compact_definitional(space: FinSpace, mask: int) -> bool:
    """Dual-path compactness check for one subset.

    Always certifies via the minimal-neighborhood cover (every cover
    refines it, by the validated minimal-neighborhood law); additionally
    scans every open subfamily when the open family is small.
    """
    cover = [space.spec_up[x] for x in bits.indices_of(mask)]
    union = 0
    for u in cover:
        union |= u
    if not bits.is_subset(mask, union) or any(
        u not in space.open_set for u in cover
    ):
        return False
    if len(space.opens) <= 12:
        for r in range(1 << len(space.opens)):
            covered = 0
            chosen = [u for k, u in enumerate(space.opens) if r >> k & 1]
            for u in chosen:
                covered |= u
            if bits.is_subset(mask, covered):
                sub = []
                remaining = mask
                for u in chosen:
                    if remaining & u:
                        sub.append(u)
                        remaining &= ~u
                total = 0
                for u in sub:
                    total |= u
                if remaining or not bits.is_subset(mask, total):
                    return False
    return True


@lru_cache(maxsize=4096)
def compact_saturated_sets(space: FinSpace) -> tuple[int, ...]:
    """All nonempty compact saturated subsets (the empty set is excluded).

    Saturated candidates come from the up-set family of the specialization
    preorder; each is checked definitionally as an intersection of opens,
    and compactness runs through `_compact_definitional`.
    """
    out = []
    for s in _preorder_up_sets(space.spec_up):
        if not s:
            continue
        if space.saturation(s) != s:
            raise CheckFailed("up-set is not an intersection of opens", s)
        if not _compact_definitional(space, s):
            raise CheckFailed("finite subset failed the compactness check", s)
        out.append(s)
    return bits.canon(out)


def is_sober(space: FinSpace):
    """(verdict, evidence): every irreducible closed set has a unique generic point.

    Evidence is a tuple of (irreducible mask, generic point index) on
    success, or the offending closed set on failure.
    """
    assignment = []
    for a in irreducible_closed_sets(space):
        generics = [x for x in range(space.n) if space.spec_down[x] == a]
        if len(generics) != 1:
            return False, a
        assignment.append((a, generics[0]))
    return True, tuple(assignment)


def subspace(space: FinSpace, mask: int) -> tuple[FinSpace, ContinuousMap]:
    """Materialize the subspace on `mask` plus its inclusion map."""
    keep = bits.indices_of(mask)
    pos = {old: new for new, old in enumerate(keep)}
    labels = tuple(space.labels[i] for i in keep)
    rel = set()
    for u in space.opens:
        m = 0
        for old in bits.indices_of(u & mask):
            m |= 1 << pos[old]
        rel.add(m)
    sub = make_space(labels, tuple(rel))
    incl = ContinuousMap(sub, space, keep)
    return sub, incl


@dataclass(frozen=True)
class HyperSpace:
    """A lower-Vietoris hyperspace over a family of closed sets of a base."""

    space: FinSpace
    base: FinSpace
    members: tuple[int, ...]
    eta: tuple[int, ...] | None

    def member_index(self, base_mask: int) -> int:
        return self.members.index(base_mask)

    def diamond(self, base_mask: int) -> int:
        out = 0
        for i, m in enumerate(self.members):
            if m & base_mask:
                out |= 1 << i
        return out

    def box(self, base_mask: int) -> int:
        out = 0
        for i, m in enumerate(self.members):
            if bits.is_subset(m, base_mask):
                out |= 1 << i
        return out

    @property
    def eta_map(self) -> ContinuousMap:
        if self.eta is None:
            raise CheckFailed("eta undefined: family lacks the point closures")
        return ContinuousMap(self.base, self.space, self.eta)

    @property
    def eta_image_mask(self) -> int:
        return bits.mask_of(self.eta)


def _close_under(masks: set[int], op) -> tuple[int, ...]:
    family = bits.canon(masks)
    while True:
        arr = bits.family_array(family)
        prod = op(arr[:, None], arr[None, :]).ravel()
        merged = np.unique(np.concatenate([arr, prod]))
        if len(merged) == len(family):
            return family
        family = bits.canon(int(x) for x in merged)


def member_label(base: FinSpace, mask: int) -> str:
    return "{" + ",".join(base.labels[i] for i in bits.indices_of(mask)) + "}"


@lru_cache(maxsize=1024)
def ph_space(base: FinSpace, members: tuple[int, ...]) -> HyperSpace:
    """Lower-Vietoris space on a family of nonempty irreducible closed sets.

    The topology is generated from the diamond subbase and then verified:
    its closed sets must be exactly the boxed base-closed sets, and the
    specialization order must be inclusion of members.  When the family
    contains every point closure, the unit x -> cl{x} is attached and
    checked to be a topological and order embedding (for T0 bases).
    """
    members = bits.canon(members)
    irr = set(irreducible_closed_sets(base))
    for m in members:
        if m not in irr:
            raise FamilyNotIrreducible(base.labels_of_mask(m))
    k = len(members)
    bits.check_carrier(k)
    labels = tuple(member_label(base, m) for m in members)
    member_arr = bits.family_array(members)
    subbase = set()
    for u in base.opens:
        d = 0
        hits = (member_arr & np.uint64(u)) != np.uint64(0)
        for i in np.nonzero(hits)[0]:
            d |= 1 << int(i)
        subbase.add(d)
    subbase.add(0)
    subbase.add((1 << k) - 1)
    base_family = _close_under(subbase, np.bitwise_and)
    opens = _close_under(set(base_family), np.bitwise_or)
    space = make_space(labels, opens)
    expected_closed = set()
    for c in base.closed:
        box = 0
        inside = (member_arr & ~np.uint64(c)) == np.uint64(0)
        for i in np.nonzero(inside)[0]:
            box |= 1 << int(i)
        expected_closed.add(box)
    if bits.canon(expected_closed) != space.closed:
        raise CheckFailed("hyperspace closed sets differ from boxed base closeds")
    for i in range(k):
        for j in range(k):
            if bool(space.spec_up[i] >> j & 1) != bits.is_subset(members[i], members[j]):
                raise CheckFailed("hyperspace specialization is not inclusion", (i, j))
    eta = None
    if set(point_closures(base)) <= set(members):
        eta = tuple(members.index(base.spec_down[x]) for x in range(base.n))
        hyper = HyperSpace(space, base, members, eta)
        if base.is_t0:
            f = hyper.eta_map
            if not is_embedding(f):
                raise CheckFailed("unit map is not a topological embedding")
            for u in base.opens:
                if f.image(u) != hyper.diamond(u) & hyper.eta_image_mask:
                    raise CheckFailed("unit image law failed", u)
            for x in range(base.n):
                for y in range(base.n):
                    in_base = bool(base.spec_up[x] >> y & 1)
                    in_hyper = bool(space.spec_up[eta[x]] >> eta[y] & 1)
                    if in_base != in_hyper:
                        raise CheckFailed("unit order-embedding failed", (x, y))
        return hyper
    return HyperSpace(space, base, members, eta)
