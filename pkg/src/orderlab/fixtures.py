"""Named small instances used across the checks, demos, and tests."""

from __future__ import annotations

from .posets import FinPoset, validate_poset
from .spaces import FinSpace, make_space

#: Two-element chain a < b.
CHAIN2: FinPoset = validate_poset(("a", "b"), (("a", "b"),))

#: One bottom below two incomparable maximal points.
VEE: FinPoset = validate_poset(("a", "b", "c"), (("a", "b"), ("a", "c")))

#: Four-element lattice with two incomparable middle elements.
DIAMOND: FinPoset = validate_poset(
    ("bot", "m1", "m2", "top"),
    (("bot", "m1"), ("bot", "m2"), ("m1", "top"), ("m2", "top")),
)

#: Two points, one open point; the smallest sober non-T1 space.
SIERPINSKI: FinSpace = make_space(("0", "1"), (0, 2, 3))

FIXTURE_POSETS: dict[str, FinPoset] = {
    "CHAIN2": CHAIN2,
    "VEE": VEE,
    "DIAMOND": DIAMOND,
}


def discrete(n: int) -> FinSpace:
    """Discrete space on points p0..p(n-1)."""
    labels = tuple(f"p{i}" for i in range(n))
    return make_space(labels, tuple(range(1 << n)))
