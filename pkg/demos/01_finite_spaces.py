"""
Finite spaces with validated open families
==========================================

A finite space is stored as a tuple of point labels plus a tuple of
open sets encoded as bit masks.  Construction validates the whole
topology axiomatically — empty and full set present, closure under
union and intersection — so everything downstream can trust the open
family instead of re-checking it.
"""

from orderlab import (
    SIERPINSKI,
    ContinuousMap,
    compact_saturated_sets,
    irreducible_closed_sets,
    is_sober,
    make_space,
    point_closures,
)


def names(space, mask):
    """Render a point-set bit mask using the space's labels."""
    inside = ",".join(space.labels[i] for i in range(space.n) if mask >> i & 1)
    return "{" + inside + "}"


# Build the two-point space whose only nontrivial open is the singleton
# {top}.  Masks: bit 0 is "bot", bit 1 is "top", so opens are
# 0b00 (empty), 0b10 ({top}), 0b11 (everything).
sierp = make_space(("bot", "top"), (0b00, 0b10, 0b11))
assert sierp.opens == SIERPINSKI.opens  # same topology ships as a fixture
print("opens:", [names(sierp, m) for m in sierp.opens])
print("closed:", [names(sierp, m) for m in sierp.closed])

# Closure and saturation are computed from the validated families.
# The closure of {top} adds bot's limit behaviour; the saturation of
# {bot} (intersection of its open neighbourhoods) is the whole space,
# because the only open set containing bot is the full carrier.
print("closure({top}) =", names(sierp, sierp.closure(0b10)))
print("saturation({bot}) =", names(sierp, sierp.saturation(0b01)))

# The specialization order reads off the closures: bot lies below top
# exactly when bot is in the closure of {top}.
print("spec_down:", [names(sierp, m) for m in sierp.spec_down])

# Point closures and irreducible closed sets coincide here — every
# irreducible closed set has a generic point, so the space is sober,
# and the checker returns the witness map from irreducible sets to
# their generic points.
print("point closures:", [names(sierp, m) for m in point_closures(sierp)])
print("irreducible closed:", [names(sierp, m) for m in irreducible_closed_sets(sierp)])
sober, witness = is_sober(sierp)
print("sober:", sober, "generic points:", witness)

# A two-point indiscrete carrier is not T0: its one nontrivial closed
# set is irreducible but has two generic points, and the checker
# reports the offending set instead of a witness map.
indiscrete = make_space(("x", "y"), (0b00, 0b11))
sober, offending = is_sober(indiscrete)
print("indiscrete sober:", sober, "offending set:", names(indiscrete, offending))

# Compact saturated sets: in a finite space every subset is compact,
# so these are exactly the saturated ones (intersections of opens).
print("compact saturated:", [names(sierp, m) for m in compact_saturated_sets(sierp)])

# Maps are validated on construction: every open of the target must
# pull back to an open of the source.  The identity passes; the swap
# map on this space does not (the pullback of {top} would be {bot},
# which is not open), so constructing it raises.
identity = ContinuousMap(sierp, sierp, (0, 1))
print("identity continuous, graph:", identity.graph)
try:
    ContinuousMap(sierp, sierp, (1, 0))
except Exception as err:  # noqa: BLE001 - demo surface
    print("swap map rejected:", type(err).__name__)
