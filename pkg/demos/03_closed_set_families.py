"""
Four families of closed sets and where they sit
===============================================

Between the point closures S_c and the irreducible closed sets Irr of
a T0 space sit two more families: KF (closed sets that are minimal
among those meeting every member of some filtered family of compact
saturated sets) and WD (determined by a two-sided squeeze).  All four
are sandwiched S_c <= KF, WD <= Irr, and each has a checked
constructor here.
"""

from orderlab import (
    SIERPINSKI,
    VEE,
    ContinuousMap,
    FilteredFamily,
    discrete,
    irr_family,
    kf_family,
    minimal_closed_meeting,
    pushforward_family,
    rudin_refine,
    sc_family,
    scott_space,
    wd_status,
    xizhao_model,
)


def names(space, mask):
    inside = ",".join(space.labels[i] for i in range(space.n) if mask >> i & 1)
    return "{" + inside + "}"


# On the Scott space of the vee pair model the families are computed
# from their definitions (irreducibility scans, minimality filters,
# squeeze bounds) and each carries its role tag.
sigma = scott_space(xizhao_model(VEE).poset)
for fam in (sc_family(sigma), kf_family(sigma), irr_family(sigma)):
    print(f"{fam.role:4s}", [names(sigma, m) for m in fam.members])

# WD comes back as an explicit status: on a finite T0 space the squeeze
# always closes, so the status is determined and carries the value;
# the lower and upper bounds are reported either way.
status = wd_status(sigma)
print("WD status:", status.status, "value:", [names(sigma, m) for m in status.value])

# Every family has a proper (whole-carrier-dropping) variant.  On the
# two-point space with one nontrivial open the whole carrier is itself
# irreducible, so the starred family is strictly smaller.
print("Irr  on 2pt:", [names(SIERPINSKI, m) for m in irr_family(SIERPINSKI).members])
print("Irr* on 2pt:", [names(SIERPINSKI, m) for m in irr_family(SIERPINSKI).starred().members])

# The KF ingredients are available directly.  A filtered family of
# compact saturated sets is validated on construction; the closed sets
# minimal among those meeting all its members are then computed by the
# definitional scan over the whole closed-set lattice.
fam = FilteredFamily(SIERPINSKI, (0b11, 0b10))
meeting = minimal_closed_meeting(SIERPINSKI, fam)
print("minimal closed sets meeting the filter:", [names(SIERPINSKI, m) for m in meeting])

# Refinement: inside a closed set that meets every member of the
# family there is a smaller closed set that still does and is minimal
# with that property.
refined = rudin_refine(SIERPINSKI, fam, 0b11)
print("refined member:", names(SIERPINSKI, refined))

# Families push forward along continuous maps: the closure of the
# image of a member is again a member of the same-kind family of the
# target.  Map the discrete two-point space onto the top of the
# two-point space with one nontrivial open, and push each kind.
f = ContinuousMap(discrete(2), SIERPINSKI, (1, 1))
for kind in ("Sc", "Irr", "KF", "WD"):
    image = pushforward_family(f, 0b01, kind)
    print(f"pushforward {kind:3s}: {names(discrete(2), 0b01)} -> {names(SIERPINSKI, image)}")
