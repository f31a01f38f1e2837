"""Scott topology of a finite poset, computed along two routes.

The definitional route filters candidate upper sets by the inaccessibility
law (every directed set whose supremum lands in the candidate must meet
it); the structural route takes all upper sets.  On finite posets these
coincide and the constructor insists on it.
"""

from __future__ import annotations

import numpy as np

from . import bits
from .errors import CheckFailed
from .posets import FinPoset, directed_subsets, maximal_elements, up_sets
from .spaces import FinSpace, make_space, subspace


def scott_space(poset: FinPoset) -> FinSpace:
    """Scott space of a poset, dual-path checked.

    Suprema of directed sets are computed by the definitional least-upper-
    bound routine inside `directed_subsets`, never read off as maxima.
    """
    candidates = up_sets(poset)
    directed = directed_subsets(poset)
    if directed:
        d_arr = bits.family_array([d for d, _ in directed])
        s_arr = bits.family_array([1 << s for _, s in directed])
    else:
        d_arr = s_arr = bits.family_array([])
    definitional = []
    for u in candidates:
        uu = np.uint64(u)
        sup_inside = (s_arr & uu) != np.uint64(0)
        meets = (d_arr & uu) != np.uint64(0)
        if not (sup_inside & ~meets).any():
            definitional.append(u)
    if tuple(definitional) != candidates:
        raise CheckFailed("definitional Scott opens differ from upper sets")
    space = make_space(poset.labels, candidates)
    if space.spec_up != poset.up:
        raise CheckFailed("Scott specialization differs from the input order")
    return space


def max_point_space(poset: FinPoset):
    """Maximal points with the relative Scott topology, plus the inclusion.

    For a finite poset this subspace is discrete; that consequence is
    asserted rather than assumed.
    """
    space = scott_space(poset)
    max_mask = maximal_elements(poset)
    sub, incl = subspace(space, max_mask)
    if len(sub.opens) != 1 << sub.n:
        raise CheckFailed("maximal-point subspace is not discrete")
    return sub, incl
