"""Closed-set families: meeting sets, refinement, squeeze status, pushforward."""

import pytest

from orderlab.errors import InvalidFamily, PreconditionViolated
from orderlab.families import (
    FilteredFamily,
    WdStatus,
    irr_family,
    kf_family,
    kf_sets,
    minimal_closed_meeting,
    pushforward_family,
    rudin_refine,
    sc_family,
    wd_status,
)
from orderlab.fixtures import SIERPINSKI, VEE, discrete
from orderlab.scott import scott_space
from orderlab.spaces import (
    ContinuousMap,
    irreducible_closed_sets,
    point_closures,
)


def test_filtered_family_validation():
    d = discrete(2)
    with pytest.raises(InvalidFamily):
        FilteredFamily(d, ())
    with pytest.raises(InvalidFamily):
        FilteredFamily(SIERPINSKI, (1,))  # not saturated: 1 is a closed point
    with pytest.raises(InvalidFamily):
        FilteredFamily(d, (1, 2))  # two disjoint members, no lower bound
    fam = FilteredFamily(d, (3, 1))
    assert fam.least_member() == 1


def test_minimal_closed_meeting_frozen():
    fam = FilteredFamily(SIERPINSKI, (2,))
    assert minimal_closed_meeting(SIERPINSKI, fam) == (3,)
    d = discrete(2)
    assert minimal_closed_meeting(d, FilteredFamily(d, (3, 1))) == (1,)


def test_meeting_sets_frozen():
    assert kf_sets(SIERPINSKI) == (1, 3)
    assert kf_sets(discrete(2)) == (1, 2)
    assert kf_sets(scott_space(VEE)) == (1, 3, 5)


def test_rudin_refine():
    d = discrete(2)
    fam = FilteredFamily(d, (3, 1))
    assert rudin_refine(d, fam, 3) == 1
    with pytest.raises(InvalidFamily):
        rudin_refine(SIERPINSKI, FilteredFamily(SIERPINSKI, (2,)), 2)  # not closed
    with pytest.raises(InvalidFamily):
        rudin_refine(d, FilteredFamily(d, (1,)), 2)  # start misses the member


def test_families_and_roles():
    s = SIERPINSKI
    assert sc_family(s).members == (1, 3)
    assert kf_family(s).members == (1, 3)
    assert irr_family(s).members == (1, 3)
    starred = irr_family(s).starred()
    assert starred.members == (1,) and starred.role == "Irr*"
    d = discrete(2)
    st = sc_family(d).starred()
    assert st.members == (1, 2)


def test_wd_status_determined_on_finite_spaces():
    for space in (SIERPINSKI, discrete(2), discrete(3), scott_space(VEE)):
        st = wd_status(space)
        assert st.determined
        assert st.value == st.lower == st.upper
        assert st.value == irreducible_closed_sets(space)
        assert st.value == point_closures(space)
    st = wd_status(SIERPINSKI).starred(SIERPINSKI)
    assert st.value == (1,)


def test_wd_status_bracket_shape():
    # the undetermined shape is carried verbatim, never collapsed
    st = WdStatus("BRACKET", None, (1,), (1, 3), "bounds do not meet")
    assert not st.determined
    starred = st.starred(SIERPINSKI)
    assert starred.value is None and starred.upper == (1,)


def test_pushforward_keeps_kind():
    d = discrete(2)
    s = SIERPINSKI
    f = ContinuousMap(d, s, (1, 1))
    assert pushforward_family(f, 1, "Sc") == 3
    assert pushforward_family(f, 2, "Irr") == 3
    assert pushforward_family(f, 1, "KF") == 3
    assert pushforward_family(f, 1, "WD") == 3
    with pytest.raises(PreconditionViolated):
        pushforward_family(f, 3, "Sc")  # not a point closure
    with pytest.raises(PreconditionViolated):
        pushforward_family(f, 1, "Scc")  # unknown family kind


def test_sandwich_over_corpus(small_corpus):
    for poset in small_corpus:
        space = scott_space(poset)
        sc = set(point_closures(space))
        kf = set(kf_sets(space))
        irr = set(irreducible_closed_sets(space))
        assert sc <= kf <= irr
        assert wd_status(space).determined
