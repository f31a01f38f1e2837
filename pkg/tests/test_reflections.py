"""Reflections, stage iteration, the closure embedding, and the equations."""

import pytest

from orderlab import bits
from orderlab.errors import (
    AmbientNotSober,
    BudgetExceeded,
    CheckFailed,
    SandwichViolated,
)
from orderlab.fixtures import CHAIN2, DIAMOND, FIXTURE_POSETS, SIERPINSKI, VEE, discrete
from orderlab.reflections import (
    EQUATION_NAMES,
    all_posets,
    claim_embed2_check,
    decomposition_check,
    finite_collapse_check,
    j_embedding_check,
    pair_conditions_check,
    shen_iterate,
    sobrification,
    universal_property_smoke,
    wf_reflection,
)
from orderlab.scott import scott_space
from orderlab.spaces import (
    is_homeomorphism,
    make_space,
    member_label,
    point_closures,
)
from orderlab.xizhao import xizhao_model


def test_finite_reflections_are_copies():
    for space in (SIERPINSKI, discrete(2), scott_space(VEE)):
        out = finite_collapse_check(space)
        assert is_homeomorphism(out["sober"])
        assert is_homeomorphism(out["wf"])
    hyper = sobrification(SIERPINSKI)
    assert hyper.space.n == 2
    assert wf_reflection(SIERPINSKI).members == hyper.members


def test_stage_iteration_default_ambient():
    for space in (SIERPINSKI, discrete(3), scott_space(DIAMOND)):
        chain = shen_iterate(space)
        assert chain.stabilization_index == 0
        assert chain.stages == (chain.ambient.full_mask,)


def test_stage_iteration_custom_ambient():
    ambient = scott_space(DIAMOND)
    chain = shen_iterate(SIERPINSKI, ambient=ambient, start_mask=0b1001)
    assert chain.stabilization_index == 0
    assert chain.stages == (0b1001,)
    indiscrete = make_space(("x", "y"), (0, 3))
    with pytest.raises(AmbientNotSober):
        shen_iterate(SIERPINSKI, ambient=indiscrete, start_mask=1)
    with pytest.raises(AmbientNotSober):
        shen_iterate(SIERPINSKI, ambient=ambient)  # stage zero missing
    with pytest.raises(CheckFailed):
        # the two middle points form an antichain, not a copy of the input
        shen_iterate(SIERPINSKI, ambient=ambient, start_mask=0b0110)


def test_j_embedding_frozen_images():
    expected = {
        "CHAIN2": ["{a@b,b@b}"],
        "VEE": ["{a@b,b@b,a@c}", "{a@b,a@c,c@c}"],
        "DIAMOND": ["{bot@top,m1@top,m2@top,top@top}"],
    }
    for name, poset in FIXTURE_POSETS.items():
        rep = j_embedding_check(poset, "sober")
        assert rep.embedding and rep.square_commutes
        assert rep.image_law and rep.inverse_law and rep.image_saturated
        sigma = scott_space(xizhao_model(poset).poset)
        labels = [
            member_label(sigma, m)
            for m in sorted(
                # decode the image points back to base-space closed sets
                _member_of(poset, i)
                for i in bits.indices_of(rep.image_mask)
            )
        ]
        assert sorted(labels) == sorted(expected[name])


def _member_of(poset, hyper_index):
    from orderlab.reflections import _legs
    from orderlab.spaces import irreducible_closed_sets, ph_space

    model = xizhao_model(poset)
    sigma, _, _ = _legs(model)
    hyper = ph_space(sigma, irreducible_closed_sets(sigma))
    return hyper.members[hyper_index]


def test_j_embedding_wf_kind():
    for poset in FIXTURE_POSETS.values():
        rep = j_embedding_check(poset, "wf")
        assert rep.embedding and rep.square_commutes and rep.image_law


def test_pair_conditions_on_fixture_families():
    sigma = scott_space(xizhao_model(VEE).poset)
    wit = pair_conditions_check(VEE, point_closures(sigma))
    assert wit.p1 and wit.p2 and wit.p3
    assert wit.p4 is None
    assert wit.compact_preimages_checked == 6
    assert wit.witness is None


def test_pair_conditions_sandwich_guards():
    sigma = scott_space(xizhao_model(VEE).poset)
    with pytest.raises(SandwichViolated):
        pair_conditions_check(VEE, (sigma.full_mask,))  # misses point closures
    with pytest.raises(SandwichViolated):
        # adding the reducible two-bottom down-set escapes the irreducibles
        pair_conditions_check(VEE, point_closures(sigma) + (0b0101,))


def test_decomposition_equations_on_vee():
    sizes = {}
    for name in EQUATION_NAMES:
        for verdict in decomposition_check(VEE, name):
            assert verdict.passed, verdict
            assert verdict.diff == ()
            sizes[verdict.name] = (verdict.lhs_size, verdict.rhs_size)
    assert sizes == {
        "EQ0": (4, 4),
        "EQ1/model": (4, 4),
        "EQ1/max": (2, 2),
        "EQ2[Sc]/hyper": (4, 4),
        "EQ2[Sc]/up-part": (2, 2),
        "EQ2[Irr]/hyper": (4, 4),
        "EQ2[Irr]/up-part": (2, 2),
        "KFSET2/model": (4, 4),
        "KFSET2/max": (2, 2),
        "EQ3/model": (4, 4),
        "EQ3/max": (2, 2),
    }


def test_decomposition_equations_all_fixtures():
    for poset in FIXTURE_POSETS.values():
        for name in EQUATION_NAMES:
            for verdict in decomposition_check(poset, name):
                assert verdict.passed, (poset.labels, verdict)
    with pytest.raises(CheckFailed):
        decomposition_check(VEE, "EQ9")


def test_all_posets_counts():
    assert tuple(len(all_posets(n)) for n in range(1, 5)) == (1, 3, 19, 219)
    # antisymmetry and transitivity spot-checks on the 3-point batch
    for p in all_posets(3):
        for i in range(3):
            for j in range(3):
                if i != j and p.leq(i, j):
                    assert not p.leq(j, i)


def test_universal_property_smoke():
    rep = universal_property_smoke(SIERPINSKI, "SOBER")
    assert (rep.targets, rep.maps_checked) == (242, 1770)
    rep = universal_property_smoke(discrete(2), "WF")
    assert (rep.targets, rep.maps_checked) == (242, 3688)
    with pytest.raises(BudgetExceeded):
        universal_property_smoke(SIERPINSKI, "SOBER", budget=5)
    with pytest.raises(CheckFailed):
        universal_property_smoke(SIERPINSKI, "T1")


def test_paired_stage_chains():
    for poset in FIXTURE_POSETS.values():
        rep = claim_embed2_check(poset)
        assert rep.x_index == 0 and rep.y_index == 0
        assert rep.stages_checked == 2
        assert rep.x_stages[0] == rep.x_stages[-1]


def test_equations_over_corpus(small_corpus):
    for poset in small_corpus[:20]:
        for name in ("EQ0", "EQ1", "KFSET2", "EQ3"):
            for verdict in decomposition_check(poset, name):
                assert verdict.passed, (poset.labels, verdict)
