"""Subset-system evaluators, agreement tables, panels, and theorem checks."""

import itertools

import pytest

from orderlab.cofinite import COFNAT, IRR_COFNAT, SymWdStatus
from orderlab.errors import CheckFailed, PreconditionViolated
from orderlab.families import WdStatus
from orderlab.fixtures import CHAIN2, DIAMOND, FIXTURE_POSETS, SIERPINSKI, VEE, discrete
from orderlab.scott import scott_space
from orderlab.spaces import make_space
from orderlab.systems import (
    ARROWS,
    CITED,
    DISTINCTNESS,
    FLAG_ORDER,
    IRR,
    KF,
    MACHINE,
    PRESERVED_FLAGS,
    SC,
    SYSTEM_KINDS,
    UNKNOWN,
    WD,
    ClassifierPanel,
    Flag,
    SubsetSystemId,
    _agreement_flag,
    _cell,
    _check_arrows,
    _resolved,
    classifier_agreement,
    classify,
    dcpo_model_determined_check,
    hc,
    hmodel_table,
    proposition_key_check,
    verify_distinctness_registry,
)


def test_system_ids():
    assert SC.label == "SC" and not SC.starred
    assert SubsetSystemId("KF", starred=True).label == "KF*"
    with pytest.raises(PreconditionViolated):
        SubsetSystemId("XX")


def test_evaluator_on_finite_spaces():
    assert hc(SC, SIERPINSKI).members == (1, 3)
    assert hc(SC, SIERPINSKI).role == "Sc"
    assert hc(KF, discrete(2)).members == (1, 2)
    assert hc(IRR, SIERPINSKI).members == (1, 3)
    st = hc(WD, SIERPINSKI)
    assert isinstance(st, WdStatus) and st.determined and st.value == (1, 3)
    starred = hc(SubsetSystemId("IRR", True), SIERPINSKI)
    assert starred.members == (1,) and starred.role == "Irr*"
    st = hc(SubsetSystemId("WD", True), SIERPINSKI)
    assert st.value == (1,)
    with pytest.raises(PreconditionViolated):
        hc(SC, 42)


def test_evaluator_on_the_cofinite_line():
    assert hc(IRR, COFNAT) == IRR_COFNAT
    assert hc(SubsetSystemId("IRR", True), COFNAT).describe() == "ALL_SINGLETONS"
    assert hc(SC, COFNAT).describe() == "ALL_SINGLETONS"
    st = hc(WD, COFNAT)
    assert isinstance(st, SymWdStatus) and st.determined
    st = hc(SubsetSystemId("WD", True), COFNAT)
    assert st.value.describe() == "ALL_SINGLETONS"


def test_cell_logic_with_synthetic_brackets():
    det13 = _resolved(WdStatus("DETERMINED", (1, 3), (1, 3), (1, 3), "x"))
    det1 = ("det", frozenset({1}))
    det2 = ("det", frozenset({2}))
    bracket = _resolved(WdStatus("BRACKET", None, (1,), (1, 3), "x"))
    tight = _resolved(WdStatus("BRACKET", None, (1, 3), (1, 3), "x"))
    assert _cell(det13, det13) is True
    assert _cell(det13, det1) is False
    assert _cell(bracket, bracket) is None
    assert _cell(det13, bracket) is None  # inside the bounds, undecided
    assert _cell(det2, bracket) is False  # outside the bounds, refuted
    assert _cell(det13, tight) is True    # bounds met, forced


def test_distinctness_registry():
    grades = verify_distinctness_registry()
    assert grades == {
        ("KF", "SC"): MACHINE,
        ("SC", "WD"): MACHINE,
        ("IRR", "SC"): MACHINE,
        ("IRR", "KF"): CITED,
        ("IRR", "WD"): CITED,
        ("KF", "WD"): UNKNOWN,
    }
    assert len(DISTINCTNESS) == 6


def test_agreement_tables_on_the_cofinite_line():
    table = hmodel_table(COFNAT)
    assert table.space_name == "cofinite-nat"
    # the point-closure family stands alone; the other three coincide
    for g in ("KF", "WD", "IRR"):
        assert table.cell("SC", g) is False
        assert table.cell("KF", g) is True
    # dropping the whole line collapses everything to the singletons
    for h, g in itertools.combinations(SYSTEM_KINDS, 2):
        assert table.cell(h, g, starred=True) is True
    assert table.h_model.value is True
    assert "KF agrees with IRR" in table.h_model.witness
    assert "cited" in table.h_model.witness
    assert table.weak_h_model.value is True
    assert "SC* agrees with KF*" in table.weak_h_model.witness
    assert "machine" in table.weak_h_model.witness


def test_agreement_flag_fallbacks():
    all_false = tuple(
        tuple(True if i == j else False for j in range(4)) for i in range(4)
    )
    flag = _agreement_flag("h_model", all_false, False)
    assert flag.value is False and "lower bound" in flag.witness
    with_open = tuple(
        tuple(True if i == j else None for j in range(4)) for i in range(4)
    )
    flag = _agreement_flag("h_model", with_open, False)
    assert flag.value is None and not flag.determined


def test_classify_cofinite_panel():
    panel = classify(COFNAT)
    assert tuple(f.name for f in panel.flags) == FLAG_ORDER
    assert panel.as_dict() == {
        "sober": False,
        "well_filtered": False,
        "rudin": True,
        "wd_space": True,
        "wk_space": True,
        "weak_sober": True,
        "weak_well_filtered": True,
        "h_model": True,
        "weak_h_model": True,
    }
    assert "no generic point" in panel.flag("sober").witness


def test_classify_finite_spaces():
    for space in (SIERPINSKI, discrete(2), scott_space(VEE), scott_space(DIAMOND)):
        panel = classify(space)
        assert tuple(f.name for f in panel.flags) == FLAG_ORDER
        # finite T0 spaces are sober, so the whole panel collapses to true
        assert all(f.value is True for f in panel.flags)
        assert all(f.determined for f in panel.flags)


def test_classify_rejections():
    indiscrete = make_space(("x", "y"), (0, 3))
    with pytest.raises(PreconditionViolated):
        classify(indiscrete)
    with pytest.raises(PreconditionViolated):
        classify("not a space")


def test_arrow_checker():
    assert ARROWS == (
        ("sober", "well_filtered"),
        ("sober", "rudin"),
        ("rudin", "wd_space"),
        ("rudin", "wk_space"),
        ("well_filtered", "wk_space"),
    )
    flags = tuple(
        Flag(n, n not in ("well_filtered",), "synthetic")
        for n in FLAG_ORDER
    )
    bad = ClassifierPanel("synthetic", flags)
    with pytest.raises(CheckFailed):
        _check_arrows(bad)
    with pytest.raises(PreconditionViolated):
        bad.flag("nonexistent")


def test_classifier_agreement_on_fixtures():
    for poset in FIXTURE_POSETS.values():
        rep = classifier_agreement(poset)
        assert rep.agree and rep.compared == PRESERVED_FLAGS
        for name in PRESERVED_FLAGS:
            assert rep.max_panel.flag(name).value == rep.model_panel.flag(name).value


def test_model_determinacy_check():
    for system, poset in ((SC, VEE), (IRR, VEE), (KF, CHAIN2), (WD, DIAMOND)):
        wit = dcpo_model_determined_check(system, poset)
        assert wit.p1 and wit.p2 and wit.p3 and wit.p4
        assert wit.witness is None
    with pytest.raises(PreconditionViolated):
        dcpo_model_determined_check(SubsetSystemId("SC", True), VEE)


def test_key_biconditionals():
    pairs = list(itertools.combinations((SC, KF, WD, IRR), 2))
    assert len(pairs) == 6
    for poset in FIXTURE_POSETS.values():
        for h, g in pairs:
            verdict = proposition_key_check(poset, h, g)
            assert verdict.biconditional and verdict.star_biconditional
    with pytest.raises(PreconditionViolated):
        proposition_key_check(VEE, SubsetSystemId("SC", True), KF)


def test_classify_over_corpus(small_corpus):
    for poset in small_corpus[:30]:
        panel = classify(scott_space(poset))
        assert all(f.value is True for f in panel.flags)
