"""Subset-system evaluators and the space classifier panel.

Four closed-set assignments drive this module: point closures, the
minimal-meeting family, the squeezed image-closure family, and the
irreducible closed sets.  Each gets a named evaluator usable on finite
carriers and on the cofinite line alike, a whole-space-dropping
variant, and a seat in the pairwise agreement matrix behind the
model-agreement flags.  Agreement between two assignments only counts
toward those flags when the assignments are known to differ somewhere:
three separations are recomputed on the cofinite line every time, two
rest on a recorded infinite example and are marked as citations, and
one pair has no recorded separation at all and never counts.

The classifier panel itself is equality-driven — soberness compares
irreducible closed sets against point closures, well-filteredness
compares the minimal-meeting family against point closures, and so on —
with every flag carrying either a witness or an explicit UNDETERMINED
marker, and the known implication arrows re-validated on every panel.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bits
from .cofinite import (
    COFNAT,
    CofNat,
    SymClosedFamily,
    SymWdStatus,
    classify_cofnat,
    irr_cofnat,
    kf_cofnat,
    sc_cofnat,
    wd_cofnat,
)
from .errors import CheckFailed, PreconditionViolated, WdNotDetermined
from .families import (
    ClosedFamily,
    WdStatus,
    irr_family,
    kf_family,
    sc_family,
    wd_status,
)
from .posets import FinPoset
from .reflections import PairWitness, pair_conditions_check
from .scott import max_point_space, scott_space
from .spaces import (
    FinSpace,
    irreducible_closed_sets,
    is_sober,
    point_closures,
)
from .xizhao import xizhao_model

SYSTEM_KINDS = ("SC", "KF", "WD", "IRR")


@dataclass(frozen=True)
class SubsetSystemId:
    """Name of one of the four built-in closed-set assignments.

    The starred form drops the whole carrier from the family it names.
    Starred forms are comparison devices only — they do not themselves
    form subset systems — so the model-determinacy check rejects them.
    """

    kind: str
    starred: bool = False

    def __post_init__(self):
        if self.kind not in SYSTEM_KINDS:
            raise PreconditionViolated(f"unknown subset system {self.kind!r}")

    @property
    def label(self) -> str:
        return self.kind + ("*" if self.starred else "")


SC = SubsetSystemId("SC")
KF = SubsetSystemId("KF")
WD = SubsetSystemId("WD")
IRR = SubsetSystemId("IRR")


def _sym_wd_starred(st: SymWdStatus) -> SymWdStatus:
    return SymWdStatus(
        st.status,
        st.value.starred() if st.value is not None else None,
        st.lower.starred(),
        st.upper.starred(),
        st.how,
    )


def hc(system: SubsetSystemId, x):
    """Closed-set family of the named system on a finite space or the
    cofinite line.

    Point closures, minimal-meeting sets, and irreducible closed sets
    come back as plain families; the image-closure system may come back
    as a status bracket instead of a family when the squeeze between
    the other two does not collapse.
    """
    if isinstance(x, CofNat):
        fam = {
            "SC": sc_cofnat,
            "KF": kf_cofnat,
            "WD": wd_cofnat,
            "IRR": irr_cofnat,
        }[system.kind]()
        if not system.starred:
            return fam
        if isinstance(fam, SymWdStatus):
            return _sym_wd_starred(fam)
        return fam.starred()
    if not isinstance(x, FinSpace):
        raise PreconditionViolated(
            "evaluators take a finite space or the cofinite line, "
            f"not {type(x).__name__}"
        )
    if system.kind == "WD":
        st = wd_status(x)
        return st.starred(x) if system.starred else st
    fam = {"SC": sc_family, "KF": kf_family, "IRR": irr_family}[system.kind](x)
    return fam.starred() if system.starred else fam


# ---------------------------------------------------------------------------
# resolved family values and agreement cells


def _resolved(fam):
    """Normalize a family value to ("det", value) or ("bracket", lo, hi)."""
    if isinstance(fam, ClosedFamily):
        return ("det", frozenset(fam.members))
    if isinstance(fam, SymClosedFamily):
        return ("det", fam)
    if isinstance(fam, WdStatus):
        if fam.determined:
            return ("det", frozenset(fam.value))
        return ("bracket", frozenset(fam.lower), frozenset(fam.upper))
    if isinstance(fam, SymWdStatus):
        if fam.determined:
            return ("det", fam.value)
        return ("bracket", fam.lower, fam.upper)
    raise CheckFailed("unrecognized family value", type(fam).__name__)


def _contained(a, b) -> bool:
    """Inclusion between two family values of the same flavor."""
    if isinstance(a, frozenset):
        return a <= b
    if a.all_singletons and not (
        b.all_singletons and set(b.except_points) <= set(a.except_points)
    ):
        return False
    if a.whole and not b.whole:
        return False
    return all(b.contains(s) for s in a.finite_list)


def _cell(a, b):
    """Equality verdict between two resolved families: True, False, or
    None when a bracket leaves the comparison open."""
    if a[0] == "det" and b[0] == "det":
        return a[1] == b[1]
    if a[0] == "bracket" and b[0] == "bracket":
        return None
    det, br = (a, b) if a[0] == "det" else (b, a)
    value, lower, upper = det[1], br[1], br[2]
    if not (_contained(lower, value) and _contained(value, upper)):
        return False
    if lower == upper:
        return True
    return None


# ---------------------------------------------------------------------------
# distinctness registry and the agreement matrices

MACHINE = "MACHINE"
CITED = "CITED"
UNKNOWN = "UNKNOWN"

_COFNAT_NOTE = "the cofinite line separates them"
_COCOUNT_NOTE = (
    "separated by the co-countable real line (recorded citation, not computed)"
)

DISTINCTNESS = {
    frozenset({"SC", "KF"}): (MACHINE, _COFNAT_NOTE),
    frozenset({"SC", "WD"}): (MACHINE, _COFNAT_NOTE),
    frozenset({"SC", "IRR"}): (MACHINE, _COFNAT_NOTE),
    frozenset({"KF", "IRR"}): (CITED, _COCOUNT_NOTE),
    frozenset({"WD", "IRR"}): (CITED, _COCOUNT_NOTE),
    frozenset({"KF", "WD"}): (
        UNKNOWN,
        "no separating example is recorded; never counts toward agreement flags",
    ),
}


def verify_distinctness_registry() -> dict:
    """Recompute every machine-graded separation on the cofinite line.

    Returns the pair-to-grade mapping; a machine-graded pair whose
    families no longer differ is an implementation bug.
    """
    out = {}
    for pair, (grade, _note) in DISTINCTNESS.items():
        h, g = sorted(pair)
        if grade == MACHINE:
            hv = _resolved(hc(SubsetSystemId(h), COFNAT))
            gv = _resolved(hc(SubsetSystemId(g), COFNAT))
            if hv[0] != "det" or gv[0] != "det":
                raise CheckFailed("separation witness is undetermined", (h, g))
            if hv[1] == gv[1]:
                raise CheckFailed("machine separation failed", (h, g))
        out[(h, g)] = grade
    return out


def _matrix(x, starred: bool):
    resolved = {
        k: _resolved(hc(SubsetSystemId(k, starred), x)) for k in SYSTEM_KINDS
    }
    rows = []
    for h in SYSTEM_KINDS:
        row = []
        for g in SYSTEM_KINDS:
            row.append(True if h == g else _cell(resolved[h], resolved[g]))
        rows.append(tuple(row))
    n = len(SYSTEM_KINDS)
    for i in range(n):
        for j in range(n):
            if rows[i][j] != rows[j][i]:
                raise CheckFailed("agreement matrix is not symmetric")
            if rows[i][j] is not True:
                continue
            for k in range(n):
                if rows[j][k] is True and rows[i][k] is False:
                    raise CheckFailed("agreement matrix is not transitive")
    return tuple(rows)


@dataclass(frozen=True)
class Flag:
    name: str
    value: bool | None
    witness: str

    @property
    def determined(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class HModelTable:
    space_name: str
    plain: tuple[tuple[bool | None, ...], ...]
    star: tuple[tuple[bool | None, ...], ...]
    h_model: Flag
    weak_h_model: Flag

    def cell(self, h: str, g: str, starred: bool = False):
        m = self.star if starred else self.plain
        return m[SYSTEM_KINDS.index(h)][SYSTEM_KINDS.index(g)]


def _agreement_flag(name: str, matrix, starred: bool) -> Flag:
    mark = "*" if starred else ""
    open_cell = False
    for i, h in enumerate(SYSTEM_KINDS):
        for j in range(i + 1, len(SYSTEM_KINDS)):
            g = SYSTEM_KINDS[j]
            grade, note = DISTINCTNESS[frozenset({h, g})]
            if grade == UNKNOWN:
                continue
            cell = matrix[i][j]
            if cell is True:
                return Flag(
                    name,
                    True,
                    f"{h}{mark} agrees with {g}{mark}; "
                    f"distinctness {grade.lower()}-graded: {note}",
                )
            if cell is None:
                open_cell = True
    if open_cell:
        return Flag(name, None, "an agreement cell is open under the bracket")
    return Flag(
        name,
        False,
        "no agreement between assignments with recorded distinctness "
        "(a lower bound: only the four built-ins are compared)",
    )


def _space_name(x) -> str:
    if isinstance(x, CofNat):
        return x.name
    return "{" + ",".join(x.labels) + "}"


def hmodel_table(x) -> HModelTable:
    """Pairwise agreement matrices (plain and starred) over the four
    built-in assignments, plus the two derived agreement flags."""
    verify_distinctness_registry()
    plain = _matrix(x, False)
    star = _matrix(x, True)
    return HModelTable(
        _space_name(x),
        plain,
        star,
        _agreement_flag("h_model", plain, False),
        _agreement_flag("weak_h_model", star, True),
    )


# ---------------------------------------------------------------------------
# the classifier panel

FLAG_ORDER = (
    "sober",
    "well_filtered",
    "rudin",
    "wd_space",
    "wk_space",
    "weak_sober",
    "weak_well_filtered",
    "h_model",
    "weak_h_model",
)

# src -> dst: whenever src holds, dst must hold.  Exactly these five.
ARROWS = (
    ("sober", "well_filtered"),
    ("sober", "rudin"),
    ("rudin", "wd_space"),
    ("rudin", "wk_space"),
    ("well_filtered", "wk_space"),
)


@dataclass(frozen=True)
class ClassifierPanel:
    space_name: str
    flags: tuple[Flag, ...]

    def flag(self, name: str) -> Flag:
        for f in self.flags:
            if f.name == name:
                return f
        raise PreconditionViolated(f"no flag named {name!r}")

    def as_dict(self) -> dict:
        return {f.name: f.value for f in self.flags}


def _check_arrows(panel: ClassifierPanel) -> None:
    for src, dst in ARROWS:
        a, b = panel.flag(src), panel.flag(dst)
        if a.value is True and b.value is False:
            raise CheckFailed(
                f"implication {src} -> {dst} violated on {panel.space_name}"
            )


def _diff_witness(x: FinSpace, a_name: str, a: frozenset, b_name: str, b: frozenset) -> str:
    if a == b:
        return f"{a_name} = {b_name}"
    diff = min(a ^ b)
    side = a_name if diff in a else b_name
    other = b_name if diff in a else a_name
    label = "{" + ",".join(x.labels_of_mask(diff)) + "}"
    return f"{side} contains {label}, {other} does not"


def _wd_flag(name: str, x: FinSpace, st: WdStatus, other_name: str, other: frozenset) -> Flag:
    cell = _cell(("det", other), _resolved(st))
    if cell is None:
        return Flag(name, None, "the bracket does not decide the comparison")
    if cell:
        return Flag(name, True, f"image-closure family = {other_name}")
    if st.determined:
        return Flag(
            name,
            False,
            _diff_witness(x, "image-closure family", frozenset(st.value), other_name, other),
        )
    return Flag(name, False, f"the bracket already excludes {other_name}")


def classify(x) -> ClassifierPanel:
    """Full flag panel of a space, every flag carrying a witness.

    Soberness is computed from the family equality and cross-checked
    against the generic-point definition; the carrier must be T0 for
    the two routes to express the same thing, so non-T0 input is
    rejected rather than misclassified.
    """
    if isinstance(x, CofNat):
        data = classify_cofnat()
        flags = [Flag(n, v, w) for n, (v, w) in data["flags"].items()]
        table = hmodel_table(x)
        panel = ClassifierPanel(
            data["space"], tuple(flags) + (table.h_model, table.weak_h_model)
        )
        _check_arrows(panel)
        return panel
    if not isinstance(x, FinSpace):
        raise PreconditionViolated(
            "classifier takes a finite space or the cofinite line, "
            f"not {type(x).__name__}"
        )
    if not x.is_t0:
        raise PreconditionViolated(
            "classifier panel needs a T0 carrier; points "
            f"{x.t0_witness} share a closure"
        )
    sc = frozenset(point_closures(x))
    irr = frozenset(irreducible_closed_sets(x))
    kf = frozenset(kf_family(x).members)
    st = wd_status(x)
    sober_eq = irr == sc
    sober_def, _evidence = is_sober(x)
    if sober_eq != sober_def:
        raise CheckFailed("soberness routes disagree on " + _space_name(x))
    full = x.full_mask
    star = lambda fam: frozenset(m for m in fam if m != full)
    flags = (
        Flag("sober", sober_eq,
             _diff_witness(x, "irreducible closed sets", irr, "point closures", sc)),
        Flag("well_filtered", kf == sc,
             _diff_witness(x, "minimal-meeting sets", kf, "point closures", sc)),
        Flag("rudin", kf == irr,
             _diff_witness(x, "minimal-meeting sets", kf, "irreducible closed sets", irr)),
        _wd_flag("wd_space", x, st, "irreducible closed sets", irr),
        _wd_flag("wk_space", x, st, "minimal-meeting sets", kf),
        Flag("weak_sober", star(irr) == star(sc),
             _diff_witness(x, "proper irreducibles", star(irr), "proper point closures", star(sc))),
        Flag("weak_well_filtered", star(kf) == star(sc),
             _diff_witness(x, "proper minimal-meeting sets", star(kf), "proper point closures", star(sc))),
    )
    table = hmodel_table(x)
    panel = ClassifierPanel(
        _space_name(x), flags + (table.h_model, table.weak_h_model)
    )
    _check_arrows(panel)
    return panel


PRESERVED_FLAGS = ("sober", "well_filtered", "rudin", "wd_space", "wk_space")


@dataclass(frozen=True)
class AgreementReport:
    max_panel: ClassifierPanel
    model_panel: ClassifierPanel
    compared: tuple[str, ...]
    agree: bool


def classifier_agreement(poset: FinPoset) -> AgreementReport:
    """The maximal-point space of a pair model and the model itself
    carry the same five preserved flags; disagreement raises."""
    model = xizhao_model(poset)
    sigma = scott_space(model.poset)
    maxsub, _incl = max_point_space(model.poset)
    pm = classify(maxsub)
    ps = classify(sigma)
    bad = tuple(
        n for n in PRESERVED_FLAGS if pm.flag(n).value != ps.flag(n).value
    )
    if bad:
        raise CheckFailed("classifier panels disagree", bad)
    return AgreementReport(pm, ps, PRESERVED_FLAGS, True)


# ---------------------------------------------------------------------------
# per-instance theorem checks


def _determined_members(system: SubsetSystemId, space: FinSpace) -> tuple[int, ...]:
    fam = hc(system, space)
    if isinstance(fam, WdStatus):
        if not fam.determined:
            raise WdNotDetermined(
                "family undetermined on " + ",".join(space.labels)
            )
        return fam.value
    return fam.members


def _closure_stable(space: FinSpace, members: tuple[int, ...]) -> None:
    mset = set(members)
    for m in members:
        if space.closure(m) not in mset:
            raise CheckFailed(
                "family is not closure stable", space.labels_of_mask(m)
            )
    if not set(point_closures(space)) <= mset:
        raise CheckFailed("family misses a point closure")
    if not mset <= set(irreducible_closed_sets(space)):
        raise CheckFailed("family exceeds the irreducible closed sets")


def dcpo_model_determined_check(
    system: SubsetSystemId, poset: FinPoset
) -> PairWitness:
    """Closure stability, the first two pair conditions, and the image
    law, for the named system over one pair model.

    The image law sends each member of the maximal-part family to its
    closure in the model and requires the image to be exactly the upper
    set of the embedded maximal points inside the hyperspace — computed
    twice, through the specialization order and through the members
    meeting the maximal part.
    """
    if system.starred:
        raise PreconditionViolated(
            "whole-space-dropping variants are not subset systems"
        )
    model = xizhao_model(poset)
    sigma = scott_space(model.poset)
    maxsub, incl = max_point_space(model.poset)
    fam_sigma = _determined_members(system, sigma)
    fam_max = _determined_members(system, maxsub)
    _closure_stable(sigma, fam_sigma)
    _closure_stable(maxsub, fam_max)

    base = pair_conditions_check(poset, fam_sigma)
    hyper = base.hyper
    j_image = 0
    for a in fam_max:
        closed = sigma.closure(incl.image(a))
        if closed not in hyper.members:
            raise CheckFailed(
                "closure left the model family", sigma.labels_of_mask(closed)
            )
        back = bits.mask_of(
            t for t in range(maxsub.n) if closed >> incl.graph[t] & 1
        )
        if back != a:
            raise CheckFailed("closure trace differs from its source",
                              maxsub.labels_of_mask(a))
        j_image |= 1 << hyper.member_index(closed)
    meets = 0
    for i, member in enumerate(hyper.members):
        if member & model.max_mask:
            meets |= 1 << i
    up_route = 0
    for t in bits.indices_of(model.max_mask):
        up_route |= hyper.space.spec_up[hyper.eta[t]]
    if meets != up_route:
        raise CheckFailed("image-law routes disagree")
    p4 = j_image == up_route
    witness = base.witness
    if not p4 and witness is None:
        witness = ("P4", bin(j_image ^ up_route))
    return PairWitness(
        hyper, base.p1, base.p2, base.p3, p4,
        base.compact_preimages_checked, witness,
    )


@dataclass(frozen=True)
class KeyVerdict:
    h: str
    g: str
    model_equal: bool
    max_equal: bool
    star_model_equal: bool
    star_max_equal: bool

    @property
    def biconditional(self) -> bool:
        return self.model_equal == self.max_equal

    @property
    def star_biconditional(self) -> bool:
        return self.star_model_equal == self.star_max_equal


def proposition_key_check(
    poset: FinPoset, h: SubsetSystemId, g: SubsetSystemId
) -> KeyVerdict:
    """Two systems agree on a pair model exactly when they agree on its
    maximal-point part — in the plain and the whole-space-dropping
    forms both.  A failed biconditional raises."""
    if h.starred or g.starred:
        raise PreconditionViolated(
            "pass plain system ids; starred forms are checked alongside"
        )
    model = xizhao_model(poset)
    sigma = scott_space(model.poset)
    maxsub, _incl = max_point_space(model.poset)

    def eq_pair(space: FinSpace) -> tuple[bool, bool]:
        hv = frozenset(_determined_members(h, space))
        gv = frozenset(_determined_members(g, space))
        full = space.full_mask
        return hv == gv, hv - {full} == gv - {full}

    model_eq, star_model_eq = eq_pair(sigma)
    max_eq, star_max_eq = eq_pair(maxsub)
    verdict = KeyVerdict(
        h.label, g.label, model_eq, max_eq, star_model_eq, star_max_eq
    )
    if not (verdict.biconditional and verdict.star_biconditional):
        raise CheckFailed("key biconditional failed", verdict)
    return verdict
