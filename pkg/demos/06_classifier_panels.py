"""
Classifier panels: nine flags from four families
================================================

Each space gets a panel of nine flags, every one computed from the
closed-set families rather than asserted: sober (Irr = S_c with unique
generic points), well_filtered (KF = S_c), rudin / wd_space / wk_space
(the three approximation properties), their three weak variants
(equality after dropping the whole carrier), and two agreement flags
that summarize which families coincide.  The same classifier runs on
finite spaces and on the symbolic cofinite line.
"""

from orderlab import (
    COFNAT,
    IRR,
    KF,
    SC,
    VEE,
    WD,
    classifier_agreement,
    classify,
    dcpo_model_determined_check,
    hc,
    hmodel_table,
    max_point_space,
    proposition_key_check,
    scott_space,
    xizhao_model,
)

# Classify the Scott space of the vee pair model: finite T0 spaces are
# sober, so every flag is determined True.
sigma = scott_space(xizhao_model(VEE).poset)
panel = classify(sigma)
for flag in panel.flags:
    print(f"  {flag.name:20s} {str(flag.value):5s} — {flag.witness}")

# The subset systems are first-class ids; the evaluator returns the
# family a system denotes on a given instance, finite or symbolic.
print("SC on sigma:", hc(SC, sigma).members)
print("IRR on the cofinite line:", hc(IRR, COFNAT).describe())

# On the cofinite line the panel mixes values, and the agreement flags
# carry their evidence: a flag is True only when some agreeing pair of
# systems is also known to be genuinely distinct (machine-witnessed or
# cited), so agreement there is informative rather than vacuous.
cof_panel = classify(COFNAT)
print("cofinite sober:", cof_panel.flag("sober").value,
      "| h_model:", cof_panel.flag("h_model").value)
print("  h_model witness:", cof_panel.flag("h_model").witness)

table = hmodel_table(COFNAT)
print("KF agrees with WD here?", table.cell("KF", "WD"),
      "— but whether KF and WD differ anywhere is an open question,",
      "so this pair never feeds the agreement flags")

# Preservation: the maximal-point part of a model and the model itself
# carry the same five preserved flags; the checker raises on any
# disagreement.
report = classifier_agreement(VEE)
print("preserved flags agree:", report.agree, "on", report.compared)

# Determinacy of a system over one model: closure stability, the pair
# conditions, and the image law that carries the maximal-part family
# onto the part of the model family above the embedded maximal points.
witness = dcpo_model_determined_check(SC, VEE)
print("SC determined over the vee model:",
      witness.p1 and witness.p2 and witness.p3,
      f"({witness.compact_preimages_checked} compact preimages checked)")

# The key biconditional, per pair of systems: agreement on the model
# is equivalent to agreement on its maximal-point part, in the plain
# and the whole-carrier-dropping forms both.
maxsub, _ = max_point_space(xizhao_model(VEE).poset)
for h, g in ((SC, KF), (SC, IRR), (KF, WD), (WD, IRR)):
    verdict = proposition_key_check(VEE, h, g)
    print(f"  {verdict.h} vs {verdict.g}: model={verdict.model_equal} "
          f"max={verdict.max_equal} (starred: {verdict.star_model_equal}/"
          f"{verdict.star_max_equal})")
