"""
Deterministic reports, random corpora, and the self-checking oracle
===================================================================

Everything the workbench computes can be packaged as a canonical JSON
report: same configuration, same bytes, every time.  Random instances
come from a seeded generator with per-trial derived seeds, so any
finding can be replayed from its trial index alone.  The oracle runs
the cheap production paths against their expensive definitional
counterparts over a whole corpus and reports any disagreement.
"""

import json
import tempfile

from orderlab import (
    VEE,
    RunConfig,
    analyze_poset,
    canonical_json,
    corpus,
    derive_seed,
    generate_poset,
    load_poset,
    oracle_search,
    poset_dot,
    poset_to_json,
    run_suite,
)

# One instance, one report.  The report is a plain dict with a fixed
# key set; the verdict aggregates every check that ran.
report = analyze_poset(VEE)
print("report keys:", sorted(report))
print("verdict:", report["verdict"])
print("model size:", report["model"]["size"],
      "| maximal points:", report["model"]["max_points"])
print("equations passed:", [v["name"] for v in report["equations"] if v["passed"]])

# Canonical JSON: sorted keys, no whitespace surprises — the encoded
# report is reproducible byte for byte.
blob = canonical_json(report)
print("canonical bytes:", len(blob.encode()))

# Posets round-trip through a JSON document (cover pairs only; the
# loader rebuilds the transitive closure) and render to DOT for graph
# viewers.
doc = poset_to_json(VEE)
print("document:", json.dumps(doc))
with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
    json.dump(doc, fh)
again = load_poset(fh.name)
print("round trip ok:", again.up == VEE.up)
print(poset_dot(VEE).splitlines()[0], "...")

# Random instances: a single run seed derives one seed per trial, so
# instance i of a run is reproducible without replaying the run.
print("derived seeds:", [derive_seed(1, i) for i in range(3)])
p = generate_poset(derive_seed(1, 0), max_size=6)
print("generated:", p.labels, "up:", p.up)

# A corpus is just the derived-seed sequence mapped through the
# generator; all corpus posets are bounded complete by construction.
sizes = [poset.n for _i, poset in corpus(seed=1, trials=8, max_size=6)]
print("corpus sizes:", sizes)

# A full suite run: fixtures first, then the seeded trials, one report
# per line.  Two runs with the same configuration agree byte for byte.
config = RunConfig(seed=11, max_size=5, trials=4, which=("EQ0", "pair"))
lines_a = [canonical_json(r) for _label, r in run_suite(config)]
lines_b = [canonical_json(r) for _label, r in run_suite(config)]
print("suite reports:", len(lines_a), "| identical bytes:", lines_a == lines_b)

# The oracle: definitional recomputation of the production paths over
# a fresh corpus.  An empty list means every cheap path agreed with
# its expensive counterpart on every instance.
disagreements = oracle_search(RunConfig(seed=2, max_size=5, trials=10))
print("oracle disagreements:", disagreements)

# The same functionality is scriptable from the shell:
#
#   orderlab analyze --poset vee.json
#   orderlab xizhao --poset vee.json --emit dot
#   orderlab sobrify --space sierp.json
#   orderlab classify --builtin cofinite-nat
#   orderlab check-equations --which EQ0,EQ3
#   orderlab search --seed 11 --trials 5 --max-size 5
#   orderlab oracle --trials 20 --max-size 5
#
# Exit codes: 0 all checks passed, 1 a verdict or check failed,
# 2 bad input, 3 generation budget exceeded.
