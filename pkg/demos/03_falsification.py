"""Budgeted searches for UC, BUC and UC* counterexamples.

A verdict is either a witness family with its measured limits or the
statement that no counterexample was found within the budget.
"""
from bestprox import buc_falsify, corpus_family, corpus_pair, uc_falsify, ucstar_falsify
from bestprox.ucprops import EXPECTED_VERDICTS, run_expected

p = corpus_pair("ex43")
fam = [corpus_family("example43")]
v = uc_falsify(p.norm, p.region_a, p.region_b, fam, n_max=10_000, pair="ex43")
print(v.text, v.measured_limits)
v = buc_falsify(p.norm, p.region_a, p.region_b, fam, n_max=10_000, pair="ex43")
print(v.text, "| rejected:", v.rejected)

p = corpus_pair("ex50")
fam = [corpus_family("example50")]
for fn in (uc_falsify, buc_falsify, ucstar_falsify):
    v = fn(p.norm, p.region_a, p.region_b, fam, n_max=200, tol=1e-2, dist_ab=p.dist, pair="ex50")
    print(v.text)

print("\ncatalog:")
for e in EXPECTED_VERDICTS:
    v = run_expected(e)
    mark = "ok " if v.outcome == e.expected else "BAD"
    print(f"  {mark} {e.property:<6} {e.pair:<16} {v.outcome}")
