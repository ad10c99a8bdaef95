"""Distances between the corpus sets.

Each estimate minimizes over frontier points only, so it can overshoot the
true infimum but never undershoot it.  The refinement history shows the
running minimum as the grid doubles.
"""
from bestprox import corpus_pair, point_to_set_distance, set_distance
from bestprox.geometry import LINF, Planar
from bestprox.regions import PAIR_NAMES, ProductRegion, corpus_region

print("pair             norm     estimate          reference")
for name in PAIR_NAMES:
    p = corpus_pair(name)
    if p.analytic:
        print(f"{name:<16} {str(p.norm):<8} (analytic)        {p.dist}")
        continue
    est = set_distance(p.norm, p.region_a, p.region_b)
    print(f"{name:<16} {str(p.norm):<8} {est.value:<17.12f} {p.dist}")

# one point against a curve, with the refinement trail
est = point_to_set_distance(LINF, Planar(2, 2), corpus_region("ex49_Abar"))
print("\ndist((2,2), y = 1/x) =", est.value, "at", est.argmin_pair[1])
for used, value in est.refinement_history:
    print(f"  after {used:5d} evaluations: {value:.15f}")

# squares of sets: the sum metric doubles the distance
p = corpus_pair("ex49")
a, b = p.region_a, p.region_b
print("\ndist(A x A, B x B) =", set_distance(LINF, ProductRegion(a, a), ProductRegion(b, b)).value)
