"""Uniformly convex sets and functions with the positive property."""
from bestprox import check_positive_property, check_uc_about_phi, check_uniformly_convex_set, example39_phi
from bestprox.geometry import L2, LINF
from bestprox.regions import corpus_region

hyp = corpus_region("ex43_A")
half = corpus_region("halfplane_upper")
ball = corpus_region("unit_ball_l2")

for r, norm, box in ((ball, L2, None), (hyp, LINF, (0, 10, 0, 10)), (half, L2, (-5, 5, 0, 5))):
    for res in check_uniformly_convex_set(norm, r, [0.5, 1.0], pair_budget=256, box=box):
        what = f"eta = {res.eta_estimate:.6f}" if res.counterexample is None else f"counterexample {res.counterexample}"
        print(f"{r.name:<16} eps = {res.epsilon}: {what}")

phi = example39_phi()
res = check_uc_about_phi(LINF, hyp, phi, pair_budget=10_000, box=(0, 20, 0, 20))
print(f"\nhyperbola set about phi: passed = {res.passed} on {res.pairs_checked} pairs")
res = check_uc_about_phi(LINF, half, phi, pair_budget=200, box=(-5, 5, 0, 5))
print(f"half-plane about phi: passed = {res.passed}, first failure {res.counterexample}")

for box in ((0, 2, 0, 2), (0, 10, 0, 10)):
    pos = check_positive_property(phi, hyp, box, 2.0)
    print(f"inf phi over {box}, eps >= 2: {pos.inf_estimate:.12f} ({pos.verdict})")
print("4/380 =", 4 / 380)
