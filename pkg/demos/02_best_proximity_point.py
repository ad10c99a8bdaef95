"""Best proximity points of the corpus cyclic contraction.

The map sends the hyperbola epigraph A to B and back.  Its even iterates
settle on (1, 1) and the odd ones on (0, 0), at distance dist(A, B) = 1.
"""
from bestprox import best_proximity_point, corpus_map, iterate, verify_contraction, verify_cyclic
from bestprox.geometry import Planar
from bestprox.solver import check_iterate_bounds

m = corpus_map("example49")
print("cyclic on 1000 samples:", bool(verify_cyclic(m, 1000)))
rep = verify_contraction(m, 0.5, pair_samples=4000)
print(f"contraction k = 1/2: max violation {rep.max_violation:.2e} over {rep.pairs_checked} pairs")
print(f"contraction k = 0.1: max violation {verify_contraction(m, 0.1, 2000).max_violation:.3f}")

trace = iterate(m, Planar(2, 2), tol=1e-8)
print("\n  n  point                                   rho(x_n, T x_n)")
for n, (p, prox) in enumerate(zip(trace.iterates, trace.proximities)):
    if n < 6 or n >= trace.steps - 2:
        print(f"{n:3d}  ({p.x:+.12f}, {p.y:+.12f})  {prox:.12f}")
print("converged:", trace.converged, "limits:", trace.limit_even, trace.limit_odd)

for x0 in (Planar(9, 0.2), Planar(-3, -5)):
    x, cert = best_proximity_point(m, x0)
    print(f"from {x0}: {x}  residual {cert.residual:.1e}")

bounds = check_iterate_bounds(m, Planar(5, 5), 0.5, n_max=200, pair_samples=500)
print("\niterate bounds along 200 steps:", bounds.ok, f"(max norm {bounds.max_norm:.3f} <= {bounds.norm_bound:.3f})")
