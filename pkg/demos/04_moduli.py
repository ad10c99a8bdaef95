"""Moduli of convexity of planar norms, plain and directional."""
import math

from bestprox import directional_modulus, modulus_curve, modulus_of_convexity
from bestprox.convexity import analytic_l2_modulus
from bestprox.geometry import L1, L2, LINF, Planar, lp

print("eps    l2 estimate     l2 exact        l3              l1    linf")
for k in range(1, 11):
    e = 0.2 * k
    print(f"{e:.1f}  {modulus_of_convexity(L2, e):.12f}  {analytic_l2_modulus(e):.12f}  "
          f"{modulus_of_convexity(lp(3), e):.12f}  {modulus_of_convexity(L1, e):.0e}  "
          f"{modulus_of_convexity(LINF, e):.0e}")

print("\nsup norm, eps = 1, by direction:")
for deg in (0, 15, 30, 45, 60, 90):
    z = Planar(math.cos(math.radians(deg)), math.sin(math.radians(deg)))
    print(f"  {deg:3d} deg: {directional_modulus(LINF, z, 1.0):.9f}")

print("\nCSV export:")
print(modulus_curve(L2, [0.5, 1.0, 1.5, 2.0]).to_csv(), end="")
