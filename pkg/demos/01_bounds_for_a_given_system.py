"""
Bounds and exact height of a system over Z_27720
================================================

A 4x4 matrix over Z_27720 acts on a module with 27720**4 (about 5.9e17)
states, far too many to enumerate. The height is still cheap to compute:
split n into prime powers, look at each factor system separately, and take
the largest component height.
"""

from pathlib import Path

from lfds_height import (
    all_bounds,
    factor,
    is_fixed_point_system,
    load_system,
    system_height,
)

sys = load_system(Path(__file__).parent / "data" / "z27720_m4.json")
f = factor(sys.n)
print(f"n = {sys.n} = {f},  m = {sys.m}")

###############################################################################
# Function dependent bound: for every prime p | n, the height s_p of the
# reduction mod p (rank of successive powers over GF(p)) times the exponent.

b = all_bounds(sys, f)
for t in b.per_prime:
    print(f"  p={t.p:>2}  alpha={t.alpha}  s_p={t.s}  alpha*s_p={t.product}")
print(f"thm_b = {b.thm_b}   thm_a = {b.thm_a}   m*Omega(n) = {b.omega_bound}   "
      f"ceil(m log2 n) = {b.xu_zou}")

###############################################################################
# Exact height from the image chains |im A^k| of each factor system. The
# Z_8 component drops by a factor 2 for nine steps, so the bound is attained.

h = system_height(sys, f)
for c in h.per_component:
    print(f"  Z_{c.p}^{c.alpha}: height {c.height}, chain {list(c.image_chain)}")
print("exact height:", h.system_height)

###############################################################################
# Any bound k >= height turns A^(k+1) == A^k into a fixed point test.

print("fixed point system:", is_fixed_point_system(sys, b.thm_b))
