"""
A system whose height equals m * alpha_max
==========================================

The companion matrix of x^3 - 5 over Z_25 satisfies A^3 = 5 I, so A^6 = 0
while A^5 != 0. Its height 6 meets the function independent bound 3 * 2,
and the reduction mod 5 (a nilpotent shift of height 3) gives 2 * 3 = 6 too.
"""

from lfds_height import SystemSpec, all_bounds, factor, mat_pow, system_height
from lfds_height.oracle import brute_height, enumerate_system

sys = SystemSpec.from_rows([[0, 0, 5], [1, 0, 0], [0, 1, 0]], 25)
print("A^3 =", mat_pow(sys.a, 3).to_lists())

f = factor(25)
b = all_bounds(sys, f)
h = system_height(sys, f)
print(f"algebraic height {h.system_height}, thm_a {b.thm_a}, thm_b {b.thm_b}")
print("image chain:", list(h.per_component[0].image_chain))

###############################################################################
# Cross-check by walking all 15625 states.

g = enumerate_system(sys)
print(f"brute force over {g.size} states: height {brute_height(g)}")
print("states at each height:",
      {int(k): int((g.height_of == k).sum()) for k in range(brute_height(g) + 1)})
