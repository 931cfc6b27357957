"""
Explicit state spaces
=====================

For small systems every state can be visited. The oracle labels each state
with its height, its period (on cycles) and whether it is a leaf, and the
lemma checkers compare a system over Z_{p^r} with its reduction mod p.
"""

from lfds_height import PrimaryComponent, SystemSpec, factor
from lfds_height.cli import graph_dot
from lfds_height.oracle import (
    enumerate_system,
    verify_crt,
    verify_fitting,
    verify_reduction_lemmas,
)

###############################################################################
# x -> 2x on Z_4: 1 and 3 are leaves of height 2, 2 has height 1, 0 is fixed.

g = enumerate_system(SystemSpec.from_rows([[2]], 4))
print("heights", g.height_of.tolist(), "periods", g.period_of.tolist(), "leaves", g.is_leaf.tolist())
print(graph_dot(g))

###############################################################################
# Fitting decomposition and the primary decomposition on a system over Z_12.

sys = SystemSpec.from_rows([[3, 4], [1, 6]], 12)
g = enumerate_system(sys)
print(verify_fitting(sys, g))
print(verify_crt(sys, factor(12)))

###############################################################################
# Reduction lemmas for the companion matrix of x^3 - 5 over Z_25.

comp = PrimaryComponent.of(SystemSpec.from_rows([[0, 0, 5], [1, 0, 0], [0, 1, 0]], 25), 5, 2)
for rep in verify_reduction_lemmas(comp):
    print(rep)
