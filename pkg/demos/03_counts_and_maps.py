"""
Counting, duality and shearing
==============================

Consecutive-form bounds (0..p) and (k..p+k) have binomially many elements
and multi-dimensional Catalan many maximal chains.  Reversing the order of
any poset in the family gives another member, and the consecutive-form
posets can be sheared into shorter sequences.
"""

from bsposets import (BSBounds, count_report, dual_bounds, facet_count_formula,
                      is_self_dual_arith, shear, vertex_count_formula)
from bsposets.poset import consecutive_bounds, count_maximal_chains, count_elements

print(" p  k  vertices  chains")
for p in range(4):
    for k in range(1, 4):
        b = consecutive_bounds(p, k)
        assert count_elements(b) == vertex_count_formula(p, k)
        assert count_maximal_chains(b) == facet_count_formula(p, k)
        print(f"{p:2d} {k:2d} {vertex_count_formula(p, k):9d} {facet_count_formula(p, k):7d}")

# formulas keep going far past anything enumerable
print("f(6, 8) =", facet_count_formula(6, 8))

# sandwich bounds for a non-consecutive poset; the exponent-p upper vertex
# bound fails already for (0,1)..(2,3)
r = count_report(BSBounds.parse("0,1", "2,3"))
print("v =", r.vertex_count, "corrected upper bound", r.v_hi, "exponent-p variant", r.printed_v_hi)

iso = dual_bounds(BSBounds.parse("1,3", "3,4"))
print("dual of", iso.source, "is", iso.target, "verified:", iso.verify())

for b in [BSBounds.parse("0,2,4", "3,5,7"), BSBounds.parse("1,3", "3,4")]:
    print(b, "self-dual by arithmetic:", is_self_dual_arith(b))

iso = shear(3, 2)
print("shear:", iso.source, "->", iso.target, "verified:", iso.verify())
