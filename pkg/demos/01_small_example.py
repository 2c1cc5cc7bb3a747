"""
The smallest interesting example
================================

Build the poset of strictly increasing pairs between (1,3) and (3,4), look
at its cover relation, and compute its order complex together with the
usual face counts.
"""

from bsposets import BSBounds, HasseDiagram, order_complex, f_vector
from bsposets.cli import emit_dot
from bsposets.complex import minimal_nonfaces

b = BSBounds.parse("1,3", "3,4")
h = HasseDiagram.from_bounds(b)

print("elements:", [h.label(i) for i in range(len(h))])
for lo, hi in h.cover_pairs():
    print(f"  {lo} -> {hi}")

# (1,4) and (2,3) are the only incomparable pair, so the complex is two
# tetrahedra glued along the triangle {13, 24, 34}
delta = order_complex(h)
for facet in delta.sorted_facets():
    print("facet:", facet)

fh = f_vector(delta)
print("f =", fh.f, " h =", fh.h)
print("minimal non-faces:", [sorted(s) for s in minimal_nonfaces(delta)])

# Graphviz source for the Hasse diagram; render with `dot -Tpng`
print(emit_dot(h))
