"""
Shedding vertices and what happens when you remove one
======================================================

For lower (1,3,4) and upper (2,5,6) there are exactly six shedding
vertices.  We compute them, extract a vertex-decomposition certificate and
a shelling, and then check that deleting any shedding vertex leaves a poset
that no Boij-Söderberg poset with entries in a window of width 8 matches.
"""

from bsposets import (BSBounds, bs_membership_search, bs_order_complex,
                      deleted_poset, is_shelling, is_vertex_decomposable,
                      shedding_vertices, shelling_from_tree)
from bsposets.complex import sort_labels
from bsposets.decomp import h_vector_from_shelling

b = BSBounds.parse("1,3,4", "2,5,6")
delta = bs_order_complex(b)
print(len(delta.vertices), "vertices,", len(delta.facets), "facets")

sheds = sort_labels(shedding_vertices(delta))
print("shedding vertices:", sheds)

tree = is_vertex_decomposable(delta)
print("certificate root:", tree.vertex, "tree size:", tree.size())

order = shelling_from_tree(delta, tree)
print("shelling valid:", is_shelling(delta, order))
print("h-vector from the shelling:", h_vector_from_shelling(delta, order))

for label in sheds:
    v = tuple(int(x) for x in label.split(","))
    P = deleted_poset(b, v)
    found = bs_membership_search(P, window=8)
    print(f"delete {label}: {'matches ' + str(found[0]) if found else 'no match in window'}")
