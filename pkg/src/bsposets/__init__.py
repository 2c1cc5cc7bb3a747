"""Boij-Söderberg posets: lattice structure, order complexes and certificates."""

from .analysis import (CountReport, PosetIso, bs_membership_search, count_report,
                       deleted_poset, dual_bounds, facet_count_formula,
                       is_self_dual_arith, shear, vertex_count_formula)
from .complex import (FHVector, SimplicialComplex, bs_order_complex, cone,
                      downset_upset_split, f_vector, is_flag, join_complex,
                      minimal_nonfaces, order_complex)
from .decomp import (SheddingTree, check_certificate, find_rao, is_shelling,
                     is_vertex_decomposable, lex_atom_ordering,
                     shedding_vertices, shelling_from_tree, verify_rao)
from .errors import ResourceError, ValidationError
from .poset import (BSBounds, HasseDiagram, atoms, covers, enumerate_elements,
                    interval, join, leq, maximal_chains, meet,
                    poset_isomorphic, reduce_bounds)

__version__ = "0.1.0"
