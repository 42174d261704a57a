"""Exact arithmetic and decision procedures for graph inverse semigroups."""

from .clp import (ChainDescriptor, ClpReport, Decomposition, Violation, WitnessBundle,
                  classify_clp, decompose, matrix_unit_family, maximal_chain,
                  obstruction_witness, unary_subtree_from_chain)
from .compactness import (BicyclicWitness, TauCNeighborhood, CompactnessVerdict,
                          admits_compact_topology, check_condition_2, check_condition_3,
                          check_condition_4, check_condition_5, continuity_witness)
from .elements import (ZERO, GisElement, Pair, SizeOrInfinite, Zero, d_class_size,
                       d_equivalent, enumerate_elements, factorizations, fixed_factor_sets,
                       inv, is_idempotent, is_M_finite, mul, nat_leq, of_path, vertex)
from .errors import InvariantViolation, PreconditionError
from .graph import (Graph, GraphError, build_graph, cyclic_vertices, loops_at, reaches,
                    small_multigraphs)
from .io import (DocumentError, ExpressionError, GraphDocument, format_element, parse_element,
                 parse_graph, serialize_graph)
from .models import (bicyclic_relation_check, matrix_units_mul, rose_graph, unary_tree,
                     verify_matrix_units_iso)
from .paths import (Path, concat, incoming_paths, is_Ie_finite, make_path, paths_up_to,
                    strip_prefix)

__version__ = "0.1.0"
