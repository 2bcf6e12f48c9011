"""Exact engine for grid coefficient formulas, value dependences on full
intersections, support-polytope residues, and finite-plane line covers."""

from .cayley_bacharach import (CBRelation, HypersurfaceSystem,
                               HypersurfaceVerdict, SeparableSystem,
                               cb_coefficients, forced_value, min_cover_size,
                               verify_cb, verify_hypersurface_theorem)
from .errors import BudgetExceededError, CounterexampleError
from .expr import ParseError, parse_poly, poly_to_string
from .field import Field, FieldElement, FieldMismatchError, batch_inverse, is_prime
from .lines import (GridPoints, LineConfiguration, NormalizationReport,
                    check_problem1_bound, concurrency_point, grid_intersections,
                    normalize_biconcurrent, product_form, roots_of_unity_config,
                    search_green_covers, validate_green_cover,
                    verify_product_dependence)
from .multipoly import MultiPoly, format_poly, vanishing_poly_from_nodes
from .nullstellensatz import (GridSystem, check_classical_degree,
                              check_relaxed_support, coefficient_via_grid,
                              find_nonvanishing_witness, grid_weights)
from .polytope import LatticePolytope
from .projective import ProjLine, ProjPoint, line_through, meet
from .toric import (NewtonSystem, ToricForm, VertexCoefficients, VertexSplit,
                    default_samples, face_in_direction, is_unfolded,
                    minkowski_sum, newton_polytope, residue_sum_over_zeros,
                    solve_vertex_coefficients, vertex_residue, vertex_split,
                    weighted_vertex_combination)

__version__ = "0.1.0"
