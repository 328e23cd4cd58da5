"""Exact toolkit for mixed-integer linear extended formulations."""

from .lattice import (FlatDirection, LatticeFreeReport, Width, degenerate_normal, flat_direction,
                      lattice_free_check, width)
from .matching import (CompleteGraph, FacetCertificate, example_k3, example_k5, example_k7,
                       face_project_check, find_violated_facet, lift_inequality, matching_polytope_hrep,
                       matchings_enum, odd_sets, parity_milef, stacked_odd_set_milef)
from .milef import (InfeasibleError, Milef, Verification, integer_bounds, mih_brute_force, reparameterize,
                    separate_projection, slice_along, slice_disjunction, verify_milef)
from .pipeline import (EliminationTrace, NoViolatedFacetError, PipelineError, accounting_table,
                       eliminate_all, eliminate_one, lattice_free_body)
from .polyhedron import (EQ, LE, AffineHull, HPolyhedron, LinearConstraint, LpResult, LpStatus,
                         UnboundedError, VPolytope, affine_hull, eq, facet_enum, fourier_motzkin_project,
                         intersect_hyperplane, le, lp_optimize, poly_contains, remove_redundant, same_set,
                         vertex_enum)
from .ratlin import gcd_vector, hnf, lll_reduce, solve_affine, unimodular_completion

__version__ = "0.1.0"
