"""Exact lattice polytope valuations: Ehrhart expansions, the discrete Steiner
point, and the SL_n(Z) covariant Minkowski valuations on lattice polytopes."""
from .decompositions import (CellDecomposition, ValuationQuadruple, corner_split,
                             cube_triangulation, grid_decomposition, inclusion_exclusion_check,
                             prism_triangulation, quadruples_library)
from .ehrhart import (count, dilate_count, discrete_moment, discrete_steiner, dst, ehrhart,
                      enumerate_lattice_points, moment_expansion)
from .exact import Polynomial, UnimodularMap, lagrange_interpolate, random_unimodular
from .operators import (OperatorSpec, contra_z_ab_2d, difference_body, homogeneous_part,
                        projection_body, rotate90, z_ab)
from .polytope import (HalfspaceSystem, Polytope, UnboundedError, centroid, facet_area_vectors,
                       facet_system, intersect, minkowski_sum, standard_simplex, unit_cube,
                       vertex_enumeration, volume)
from .suites import SuiteReport, random_lattice_polytope, run_suites

__version__ = "0.1.0"
