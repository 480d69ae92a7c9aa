"""Exact-arithmetic toolkit for exchangeable, finitely sampling-consistent
distributions on rooted binary tree shapes.

Everything is computed over arbitrary-precision rationals: shape enumeration
and induced-subtree densities, the marginalization map between leaf counts,
certified vertex lists of the finite-consistency polytopes, and exact
evaluation of the beta-splitting and multinomial model families.
"""

from .caps import DEFAULT_CAPS, ResourceCaps
from .density import (DensityMatrix, ShapeDistribution, density_matrix, density_row,
                      marginalize)
from .errors import CapExceeded, DomainError, ParseError
from .geometry import (PointSet, Polytope, affine_rank, certify_vertices,
                       contains_polytope, convex_hull_2d, convex_membership,
                       face_restrict, project_points)
from .linprog import INFEASIBLE, OPTIMAL, UNBOUNDED, LPResult, lp_feasible
from .models import (BETA_COMB, BETA_INFINITY, MultinomialParams, SplittingRule,
                     beta_distribution, beta_q, beta_rule, derive_lower_rule,
                     falling_factorial, markov_branching_distribution,
                     multinomial_build, multinomial_distribution, multinomial_prob,
                     parse_beta, uniform_leaf_params)
from .rational import Rational, format_decimal, format_rational, parse_rational
from .shapes import (LeafSubset, ShapeIndex, TreeShape, build_bicomb, build_comb,
                     build_comb_replace, build_complete, build_max_balanced,
                     count_pattern, count_pattern_scan, display_name,
                     enumerate_shapes, labeling_count, leaf, node, parse_shape,
                     pattern_counts, random_shape, restrict, serialize_shape,
                     shape_count)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
