"""Dual bivariate Bernstein bases on the triangle: coefficient tables,
constrained least-squares degree reduction, and rational-patch approximation.

The central entry points are :func:`compute_table` (the O(n^4) block
recurrence for the symmetric dual-coefficient table, with optional boundary
constraints), :func:`reduce_degree` (weighted least-squares degree reduction
of polynomial or rational patches through that table), and the independent
verification routes in :mod:`dualbern.oracles`.
"""

from .approx import l2_distance, reduce_degree, weighted_products
from .domains import (
    AlphaParams,
    CoeffTable,
    ConstraintVector,
    IndexDomain,
    MultiIndex,
    gamma_set,
    omega,
    theta,
    theta_position,
    theta_size,
)
from .dualtable import compute_table, compute_table_symmetric
from .errors import (
    ConditioningError,
    ConvergenceError,
    DegenerateRecurrenceError,
    DomainError,
    DualbernError,
    FormatError,
    ParameterError,
)
from .patch import (
    TriPatch,
    bernstein_eval,
    bernstein_matrix,
    elevate_degree,
    patch_eval,
    weight_eval,
)
from .patchio import read_patch, read_table, write_patch, write_table
from .quadrature import jacobi_rule, triangle_rule

__version__ = "0.1.0"

__all__ = [
    "AlphaParams",
    "CoeffTable",
    "ConditioningError",
    "ConstraintVector",
    "ConvergenceError",
    "DegenerateRecurrenceError",
    "DomainError",
    "DualbernError",
    "FormatError",
    "IndexDomain",
    "MultiIndex",
    "ParameterError",
    "TriPatch",
    "bernstein_eval",
    "bernstein_matrix",
    "compute_table",
    "compute_table_symmetric",
    "elevate_degree",
    "gamma_set",
    "jacobi_rule",
    "l2_distance",
    "omega",
    "patch_eval",
    "read_patch",
    "read_table",
    "reduce_degree",
    "theta",
    "theta_position",
    "theta_size",
    "triangle_rule",
    "weight_eval",
    "weighted_products",
    "write_patch",
    "write_table",
    "__version__",
]
