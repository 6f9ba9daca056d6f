"""Exact counting of permutations by number of 132-pattern occurrences.

The package computes, for any budget r >= 0, the generating function of
permutations with exactly r occurrences of the pattern 132 -- as a
truncated power series with exact rational coefficients and as a closed
form over Q(x)[sqrt(1-4x)] -- together with the variant restricted to
permutations avoiding the increasing pattern 12...k, a brute-force
oracle over small symmetric groups, and exhaustive checks of the
structural facts the computation rests on.
"""

from .algebraic import AlgebraicFunction, PQForm, af_to_series, extract_pq, reassemble_pq
from .kernel import (
    CellDecomposition,
    CellOrderError,
    DecompositionError,
    Kernel,
    KernelShapeRecord,
    OccurrenceGraph,
    assemble,
    build_occurrence_graph,
    cell_decomposition,
    decompose,
    is_kernel_permutation,
    kernel_of,
    lis_northeast,
    order_feasible_cells,
    shape_record,
)
from .oracle import (
    DistributionTable,
    count_exact,
    count_exact_restricted,
    distribution,
)
from .perms import (
    Occurrence,
    Permutation,
    avoids_monotone,
    count_132,
    lis_length,
    make_permutation,
    occurrences_132,
    perm_from_str,
    perm_to_str,
    reduce_to_pattern,
)
from .series import PoleAtOriginError, PowerSeries, catalan_series, sqrt_one_minus_4x
from .shapes import (
    CatalogError,
    Census,
    ShapeCatalog,
    census,
    enumerate_kernel_shapes,
    exceptional_shape,
    load_catalog,
    save_catalog,
)
from .solver import (
    Solver,
    SolverError,
    occurrence_closed_form,
    occurrence_series,
    restricted_series,
)

__all__ = [
    "AlgebraicFunction",
    "CatalogError",
    "CellDecomposition",
    "CellOrderError",
    "Census",
    "DecompositionError",
    "DistributionTable",
    "Kernel",
    "KernelShapeRecord",
    "Occurrence",
    "OccurrenceGraph",
    "PQForm",
    "Permutation",
    "PoleAtOriginError",
    "PowerSeries",
    "ShapeCatalog",
    "Solver",
    "SolverError",
    "af_to_series",
    "assemble",
    "avoids_monotone",
    "build_occurrence_graph",
    "catalan_series",
    "cell_decomposition",
    "census",
    "count_132",
    "count_exact",
    "count_exact_restricted",
    "decompose",
    "distribution",
    "enumerate_kernel_shapes",
    "exceptional_shape",
    "extract_pq",
    "is_kernel_permutation",
    "kernel_of",
    "lis_length",
    "lis_northeast",
    "load_catalog",
    "make_permutation",
    "occurrence_closed_form",
    "occurrence_series",
    "occurrences_132",
    "order_feasible_cells",
    "perm_from_str",
    "perm_to_str",
    "reassemble_pq",
    "reduce_to_pattern",
    "restricted_series",
    "save_catalog",
    "shape_record",
    "sqrt_one_minus_4x",
]

__version__ = "0.1.0"
