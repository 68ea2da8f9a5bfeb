"""Exact verification toolkit for the least-eigenvalue floor of Gram
matrices built from unit lower triangular (0,1)-patterns."""

from .bounds import (
    BoundsRow,
    DivisorBoundResult,
    GcdMatrixSpec,
    HongLoewyResult,
    SmithResult,
    bounds_table,
    divisor_matrix,
    divisor_matrix_bound_check,
    euler_phi,
    hong_loewy_check,
    jordan_totient,
    mattila_bases,
    mattila_bounds,
    mobius_sieve,
    power_gcd_matrix,
    smith_determinant_check,
)
from .charpoly import (
    CharPoly,
    ConvergenceError,
    PowerSums,
    compare_smallest_roots,
    faddeev_leverrier,
    jacobi_eigenvalues,
    newton_identities,
    power_sums,
    smallest_eigenvalue,
    smallest_root_newton,
    spectral_radius_power_iteration,
)
from .core import (
    GramMatrix,
    IntegerMatrix,
    LowerUnitMatrix,
    encode,
    from_index,
    gram,
    gram_factor,
    index_of,
    to_dense,
    tri,
    y0,
)
from .extremal import (
    fib_upto,
    fibonacci,
    sign_pattern_check,
    trace_equality_check,
    y0_inverse_closed,
    z0_inverse_closed,
)
from .inverse import (
    BoundWitness,
    fibonacci_bound_holds,
    gram_inverse,
    gram_inverse_batch,
    invert_batch,
    invert_unit_lower,
    invert_via_nilpotent,
    nilpotent_band_check,
)
from .search import (
    Checkpoint,
    CheckpointError,
    PartialResult,
    SearchReport,
    TIE_EPS,
    checkpoint_load,
    checkpoint_save,
    exhaustive_min,
    merge_partials,
    partition,
    scan_block,
    verify_conjecture,
    verify_uniqueness,
    y0_index,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsRow",
    "BoundWitness",
    "CharPoly",
    "Checkpoint",
    "CheckpointError",
    "ConvergenceError",
    "DivisorBoundResult",
    "GcdMatrixSpec",
    "GramMatrix",
    "HongLoewyResult",
    "IntegerMatrix",
    "LowerUnitMatrix",
    "PartialResult",
    "PowerSums",
    "SearchReport",
    "SmithResult",
    "TIE_EPS",
    "bounds_table",
    "checkpoint_load",
    "checkpoint_save",
    "compare_smallest_roots",
    "divisor_matrix",
    "divisor_matrix_bound_check",
    "encode",
    "euler_phi",
    "exhaustive_min",
    "faddeev_leverrier",
    "fib_upto",
    "fibonacci",
    "fibonacci_bound_holds",
    "from_index",
    "gram",
    "gram_factor",
    "gram_inverse",
    "gram_inverse_batch",
    "hong_loewy_check",
    "index_of",
    "invert_batch",
    "invert_unit_lower",
    "invert_via_nilpotent",
    "jacobi_eigenvalues",
    "jordan_totient",
    "mattila_bases",
    "mattila_bounds",
    "merge_partials",
    "mobius_sieve",
    "newton_identities",
    "nilpotent_band_check",
    "partition",
    "power_gcd_matrix",
    "power_sums",
    "scan_block",
    "sign_pattern_check",
    "smallest_eigenvalue",
    "smallest_root_newton",
    "smith_determinant_check",
    "spectral_radius_power_iteration",
    "to_dense",
    "trace_equality_check",
    "tri",
    "verify_conjecture",
    "verify_uniqueness",
    "y0",
    "y0_index",
    "y0_inverse_closed",
    "z0_inverse_closed",
]
