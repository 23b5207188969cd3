"""Decision procedures and brute-force oracles for two-dimensional shifts of finite type."""

from .analysis import (
    AnalysisReport,
    DirectionalProduct,
    EmptyShiftError,
    analyze,
    anisotropy_check,
    directional_product,
    find_transitive_direction,
    is_connected_2d,
    is_doubly_transitive_dir,
    is_transitive_2d,
    is_transitive_dir,
    is_weak_mixing_dir,
    single_orbit_check,
)
from .budget import BudgetConfigError, BudgetExceeded
from .graph import Direction, Graph2D, InputError, SymbolSet, load_graph, swap_condition
from .matrices import (
    BinaryMatrix,
    CountMatrix,
    bool_product,
    closure,
    commutes,
    int_power,
    int_product,
    is_irreducible,
    is_permutation,
    is_primitive,
)
from .oracle import Pattern, enumerate_patterns, glue, periodic_search
from .products import (
    FactorizationResult,
    cartesian_factorize,
    cartesian_product,
    factorize_2d,
    product_2d,
    tensor_factorize,
    tensor_product,
)
from .strips import (
    StripCapError,
    build_strip_matrix,
    horizontal_doubly_transitive_upto,
    horizontal_transitive_upto,
    vertical_doubly_transitive_upto,
    vertical_transitive_upto,
    vertical_weak_mixing_check,
)
from .transitivity import BlockCertificate, is_transitive_1d, scc_decompose
from .verdict import Answer, Verdict

__all__ = [name for name in dir() if not name.startswith("_")]
