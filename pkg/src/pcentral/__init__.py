"""Exact computations with Clifford algebras of p-central sets."""

from .arith import (
    CycloNum,
    EisensteinInt,
    FpScalar,
    UsageError,
    ValidationError,
    cyclo_mul,
    cyclo_root_power,
    eis_mul,
    eis_norm,
)
from .clifford import (
    CliffordElement,
    Decomposition,
    PCentralPresentation,
    TripleCase,
    UnsupportedError,
    change_generators,
    classify_triple,
    decompose,
    inverse,
    is_p_central,
    mul,
    pth_power,
    spans_p_central_space,
    star2,
    star3,
)
from .cubic import (
    CubicSolution,
    SymbolAlgebraModel,
    conjugate_and_cube,
    enumerate_solutions,
    gen_solution,
    gen_solution_raw,
    verify_core_identity,
    verify_solution,
)
from .fplinalg import AlternatingReduction, FpMatrix, mat_mul, rank_and_kernel, reduce_alternating
from .tournament import (
    MonomialClass,
    Tournament,
    build_tournament,
    diminish,
    find_3cycles,
    max_coherent_monomial_set,
    validate_propositions,
)

__version__ = "0.1.0"
