"""Generalized Frobenius numbers, with closed forms for three consecutive triangular numbers."""

from .errors import (
    CapExceededError,
    CapExhaustedError,
    ConditionNotMetError,
    DomainError,
    FrobeniusError,
    NotCoprimeError,
    UndefinedBoundError,
)
from .genfrob import (
    GFrobResult,
    Method,
    ReductionStep,
    beck_kifer_g,
    classify_shifted,
    g_search,
    g_search_many,
    g_two_var,
    oracle_g,
    reduction_step,
)
from .repcount import (
    CountTable,
    IntTuple,
    count_by_decomposition,
    count_prefix,
    count_representations,
)
from .triangular import (
    ClosedParams,
    Parity,
    ParityPair,
    ReducedTriple,
    SDecomposition,
    closed_params,
    g_difference_closed,
    g_general_triple,
    g_reduced_closed,
    g_triangular_closed,
    in_B,
    n_bound,
    reduced_triple,
    s_decompose,
    triangular_number,
    xy_pair,
)

__version__ = "0.1.0"
