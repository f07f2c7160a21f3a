"""
Generalized Frobenius numbers g(A; s) for arbitrary tuples.

g(A; s) is the largest integer with at most ``s`` representations by A.  This
module holds the two-variable closed form, the brute-force window search used
as the oracle everywhere else, the gcd reduction that rewrites g(a_1, ..., a_k; s)
in terms of a smaller tuple, and an arithmetic classifier for two-variable
counts at shifted points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import CapExhaustedError, NotCoprimeError
from .repcount import IntTuple, TupleLike, as_tuple, count_prefix, default_cap


class Method(str, enum.Enum):
    CLOSED_TWO_VAR = "closed_two_var"
    ORACLE_SEARCH = "oracle_search"
    BECK_KIFER = "beck_kifer"


@dataclass(frozen=True)
class GFrobResult:
    value: int
    s: int
    method: Method
    witness_window: Optional[tuple[tuple[int, int], ...]] = None


@dataclass(frozen=True)
class ReductionStep:
    """Divide out ell = gcd(a_2, ..., a_k) from every element after the first."""

    ell: int
    original: IntTuple
    reduced: IntTuple

    def scale(self, value: int) -> int:
        """Map g of the reduced tuple back to g of the original one."""
        return self.ell * value + self.original[0] * (self.ell - 1)


def _require_coprime(a: int, b: int) -> None:
    if a < 1 or b < 1:
        raise ValueError(f"expected positive integers, got ({a}, {b})")
    if math.gcd(a, b) != 1:
        raise NotCoprimeError(f"gcd({a}, {b}) = {math.gcd(a, b)}, expected 1")


def g_two_var(a: int, b: int, s: int) -> int:
    """g(a, b; s) = (s + 1) a b - a - b for coprime a, b."""
    _require_coprime(a, b)
    if s < 0:
        raise ValueError("s must be non-negative")
    return (s + 1) * a * b - a - b


def _first_window(counts: np.ndarray, s: int, width: int) -> Optional[int]:
    """Start of the first run of ``width`` consecutive entries above ``s``.

    Returns None when the table is too short to contain such a run.
    """
    size = len(counts)
    low = np.flatnonzero(counts <= s)
    if low.size == 0:
        return 0 if width <= size else None
    if low[0] >= width:
        return 0
    gaps = np.diff(low)
    wide = np.flatnonzero(gaps > width)
    if wide.size:
        return int(low[wide[0]]) + 1
    start = int(low[-1]) + 1
    return start if start + width <= size else None


def g_search_many(
    A: TupleLike, s_values, cap: int | None = None
) -> dict[int, GFrobResult]:
    """Oracle g(A; s) for several ``s`` from one shared count table.

    Scans d(m; A) upward for the first window of min(A) consecutive values
    each having at least s + 1 representations.  Since d(m + a; A) >= d(m; A)
    for every element a, every integer past the window also has at least s + 1
    representations, so g(A; s) is the position just before the window (or -1
    when the window starts at 0).  The table doubles until every requested
    ``s`` has a window or the cap is hit.
    """
    A = as_tuple(A)
    s_values = sorted(set(int(s) for s in s_values))
    if not s_values:
        return {}
    if s_values[0] < 0:
        raise ValueError("s must be non-negative")
    cap = default_cap() if cap is None else cap
    width = min(A)
    limit = min(max(4 * max(A), 64 * width, 1024), cap - 1)
    results: dict[int, GFrobResult] = {}
    while True:
        table = count_prefix(limit, A, cap=cap)
        for s in s_values:
            if s in results:
                continue
            start = _first_window(table.counts, s, width)
            if start is None:
                continue
            window = tuple((m, table[m]) for m in range(start, start + width))
            results[s] = GFrobResult(start - 1, s, Method.ORACLE_SEARCH, window)
        if len(results) == len(s_values):
            return results
        if limit + 1 >= cap:
            missing = [s for s in s_values if s not in results]
            raise CapExhaustedError(
                f"no termination window for {A} with s in {missing} below cap {cap}"
            )
        limit = min(2 * limit + 1, cap - 1)


def g_search(A: TupleLike, s: int, cap: int | None = None) -> GFrobResult:
    """Oracle g(A; s) by brute-force counting; see :func:`g_search_many`."""
    return g_search_many(A, [s], cap)[s]


def oracle_g(A: TupleLike, s: int) -> int:
    """Plain-integer oracle, handy as the inner solver of :func:`beck_kifer_g`."""
    return g_search(A, s).value


def reduction_step(A: TupleLike) -> ReductionStep:
    A = as_tuple(A)
    ell = math.gcd(*A.elements[1:])
    reduced = (A[0],) + tuple(a // ell for a in A.elements[1:])
    return ReductionStep(ell, A, IntTuple(reduced))


def beck_kifer_g(
    A: TupleLike, s: int, inner: Callable[[IntTuple, int], int] = oracle_g
) -> int:
    """g(A; s) = ell * g(a_1, a_2/ell, ..., a_k/ell; s) + a_1 (ell - 1).

    ``inner`` solves the reduced problem; pass the oracle or any closed form.
    """
    step = reduction_step(A)
    return step.scale(inner(step.reduced, s))


def classify_shifted(a: int, b: int, s: int, c: int, j: int) -> int:
    """The i >= 0 with g(a, b; i - 1) < g(a, b; s) + j c <= g(a, b; i).

    When c is a multiple of a or b this i equals d(g(a, b; s) + j c; a, b).
    Computed from the closed form, so it works far beyond the oracle cap.
    """
    _require_coprime(a, b)
    if s < 0:
        raise ValueError("s must be non-negative")
    if c < 1 or (c % a and c % b):
        raise ValueError(f"c = {c} must be a positive multiple of {a} or {b}")
    v = g_two_var(a, b, s) + j * c
    if v < 0:
        raise ValueError(f"shifted value {v} is negative")
    # v <= (i + 1) a b - a - b  <=>  i + 1 >= (v + a + b) / (a b)
    return -(-(v + a + b) // (a * b)) - 1
