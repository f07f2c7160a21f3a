"""
Exact representation counts d(n; A).

d(n; A) is the number of tuples (x_1, ..., x_k) of non-negative integers with
a_1 x_1 + ... + a_k x_k = n.  Everything else in the package is checked
against the tables built here.

The batch kernel is unbounded-knapsack counting: for each element ``a`` the
update ``counts[m] += counts[m - a]`` is applied in ascending ``m``.  That
recurrence is a cumulative sum along each residue class mod ``a``, which numpy
does in one call after a reshape.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import CapExceededError, NotCoprimeError

#: Default maximum table size (entries) for the counting oracle.
DEFAULT_CAP = 10**8

_INT64_SAFE = 2**63 - 1


def default_cap() -> int:
    """Oracle cap, overridable with the ``FROB_CAP`` environment variable."""
    raw = os.environ.get("FROB_CAP")
    if raw is None:
        return DEFAULT_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"FROB_CAP must be a positive integer, got {raw!r}")
    return cap


class IntTuple:
    """An ordered tuple of positive integers with overall gcd 1.

    Elements are kept exactly as given: no sorting and no deduplication, since
    d(n; 3, 6, 10) and d(n; 3, 10) differ.  Use :meth:`unchecked` for
    intermediate tuples whose coprimality the caller vouches for (for example
    the length-1 tuple ``(1,)``).
    """

    __slots__ = ("_elements",)

    def __init__(self, elements: Iterable[int]):
        elems = _positive_ints(elements)
        if len(elems) < 2:
            raise ValueError("a tuple needs at least two elements; use IntTuple.unchecked")
        if math.gcd(*elems) != 1:
            raise NotCoprimeError(f"gcd{elems} = {math.gcd(*elems)}, expected 1")
        self._elements = elems

    @classmethod
    def unchecked(cls, elements: Iterable[int]) -> "IntTuple":
        obj = cls.__new__(cls)
        obj._elements = _positive_ints(elements)
        return obj

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __getitem__(self, idx):
        return self._elements[idx]

    def __eq__(self, other) -> bool:
        if isinstance(other, IntTuple):
            return self._elements == other._elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"IntTuple{self._elements}"


TupleLike = Union[IntTuple, Sequence[int]]


def _positive_ints(elements: Iterable[int]) -> tuple[int, ...]:
    elems = tuple(int(a) for a in elements)
    if not elems:
        raise ValueError("empty tuple")
    if any(a < 1 for a in elems):
        raise ValueError(f"tuple elements must be positive, got {elems}")
    return elems


def as_tuple(A: TupleLike) -> IntTuple:
    """Coerce a plain sequence into a validated :class:`IntTuple`."""
    return A if isinstance(A, IntTuple) else IntTuple(A)


@dataclass(frozen=True)
class CountTable:
    """d(m; A) for every 0 <= m <= limit.  Immutable once built."""

    tuple: IntTuple
    limit: int
    counts: np.ndarray

    def __getitem__(self, m: int) -> int:
        return int(self.counts[m])

    def __len__(self) -> int:
        return self.limit + 1

    def tolist(self) -> list[int]:
        return [int(c) for c in self.counts]


def _count_upper_bound(limit: int, elems: tuple[int, ...]) -> int:
    # Free choice of every coefficient but the one for the smallest element.
    rest = sorted(elems)[1:]
    bound = 1
    for a in rest:
        bound *= limit // a + 1
    return bound


def _check_cap(limit: int, cap: int | None) -> None:
    cap = default_cap() if cap is None else cap
    if limit + 1 > cap:
        raise CapExceededError(
            f"table of {limit + 1} entries exceeds the oracle cap of {cap}; "
            "use a closed form or raise the cap (FROB_CAP)"
        )


def count_prefix(limit: int, A: TupleLike, cap: int | None = None) -> CountTable:
    """Build the table d(0; A), ..., d(limit; A) in one O(k * limit) pass."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    A = as_tuple(A)
    _check_cap(limit, cap)
    # int64 is exact while every count fits; otherwise fall back to Python ints.
    exact64 = _count_upper_bound(limit, A.elements) <= _INT64_SAFE
    dtype = np.int64 if exact64 else object
    size = limit + 1
    counts = np.zeros(size, dtype=dtype)
    counts[0] = 1
    for a in A:
        if a > limit:
            continue
        rows = -(-size // a)
        buf = np.zeros(rows * a, dtype=dtype)
        buf[:size] = counts
        counts = buf.reshape(rows, a).cumsum(axis=0).reshape(-1)[:size]
    counts = np.ascontiguousarray(counts)
    counts.flags.writeable = False
    return CountTable(A, limit, counts)


def count_representations(n: int, A: TupleLike, cap: int | None = None) -> int:
    """Exact d(n; A)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return count_prefix(n, A, cap)[n]


def _two_term_count(r: int, b: int, c: int, c_inv: int) -> int:
    """Number of (y, z) >= 0 with b*y + c*z = r, for coprime b, c."""
    if r < 0:
        return 0
    zmax = r // c
    z0 = (r * c_inv) % b  # smallest z >= 0 with c*z = r (mod b)
    if z0 > zmax:
        return 0
    return (zmax - z0) // b + 1


def count_by_decomposition(m: int, n: int, cap: int | None = None) -> int:
    """d(m; t_n, t_{n+1}/d1, t_{n+2}/d1) by slicing off multiples of t_n.

    Sums two-variable counts d(m - j t_n; t_{n+1}/d1, t_{n+2}/d1) over
    0 <= j <= m // t_n.  Each two-variable count is solved by modular
    arithmetic, so this path shares nothing with :func:`count_prefix`.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if n < 1:
        raise ValueError("n must be positive")
    _check_cap(m, cap)
    tn = n * (n + 1) // 2
    d1 = math.gcd((n + 1) * (n + 2) // 2, (n + 2) * (n + 3) // 2)
    b = (n + 1) * (n + 2) // 2 // d1
    c = (n + 2) * (n + 3) // 2 // d1
    c_inv = pow(c, -1, b) if b > 1 else 0
    return sum(_two_term_count(m - j * tn, b, c, c_inv) for j in range(m // tn + 1))
