"""
Closed forms for g(t_n, t_{n+1}, t_{n+2}; s), t_n = n(n+1)/2.

Every square root here is an exact integer square root: floating point
mis-rounds right at perfect squares and pronic numbers, which is exactly where
delta_s, the bounds N_s and membership in the exception set flip.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ConditionNotMetError, DomainError, NotCoprimeError, UndefinedBoundError
from .genfrob import g_two_var


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls.EVEN if n % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class SDecomposition:
    """s = k(k+1) + i with 0 <= i <= 2k + 1."""

    s: int
    k: int
    i: int


@dataclass(frozen=True)
class ClosedParams:
    q: int
    c: int
    delta: int


@dataclass(frozen=True)
class ParityPair:
    parity: Parity
    x: int
    y: int


@dataclass(frozen=True)
class ReducedTriple:
    """(t_n, t_{n+1}/d1, t_{n+2}/d1) with d1 = gcd(t_{n+1}, t_{n+2})."""

    n: int
    t_n: int
    d1: int
    b: int
    c: int

    @property
    def elements(self) -> tuple[int, int, int]:
        return (self.t_n, self.b, self.c)


def _check_s(s: int) -> None:
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s}")


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")


def triangular_number(n: int) -> int:
    _check_n(n)
    return n * (n + 1) // 2


def triangular_triple(n: int) -> tuple[int, int, int]:
    return (triangular_number(n), triangular_number(n + 1), triangular_number(n + 2))


def reduced_triple(n: int) -> ReducedTriple:
    _check_n(n)
    if n % 2 == 0:
        d1, b, c = (n + 2) // 2, n + 1, n + 3
    else:
        d1, b, c = n + 2, (n + 1) // 2, (n + 3) // 2
    return ReducedTriple(n, triangular_number(n), d1, b, c)


def s_decompose(s: int) -> SDecomposition:
    _check_s(s)
    k = (isqrt(4 * s + 1) - 1) // 2
    return SDecomposition(s, k, s - k * (k + 1))


def closed_params(s: int) -> ClosedParams:
    """(q_s, c_s, delta_s) driving the main formula."""
    _check_s(s)
    r = isqrt(s)
    delta = 1 if s >= r * r + r else 0
    return ClosedParams(q=2 * r + 2 + delta, c=s - r * r - delta * r, delta=delta)


def xy_pair(s: int, parity: Parity | str) -> ParityPair:
    parity = Parity(parity)
    dec = s_decompose(s)
    k, i = dec.k, dec.i
    if parity is Parity.EVEN:
        x, y = (i, 2 * (k - i)) if i <= k else (i - k - 1, 4 * k - 2 * i + 3)
    else:
        x, y = (2 * i, k - i) if i <= k else (2 * (i - k) - 1, 2 * k - i + 1)
    return ParityPair(parity, x, y)


def n_bound(s: int, parity: Parity | str) -> int:
    """N_s: 6 floor(sqrt(s+1)) - 6 (even) or 6 floor((sqrt(4s+5) - 1)/2) - 3 (odd)."""
    _check_s(s)
    if Parity(parity) is Parity.EVEN:
        return 6 * isqrt(s + 1) - 6
    return 6 * ((isqrt(4 * s + 5) - 1) // 2) - 3


def n_bound_piecewise(s: int, parity: Parity | str) -> int:
    """N_s from the (k, i) decomposition; agrees with :func:`n_bound`."""
    dec = s_decompose(s)
    k, i = dec.k, dec.i
    if Parity(parity) is Parity.EVEN:
        return 6 * k - 6 if i <= k - 1 else 6 * k
    return 6 * k - 3 if i <= 2 * k else 6 * k + 3


def pronic_root(s: int) -> int | None:
    """k >= 1 with s = k(k+1), else None."""
    k = isqrt(s)
    return k if k >= 1 and k * (k + 1) == s else None


def square_root(s: int) -> int | None:
    """k >= 1 with s = k^2, else None."""
    k = isqrt(s)
    return k if k >= 1 and k * k == s else None


def in_B(s: int) -> bool:
    """True iff s >= 1 is a perfect square or a pronic number."""
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    return square_root(s) is not None or pronic_root(s) is not None


def relaxed_allowed(s: int) -> bool:
    """Whether n >= N_s (instead of n > N_s) is covered for this s."""
    return s <= 2 or not in_B(s)


def check_bound(n: int, s: int, strict: bool = True) -> None:
    """Raise DomainError unless n clears N_s for its parity.

    Strict mode requires n > N_s.  Relaxed mode accepts n >= N_s but only
    where :func:`relaxed_allowed` holds (s <= 2 or s not a square/pronic).
    """
    _check_n(n)
    parity = Parity.of(n)
    bound = n_bound(s, parity)
    if strict:
        if n <= bound:
            raise DomainError(f"need {parity.value} n > N_{s} = {bound}, got n = {n}")
        return
    if not relaxed_allowed(s):
        raise DomainError(f"relaxed bound is unproven for s = {s} (square or pronic)")
    if n < bound:
        raise DomainError(f"need {parity.value} n >= N_{s} = {bound}, got n = {n}")


def main_formula_numerator(n: int, s: int) -> tuple[int, int]:
    """(coefficient of n, constant) in g + 1 = (n+1)(n+2)/4 * (q n + const)."""
    p = closed_params(s)
    const = 6 * p.c
    if n % 2:
        const -= 3 * p.delta
    return p.q, const


def _quarter(num: int, n: int, s: int) -> int:
    if num % 4:
        raise ArithmeticError(f"numerator {num} not divisible by 4 at n = {n}, s = {s}")
    return num // 4


def _main_formula(n: int, s: int) -> int:
    q, const = main_formula_numerator(n, s)
    num = (n + 1) * (n + 2) * (q * n + const)
    return _quarter(num, n, s) - 1


def g_triangular_closed(n: int, s: int, strict: bool = True) -> int:
    """g(t_n, t_{n+1}, t_{n+2}; s) from the (q_s, c_s, delta_s) closed form."""
    check_bound(n, s, strict)
    return _main_formula(n, s)


def _reduced_formula(n: int, s: int) -> int:
    rt = reduced_triple(n)
    pair = xy_pair(s, Parity.of(n))
    return g_two_var(rt.b, rt.c, pair.x) + pair.y * rt.t_n


def g_reduced_closed(n: int, s: int, strict: bool = True) -> int:
    """g(t_n, t_{n+1}/d1, t_{n+2}/d1; s) = g(b, c; x_s) + y_s t_n."""
    check_bound(n, s, strict)
    return _reduced_formula(n, s)


def difference_case(n: int, s: int) -> str:
    """Which branch of the difference formula applies to (n, s)."""
    t = s + 1
    if not in_B(t):
        return "not_in_B"
    parity = Parity.of(n).value
    kind = "square" if square_root(t) is not None else "pronic"
    return f"{parity}_{kind}" if parity == "odd" else "even_in_B"


def g_difference_closed(n: int, s: int) -> int:
    """Predicted g(...; s+1) - g(...; s) for three consecutive triangular numbers."""
    _check_s(s)
    check_bound(n, s + 1, strict=True)
    t = s + 1
    base = (n + 1) * (n + 2)
    if not in_B(t):
        factor = 6
    else:
        sq = square_root(t)
        k = sq if sq is not None else pronic_root(t)
        if n % 2 == 0:
            factor = n - 6 * k + 6
        elif sq is not None:
            factor = n - 6 * k + 9
        else:
            factor = n - 6 * k + 3
    return _quarter(factor * base, n, s)


def remark_constants(s: int) -> tuple[int, int]:
    """(K_s^ev, K_s^od) = (floor(sqrt(s+1)) - 1, floor((sqrt(4s+5) - 1)/2))."""
    _check_s(s)
    return isqrt(s + 1) - 1, (isqrt(4 * s + 5) - 1) // 2


def general_triple_branch(A1: int, A2: int, A3: int, s: int) -> Parity:
    """Pick the branch whose ratio window contains A2 A3 / A1.

    Raises ConditionNotMetError naming the failed inequality, or
    UndefinedBoundError when the even window would need 1/K with K = 0.
    """
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    if min(A1, A2, A3) <= 1:
        raise ValueError(f"elements must exceed 1, got ({A1}, {A2}, {A3})")
    if math.gcd(A1, A2, A3) != 1:
        raise NotCoprimeError(f"gcd({A1}, {A2}, {A3}) != 1")
    if A1 % A2:
        raise ConditionNotMetError(f"A1 = {A1} is not a multiple of A2 = {A2}")
    ratio = Fraction(A2 * A3, A1)
    k = s_decompose(s).k
    k_ev, k_od = remark_constants(s)
    if ratio > 2:
        if k >= 1:
            if k_ev == 0:
                raise UndefinedBoundError(
                    f"even branch for s = {s} needs ratio < 2 + 1/K with K = 0"
                )
            upper = 2 + Fraction(1, k_ev)
            if not ratio < upper:
                raise ConditionNotMetError(
                    f"even branch: A2*A3/A1 = {ratio} is not < 2 + 1/{k_ev} = {upper}"
                )
        return Parity.EVEN
    if ratio == 2:
        raise ConditionNotMetError("even branch: A2*A3/A1 = 2 is not > 2")
    if not ratio > Fraction(1, 2):
        raise ConditionNotMetError(f"odd branch: A2*A3/A1 = {ratio} is not > 1/2")
    upper = Fraction(1) if k == 0 else Fraction(k_od, 2 * k_od - 1)
    if not ratio < upper:
        raise ConditionNotMetError(f"odd branch: A2*A3/A1 = {ratio} is not < {upper}")
    return Parity.ODD


def g_general_triple(A1: int, A2: int, A3: int, s: int) -> int:
    """g(A1, A2, A3; s) = g(A2, A3; x_s) + y_s A1 under the ratio conditions."""
    parity = general_triple_branch(A1, A2, A3, s)
    pair = xy_pair(s, parity)
    return g_two_var(A2, A3, pair.x) + pair.y * A1
