"""Structural divisibility and gcd identities, plus the brute-force
rank-of-apparition oracle.

All identity functions answer from index arithmetic alone; only the
returned gcd value itself (F_d or L_d) is ever evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .bigmath import fib, lucas
from .errors import BudgetExceededError, ScanBoundError

CASE_BOTH_ODD = "both quotients odd"
CASE_MIXED_PARITY = "m/d even, n/d odd"
CASE_TWO = "3|d, gives 2"
CASE_ONE = "3∤d, gives 1"


@dataclass(frozen=True)
class GcdCaseResult:
    """gcd value together with the identity case that produced it."""

    value: int
    case_label: str


def fib_divides(n: int, m: int) -> bool:
    """Whether F_n | F_m, decided as n | m.  Needs n >= 3.

    The index criterion fails for n in {1, 2} (F_1 = F_2 = 1 divides
    everything), so those are rejected rather than silently mishandled.

    >>> fib_divides(4, 12)
    True
    """
    if n < 3:
        raise ValueError("index criterion needs n >= 3")
    if m < 1:
        raise ValueError("m must be at least 1")
    return m % n == 0


def gcd_fib(m: int, n: int) -> int:
    """gcd(F_m, F_n) = F_{gcd(m, n)}.

    >>> gcd_fib(12, 18)
    8
    """
    if m < 1 or n < 1:
        raise ValueError("indices must be at least 1")
    return fib(gcd(m, n))


def lucas_divides_fib(n: int, m: int) -> bool:
    """Whether L_n | F_m, decided as 2n | m.  Needs n >= 2.

    >>> lucas_divides_fib(3, 12)
    True
    """
    if n < 2:
        raise ValueError("index criterion needs n >= 2")
    if m < 1:
        raise ValueError("m must be at least 1")
    return m % (2 * n) == 0


def gcd_lucas_lucas(m: int, n: int) -> GcdCaseResult:
    """gcd(L_m, L_n): L_d when both m/d and n/d are odd (d = gcd(m, n)),
    else 2 or 1 according to whether 3 | d.

    >>> gcd_lucas_lucas(3, 9).value
    4
    """
    if m < 1 or n < 1:
        raise ValueError("indices must be at least 1")
    d = gcd(m, n)
    if (m // d) % 2 == 1 and (n // d) % 2 == 1:
        return GcdCaseResult(lucas(d), CASE_BOTH_ODD)
    if d % 3 == 0:
        return GcdCaseResult(2, CASE_TWO)
    return GcdCaseResult(1, CASE_ONE)


def gcd_fib_lucas(m: int, n: int) -> GcdCaseResult:
    """gcd(F_m, L_n): L_d when m/d is even and n/d odd (d = gcd(m, n)),
    else 2 or 1 according to whether 3 | d.

    >>> gcd_fib_lucas(6, 3).value
    4
    """
    if m < 1 or n < 1:
        raise ValueError("indices must be at least 1")
    d = gcd(m, n)
    if (m // d) % 2 == 0 and (n // d) % 2 == 1:
        return GcdCaseResult(lucas(d), CASE_MIXED_PARITY)
    if d % 3 == 0:
        return GcdCaseResult(2, CASE_TWO)
    return GcdCaseResult(1, CASE_ONE)


def z_oracle(m: int, max_steps: int | None = None) -> int:
    """Order of appearance z(m): least i >= 1 with m | F_i, by scanning
    (F_i mod m, F_{i+1} mod m) with constant-size state.

    z(m) <= 6m always, so the scan is bounded by 6m and running past
    that is an internal arithmetic failure.  An optional max_steps below
    6m raises BudgetExceededError instead, so callers can cap the work.

    >>> z_oracle(10)
    15
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if m == 1:
        return 1
    hard = 6 * m
    cap = hard if max_steps is None else min(hard, max_steps)
    a, b = 1 % m, 1 % m  # F_1, F_2; nonzero since m > 1
    for i in range(3, cap + 1):
        a, b = b, (a + b) % m
        if b == 0:
            return i
    if cap < hard:
        raise BudgetExceededError(
            f"z({m}) not found within {cap} steps", budget=cap)
    raise ScanBoundError(f"no zero residue mod {m} within {hard} steps")
