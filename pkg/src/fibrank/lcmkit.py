"""Least common multiples of runs: consecutive integers, consecutive
Fibonacci numbers, consecutive Lucas numbers.

A "run" is n, n+1, ..., n+k (k+1 terms).  The product of a run always
equals its lcm times a small cofactor; the cofactor for integer runs
follows a gcd recursion, and for k <= 6 everything has a closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm, prod

from .bigmath import fib, lucas
from .valuation import vp_lucas

FAMILIES = ("fib", "lucas")


@dataclass(frozen=True)
class LcmDecomposition:
    """product = lcm * cofactor for one run."""

    product: int
    lcm: int
    cofactor: int


def _check_run(n: int, k: int, *, k_min: int = 0) -> None:
    if n < 1:
        raise ValueError("run must start at n >= 1")
    if k < k_min:
        raise ValueError(f"run length parameter k must be >= {k_min}")


def _require_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")


def run_product(n: int, k: int) -> int:
    """n(n+1)...(n+k)."""
    _check_run(n, k)
    return prod(range(n, n + k + 1))


def g_rec(n: int, k: int) -> int:
    """Cofactor n(n+1)...(n+k) / [n, ..., n+k] via the gcd recursion.

    g_0 = g_1 = 1 and g_k = gcd(k!, (n+k) * g_{k-1}); no lcm is ever
    folded.  The cofactor always divides k!.

    >>> g_rec(2, 2)
    2
    """
    _check_run(n, k)
    g = 1
    factorial = 1
    for i in range(2, k + 1):
        factorial *= i
        g = gcd(factorial, (n + i) * g)
    return g


def lcm_run(n: int, k: int) -> int:
    """[n, n+1, ..., n+k] as product / g_rec; works for any k >= 0."""
    return run_product(n, k) // g_rec(n, k)


def lcm_run_closed(n: int, k: int) -> int:
    """[n, ..., n+k] for 1 <= k <= 6 from the closed-form denominators.

    >>> lcm_run_closed(2, 4)
    60
    """
    _check_run(n, k, k_min=1)
    if k > 6:
        raise ValueError("closed forms stop at k = 6; use lcm_run")
    p = run_product(n, k)
    if k == 1:
        return p
    if k == 2:
        return p // gcd(2, n)
    if k == 3:
        return p // (2 * gcd(3, n))
    if k == 4:
        return p // (2 * gcd(4, n) * gcd(3, n * (n + 1)))
    if k == 5:
        return p // (6 * gcd(5, n) * gcd(4, n * (n + 1)))
    return p // (12 * gcd(3, n) * gcd(5, n * (n + 1))
                 * gcd(4, (n + 2) * gcd(2, n * (n + 1) // 2)))


def _family_values(family: str, n: int, k: int) -> list[int]:
    evaluate = fib if family == "fib" else lucas
    return [evaluate(n + i) for i in range(k + 1)]


def lcm_fib_run(n: int, k: int) -> int:
    """[F_n, ..., F_{n+k}] for 1 <= k <= 6 without folding any lcm.

    With P the run product, the divisor is 1 for k <= 2 and otherwise a
    power of two times F_{gcd(n, k)}-style terms keyed on n mod 3 or
    n mod 4.

    >>> lcm_fib_run(1, 5)
    120
    """
    _check_run(n, k, k_min=1)
    if k > 6:
        raise ValueError("closed forms stop at k = 6")
    p = prod(_family_values("fib", n, k))
    if k <= 2:
        return p
    if k == 3:
        return p // fib(gcd(n, 3))
    if k == 4:
        d = fib(gcd(n, 4))
        return p // d if n % 3 == 1 else p // (2 * d)
    if k == 5:
        d = fib(gcd(n, 5))
        return p // (2 * d) if n % 4 in (1, 2) else p // (6 * d)
    d = fib(gcd(n * (n + 1), 5)) * fib(gcd(n, 6))
    return p // (2 * d) if n % 4 == 1 else p // (6 * d)


def lcm_lucas_run(n: int, k: int) -> int:
    """[L_n, ..., L_{n+k}] for 1 <= k <= 6 without folding any lcm.

    The k = 4 divisor uses F_{gcd(n-2, 4)}; for n in {1, 2} the gcd is
    taken on |n-2| with gcd(0, 4) = 4, which the direct-lcm tests pin
    down as the correct reading.

    >>> lcm_lucas_run(1, 2)
    12
    """
    _check_run(n, k, k_min=1)
    if k > 6:
        raise ValueError("closed forms stop at k = 6")
    p = prod(_family_values("lucas", n, k))
    if k <= 2:
        return p
    if k == 3:
        return p // fib(gcd(n, 3))
    if k == 4:
        d = fib(gcd(n - 2, 4))
        return p // d if n % 3 == 1 else p // (2 * d)
    if k == 5:
        return p // 6 if n % 4 in (1, 2) else p // 2
    d = 2 ** (vp_lucas(2, n).order + 1)
    return p // (3 * d) if n % 4 in (0, 1, 2) else p // d


def run_decomposition(family: str, n: int, k: int) -> LcmDecomposition:
    """Product, lcm and cofactor of one Fibonacci or Lucas run.

    Closed forms are used for k <= 6; larger k falls back to folding
    pairwise lcms over the exact big integers.
    """
    _require_family(family)
    _check_run(n, k, k_min=1)
    values = _family_values(family, n, k)
    product = prod(values)
    if k <= 6:
        run_lcm = lcm_fib_run(n, k) if family == "fib" else lcm_lucas_run(n, k)
    else:
        run_lcm = reduce(lcm, values)
    cofactor, remainder = divmod(product, run_lcm)
    if remainder:
        raise RuntimeError(
            f"lcm of the {family} run ({n}, k={k}) does not divide its product")
    return LcmDecomposition(product=product, lcm=run_lcm, cofactor=cofactor)


def cofactor_f(n: int, k: int, family: str = "fib") -> int:
    """Cofactor (run product) / (run lcm) for a Fibonacci or Lucas run.

    >>> cofactor_f(1, 5, "lucas")
    6
    """
    return run_decomposition(family, n, k).cofactor
