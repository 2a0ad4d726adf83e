"""Arbitrary-precision integer primitives.

Fibonacci and Lucas evaluation by fast doubling (plain and modular),
gcd/lcm, p-adic valuation of integers, and a deterministic primality
check used to validate arguments elsewhere in the package.

Conventions: F_0 = 0, F_1 = F_2 = 1 and L_0 = 2, L_1 = 1, L_2 = 3.
"""

from __future__ import annotations

import math

gcd = math.gcd
lcm = math.lcm


def _fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) by fast doubling."""
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fib(n: int) -> int:
    """F_n via fast doubling; O(log n) big-integer multiplications.

    >>> fib(10)
    55
    """
    if n < 0:
        raise ValueError("index must be non-negative")
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    """L_n = 2*F_{n+1} - F_n.

    >>> lucas(6)
    18
    """
    if n < 0:
        raise ValueError("index must be non-negative")
    a, b = _fib_pair(n)
    return 2 * b - a


def fib_iterative(n: int) -> int:
    """F_n by naive iteration of the recurrence; kept as a test oracle."""
    if n < 0:
        raise ValueError("index must be non-negative")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fib_pair_mod(n: int, m: int) -> tuple[int, int]:
    """(F_n mod m, F_{n+1} mod m) by fast doubling in residues."""
    if n < 0:
        raise ValueError("index must be non-negative")
    if m < 1:
        raise ValueError("modulus must be positive")
    if n == 0:
        return 0, 1 % m
    a, b = fib_pair_mod(n >> 1, m)
    c = a * (2 * b - a) % m
    d = (a * a + b * b) % m
    if n & 1:
        return d, (c + d) % m
    return c, d


def fib_mod(n: int, m: int) -> int:
    """F_n mod m without materializing F_n."""
    return fib_pair_mod(n, m)[0]


def v_int(p: int, n: int) -> int:
    """Largest e such that p**e divides n.

    n = 0 is rejected (the order would be infinite).
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    if n < 0:
        n = -n
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = ((d & -d).bit_length()) - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
