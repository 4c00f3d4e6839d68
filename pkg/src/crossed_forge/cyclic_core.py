"""Exact integer and modular arithmetic.

Residues are plain Python ints normalized into ``[0, n)``; Python integers
are unbounded, so no overflow handling is needed.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import NotInvertible


class BezoutWitness(NamedTuple):
    u: int
    v: int
    w: int
    d: int = 1


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(d, x, y)`` with ``a*x + b*y == d == gcd(|a|, |b|)``.

    >>> ext_gcd(4, 6)
    (2, -1, 1)
    >>> ext_gcd(0, 0)
    (0, 0, 0)
    """
    if a == 0 and b == 0:
        return 0, 0, 0
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def mod_inverse(a: int, n: int) -> int:
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    d, x, _ = ext_gcd(a % n, n)
    if d != 1:
        raise NotInvertible(a, n)
    return x % n


def mod_pow(base: int, exp: int, n: int) -> int:
    """``base**exp mod n``; a negative exponent inverts ``base`` first."""
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    if exp < 0:
        base, exp = mod_inverse(base, n), -exp
    return pow(base, exp, n)


def gcd3(a: int, b: int, c: int) -> int:
    return math.gcd(a, b, c)


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``|n|`` by trial division."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))
