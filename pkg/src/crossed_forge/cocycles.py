"""Symmetric normalized 2-cocycles on C_m via periodic profiles.

A profile is ``phi(0..m-1)`` with ``phi(0) = 0``, extended m-periodically,
valued in ``Z_n`` or in ``Z`` (``n = INF``).  With partial sums
``S_k = phi(0) + ... + phi(k-1)`` the cocycle is written additively as exponents
of a fixed generator of the target:

    f(x^k, x^l) = S_{k+l} - S_k - S_l
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvalidProfile, NotCocycle, NotNormalized, NotSymmetric, TooLarge

INF = math.inf

DEFAULT_ENUMERATION_BUDGET = 2**16

CocycleTable = tuple[tuple[int, ...], ...]


def _check_target(n) -> None:
    if n == INF:
        return
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InvalidProfile(f"target order must be an integer >= 2 or INF, got {n!r}")


@dataclass(frozen=True)
class CocycleProfile:
    m: int
    n: int | float
    phi: tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 2:
            raise InvalidProfile(f"period m must be an integer >= 2, got {self.m!r}")
        _check_target(self.n)
        phi = tuple(int(v) for v in self.phi)
        if len(phi) != self.m:
            raise InvalidProfile(f"phi must list {self.m} values, got {len(phi)}")
        if phi[0] != 0:
            raise InvalidProfile("phi(0) must be 0")
        if not self.infinite:
            phi = tuple(v % self.n for v in phi)
        object.__setattr__(self, "phi", phi)

    @property
    def infinite(self) -> bool:
        return self.n == INF

    def __call__(self, k: int) -> int:
        return self.phi[k % self.m]

    def sums(self) -> PartialSums:
        return partial_sums(self)

    @classmethod
    def zero(cls, m: int, n) -> CocycleProfile:
        return cls(m, n, (0,) * m)


@dataclass(frozen=True)
class PartialSums:
    """``S_0..S_m`` as exact integers; ``S_k`` for other k via full periods."""

    m: int
    n: int | float
    values: tuple[int, ...]

    @property
    def S_m(self) -> int:
        return self.values[self.m]

    @property
    def S_m_mod(self) -> int:
        return self.S_m if self.n == INF else self.S_m % self.n

    def __getitem__(self, k: int) -> int:
        q, r = divmod(k, self.m)
        return q * self.values[self.m] + self.values[r]

    def __len__(self) -> int:
        return len(self.values)


def partial_sums(p: CocycleProfile) -> PartialSums:
    return PartialSums(p.m, p.n, tuple(itertools.accumulate(p.phi, initial=0)))


def cocycle_value(p: CocycleProfile, S: PartialSums, k: int, l: int) -> int:
    v = S[k + l] - S[k] - S[l]
    return v if p.infinite else v % p.n


def profile_to_cocycle(p: CocycleProfile) -> CocycleTable:
    """Exponent table ``f[k][l]`` for ``0 <= k, l < m``."""
    S = partial_sums(p)
    m = p.m
    return tuple(tuple(cocycle_value(p, S, k, l) for l in range(m)) for k in range(m))


def check_symmetric_cocycle(f: Sequence[Sequence[int]], n) -> None:
    """Raise unless ``f`` is a symmetric normalized 2-cocycle on C_m in Z_n (or Z)."""
    m = len(f)
    red = (lambda v: v) if n == INF else (lambda v: v % n)
    for k in range(m):
        if len(f[k]) != m:
            raise InvalidProfile("cocycle table must be square")
    for k in range(m):
        if red(f[0][k]) != 0 or red(f[k][0]) != 0:
            raise NotNormalized(f"f(1, x^{k}) or f(x^{k}, 1) is not the identity")
    for k in range(m):
        for l in range(k + 1, m):
            if red(f[k][l] - f[l][k]) != 0:
                raise NotSymmetric(k, l)
    for k in range(m):
        for l in range(m):
            kl = (k + l) % m
            for q in range(m):
                if red(f[k][l] + f[kl][q] - f[l][q] - f[k][(l + q) % m]) != 0:
                    raise NotCocycle(k, l, q)


def cocycle_to_profile(f: Sequence[Sequence[int]], n) -> CocycleProfile:
    """Inverse of :func:`profile_to_cocycle`: reads ``phi(k) = f(x, x^k)``."""
    _check_target(n)
    m = len(f)
    if m < 2:
        raise InvalidProfile("cocycle must live on C_m with m >= 2")
    check_symmetric_cocycle(f, n)
    p = CocycleProfile(m, n, tuple(f[1][k] for k in range(m)))
    back = profile_to_cocycle(p)
    red = (lambda v: v) if n == INF else (lambda v: v % n)
    for k in range(m):
        for l in range(m):
            if back[k][l] != red(f[k][l]):
                raise NotCocycle(k, l, 0)
    return p


def profile_count(m: int, n: int) -> int:
    return n ** (m - 1)


def enumerate_profiles(m: int, n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[CocycleProfile]:
    """All of ``Sigma_{m,n}`` in lexicographic order of ``phi(1..m-1)``."""
    if n == INF:
        raise InvalidProfile("cannot enumerate profiles with an infinite target")
    CocycleProfile.zero(m, n)  # parameter check
    size = profile_count(m, n)
    if size > budget:
        raise TooLarge(size, budget, f"Sigma_({m},{n})")
    return (CocycleProfile(m, n, (0,) + rest) for rest in itertools.product(range(n), repeat=m - 1))
