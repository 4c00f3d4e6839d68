"""Cyclic-by-cyclic extension families with exact normal-form arithmetic.

Each family stores elements as a pair ``(p, q)`` of exponents in a fixed
normal form and multiplies them by a closed formula derived from the
presentation:

============================  ===========  =====================================
family                        normal form  product ``(p, q)(r, s)``
============================  ===========  =====================================
``Holder(n, m, i, j)``        a^p b^q      ``(p + r j*^q + i [(q+s)/m], q + s)``
``FinByInf(n, t)``            g^p a^q      ``(p + r, q t^r + s)``
``InfByFinAbelian(n, t)``     h^p g^q      ``(p + r, q + s + t [(p+r)/n])``
``InfByFinFlip(n)``           h^p g^q      ``(p + r, q (-1)^r + s)``
``ZxZ()``                     g2^p g1^q    ``(p + r, q + s)``
``KleinBottle()``             g2^p g1^q    ``(p + r, q (-1)^r + s)``
``TwistedFinite(n, m, phi)``  (a^u, x^k)   ``(u + u' + S_{k+k'} - S_k - S_k', k + k')``
``TwistedInfinite(m, phi)``   (g^u, x^k)   same, first component in Z
============================  ===========  =====================================

``j*`` is the inverse of ``j`` mod n and ``[.]`` is floor division.  Residue
components are reduced; the others are unbounded integers.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from typing import ClassVar, Iterator, NamedTuple

import numpy as np

from .cocycles import INF, CocycleProfile, PartialSums, partial_sums
from .cyclic_core import divisors, mod_inverse, mod_pow
from .errors import FamilyError, HolderCongruenceFailed, InfiniteFamily, NotCoprime, OddOrderFlip
from .table import FiniteGroupTable


class FamilyElement(NamedTuple):
    p: int
    q: int


def _check_int(name: str, value, minimum: int | None = None) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FamilyError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise FamilyError(f"{name} must be >= {minimum}, got {value}")


class GroupFamily:
    """Shared element arithmetic; subclasses supply the normal form and product."""

    kind: ClassVar[str]
    finite: ClassVar[bool] = False

    def validate(self) -> GroupFamily:
        return self

    # normal form ---------------------------------------------------------

    def is_normal(self, e: FamilyElement) -> bool:
        raise NotImplementedError

    def check(self, e) -> FamilyElement:
        try:
            e = FamilyElement(*(operator.index(v) for v in e))
        except TypeError:
            raise FamilyError(f"{e!r} is not a pair of integers") from None
        if not self.is_normal(e):
            raise FamilyError(f"{tuple(e)} is not in normal form for {self!r}")
        return e

    # arithmetic ----------------------------------------------------------

    def identity(self) -> FamilyElement:
        return FamilyElement(0, 0)

    def _mul(self, x: FamilyElement, y: FamilyElement) -> FamilyElement:
        raise NotImplementedError

    def _inv(self, x: FamilyElement) -> FamilyElement:
        raise NotImplementedError

    def multiply(self, e1, e2) -> FamilyElement:
        return self._mul(self.check(e1), self.check(e2))

    def inverse(self, e) -> FamilyElement:
        return self._inv(self.check(e))

    def power(self, e, k: int) -> FamilyElement:
        e = self.check(e)
        if k < 0:
            e, k = self._inv(e), -k
        result = self.identity()
        while k:
            if k & 1:
                result = self._mul(result, e)
            e = self._mul(e, e)
            k >>= 1
        return result

    def word(self, *factors: tuple[str, int]) -> FamilyElement:
        """Evaluate a word like ``("a", 2), ("b", -1)`` in the named generators."""
        gens = self.generators()
        result = self.identity()
        for name, k in factors:
            result = self._mul(result, self.power(gens[name], k))
        return result

    def generators(self) -> dict[str, FamilyElement]:
        raise NotImplementedError

    def relations(self) -> list[tuple[str, FamilyElement, FamilyElement]]:
        """Defining relations as ``(text, lhs, rhs)`` evaluated in normal form."""
        raise NotImplementedError

    def _order_by_divisors(self, e: FamilyElement, bound: int) -> int:
        for d in divisors(bound):
            if self.power(e, d) == self.identity():
                return d
        raise AssertionError(f"{e} has no order dividing {bound}")

    def element_order(self, e) -> int | float:
        """Order of ``e``; ``INF`` for elements of infinite order."""
        raise NotImplementedError

    # finite families -----------------------------------------------------

    @property
    def order(self) -> int | float:
        return INF

    def elements(self) -> list[FamilyElement]:
        raise InfiniteFamily(f"{self!r} is infinite")

    def index(self, e: FamilyElement) -> int:
        raise InfiniteFamily(f"{self!r} is infinite")

    def to_table(self) -> FiniteGroupTable:
        elems = self.elements()
        table = [[self.index(self._mul(x, y)) for y in elems] for x in elems]
        return FiniteGroupTable(table, tuple(self.format_element(e) for e in elems))

    def format_element(self, e: FamilyElement) -> str:
        p, q = e
        return f"({p},{q})"


def validate_family(fam: GroupFamily) -> GroupFamily:
    return fam.validate()


# finite by finite --------------------------------------------------------


def holder_conditions(n: int, m: int, i: int, j: int) -> tuple[bool, bool]:
    """``(i(j-1) = 0 mod n, j^m = 1 mod n)``."""
    return (i * (j - 1)) % n == 0, pow(j, m, n) == 1 % n


@dataclass(frozen=True)
class Holder(GroupFamily):
    """``<a, b | a^n = 1, b^m = a^i, b^-1 a b = a^j>`` of order ``n m``."""

    n: int
    m: int
    i: int
    j: int
    kind: ClassVar[str] = "holder"
    finite: ClassVar[bool] = True
    j_inv: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.validate()
        object.__setattr__(self, "j_inv", mod_inverse(self.j, self.n))

    def validate(self) -> Holder:
        for name in ("n", "m"):
            _check_int(name, getattr(self, name), 2)
        for name in ("i", "j"):
            _check_int(name, getattr(self, name))
            if not 0 <= getattr(self, name) < self.n:
                raise FamilyError(f"{name} must lie in [0, n), got {getattr(self, name)}")
        first, second = holder_conditions(self.n, self.m, self.i, self.j)
        if not first:
            raise HolderCongruenceFailed("i(j-1) = 0 mod n", f"{self.i}*({self.j}-1) is not 0 mod {self.n}")
        if not second:
            raise HolderCongruenceFailed("j^m = 1 mod n", f"{self.j}^{self.m} is not 1 mod {self.n}")
        return self

    def is_normal(self, e):
        return 0 <= e.p < self.n and 0 <= e.q < self.m

    def _mul(self, x, y):
        n, m = self.n, self.m
        carry, q = divmod(x.q + y.q, m)
        return FamilyElement((x.p + y.p * pow(self.j_inv, x.q, n) + self.i * carry) % n, q)

    def _inv(self, x):
        n, m = self.n, self.m
        s = (-x.q) % m
        carry = (x.q + s) // m
        return FamilyElement((-(x.p + self.i * carry) * pow(self.j, x.q, n)) % n, s)

    def generators(self):
        return {"a": FamilyElement(1 % self.n, 0), "b": FamilyElement(0, 1 % self.m)}

    def relations(self):
        return [
            ("a^n = 1", self.word(("a", self.n)), self.identity()),
            ("b^m = a^i", self.word(("b", self.m)), self.word(("a", self.i))),
            ("b^-1 a b = a^j", self.word(("b", -1), ("a", 1), ("b", 1)), self.word(("a", self.j))),
        ]

    def element_order(self, e):
        return self._order_by_divisors(self.check(e), self.order)

    @property
    def order(self) -> int:
        return self.n * self.m

    def elements(self):
        return [FamilyElement(p, q) for p in range(self.n) for q in range(self.m)]

    def index(self, e):
        return e.p * self.m + e.q

    def to_table(self) -> FiniteGroupTable:
        n, m = self.n, self.m
        idx = np.arange(n * m)
        p, q = idx // m, idx % m
        jpow = np.array([pow(self.j_inv, k, n) for k in range(m)], dtype=np.int64)
        qs = q[:, None] + q[None, :]
        new_p = (p[:, None] + p[None, :] * jpow[q][:, None] + self.i * (qs // m)) % n
        return FiniteGroupTable(new_p * m + qs % m, tuple(self.format_element(e) for e in self.elements()))

    def format_element(self, e):
        p, q = e
        return f"a^{p}b^{q}"


# finite by infinite ------------------------------------------------------


@dataclass(frozen=True)
class FinByInf(GroupFamily):
    """``<a, g | a^n = 1, g^-1 a g = a^t>`` with ``gcd(t, n) = 1``; normal form g^p a^q."""

    n: int
    t: int
    kind: ClassVar[str] = "fin_by_inf"

    def __post_init__(self):
        self.validate()

    def validate(self):
        _check_int("n", self.n, 2)
        _check_int("t", self.t)
        if math.gcd(self.t, self.n) != 1:
            raise NotCoprime(f"gcd(t, n) = gcd({self.t}, {self.n}) = {math.gcd(self.t, self.n)} != 1")
        return self

    def is_normal(self, e):
        return 0 <= e.q < self.n

    def _mul(self, x, y):
        return FamilyElement(x.p + y.p, (x.q * mod_pow(self.t, y.p, self.n) + y.q) % self.n)

    def _inv(self, x):
        return FamilyElement(-x.p, (-x.q * mod_pow(self.t, -x.p, self.n)) % self.n)

    def generators(self):
        return {"g": FamilyElement(1, 0), "a": FamilyElement(0, 1)}

    def relations(self):
        return [
            ("a^n = 1", self.word(("a", self.n)), self.identity()),
            ("g^-1 a g = a^t", self.word(("g", -1), ("a", 1), ("g", 1)), self.word(("a", self.t))),
        ]

    def element_order(self, e):
        e = self.check(e)
        if e.p != 0:
            return INF
        return self.n // math.gcd(e.q, self.n)


# infinite by finite ------------------------------------------------------


@dataclass(frozen=True)
class InfByFinAbelian(GroupFamily):
    """``<g, h | gh = hg, h^n = g^t>``; normal form h^p g^q, p in Z_n."""

    n: int
    t: int
    kind: ClassVar[str] = "inf_by_fin_abelian"

    def __post_init__(self):
        self.validate()

    def validate(self):
        _check_int("n", self.n, 2)
        _check_int("t", self.t)
        return self

    def is_normal(self, e):
        return 0 <= e.p < self.n

    def _mul(self, x, y):
        carry, p = divmod(x.p + y.p, self.n)
        return FamilyElement(p, x.q + y.q + self.t * carry)

    def _inv(self, x):
        p = (-x.p) % self.n
        return FamilyElement(p, -x.q - self.t * ((x.p + p) // self.n))

    def generators(self):
        return {"h": FamilyElement(1, 0), "g": FamilyElement(0, 1)}

    def relations(self):
        return [
            ("gh = hg", self.word(("g", 1), ("h", 1)), self.word(("h", 1), ("g", 1))),
            ("h^n = g^t", self.word(("h", self.n)), self.word(("g", self.t))),
        ]

    def theta(self, e) -> int:
        """Homomorphism to Z with h -> t, g -> n."""
        e = self.check(e)
        return e.p * self.t + e.q * self.n

    def from_word(self, r: int, s: int) -> FamilyElement:
        """Normal form of ``h^r g^s`` for arbitrary integers r, s."""
        carry, p = divmod(r, self.n)
        return FamilyElement(p, s + self.t * carry)

    def element_order(self, e):
        e = self.check(e)
        if self.theta(e) != 0:
            return INF
        # the kernel of theta is cyclic of order gcd(n, t)
        return self._order_by_divisors(e, math.gcd(self.n, self.t))


@dataclass(frozen=True)
class InfByFinFlip(GroupFamily):
    """``<g, h | h^n = 1, ghg = h>`` for even n; normal form h^p g^q."""

    n: int
    kind: ClassVar[str] = "inf_by_fin_flip"

    def __post_init__(self):
        self.validate()

    def validate(self):
        _check_int("n", self.n, 2)
        if self.n % 2:
            raise OddOrderFlip(f"n must be even, got {self.n}")
        return self

    def is_normal(self, e):
        return 0 <= e.p < self.n

    def _mul(self, x, y):
        return FamilyElement((x.p + y.p) % self.n, x.q * (-1) ** (y.p % 2) + y.q)

    def _inv(self, x):
        return FamilyElement((-x.p) % self.n, -x.q * (-1) ** (x.p % 2))

    def generators(self):
        return {"h": FamilyElement(1, 0), "g": FamilyElement(0, 1)}

    def relations(self):
        return [
            ("h^n = 1", self.word(("h", self.n)), self.identity()),
            ("ghg = h", self.word(("g", 1), ("h", 1), ("g", 1)), self.word(("h", 1))),
        ]

    def element_order(self, e):
        e = self.check(e)
        if e.p % 2 == 0:
            if e.q != 0:
                return INF
            return self.n // math.gcd(e.p, self.n)
        # e^2 = h^(2p), and odd powers keep an odd h-exponent
        return 2 * (self.n // math.gcd(2 * e.p, self.n))


# infinite by infinite ----------------------------------------------------


@dataclass(frozen=True)
class ZxZ(GroupFamily):
    """``<g1, g2 | g1 g2 = g2 g1>``; normal form g2^p g1^q."""

    kind: ClassVar[str] = "zxz"

    def is_normal(self, e):
        return True

    def _mul(self, x, y):
        return FamilyElement(x.p + y.p, x.q + y.q)

    def _inv(self, x):
        return FamilyElement(-x.p, -x.q)

    def generators(self):
        return {"g2": FamilyElement(1, 0), "g1": FamilyElement(0, 1)}

    def relations(self):
        return [("g1 g2 = g2 g1", self.word(("g1", 1), ("g2", 1)), self.word(("g2", 1), ("g1", 1)))]

    def element_order(self, e):
        return 1 if self.check(e) == self.identity() else INF


@dataclass(frozen=True)
class KleinBottle(GroupFamily):
    """``<g1, g2 | g1 g2 g1 = g2>``; normal form g2^p g1^q."""

    kind: ClassVar[str] = "klein_bottle"

    def is_normal(self, e):
        return True

    def _mul(self, x, y):
        return FamilyElement(x.p + y.p, x.q * (-1) ** (y.p % 2) + y.q)

    def _inv(self, x):
        return FamilyElement(-x.p, -x.q * (-1) ** (x.p % 2))

    def generators(self):
        return {"g2": FamilyElement(1, 0), "g1": FamilyElement(0, 1)}

    def relations(self):
        return [("g1 g2 g1 = g2", self.word(("g1", 1), ("g2", 1), ("g1", 1)), self.word(("g2", 1)))]

    def element_order(self, e):
        # torsion-free: the p-exponent is additive, and for p = 0 so is q
        return 1 if self.check(e) == self.identity() else INF


# twisted products --------------------------------------------------------


class _Twisted(GroupFamily):
    profile: CocycleProfile
    sums: PartialSums

    def _setup(self, m, n, phi):
        profile = CocycleProfile(m, n, tuple(phi))
        object.__setattr__(self, "phi", profile.phi)
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "sums", partial_sums(profile))

    def cocycle(self, k: int, l: int) -> int:
        S = self.sums
        v = S[k + l] - S[k] - S[l]
        return v if self.profile.infinite else v % self.profile.n

    def _reduce(self, u: int) -> int:
        return u if self.profile.infinite else u % self.profile.n

    def is_normal(self, e):
        return 0 <= e.q < self.m and (self.profile.infinite or 0 <= e.p < self.profile.n)

    def _mul(self, x, y):
        return FamilyElement(self._reduce(x.p + y.p + self.cocycle(x.q, y.q)), (x.q + y.q) % self.m)

    def _inv(self, x):
        k = (-x.q) % self.m
        return FamilyElement(self._reduce(-x.p - self.cocycle(x.q, k)), k)

    def generators(self):
        return {"a": FamilyElement(1, 0), "x": FamilyElement(0, 1)}

    def relations(self):
        # (1, x)^k = (a^{S_k}, x^k), and the twisted product is abelian
        out = []
        for k in range(self.m + 1):
            out.append((f"(1,x)^{k} = (S_{k}, x^{k})", self.word(("x", k)),
                        FamilyElement(self._reduce(self.sums[k]), k % self.m)))
        out.append(("ax = xa", self.word(("a", 1), ("x", 1)), self.word(("x", 1), ("a", 1))))
        return out


@dataclass(frozen=True)
class TwistedFinite(_Twisted):
    """Twisted product ``C_n x^f C_m`` for the cocycle given by ``phi``."""

    n: int
    m: int
    phi: tuple[int, ...]
    kind: ClassVar[str] = "twisted"
    finite: ClassVar[bool] = True
    profile: CocycleProfile = field(init=False, repr=False, compare=False)
    sums: PartialSums = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n == INF:
            raise FamilyError("use TwistedInfinite for an infinite cyclic kernel")
        self._setup(self.m, self.n, self.phi)

    @classmethod
    def from_profile(cls, p: CocycleProfile) -> GroupFamily:
        if p.infinite:
            return TwistedInfinite(p.m, p.phi)
        return cls(p.n, p.m, p.phi)

    def element_order(self, e):
        return self._order_by_divisors(self.check(e), self.order)

    @property
    def order(self) -> int:
        return self.n * self.m

    def elements(self):
        return [FamilyElement(u, k) for u in range(self.n) for k in range(self.m)]

    def index(self, e):
        return e.p * self.m + e.q

    def to_table(self) -> FiniteGroupTable:
        table = twisted_tables(self.n, self.m, np.array([self.phi]))[0]
        return FiniteGroupTable(table, tuple(self.format_element(e) for e in self.elements()))


@dataclass(frozen=True)
class TwistedInfinite(_Twisted):
    """Twisted product ``C_g x^f C_m`` with an integer-valued profile."""

    m: int
    phi: tuple[int, ...]
    kind: ClassVar[str] = "twisted"
    profile: CocycleProfile = field(init=False, repr=False, compare=False)
    sums: PartialSums = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._setup(self.m, INF, self.phi)

    @property
    def n(self):
        return INF

    def element_order(self, e):
        e = self.check(e)
        # e^m lies in the torsion-free kernel C_g
        if self.power(e, self.m) != self.identity():
            return INF
        return self._order_by_divisors(e, self.m)


def twisted_tables(n: int, m: int, phis: np.ndarray) -> np.ndarray:
    """Multiplication tables of ``TwistedFinite(n, m, phi)`` for each row of ``phis``.

    Returns an array of shape ``(len(phis), n*m, n*m)`` using the same element
    indexing as :meth:`TwistedFinite.index`.
    """
    phis = np.asarray(phis, dtype=np.int64) % n
    P = phis.shape[0]
    S = np.zeros((P, 2 * m), dtype=np.int64)
    S[:, 1:m + 1] = np.cumsum(phis, axis=1)
    S[:, m + 1:] = S[:, m:m + 1] + S[:, 1:m]
    k = np.arange(m)
    c = (S[:, k[:, None] + k[None, :]] - S[:, k][:, :, None] - S[:, k][:, None, :]) % n
    N = n * m
    dtype = np.int16 if N < 2**15 else np.int64
    u = np.arange(N) // m
    kk = np.arange(N) % m
    base_u = ((u[:, None] + u[None, :]) % n).astype(dtype)
    new_u = c.astype(dtype)[:, kk[:, None], kk[None, :]]
    new_u += base_u
    new_u %= n
    new_u *= m
    new_u += ((kk[:, None] + kk[None, :]) % m).astype(dtype)
    return new_u


FAMILY_KINDS = {
    cls.kind: cls for cls in (Holder, FinByInf, InfByFinAbelian, InfByFinFlip, ZxZ, KleinBottle)
}


def iter_holder_parameters(max_order: int) -> Iterator[tuple[int, int, int, int]]:
    """All valid ``(n, m, i, j)`` with ``n, m >= 2`` and ``n m <= max_order``."""
    for n in range(2, max_order // 2 + 1):
        for m in range(2, max_order // n + 1):
            for j in range(n):
                if pow(j, m, n) != 1:
                    continue
                for i in range(n):
                    if (i * (j - 1)) % n == 0:
                        yield n, m, i, j
