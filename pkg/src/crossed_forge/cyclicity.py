"""Deciding when a crossed product of cyclic groups is cyclic.

Every positive verdict carries a generator, and the generator's order (or,
for infinite groups, its image under an injective map to Z) is checked before
the verdict is returned.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .cocycles import INF, CocycleProfile, cocycle_to_profile
from .crossed_system import CrossedSystem, build_crossed_product, pair_index, validate_crossed_system
from .cyclic_core import BezoutWitness, ext_gcd, gcd3, prime_factors
from .errors import CrossedForgeError, NotCoprimeTriple, NotCyclicInputs
from .families import (
    FamilyElement,
    FinByInf,
    GroupFamily,
    Holder,
    InfByFinAbelian,
    InfByFinFlip,
    KleinBottle,
    TwistedFinite,
    TwistedInfinite,
    ZxZ,
)
from .oracle import is_isomorphism
from .table import FiniteGroupTable


class Obstruction(str, enum.Enum):
    NON_TRIVIAL_ACTION = "NonTrivialAction"
    J_NOT_ONE = "JNotOne"
    GCD = "GcdObstruction"
    TORSION = "TorsionObstruction"
    QUOTIENT = "QuotientObstruction"


@dataclass(frozen=True)
class ThetaWitness:
    """The map ``h^r g^s -> r t + s n`` from ``InfByFinAbelian(n, t)`` onto ``d Z``."""

    n: int
    t: int

    @property
    def d(self) -> int:
        return math.gcd(self.n, self.t)

    def __call__(self, e: FamilyElement) -> int:
        p, q = e
        return p * self.t + q * self.n

    def kernel_generator(self) -> FamilyElement:
        """Normal form of ``h^(n/d) g^(-t/d)``."""
        return InfByFinAbelian(self.n, self.t).from_word(self.n // self.d, -self.t // self.d)

    def preimage(self, value: int) -> FamilyElement:
        """The unique element mapping to ``value`` when ``d = 1``."""
        if self.d != 1:
            raise ValueError("theta is not injective")
        _, r, s = ext_gcd(self.t, self.n)
        return InfByFinAbelian(self.n, self.t).from_word(r * value, s * value)


@dataclass(frozen=True)
class CyclicityVerdict:
    cyclic: bool
    witness: FamilyElement | None = None
    obstruction: Obstruction | None = None
    detail: dict[str, Any] = field(default_factory=dict)
    family: str | None = None
    parameters: dict[str, Any] = field(default_factory=dict)
    infinite: bool = False
    theta: ThetaWitness | None = None

    def __bool__(self) -> bool:
        return self.cyclic

    def to_dict(self) -> dict[str, Any]:
        return {
            "cyclic": self.cyclic,
            "witness": None if self.witness is None else list(self.witness),
            "obstruction": None if self.obstruction is None else self.obstruction.value,
            "detail": {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.detail.items()},
            "family": self.family,
            "parameters": self.parameters,
            "infinite": self.infinite,
        }


def bezout_coprime(m: int, n: int, i: int) -> BezoutWitness:
    """``(u, v, w)`` with ``u m + v i + w n = 1`` and ``gcd(m, v) = 1``.

    With ``d = gcd(m, n)``, take ``m'`` the part of ``m`` prime to ``d``, pick
    the least ``v >= 1`` with ``d | v i - 1`` and ``m' | v - 1``, then scale a
    Bezout pair for ``(m, n)`` by ``r = (1 - v i) / d``.
    """
    if m < 2 or n < 1:
        raise ValueError(f"need m >= 2 and n >= 1, got m={m}, n={n}")
    if gcd3(m, n, i) != 1:
        raise NotCoprimeTriple(f"gcd(m, n, i) = gcd({m}, {n}, {i}) = {gcd3(m, n, i)} != 1")
    d, u1, w1 = ext_gcd(m, n)
    m_prime = m
    for p in prime_factors(d):
        while m_prime % p == 0:
            m_prime //= p
    for v in range(1, d * m_prime + 1):
        if (v * i - 1) % d == 0 and (v - 1) % m_prime == 0:
            break
    else:
        raise AssertionError("no v found; gcd(d, i) should be 1")
    r = (1 - v * i) // d
    u, w = r * u1, r * w1
    if u * m + v * i + w * n != 1 or math.gcd(m, v) != 1:
        raise AssertionError(f"constrained Bezout failed for {(m, n, i)}")
    return BezoutWitness(u, v, w, d)


def _finite_order_check(fam: GroupFamily, gen: FamilyElement) -> None:
    if fam.element_order(gen) != fam.order:
        raise AssertionError(f"witness {gen} does not generate {fam!r}")


def decide_cyclic_holder(n: int, m: int, i: int, j: int, witness: bool = True) -> CyclicityVerdict:
    fam = Holder(n, m, i, j)
    params = {"n": n, "m": m, "i": i, "j": j}
    if j != 1 % n:
        return CyclicityVerdict(False, obstruction=Obstruction.J_NOT_ONE, detail={"j": j},
                                family="holder", parameters=params)
    d = gcd3(m, n, i)
    if d != 1:
        return CyclicityVerdict(False, obstruction=Obstruction.GCD, detail={"gcd": d},
                                family="holder", parameters=params)
    gen = None
    if witness:
        b = bezout_coprime(m, n, i)
        gen = FamilyElement(b.u % n, b.v % m)
        _finite_order_check(fam, gen)
    return CyclicityVerdict(True, gen, family="holder", parameters=params)


def decide_cyclic_inf_by_fin(n: int, t: int) -> CyclicityVerdict:
    """``<g, h | gh = hg, h^n = g^t>`` is infinite cyclic iff ``gcd(n, t) = 1``."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    theta = ThetaWitness(n, t)
    params = {"n": n, "t": t}
    kernel = theta.kernel_generator()
    if theta(kernel) != 0:
        raise AssertionError("kernel generator is not in the kernel")
    if theta.d != 1:
        return CyclicityVerdict(False, obstruction=Obstruction.GCD,
                                detail={"gcd": theta.d, "kernel_generator": tuple(kernel)},
                                family="inf_by_fin_abelian", parameters=params, infinite=True, theta=theta)
    gen = theta.preimage(1)
    if theta(gen) != 1:
        raise AssertionError("generator does not map to 1")
    return CyclicityVerdict(True, gen, family="inf_by_fin_abelian", parameters=params,
                            infinite=True, theta=theta)


@dataclass(frozen=True)
class HolderIso:
    """``a^p b^q -> (a,1)^p (1,x)^q`` from ``Holder(n, m, i, 1)`` to a twisted product."""

    i: int
    source: Holder
    target: TwistedFinite
    mapping: tuple[int, ...]

    def __call__(self, e: FamilyElement) -> FamilyElement:
        return self.target.elements()[self.mapping[self.source.index(e)]]


def _holder_image(fam: TwistedFinite, e: FamilyElement) -> FamilyElement:
    # (a,1)^p (1,x)^q = (p + S_q, q) for 0 <= q < m
    return FamilyElement((e.p + fam.sums[e.q]) % fam.n, e.q)


def twisted_to_holder_iso(n: int, m: int, profile: CocycleProfile | tuple[int, ...]) -> HolderIso:
    """Identify ``C_n x^f C_m`` with ``Holder(n, m, S_m mod n, 1)``, checked on tables."""
    phi = profile.phi if isinstance(profile, CocycleProfile) else tuple(profile)
    target = TwistedFinite(n, m, phi)
    i = target.sums.S_m % n
    source = Holder(n, m, i, 1 % n)
    a, x = target.generators()["a"], target.generators()["x"]
    a_pow = [target.power(a, k) for k in range(n)]
    x_pow = [target.power(x, k) for k in range(m)]
    mapping = tuple(target.index(target.multiply(a_pow[e.p], x_pow[e.q])) for e in source.elements())
    if not is_isomorphism(source.to_table(), target.to_table(), mapping):
        raise AssertionError(f"Holder map is not an isomorphism for n={n}, m={m}, phi={phi}")
    return HolderIso(i, source, target, mapping)


@dataclass(frozen=True)
class PresentationIso:
    """``h^p g^q -> (g^(q + S_p), x^p)`` from ``InfByFinAbelian(m, S_m)`` to ``C_g x^f C_m``."""

    t: int
    source: InfByFinAbelian
    target: TwistedInfinite

    def __call__(self, e: FamilyElement) -> FamilyElement:
        e = self.source.check(e)
        return FamilyElement(e.q + self.target.sums[e.p], e.p)

    def inverse(self, e: FamilyElement) -> FamilyElement:
        e = self.target.check(e)
        return FamilyElement(e.q, e.p - self.target.sums[e.q])


def twisted_inf_to_presentation_iso(m: int, profile: CocycleProfile | tuple[int, ...], box: int = 50) -> PresentationIso:
    """Identify ``C_g x^f C_m`` with ``<g, h | gh = hg, h^m = g^(S_m)>``.

    The map is checked on the normal forms with ``|q| <= box``: it must agree
    with ``g -> (g,1)``, ``h -> (1,x)`` on words, be a homomorphism on all pairs
    from the box, and be inverted by :meth:`PresentationIso.inverse`.
    """
    phi = profile.phi if isinstance(profile, CocycleProfile) else tuple(profile)
    target = TwistedInfinite(m, phi)
    t = target.sums.S_m
    source = InfByFinAbelian(m, t)
    iso = PresentationIso(t, source, target)
    g_img, h_img = FamilyElement(1, 0), FamilyElement(0, 1 % m)
    region = [FamilyElement(p, q) for p in range(m) for q in range(-box, box + 1)]
    images = [iso(e) for e in region]
    if len(set(images)) != len(images):
        raise AssertionError("presentation map is not injective on the box")
    for e, img in zip(region, images):
        by_word = target.multiply(target.power(h_img, e.p), target.power(g_img, e.q))
        if img != by_word or iso.inverse(img) != e:
            raise AssertionError(f"presentation map disagrees at {e}")
    inner = [e for e in region if abs(e.q) <= min(box, 10)]
    for x in inner:
        for y in inner:
            if iso(source.multiply(x, y)) != target.multiply(iso(x), iso(y)):
                raise AssertionError(f"presentation map is not a homomorphism at {x}, {y}")
    return iso


def _decide_twisted_finite(fam: TwistedFinite, witness: bool) -> CyclicityVerdict:
    S_m = fam.sums.S_m
    params = {"n": fam.n, "m": fam.m, "phi": list(fam.phi), "S_m": S_m}
    d = gcd3(S_m, fam.m, fam.n)
    if d != 1:
        return CyclicityVerdict(False, obstruction=Obstruction.GCD, detail={"gcd": d},
                                family="twisted", parameters=params)
    gen = None
    if witness:
        hv = decide_cyclic_holder(fam.n, fam.m, S_m % fam.n, 1 % fam.n)
        gen = _holder_image(fam, hv.witness)
        _finite_order_check(fam, gen)
    return CyclicityVerdict(True, gen, family="twisted", parameters=params)


def _decide_twisted_infinite(fam: TwistedInfinite, witness: bool) -> CyclicityVerdict:
    S_m = fam.sums.S_m
    params = {"n": "inf", "m": fam.m, "phi": list(fam.phi), "S_m": S_m}
    base = decide_cyclic_inf_by_fin(fam.m, S_m)
    iso = PresentationIso(S_m, InfByFinAbelian(fam.m, S_m), fam)
    if not base.cyclic:
        detail = dict(base.detail, kernel_generator=tuple(iso(FamilyElement(*base.detail["kernel_generator"]))))
        return CyclicityVerdict(False, obstruction=Obstruction.GCD, detail=detail, family="twisted",
                                parameters=params, infinite=True, theta=base.theta)
    gen = iso(base.witness)
    if witness and fam.element_order(gen) != INF:
        raise AssertionError("infinite cyclic generator has finite order")
    return CyclicityVerdict(True, gen, family="twisted", parameters=params, infinite=True, theta=base.theta)


def _cyclic_generator(t: FiniteGroupTable) -> int | None:
    orders = t.element_orders()
    gens = np.nonzero(orders == t.order)[0]
    return int(gens[0]) if len(gens) else None


def _decide_system(sys: CrossedSystem, witness: bool) -> CyclicityVerdict:
    sys = sys if sys.validated else validate_crossed_system(sys)
    H, G = sys.H, sys.G
    a, x = _cyclic_generator(H), _cyclic_generator(G)
    if a is None or x is None:
        raise NotCyclicInputs("H and G must both be cyclic")
    n, m = H.order, G.order
    params = {"n": n, "m": m}
    if not sys.alpha_is_trivial():
        return CyclicityVerdict(False, obstruction=Obstruction.NON_TRIVIAL_ACTION, family="crossed_system",
                                parameters=params)
    if n == 1 or m == 1:
        # the product is a copy of the other factor
        gen = FamilyElement(a, G.identity) if m == 1 else FamilyElement(H.identity, x)
        return CyclicityVerdict(True, gen, family="crossed_system", parameters=params)

    log_h = {H.power(a, k): k for k in range(n)}
    x_pow = [G.power(x, k) for k in range(m)]
    F = [[log_h[int(sys.f[x_pow[k], x_pow[l]])] for l in range(m)] for k in range(m)]
    profile = cocycle_to_profile(F, n)
    fam = TwistedFinite(n, m, profile.phi)
    verdict = _decide_twisted_finite(fam, witness)
    params.update(phi=list(profile.phi), S_m=verdict.parameters["S_m"])
    gen = None
    if verdict.witness is not None:
        u, k = verdict.witness
        gen = FamilyElement(H.power(a, u), x_pow[k])
        P = build_crossed_product(sys)
        if P.element_order(pair_index(sys, *gen)) != P.order:
            raise AssertionError("witness does not generate the crossed product")
    return CyclicityVerdict(verdict.cyclic, gen, verdict.obstruction, verdict.detail, "crossed_system", params)


def decide_cyclic_main(obj: CrossedSystem | GroupFamily, witness: bool = True) -> CyclicityVerdict:
    """Decide cyclicity of a finite crossed system or of any family.

    ``witness=False`` skips constructing and checking generators; verdicts
    are unchanged.
    """
    if isinstance(obj, CrossedSystem):
        return _decide_system(obj, witness)
    if isinstance(obj, Holder):
        return decide_cyclic_holder(obj.n, obj.m, obj.i, obj.j, witness)
    if isinstance(obj, TwistedFinite):
        return _decide_twisted_finite(obj, witness)
    if isinstance(obj, TwistedInfinite):
        return _decide_twisted_infinite(obj, witness)
    if isinstance(obj, InfByFinAbelian):
        return decide_cyclic_inf_by_fin(obj.n, obj.t)
    if isinstance(obj, (FinByInf, InfByFinFlip)):
        params = {k: getattr(obj, k) for k in ("n", "t") if hasattr(obj, k)}
        # a (resp. h) has finite order n in an infinite group
        torsion = obj.generators()["a" if isinstance(obj, FinByInf) else "h"]
        return CyclicityVerdict(False, obstruction=Obstruction.TORSION,
                                detail={"torsion_element": tuple(torsion), "order": obj.element_order(torsion)},
                                family=obj.kind, parameters=params, infinite=True)
    if isinstance(obj, (ZxZ, KleinBottle)):
        return CyclicityVerdict(False, obstruction=Obstruction.QUOTIENT, family=obj.kind, infinite=True)
    raise CrossedForgeError(f"cannot decide cyclicity of {obj!r}")
