"""Crossed systems ``(H, G, alpha, f)`` over finite groups and their products.

``alpha`` is stored as a ``|G| x |H|`` array whose row ``g`` is the
permutation ``h -> g |> h``; ``f`` is a ``|G| x |G|`` array of H-indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    BadTransversal,
    CocycleViolated,
    CrossedSystemError,
    NotAutomorphism,
    NotNormalized,
    NotNormalSubgroup,
    WeakActionViolated,
)
from .table import FiniteGroupTable


@dataclass(frozen=True, eq=False)
class CrossedSystem:
    H: FiniteGroupTable
    G: FiniteGroupTable
    alpha: np.ndarray
    f: np.ndarray
    validated: bool = field(default=False, compare=False)

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=np.int64)
        f = np.array(self.f, dtype=np.int64)
        if alpha.shape != (self.G.order, self.H.order):
            raise CrossedSystemError(f"alpha must have shape {(self.G.order, self.H.order)}, got {alpha.shape}")
        if f.shape != (self.G.order, self.G.order):
            raise CrossedSystemError(f"f must have shape {(self.G.order, self.G.order)}, got {f.shape}")
        if ((f < 0) | (f >= self.H.order)).any():
            raise CrossedSystemError("f has entries outside H")
        for g, row in enumerate(alpha):
            if sorted(row.tolist()) != list(range(self.H.order)):
                raise NotAutomorphism(g, "not a permutation")
        alpha.flags.writeable = False
        f.flags.writeable = False
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "f", f)

    def __eq__(self, other):
        if not isinstance(other, CrossedSystem):
            return NotImplemented
        return (
            self.H == other.H
            and self.G == other.G
            and np.array_equal(self.alpha, other.alpha)
            and np.array_equal(self.f, other.f)
        )

    def __hash__(self):
        return hash((self.H, self.G, self.alpha.tobytes(), self.f.tobytes()))

    @classmethod
    def trivial(cls, H: FiniteGroupTable, G: FiniteGroupTable) -> CrossedSystem:
        alpha = np.tile(np.arange(H.order), (G.order, 1))
        f = np.full((G.order, G.order), H.identity)
        return cls(H, G, alpha, f)

    def alpha_is_trivial(self) -> bool:
        return bool((self.alpha == np.arange(self.H.order)).all())

    def f_is_trivial(self) -> bool:
        return bool((self.f == self.H.identity).all())

    def f_is_symmetric(self) -> bool:
        return bool(np.array_equal(self.f, self.f.T))


def _automorphism_failure(H: FiniteGroupTable, perm: np.ndarray):
    # perm(a*b) == perm(a)*perm(b)
    bad = np.argwhere(perm[H.product] != H.product[perm[:, None], perm[None, :]])
    return None if len(bad) == 0 else tuple(int(v) for v in bad[0])


def weak_action_failures(sys: CrossedSystem) -> np.ndarray:
    """All ``(g1, g2, h)`` violating the weak action condition."""
    H, G, A, f = sys.H.product, sys.G.product, sys.alpha, sys.f
    nG = sys.G.order
    g1 = np.arange(nG)[:, None]
    g2 = np.arange(nG)[None, :]
    lhs = A[g1[..., None], A[g2]]                 # g1 |> (g2 |> h)
    acted = A[G[g1, g2]]                          # (g1 g2) |> h
    c = f[g1, g2][..., None]
    c_inv = sys.H.inverse[f[g1, g2]][..., None]
    rhs = H[H[c, acted], c_inv]
    return np.argwhere(lhs != rhs)


def cocycle_failures(sys: CrossedSystem) -> np.ndarray:
    """All ``(g1, g2, g3)`` violating the cocycle condition."""
    H, G, A, f = sys.H.product, sys.G.product, sys.alpha, sys.f
    r = np.arange(sys.G.order)
    g1, g2, g3 = r[:, None, None], r[None, :, None], r[None, None, :]
    lhs = H[f[g1, g2], f[G[g1, g2], g3]]
    rhs = H[A[g1, f[g2, g3]], f[g1, G[g2, g3]]]
    return np.argwhere(lhs != rhs)


def validate_crossed_system(sys: CrossedSystem) -> CrossedSystem:
    """Check every compatibility condition exhaustively.

    Returns a copy flagged ``validated``.  Raises the first violation found:
    :class:`NotAutomorphism`, :class:`NotNormalized`,
    :class:`WeakActionViolated` or :class:`CocycleViolated`.
    """
    H, G = sys.H, sys.G
    for g in range(G.order):
        bad = _automorphism_failure(H, sys.alpha[g])
        if bad is not None:
            raise NotAutomorphism(g, f"fails on pair {bad}")
    if sys.f[G.identity, G.identity] != H.identity:
        raise NotNormalized()
    bad = weak_action_failures(sys)
    if len(bad):
        raise WeakActionViolated(*(int(v) for v in bad[0]))
    bad = cocycle_failures(sys)
    if len(bad):
        raise CocycleViolated(*(int(v) for v in bad[0]))

    # consequences of normalization; they must follow from the checks above
    e = G.identity
    if not ((sys.f[e, :] == H.identity).all() and (sys.f[:, e] == H.identity).all()):
        raise CrossedSystemError("derived identity f(1, g) = f(g, 1) = 1 failed")
    if not (sys.alpha[e] == np.arange(H.order)).all():
        raise CrossedSystemError("derived identity 1 |> h = h failed")
    return replace(sys, validated=True)


def _require_validated(sys: CrossedSystem) -> CrossedSystem:
    return sys if sys.validated else validate_crossed_system(sys)


def pair_index(sys: CrossedSystem, h: int, g: int) -> int:
    return h * sys.G.order + g


def build_crossed_product(sys: CrossedSystem) -> FiniteGroupTable:
    """Crossed product on ``H x G``; pair ``(h, g)`` sits at ``h * |G| + g``.

    Multiplication is ``(h1, g1)(h2, g2) = (h1 (g1 |> h2) f(g1, g2), g1 g2)``.
    """
    sys = _require_validated(sys)
    nH, nG = sys.H.order, sys.G.order
    h = np.arange(nH * nG) // nG
    g = np.arange(nH * nG) % nG
    h1, g1 = h[:, None], g[:, None]
    h2, g2 = h[None, :], g[None, :]
    Hp = sys.H.product
    new_h = Hp[Hp[h1, sys.alpha[g1, h2]], sys.f[g1, g2]]
    new_g = sys.G.product[g1, g2]
    labels = tuple(f"({sys.H.label(a)},{sys.G.label(b)})" for a, b in zip(h, g))
    return FiniteGroupTable(new_h * nG + new_g, labels)


class SpecialCase(str, enum.Enum):
    TRIVIAL = "trivial"
    SEMIDIRECT = "semidirect"
    TWISTED = "twisted"
    GENERAL = "general"


def center(t: FiniteGroupTable) -> list[int]:
    T = t.product
    return [int(z) for z in range(t.order) if np.array_equal(T[z], T[:, z])]


def classify_special_case(sys: CrossedSystem) -> SpecialCase:
    sys = _require_validated(sys)
    triv_a, triv_f = sys.alpha_is_trivial(), sys.f_is_trivial()
    if triv_a and triv_f:
        return SpecialCase.TRIVIAL
    if triv_f:
        A, G = sys.alpha, sys.G.product
        # alpha(g1) o alpha(g2) == alpha(g1 g2)
        composed = A[np.arange(len(A))[:, None, None], A[None, :, :]]
        if not (composed == A[G]).all():
            raise CrossedSystemError("trivial cocycle but alpha is not a homomorphism")
        return SpecialCase.SEMIDIRECT
    if triv_a:
        Z = set(center(sys.H))
        if not set(np.unique(sys.f).tolist()) <= Z:
            raise CrossedSystemError("trivial action but f does not land in Z(H)")
        Hp, G, f = sys.H.product, sys.G.product, sys.f
        r = np.arange(sys.G.order)
        g1, g2, g3 = r[:, None, None], r[None, :, None], r[None, None, :]
        if not (Hp[f[g1, g2], f[G[g1, g2], g3]] == Hp[f[g2, g3], f[g1, G[g2, g3]]]).all():
            raise CrossedSystemError("trivial action but f is not a 2-cocycle")
        return SpecialCase.TWISTED
    return SpecialCase.GENERAL


def is_normal_subgroup(E: FiniteGroupTable, members: Sequence[int]) -> bool:
    S = set(int(x) for x in members)
    if E.identity not in S:
        return False
    T = E.product
    for a in S:
        if E.inv(a) not in S or any(int(T[a, b]) not in S for b in S):
            return False
    for x in range(E.order):
        xi = E.inv(x)
        if any(int(T[T[x, h], xi]) not in S for h in S):
            return False
    return True


def cosets(E: FiniteGroupTable, members: Sequence[int]) -> list[list[int]]:
    """Left cosets of a normal subgroup; the subgroup itself first, the rest
    ordered by their least element."""
    S = sorted(set(int(x) for x in members))
    out = [S]
    seen = set(S)
    for x in range(E.order):
        if x not in seen:
            c = sorted(int(E.product[x, h]) for h in S)
            seen.update(c)
            out.append(c)
    return out


def default_transversal(E: FiniteGroupTable, members: Sequence[int]) -> list[int]:
    """First element of each coset in index order (identity for the subgroup)."""
    cs = cosets(E, members)
    return [E.identity] + [c[0] for c in cs[1:]]


def extract_crossed_system(
    E: FiniteGroupTable,
    H_indices: Sequence[int],
    transversal: Sequence[int] | Mapping[int, int] | None = None,
) -> CrossedSystem:
    """Crossed system ``(H, E/H, alpha, f)`` whose product reconstructs ``E``.

    ``transversal`` lists one representative per coset (any order), or maps
    coset numbers (as in :func:`cosets`) to representatives.  The identity coset
    must be represented by the identity.  ``H`` keeps the identity at index 0
    and the remaining members in increasing order; the quotient numbers cosets
    as :func:`cosets` does.
    """
    if not is_normal_subgroup(E, H_indices):
        raise NotNormalSubgroup(f"{sorted(set(H_indices))} is not a normal subgroup")
    cs = cosets(E, H_indices)
    coset_of = {x: ci for ci, c in enumerate(cs) for x in c}

    if transversal is None:
        transversal = default_transversal(E, H_indices)
    if isinstance(transversal, Mapping):
        reps = [None] * len(cs)
        for ci, x in transversal.items():
            if not 0 <= ci < len(cs):
                raise BadTransversal(f"unknown coset label {ci}")
            if coset_of.get(int(x)) != ci:
                raise BadTransversal(f"element {x} does not lie in coset {ci}")
            reps[ci] = int(x)
    else:
        reps = [None] * len(cs)
        for x in transversal:
            x = int(x)
            if x not in coset_of:
                raise BadTransversal(f"element {x} is not in the group")
            ci = coset_of[x]
            if reps[ci] is not None:
                raise BadTransversal(f"elements {reps[ci]} and {x} represent the same coset")
            reps[ci] = x
    if any(r is None for r in reps):
        raise BadTransversal("transversal misses a coset")
    if reps[0] != E.identity:
        raise BadTransversal("the subgroup itself must be represented by the identity")

    h_elems = [E.identity] + sorted(set(int(x) for x in H_indices) - {E.identity})
    h_pos = {x: i for i, x in enumerate(h_elems)}
    T = E.product
    nH, nG = len(h_elems), len(cs)

    H = FiniteGroupTable(
        [[h_pos[int(T[a, b])] for b in h_elems] for a in h_elems],
        tuple(E.label(x) for x in h_elems),
    )
    G = FiniteGroupTable(
        [[coset_of[int(T[reps[i], reps[j]])] for j in range(nG)] for i in range(nG)],
        tuple(f"{E.label(r)}H" if i else "H" for i, r in enumerate(reps)),
    )
    alpha = [[h_pos[int(T[T[s, h], E.inv(s)])] for h in h_elems] for s in reps]
    f = [
        [h_pos[int(T[T[reps[i], reps[j]], E.inv(reps[G.mul(i, j)])])] for j in range(nG)]
        for i in range(nG)
    ]
    sys = validate_crossed_system(CrossedSystem(H, G, alpha, f))

    # (h, g) -> h s(g) must carry the crossed product onto E
    P = build_crossed_product(sys)
    iso = np.array([T[h_elems[p // nG], reps[p % nG]] for p in range(nH * nG)])
    if len(set(iso.tolist())) != E.order or not np.array_equal(iso[P.product], T[iso[:, None], iso[None, :]]):
        raise CrossedSystemError("reconstruction map is not an isomorphism")
    return sys
