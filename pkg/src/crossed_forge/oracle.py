"""Brute-force ground truth at small scale.

Nothing here uses the number theory of the decision procedures: cyclicity is
an element-order search, isomorphism is a backtracking search over generator
images, and crossed systems are enumerated over the full map spaces.
"""

from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from .crossed_system import CrossedSystem, validate_crossed_system
from .errors import TooLarge
from .table import FiniteGroupTable

DEFAULT_SYSTEM_BUDGET = 2**24
MAX_ISO_ORDER = 64


def brute_force_is_cyclic(t: FiniteGroupTable) -> tuple[bool, int | None]:
    """Whether some element has order ``|t|``; returns the least such index."""
    orders = t.element_orders()
    gens = np.nonzero(orders == t.order)[0]
    if len(gens) == 0:
        return False, None
    return True, int(gens[0])


def batch_is_cyclic(tables: np.ndarray, identity: int = 0) -> np.ndarray:
    """Vectorized :func:`brute_force_is_cyclic` over a stack of tables.

    ``tables`` has shape ``(P, N, N)`` and every table must have the same
    identity index.  An element generates iff none of its powers
    ``e^1 .. e^(N-1)`` is the identity.
    """
    tables = np.asarray(tables)
    P, N, _ = tables.shape
    if N == 1:
        return np.ones(P, dtype=bool)
    rows = np.arange(P)[:, None]
    elems = np.arange(N)[None, :]
    cur = np.broadcast_to(elems, (P, N)).astype(tables.dtype)
    early = np.zeros((P, N), dtype=bool)
    for _ in range(N // 2):
        early |= cur == identity
        cur = tables[rows, cur, elems]
    return (~early).any(axis=1)


def order_profile(t: FiniteGroupTable) -> tuple[int, ...]:
    """Sorted multiset of element orders."""
    return tuple(sorted(int(o) for o in t.element_orders()))


def _generating_set(t: FiniteGroupTable, orders: np.ndarray) -> list[int]:
    gens: list[int] = []
    span = {t.identity}
    # high-order elements first keeps the generating set short
    for x in sorted(range(t.order), key=lambda x: (-orders[x], x)):
        if x not in span:
            gens.append(x)
            span = set(t.generated_subgroup(gens))
            if len(span) == t.order:
                break
    return gens


def _extend(t1, t2, gens, images, mapping):
    """Close ``mapping`` under right multiplication by ``gens``; None on conflict."""
    mapping = dict(mapping)
    frontier = list(mapping)
    while frontier:
        nxt = []
        for x in frontier:
            y = mapping[x]
            for g, gi in zip(gens, images):
                xg, yg = t1.mul(x, g), t2.mul(y, gi)
                seen = mapping.get(xg)
                if seen is None:
                    mapping[xg] = yg
                    nxt.append(xg)
                elif seen != yg:
                    return None
        frontier = nxt
    if len(set(mapping.values())) != len(mapping):
        return None
    return mapping


def iter_isomorphisms(t1: FiniteGroupTable, t2: FiniteGroupTable) -> Iterator[list[int]]:
    """All isomorphisms ``t1 -> t2`` as lists ``phi[x]``."""
    if t1.order != t2.order:
        return
    if t1.order > MAX_ISO_ORDER:
        raise TooLarge(t1.order, MAX_ISO_ORDER, "isomorphism search order")
    o1, o2 = t1.element_orders(), t2.element_orders()
    if sorted(o1.tolist()) != sorted(o2.tolist()):
        return
    gens = _generating_set(t1, o1)
    candidates = [[y for y in range(t2.order) if o2[y] == o1[g]] for g in gens]

    def search(level, images, mapping):
        if level == len(gens):
            if len(mapping) == t1.order:
                yield [mapping[x] for x in range(t1.order)]
            return
        for c in candidates[level]:
            if c in mapping.values():
                continue
            new_images = images + [c]
            extended = _extend(t1, t2, gens[: level + 1], new_images, mapping)
            if extended is not None:
                yield from search(level + 1, new_images, extended)

    yield from search(0, [], {t1.identity: t2.identity})


def tables_isomorphic(t1: FiniteGroupTable, t2: FiniteGroupTable) -> list[int] | None:
    """A product-preserving bijection ``t1 -> t2``, or None if none exists."""
    return next(iter_isomorphisms(t1, t2), None)


def is_isomorphism(t1: FiniteGroupTable, t2: FiniteGroupTable, phi) -> bool:
    phi = np.asarray(phi)
    if len(phi) != t1.order or len(set(phi.tolist())) != t2.order:
        return False
    return bool(np.array_equal(phi[t1.product], t2.product[phi[:, None], phi[None, :]]))


def automorphisms(t: FiniteGroupTable) -> list[list[int]]:
    return list(iter_isomorphisms(t, t))


def crossed_system_space_size(H: FiniteGroupTable, G: FiniteGroupTable, n_aut: int) -> int:
    return H.order ** (G.order**2) * n_aut ** G.order


def enumerate_crossed_systems(
    H: FiniteGroupTable, G: FiniteGroupTable, budget: int = DEFAULT_SYSTEM_BUDGET
) -> list[CrossedSystem]:
    """Every normalized crossed system on ``(H, G)``.

    Weak actions range over all maps ``G -> Aut(H)`` (not only homomorphisms)
    and cocycles over all maps ``G x G -> H``; candidates are filtered by the
    weak action and cocycle conditions and ``f(1, 1) = 1``.  Survivors are
    re-validated one by one.
    """
    auts = automorphisms(H)
    size = crossed_system_space_size(H, G, len(auts))
    if size > budget:
        raise TooLarge(size, budget, "crossed system search space")
    nH, nG = H.order, G.order
    Hp, Gp, Hinv = H.product, G.product, H.inverse
    eG = G.identity

    # every f with f(1,1) = 1, as rows of a (K, nG, nG) array
    free = nG * nG - 1
    values = np.array(list(itertools.product(range(nH), repeat=free)), dtype=np.int64).reshape(-1, free)
    flat = np.insert(values, eG * nG + eG, H.identity, axis=1)
    F = flat.reshape(-1, nG, nG)
    r = np.arange(nG)
    g1, g2, g3 = r[:, None, None], r[None, :, None], r[None, None, :]
    a1, a2 = r[:, None], r[None, :]

    found = []
    for choice in itertools.product(range(len(auts)), repeat=nG):
        A = np.array([auts[c] for c in choice], dtype=np.int64)
        # weak action: A[g1](A[g2](h)) == f (A[g1 g2](h)) f^-1
        lhs = A[a1[..., None], A[a2]]          # (nG, nG, nH)
        acted = A[Gp[a1, a2]]                   # (nG, nG, nH)
        c = F[:, :, :, None]
        rhs = Hp[Hp[c, acted[None]], Hinv[c]]
        ok = (rhs == lhs[None]).all(axis=(1, 2, 3))
        if not ok.any():
            continue
        Fs = F[ok]
        cc_l = Hp[Fs[:, g1, g2], Fs[:, Gp[g1, g2], g3]]
        cc_r = Hp[A[g1, Fs[:, g2, g3]], Fs[:, g1, Gp[g2, g3]]]
        ok2 = (cc_l == cc_r).all(axis=(1, 2, 3))
        for f in Fs[ok2]:
            found.append(validate_crossed_system(CrossedSystem(H, G, A, f)))
    return found
