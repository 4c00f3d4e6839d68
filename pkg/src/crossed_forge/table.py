"""Finite groups as explicit multiplication tables.

Elements are dense indices ``0..N-1``.  Every constructor in this package puts
the identity at index 0, but :class:`FiniteGroupTable` locates it rather than
assuming it, so hand-written tables are accepted as long as they are groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class FiniteGroupTable:
    product: np.ndarray
    labels: tuple[str, ...] | None = None
    identity: int = field(init=False)
    inverse: np.ndarray = field(init=False)

    def __post_init__(self):
        table = np.asarray(self.product, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError(f"product table must be a non-empty square array, got shape {table.shape}")
        table = table.copy()
        table.flags.writeable = False
        object.__setattr__(self, "product", table)
        if self.labels is not None:
            if len(self.labels) != table.shape[0]:
                raise ValueError("labels length does not match table order")
            object.__setattr__(self, "labels", tuple(self.labels))

        n = table.shape[0]
        ident = -1
        if table.min() >= 0 and table.max() < n:
            idx = np.arange(n)
            for e in range(n):
                if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
                    ident = e
                    break
        inv = np.full(n, -1, dtype=np.int64)
        if ident >= 0:
            rows, cols = np.nonzero(table == ident)
            for r, c in zip(rows, cols):
                if table[c, r] == ident and inv[r] < 0:
                    inv[r] = c
        inv.flags.writeable = False
        object.__setattr__(self, "identity", int(ident))
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.product.shape[0]

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroupTable):
            return NotImplemented
        return np.array_equal(self.product, other.product)

    def __hash__(self):
        return hash(self.product.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroupTable(order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.product[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result, base = self.identity, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def element_orders(self) -> np.ndarray:
        """Orders of all elements, by repeated multiplication."""
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        for k in range(1, n + 1):
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.product[cur, idx]
        return orders

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
            if k > self.order:
                raise ValueError(f"element {a} has no finite order in this table")
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.product, self.product.T))

    def generated_subgroup(self, gens: Sequence[int]) -> list[int]:
        """Elements of the subgroup generated by ``gens``, in BFS order."""
        seen = {self.identity}
        order = [self.identity]
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        nxt.append(y)
            frontier = nxt
        return order


@dataclass(frozen=True)
class AxiomReport:
    closure: bool
    identity: bool
    inverses: bool
    associativity: bool
    failure: str | None = None
    witness: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.closure and self.identity and self.inverses and self.associativity

    def __bool__(self) -> bool:
        return self.ok


def verify_group_axioms(t: FiniteGroupTable) -> AxiomReport:
    """Exhaustively check closure, identity, inverses and associativity.

    Checks stop at the first failing axiom; later axioms are then reported as
    not established (``False``).
    """
    T = t.product
    n = t.order
    bad = np.argwhere((T < 0) | (T >= n))
    if len(bad):
        return AxiomReport(False, False, False, False, "closure", tuple(int(v) for v in bad[0]))
    if t.identity < 0:
        return AxiomReport(True, False, False, False, "identity")
    missing = np.nonzero(t.inverse < 0)[0]
    if len(missing):
        return AxiomReport(True, True, False, False, "inverses", (int(missing[0]),))
    for a in range(n):
        # (a*b)*c against a*(b*c) for all b, c at once
        lhs = T[T[a]]
        rhs = T[a][T]
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            b, c = diff[0]
            return AxiomReport(True, True, True, False, "associativity", (a, int(b), int(c)))
    return AxiomReport(True, True, True, True)


def cyclic_table(n: int, symbol: str = "a") -> FiniteGroupTable:
    """C_n with element ``k`` standing for ``symbol**k``."""
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    idx = np.arange(n)
    labels = tuple("1" if k == 0 else (symbol if k == 1 else f"{symbol}^{k}") for k in range(n))
    return FiniteGroupTable((idx[:, None] + idx[None, :]) % n, labels)


def direct_product_table(t1: FiniteGroupTable, t2: FiniteGroupTable) -> FiniteGroupTable:
    """Direct product with pair ``(x, y)`` at index ``x * |t2| + y``."""
    n1, n2 = t1.order, t2.order
    x = np.arange(n1 * n2) // n2
    y = np.arange(n1 * n2) % n2
    prod = t1.product[x[:, None], x[None, :]] * n2 + t2.product[y[:, None], y[None, :]]
    labels = tuple(f"({t1.label(a)},{t2.label(b)})" for a, b in zip(x, y))
    return FiniteGroupTable(prod, labels)


def klein_four_table() -> FiniteGroupTable:
    return direct_product_table(cyclic_table(2, "a"), cyclic_table(2, "b"))


def relabel(t: FiniteGroupTable, perm: Sequence[int]) -> FiniteGroupTable:
    """Table of the same group with old element ``perm[i]`` renamed to ``i``."""
    perm = np.asarray(perm)
    pos = np.empty_like(perm)
    pos[perm] = np.arange(len(perm))
    labels = None if t.labels is None else tuple(t.labels[p] for p in perm)
    return FiniteGroupTable(pos[t.product[perm[:, None], perm[None, :]]], labels)
