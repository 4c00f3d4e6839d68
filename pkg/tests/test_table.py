import numpy as np
import pytest

from crossed_forge import Holder, cyclic_table, verify_group_axioms
from crossed_forge.table import FiniteGroupTable, direct_product_table, klein_four_table, relabel


def test_c4_passes():
    report = verify_group_axioms(cyclic_table(4))
    assert report.ok and report.failure is None


def test_corrupted_entry_reports_associativity_triple():
    # swap two entries so the result is still a Latin square with identity 0
    T = cyclic_table(5).product.copy()
    T[1, 1], T[1, 2] = T[1, 2], T[1, 1]
    T[2, 1], T[2, 2] = T[2, 2], T[2, 1]
    t = FiniteGroupTable(T)
    report = verify_group_axioms(t)
    assert not report.ok
    a, b, c = report.witness
    assert T[T[a, b], c] != T[a, T[b, c]]


def test_closure_and_identity_failures():
    assert verify_group_axioms(FiniteGroupTable([[0, 2], [1, 0]])).failure == "closure"
    assert verify_group_axioms(FiniteGroupTable([[1, 1], [1, 1]])).failure == "identity"


def test_q8_passes_all_triples():
    q8 = Holder(4, 2, 2, 3).to_table()
    T = q8.product
    assert verify_group_axioms(q8).ok
    bad = [(a, b, c) for a in range(8) for b in range(8) for c in range(8) if T[T[a, b], c] != T[a, T[b, c]]]
    assert bad == []


def test_power_inverse_and_orders():
    t = cyclic_table(12)
    assert t.power(5, 3) == 3 and t.power(5, -1) == 7
    assert t.inv(5) == 7
    assert [t.element_order(a) for a in range(12)] == [12 // np.gcd(a, 12) for a in range(12)]
    assert sorted(t.generated_subgroup([4])) == [0, 4, 8]


def test_direct_product_and_relabel():
    k4 = klein_four_table()
    assert k4.is_abelian() and k4.order == 4
    assert sorted(k4.element_orders().tolist()) == [1, 2, 2, 2]
    c6 = direct_product_table(cyclic_table(2), cyclic_table(3))
    assert 6 in c6.element_orders().tolist()
    r = relabel(cyclic_table(4), [0, 3, 2, 1])
    assert verify_group_axioms(r).ok and r.mul(1, 1) == 2


def test_bad_shape():
    with pytest.raises(ValueError):
        FiniteGroupTable(np.zeros((2, 3), dtype=int))
