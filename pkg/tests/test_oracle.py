import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossed_forge import (
    Holder,
    TwistedFinite,
    brute_force_is_cyclic,
    build_crossed_product,
    classify_special_case,
    cyclic_table,
    enumerate_crossed_systems,
    order_profile,
    tables_isomorphic,
)
from crossed_forge.crossed_system import SpecialCase
from crossed_forge.errors import TooLarge
from crossed_forge.oracle import automorphisms, batch_is_cyclic, is_isomorphism, iter_isomorphisms
from crossed_forge.table import klein_four_table, relabel

Q8 = Holder(4, 2, 2, 3).to_table()


def test_brute_force_examples():
    ok, gen = brute_force_is_cyclic(cyclic_table(6))
    assert ok and cyclic_table(6).element_order(gen) == 6
    assert brute_force_is_cyclic(klein_four_table()) == (False, None)
    assert brute_force_is_cyclic(Q8) == (False, None)


def test_batch_matches_single():
    tables, truth = [], []
    for phi in [(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1)]:
        t = TwistedFinite(2, 3, phi).to_table()
        tables.append(t.product)
        truth.append(brute_force_is_cyclic(t)[0])
    assert batch_is_cyclic(np.stack(tables)).tolist() == truth


def test_order_profiles(frozen):
    assert order_profile(cyclic_table(4)) == (1, 2, 4, 4)
    assert list(order_profile(Q8)) == frozen["q8_order_profile"]


def test_isomorphism_examples(frozen):
    tw = TwistedFinite(2, 2, (0, 1)).to_table()
    phi = tables_isomorphic(cyclic_table(4), tw)
    assert phi in frozen["c4_to_twisted_2_2_01_isomorphisms"]
    assert sorted(iter_isomorphisms(cyclic_table(4), tw)) == sorted(frozen["c4_to_twisted_2_2_01_isomorphisms"])
    assert tables_isomorphic(cyclic_table(4), klein_four_table()) is None
    assert tables_isomorphic(Q8, Q8) is not None


def test_automorphism_counts():
    assert len(automorphisms(cyclic_table(8))) == 4
    assert len(automorphisms(klein_four_table())) == 6
    assert len(automorphisms(Q8)) == 24


@given(st.permutations(range(8)))
def test_isomorphism_relabelled_q8(perm):
    perm = [0] + [p for p in perm if p != 0]
    r = relabel(Q8, perm)
    fwd, back = tables_isomorphic(Q8, r), tables_isomorphic(r, Q8)
    assert fwd is not None and back is not None
    assert is_isomorphism(Q8, r, fwd) and is_isomorphism(r, Q8, back)
    assert order_profile(r) == order_profile(Q8)


def test_enumerate_c2_c2(frozen):
    systems = enumerate_crossed_systems(cyclic_table(2), cyclic_table(2))
    assert len(systems) == frozen["c2_c2_crossed_system_count"]
    assert sorted(s.f.ravel().tolist() for s in systems) == frozen["c2_c2_crossed_system_f_values"]


def test_enumerate_c3_c2_buckets():
    s3_profile = (1, 2, 2, 2, 3, 3)
    kinds = set()
    for sys in enumerate_crossed_systems(cyclic_table(3), cyclic_table(2)):
        P = build_crossed_product(sys)
        kind = classify_special_case(sys)
        kinds.add(kind)
        assert brute_force_is_cyclic(P)[0] or order_profile(P) == s3_profile
        if kind is SpecialCase.SEMIDIRECT:
            assert order_profile(P) == s3_profile
    assert SpecialCase.SEMIDIRECT in kinds


def test_budget():
    with pytest.raises(TooLarge):
        enumerate_crossed_systems(cyclic_table(2), cyclic_table(2), budget=0)
    big = Holder(9, 8, 0, 1).to_table()
    with pytest.raises(TooLarge):
        tables_isomorphic(big, big)
