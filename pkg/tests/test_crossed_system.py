import itertools

import numpy as np
import pytest

from crossed_forge import (
    CrossedSystem,
    Holder,
    SpecialCase,
    build_crossed_product,
    classify_special_case,
    cyclic_table,
    enumerate_crossed_systems,
    extract_crossed_system,
    order_profile,
    tables_isomorphic,
    validate_crossed_system,
    verify_group_axioms,
)
from crossed_forge.crossed_system import cosets, default_transversal, is_normal_subgroup, pair_index
from crossed_forge.errors import (
    BadTransversal,
    CocycleViolated,
    NotAutomorphism,
    NotNormalized,
    NotNormalSubgroup,
    WeakActionViolated,
)
from crossed_forge.table import direct_product_table

C2, C3 = cyclic_table(2), cyclic_table(3)
TWISTED_C2 = CrossedSystem(C2, C2, [[0, 1], [0, 1]], [[0, 0], [0, 1]])
INVERSION = CrossedSystem(C3, C2, [[0, 1, 2], [0, 2, 1]], [[0, 0], [0, 0]])


def test_trivial_system_is_valid_direct_product():
    sys = validate_crossed_system(CrossedSystem.trivial(C2, C3))
    P = build_crossed_product(sys)
    assert verify_group_axioms(P).ok
    assert P.order == 6 and 6 in P.element_orders().tolist()
    assert P == direct_product_table(C2, C3)


def test_twisted_c2_valid_and_order_four():
    sys = validate_crossed_system(TWISTED_C2)
    P = build_crossed_product(sys)
    x = pair_index(sys, 0, 1)
    assert P.mul(x, x) == pair_index(sys, 1, 0)
    assert P.element_order(x) == 4


def test_twisted_c2_cocycle_by_hand():
    f = TWISTED_C2.f
    for g1, g2, g3 in itertools.product(range(2), repeat=3):
        assert (f[g1, g2] + f[(g1 + g2) % 2, g3]) % 2 == (f[g2, g3] + f[g1, (g2 + g3) % 2]) % 2


def test_semidirect_is_s3(frozen):
    P = build_crossed_product(validate_crossed_system(INVERSION))
    assert not P.is_abelian()
    assert list(order_profile(P)) == frozen["s3_order_profile"]


def test_not_normalized():
    with pytest.raises(NotNormalized):
        validate_crossed_system(CrossedSystem(C2, C2, [[0, 1], [0, 1]], [[1, 1], [1, 0]]))


def test_cocycle_violation_reported():
    # f(x, 1) = a breaks normalization identities; use C3 with a non-cocycle
    f = np.zeros((3, 3), dtype=int)
    f[1, 1] = 1
    with pytest.raises(CocycleViolated):
        validate_crossed_system(CrossedSystem(C2, C3, np.tile([0, 1], (3, 1)), f))


def test_weak_action_violation_reported():
    # an action that is not a homomorphism with trivial f: C2 acting on C3
    alpha = [[0, 1, 2], [0, 2, 1], [0, 2, 1]]
    with pytest.raises(WeakActionViolated) as info:
        validate_crossed_system(CrossedSystem(C3, C3, alpha, np.zeros((3, 3), dtype=int)))
    assert info.value.witness is not None


def test_not_automorphism():
    with pytest.raises(NotAutomorphism):
        CrossedSystem(C3, C2, [[0, 1, 2], [0, 1, 1]], [[0, 0], [0, 0]])
    # a permutation that does not preserve products
    C4 = cyclic_table(4)
    with pytest.raises(NotAutomorphism):
        validate_crossed_system(CrossedSystem(C4, C2, [[0, 1, 2, 3], [0, 2, 1, 3]], [[0, 0], [0, 0]]))


def test_classification():
    assert classify_special_case(CrossedSystem.trivial(C2, C3)) is SpecialCase.TRIVIAL
    assert classify_special_case(TWISTED_C2) is SpecialCase.TWISTED
    assert classify_special_case(INVERSION) is SpecialCase.SEMIDIRECT


def test_normalization_consequences_hold_on_examples():
    for sys in (TWISTED_C2, INVERSION, CrossedSystem.trivial(C2, C3)):
        sys = validate_crossed_system(sys)
        e = sys.G.identity
        assert (sys.f[e, :] == sys.H.identity).all() and (sys.f[:, e] == sys.H.identity).all()
        assert (sys.alpha[e] == np.arange(sys.H.order)).all()


def test_extract_c4():
    C4 = cyclic_table(4)
    sys = extract_crossed_system(C4, [0, 2], [0, 1])
    assert sys.alpha_is_trivial()
    assert sys.f.tolist() == [[0, 0], [0, 1]]
    assert sys.H.label(1) == "a^2"
    assert tables_isomorphic(build_crossed_product(sys), C4) is not None


def test_extract_direct_product_trivial():
    E = direct_product_table(C2, C2)
    # first factor is {(0,0), (1,0)} = {0, 2}; second factor {0, 1} is the transversal
    sys = extract_crossed_system(E, [0, 2], [0, 1])
    assert classify_special_case(sys) is SpecialCase.TRIVIAL


def test_extract_q8():
    fam = Holder(4, 2, 2, 3)
    q8 = fam.to_table()
    a_sub = [fam.index(fam.power(fam.generators()["a"], k)) for k in range(4)]
    b = fam.index(fam.generators()["b"])
    sys = extract_crossed_system(q8, a_sub, [0, b])
    assert tables_isomorphic(build_crossed_product(sys), q8) is not None
    assert not sys.alpha_is_trivial()


def test_extract_errors():
    q8 = Holder(4, 2, 2, 3).to_table()
    S3 = build_crossed_product(validate_crossed_system(INVERSION))
    two = [0, pair_index(INVERSION, 0, 1)]
    assert not is_normal_subgroup(S3, two)
    with pytest.raises(NotNormalSubgroup):
        extract_crossed_system(S3, two)
    C4 = cyclic_table(4)
    with pytest.raises(BadTransversal):
        extract_crossed_system(C4, [0, 2], [0, 2])
    with pytest.raises(BadTransversal):
        extract_crossed_system(C4, [0, 2], [1, 3])
    with pytest.raises(BadTransversal):
        extract_crossed_system(C4, [0, 2], [0])
    assert default_transversal(q8, [0, 2, 4, 6]) == [0, 1]
    assert cosets(C4, [0, 2]) == [[0, 2], [1, 3]]


def test_extract_with_mapping_transversal():
    C6 = cyclic_table(6)
    sys = extract_crossed_system(C6, [0, 3], {0: 0, 1: 4, 2: 5})
    assert tables_isomorphic(build_crossed_product(sys), C6) is not None


def test_abelian_criterion_small():
    for nH, nG in itertools.product((2, 3), repeat=2):
        for sys in enumerate_crossed_systems(cyclic_table(nH), cyclic_table(nG)):
            P = build_crossed_product(sys)
            assert P.is_abelian() == (sys.alpha_is_trivial() and sys.f_is_symmetric())
