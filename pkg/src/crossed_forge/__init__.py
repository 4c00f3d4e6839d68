"""Crossed products of groups, with emphasis on cyclic-by-cyclic extensions."""

from .cocycles import (
    INF,
    CocycleProfile,
    PartialSums,
    cocycle_to_profile,
    enumerate_profiles,
    partial_sums,
    profile_to_cocycle,
)
from .crossed_system import (
    CrossedSystem,
    SpecialCase,
    build_crossed_product,
    classify_special_case,
    extract_crossed_system,
    validate_crossed_system,
)
from .cyclic_core import BezoutWitness, ext_gcd, gcd3, mod_inverse, mod_pow
from .cyclicity import (
    CyclicityVerdict,
    Obstruction,
    ThetaWitness,
    bezout_coprime,
    decide_cyclic_holder,
    decide_cyclic_inf_by_fin,
    decide_cyclic_main,
    twisted_inf_to_presentation_iso,
    twisted_to_holder_iso,
)
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
    validate_family,
)
from .oracle import (
    brute_force_is_cyclic,
    enumerate_crossed_systems,
    order_profile,
    tables_isomorphic,
)
from .table import FiniteGroupTable, cyclic_table, verify_group_axioms

__version__ = "0.1.0"
