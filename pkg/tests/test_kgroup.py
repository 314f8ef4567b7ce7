import random

import pytest

from lcsmbqc import (
    KElement,
    Phase,
    PhaseFunction,
    classify_commuting_pair,
    dihedral_check,
    enumerate_kgroup,
    maximal_p_torsion_abelian,
    structural_p_torsion,
)
from lcsmbqc.errors import BudgetExceededError, EvenPrimeError, TorusMembershipError
from lcsmbqc.verify import random_k_element

from exact_matrix import MonomialMatrix


def clock(p=3):
    return KElement.clock(p)


def shift(p=3):
    return KElement.shift(p)


def test_torus_membership_enforced():
    with pytest.raises(TorusMembershipError):
        KElement(PhaseFunction.constant(Phase(3, 2, 1)), 0)


def test_shift_squared():
    X = shift()
    assert X * X == KElement(PhaseFunction.one(3), 2)


def test_clock_times_shift():
    Z, X = clock(), shift()
    assert Z * X == KElement(PhaseFunction.omega_poly(3, (0, 1)), 1)


def test_shift_times_clock_matches_matrix_oracle():
    Z, X = clock(), shift()
    got = X * Z
    assert got == KElement(PhaseFunction.omega_poly(3, (-1, 1)), 1)
    oracle = MonomialMatrix.from_k_element(X) * MonomialMatrix.from_k_element(Z)
    assert MonomialMatrix.from_k_element(got) == oracle


def test_inverse_identity_and_shift():
    I3 = KElement.identity(3)
    assert I3.inverse() == I3
    assert shift().inverse() == KElement(PhaseFunction.one(3), 2)


def test_inverse_of_clock_shift_product():
    ZX = clock() * shift()
    assert ZX * ZX.inverse() == KElement.identity(3)
    assert ZX.inverse() * ZX == KElement.identity(3)


def test_power_zero_is_identity():
    for e in (clock(), shift(), clock() * shift()):
        assert e**0 == KElement.identity(3)


def test_power_of_clock_shift_is_identity_at_p():
    ZX = clock() * shift()
    assert ZX**3 == KElement.identity(3)
    by_hand = ZX * ZX * ZX
    assert by_hand == KElement.identity(3)


def test_power_of_level_two_diagonal():
    # det-1 diagonal with a genuine level-2 part cubes to a central omega
    d = KElement(PhaseFunction.from_exponents(3, 2, (1, 4, 4)), 0)
    cube = d**3
    assert cube == KElement.central(3, 1)


def test_commutator_self_is_identity():
    ZX = clock() * shift()
    assert ZX.commutator(ZX) == KElement.identity(3)


def test_commutator_shift_clock():
    X, Z = shift(), clock()
    comm = X.commutator(Z)
    assert comm == KElement.central(3, 2)
    assert X.scalar_commutant(Z) == 2


def test_diagonals_commute():
    d1 = KElement(PhaseFunction.from_exponents(3, 2, (1, 4, 4)), 0)
    d2 = KElement(PhaseFunction.from_exponents(3, 2, (2, 8, 8)), 0)
    assert d1.commutator(d2) == KElement.identity(3)


def test_scalar_commutant_absent_for_nonconstant_commutator():
    # non-affine det-1 diagonal (quadratic level-1 digit plus level-2 constant)
    X = shift()
    quad = KElement(PhaseFunction.from_exponents(3, 2, (1, 4, 4)), 0)
    assert X.scalar_commutant(quad) is None


def test_torsion_examples():
    assert shift().is_p_torsion()
    assert (clock() * shift()).is_p_torsion()
    level2 = KElement(PhaseFunction.from_exponents(3, 2, (1, 4, 4)), 0)
    assert not level2.is_p_torsion()
    assert structural_p_torsion(shift())
    assert not structural_p_torsion(level2)


def test_torsion_structural_equivalence_sampled():
    rng = random.Random(5)
    for _ in range(300):
        e = random_k_element(rng, 5, 2)
        assert e.is_p_torsion() == structural_p_torsion(e)
    for _ in range(100):
        e = random_k_element(rng, 5, 1)
        assert e.is_p_torsion() == structural_p_torsion(e)


def test_classify_diagonal_pair():
    Z = clock()
    case = classify_commuting_pair(Z, Z * Z)
    assert case.case == 1 and case.c == 0


def test_classify_mixed_pair():
    X, Z = shift(), clock()
    case = classify_commuting_pair(X, Z)
    assert case.case == 2
    assert case.c == 2
    assert not case.swapped
    assert case.chi_slope == 1
    assert case.second_central is False


def test_classify_mixed_pair_swapped():
    X, Z = shift(), clock()
    case = classify_commuting_pair(Z, X)
    assert case.case == 2 and case.swapped


def test_classify_central_partner():
    X = shift()
    case = classify_commuting_pair(X, KElement.central(3, 1))
    assert case.case == 2 and case.second_central


def test_classify_power_pair():
    M = clock() * shift()
    case = classify_commuting_pair(M, M * M)
    assert case.case == 3
    assert case.c == 0
    assert case.y == 2
    assert case.a == 0
    assert case.chi_slope == 0


def test_classify_rejects_non_scalar_pairs():
    X = shift()
    quad = KElement(PhaseFunction.from_exponents(3, 2, (1, 4, 4)), 0)
    with pytest.raises(ValueError):
        classify_commuting_pair(X, quad)


def test_classify_rejects_even_prime():
    with pytest.raises(EvenPrimeError):
        classify_commuting_pair(KElement.shift(2), KElement.shift(2))


def test_enumeration_counts():
    assert len(enumerate_kgroup(3, 1)) == 27
    assert len(enumerate_kgroup(3, 2)) == 243
    assert len(enumerate_kgroup(2, 2)) == 8


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_kgroup(5, 2, budget=1000)


def test_group_axioms_against_matrix_oracle():
    rng = random.Random(11)
    for p in (2, 3):
        for _ in range(250):
            a = random_k_element(rng, p, 2)
            b = random_k_element(rng, p, 2)
            ma = MonomialMatrix.from_k_element(a)
            mb = MonomialMatrix.from_k_element(b)
            assert MonomialMatrix.from_k_element(a * b) == ma * mb
            assert MonomialMatrix.from_k_element(a.inverse()) == ma.inverse()
            n = rng.randrange(0, 7)
            assert MonomialMatrix.from_k_element(a**n) == ma**n
            assert MonomialMatrix.from_k_element(a.commutator(b)) == (
                ma * mb * ma.inverse() * mb.inverse()
            )


def test_power_closed_form_matches_iteration():
    rng = random.Random(13)
    for _ in range(100):
        e = random_k_element(rng, 3, 2)
        acc = KElement.identity(3)
        for n in range(8):
            assert e**n == acc
            acc = acc * e


def test_negative_powers():
    M = clock() * shift()
    assert M**-1 == M.inverse()
    assert M**-2 == (M * M).inverse()


def test_subgroup_classification_qutrit_level2():
    report = maximal_p_torsion_abelian(3, 2)
    assert len(report.subgroups) == 28
    assert report.torus_count == 1
    assert report.shift_count == 27
    assert report.intersections_equal_center
    assert all(len(s) == 9 for s in report.subgroups)
    assert len(report.center) == 3


def test_subgroup_classification_heisenberg_weyl():
    report = maximal_p_torsion_abelian(3, 1)
    assert len(report.subgroups) == 4
    assert report.torus_count == 1 and report.shift_count == 3
    assert report.intersections_equal_center


def test_subgroup_classification_even_prime():
    report = maximal_p_torsion_abelian(2, 2)
    assert len(report.subgroups) == 2
    assert all(k == "center_and_shift" for k in report.kinds)
    assert all(len(s) == 4 for s in report.subgroups)
    assert report.intersections_equal_center
    assert report.center == frozenset({KElement.identity(2), KElement.central(2, 1)})


def test_dihedral_structure():
    assert dihedral_check(1)
    assert dihedral_check(2)
    assert dihedral_check(3)


def test_json_round_trip():
    M = clock() * shift()
    assert KElement.from_json(M.to_json()) == M
