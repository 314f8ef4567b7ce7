import itertools
import random

import pytest

from lcsmbqc import (
    GeneratorAssignment,
    KElement,
    LCS,
    Phase,
    PhaseFunction,
    TensorElement,
    check_classical,
    check_solution_conditions,
    commute_on_ghz,
    lcs_from_mbqc,
    measurement_family_report,
    mermin_fixtures,
    output_table,
    qubit_star_spec,
    qudit_star_spec,
    reduce_to_classical,
    solve_classical,
)
from lcsmbqc.errors import (
    EvenPrimeError,
    NondeterministicTableError,
    ShapeMismatchError,
    UnsupportedModulusError,
)
from lcsmbqc.lcs import brute_force_solve
from lcsmbqc.mbqc import MbqcSpec, SiteSpec
from lcsmbqc.projection import phi, value_map_nu


def test_lcs_entries_reduced():
    system = LCS(3, ((4, -1),), (5,))
    assert system.A == ((1, 2),)
    assert system.b == (2,)


def test_identity_system_solves_to_rhs():
    system = LCS(3, ((1, 0), (0, 1)), (2, 1))
    assert solve_classical(system) == (2, 1)


def test_mermin_square_has_no_classical_solution():
    square = mermin_fixtures().square
    assert solve_classical(square) is None
    assert brute_force_solve(square) is None
    # exhaustive: no candidate among all 512 passes
    assert not any(
        check_classical(square, x) for x in itertools.product(range(2), repeat=9)
    )


def test_mermin_star_has_no_classical_solution():
    star = mermin_fixtures().star
    assert solve_classical(star) is None
    assert brute_force_solve(star) is None


def test_solver_agrees_with_brute_force():
    rng = random.Random(61)
    for _ in range(120):
        d = rng.choice((2, 3))
        n = rng.randrange(1, 10 if d == 2 else 8)
        m = rng.randrange(1, 11)
        A = tuple(tuple(rng.randrange(d) for _ in range(n)) for _ in range(m))
        b = tuple(rng.randrange(d) for _ in range(m))
        system = LCS(d, A, b)
        got = solve_classical(system)
        brute = brute_force_solve(system)
        assert (got is None) == (brute is None)
        if got is not None:
            assert check_classical(system, got)


def test_solver_rejects_composite_modulus():
    with pytest.raises(UnsupportedModulusError):
        solve_classical(LCS(4, ((1,),), (2,)))


def test_composite_modulus_still_checks():
    system = LCS(6, ((2, 3),), (5,))
    assert check_classical(system, (1, 1))
    assert not check_classical(system, (0, 0))


def test_check_classical_shape_guard():
    with pytest.raises(ShapeMismatchError):
        check_classical(LCS(3, ((1, 0),), (1,)), (1, 2, 3))


def test_square_assignment_satisfies_all_conditions():
    fixtures = mermin_fixtures()
    report = check_solution_conditions(fixtures.square, fixtures.square_assignment)
    assert report.torsion and report.commutativity and report.constraints
    assert report.is_operator_solution and report.is_quantum_solution


def test_scalar_lift_satisfies_all_conditions():
    system = LCS(3, ((1, 2, 0), (0, 1, 1)), (2, 0))
    x = solve_classical(system)
    assert x is not None
    lift = GeneratorAssignment.from_classical(3, x, n_sites=2)
    report = check_solution_conditions(system, lift)
    assert report.is_quantum_solution


def test_condition_report_names_failures():
    system = LCS(3, ((1, 1),), (0,))
    bad = GeneratorAssignment.with_default_j(
        [
            TensorElement.of_sites([KElement(PhaseFunction.from_exponents(3, 2, (1, 4, 4)), 0)]),
            TensorElement.of_sites([KElement.shift(3)]),
        ]
    )
    report = check_solution_conditions(system, bad)
    assert not report.torsion
    assert "g1" in report.torsion_failures
    assert not report.constraints
    assert report.constraint_failures == (0,)


def test_star_family_operator_but_not_quantum():
    spec = qudit_star_spec(3)
    table = output_table(spec)
    family = measurement_family_report(spec, table)
    assert family.all_torsion
    assert family.ghz_rows_match_outputs
    assert family.all_pairs_commute_on_ghz
    assert not family.exact_commutativity
    assert family.noncommuting_pair is not None


def test_commute_on_ghz_examples():
    X, Z = KElement.shift(3), KElement.clock(3)
    one = KElement.identity(3)
    a = TensorElement.of_sites([X, X, X])
    b = TensorElement.of_sites([Z, Z, Z])
    assert a.commutes_with(b) and commute_on_ghz(a, b)
    e = TensorElement.of_sites([X, one])
    f = TensorElement.of_sites([Z, one])
    assert not commute_on_ghz(e, f)


def test_star_operators_commute_on_ghz_only():
    spec = qudit_star_spec(3)
    ops = [spec.row_operator(i) for i in spec.inputs()]
    r, s = ops[1], ops[3]
    assert commute_on_ghz(r, s)
    assert not r.commutes_with(s)


def test_lcs_from_mbqc_qubit_star_matches_displayed_system():
    spec = qubit_star_spec()
    system = lcs_from_mbqc(spec, output_table(spec))
    assert system.A == ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
    assert system.b == (0, 1, 1, 1)
    assert solve_classical(system) is None


def test_lcs_from_mbqc_qudit_star_shape():
    spec = qudit_star_spec(3)
    system = lcs_from_mbqc(spec, output_table(spec))
    assert system.n_rows == 9 and system.n_cols == 3
    assert system.A[0] == (0, 0, 0) and system.b[0] == 0


def test_lcs_from_mbqc_constant_settings_has_low_rank():
    base = PhaseFunction.omega_poly(3, (0, 1))
    spec = MbqcSpec(3, 2, tuple(SiteSpec(base, (1, 0, 0)) for _ in range(3)))
    system = lcs_from_mbqc(spec, output_table(spec))
    assert len(set(system.A)) == 1


def test_lcs_from_mbqc_rejects_nondeterministic_tables():
    base = PhaseFunction.omega_poly(3, (0, 1))
    spec = MbqcSpec(3, 1, (SiteSpec(base, (0, 1)), SiteSpec(base, (0, 0))))
    with pytest.raises(NondeterministicTableError):
        lcs_from_mbqc(spec, output_table(spec))


def test_reduce_scalar_solution_recovers_values():
    system = LCS(5, ((1, 1, 0), (0, 2, 1)), (3, 4))
    x = solve_classical(system)
    lift = GeneratorAssignment.from_classical(5, x, n_sites=1)
    assert reduce_to_classical(system, lift) == x


def test_reduce_diagonal_family():
    p = 3
    # two commuting diagonal generators with slopes cancelling on each row
    g1 = TensorElement.of_sites([KElement(PhaseFunction.omega_poly(p, (1, 1)), 0)])
    g2 = TensorElement.of_sites([KElement(PhaseFunction.omega_poly(p, (2, 2)), 0)])
    system = LCS(p, ((1, 1),), ((1 + 2) % p,))
    assignment = GeneratorAssignment.with_default_j([g1, g2])
    report = check_solution_conditions(system, assignment)
    assert report.is_quantum_solution
    x = reduce_to_classical(system, assignment)
    assert check_classical(system, x)
    assert x == (value_map_nu(phi(g1)), value_map_nu(phi(g2)))


def test_reduce_cyclic_family():
    p = 3
    base = TensorElement.of_sites(
        [KElement.clock(p) * KElement.shift(p), KElement.shift(p)]
    )
    gens = [
        TensorElement.scalar(Phase.omega(p, 1), 2) * base,
        TensorElement.scalar(Phase.omega(p, 2), 2) * base**2,
    ]
    system = LCS(p, ((1, 1), (2, 2)), ((1 + 2) % p, (2 + 4) % p))
    assignment = GeneratorAssignment.with_default_j(gens)
    assert check_solution_conditions(system, assignment).is_quantum_solution
    x = reduce_to_classical(system, assignment)
    assert check_classical(system, x)


def test_reduce_refuses_even_prime():
    fixtures = mermin_fixtures()
    with pytest.raises(EvenPrimeError):
        reduce_to_classical(fixtures.square, fixtures.square_assignment)


def test_reduce_refuses_non_solutions():
    system = LCS(3, ((1,),), (1,))
    bad = GeneratorAssignment.with_default_j([TensorElement.identity(3, 1)])
    with pytest.raises(ValueError):
        reduce_to_classical(system, bad)


def test_mermin_fixture_matrices():
    fixtures = mermin_fixtures()
    assert fixtures.square.d == 2
    assert fixtures.square.A == (
        (1, 1, 1, 0, 0, 0, 0, 0, 0),
        (0, 0, 0, 1, 1, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 1, 1, 1),
        (1, 0, 0, 1, 0, 0, 1, 0, 0),
        (0, 1, 0, 0, 1, 0, 0, 1, 0),
        (0, 0, 1, 0, 0, 1, 0, 0, 1),
    )
    assert fixtures.square.b == (0, 0, 0, 0, 0, 1)
    assert fixtures.star.A == ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
    assert fixtures.star.b == (0, 0, 0, 1)


def test_mermin_square_row_products():
    fixtures = mermin_fixtures()
    gens = fixtures.square_assignment.generators
    j = fixtures.square_assignment.j
    for row, rhs in zip(fixtures.square.A, fixtures.square.b):
        product = TensorElement.identity(2, 2)
        for k, a in enumerate(row):
            if a:
                product = product * gens[k]
        assert product == j**rhs


def test_lcs_json_round_trip():
    system = mermin_fixtures().square
    assert LCS.from_json(system.to_json()) == system
    assignment = mermin_fixtures().square_assignment
    assert GeneratorAssignment.from_json(assignment.to_json()) == assignment
