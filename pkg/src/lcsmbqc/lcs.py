"""Linear constraint systems over Z_d: classical solving, the three
operator-solution conditions, the reduction of operator assignments to
classical solutions, and the standard two-qubit fixtures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .cyclo import Phase, is_prime
from .errors import (
    EvenPrimeError,
    NondeterministicTableError,
    PrimeMismatchError,
    ShapeMismatchError,
    UnsupportedModulusError,
)
from .kgroup import KElement
from .ktensor import TensorElement
from .mbqc import MbqcSpec, OutputTable, ghz_evaluate, ghz_image_coefficients
from .phase_fn import PhaseFunction, modinv
from .projection import HWElement, PROOF, phi, value_map_nu


@dataclass(frozen=True)
class LCS:
    """The system A x = b mod d, entries reduced mod d."""

    d: int
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("modulus must be at least 2")
        A = tuple(tuple(v % self.d for v in row) for row in self.A)
        b = tuple(v % self.d for v in self.b)
        if len(A) != len(b):
            raise ShapeMismatchError("matrix and right-hand side row counts differ")
        widths = {len(row) for row in A}
        if len(widths) > 1:
            raise ShapeMismatchError("matrix rows have unequal length")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n_rows(self) -> int:
        return len(self.A)

    @property
    def n_cols(self) -> int:
        return len(self.A[0]) if self.A else 0

    def to_json(self) -> dict:
        return {"d": self.d, "A": [list(r) for r in self.A], "b": list(self.b)}

    @classmethod
    def from_json(cls, data: dict) -> LCS:
        return cls(int(data["d"]), tuple(tuple(r) for r in data["A"]), tuple(data["b"]))


def check_classical(system: LCS, x: Sequence[int]) -> bool:
    """Whether A x == b mod d."""
    if len(x) != system.n_cols:
        raise ShapeMismatchError(f"candidate has {len(x)} entries, system has {system.n_cols}")
    for row, rhs in zip(system.A, system.b):
        if sum(a * v for a, v in zip(row, x)) % system.d != rhs:
            return False
    return True


def solve_classical(system: LCS) -> Optional[tuple[int, ...]]:
    """One solution of A x = b mod d by Gaussian elimination over the field
    Z_d (d prime), or None when the system is inconsistent."""
    d = system.d
    if not is_prime(d):
        raise UnsupportedModulusError(f"solving needs a prime modulus, got {d}")
    rows = [list(row) + [rhs] for row, rhs in zip(system.A, system.b)]
    n = system.n_cols
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] % d), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = modinv(rows[r][col], d)
        rows[r] = [v * inv % d for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % d:
                factor = rows[i][col]
                rows[i] = [(v - factor * w) % d for v, w in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1] % d:
            return None
    x = [0] * n
    for row_idx, col in pivots:
        x[col] = rows[row_idx][-1]
    return tuple(x)


def brute_force_solve(system: LCS) -> Optional[tuple[int, ...]]:
    """Exhaustive search over Z_d^n; the independent oracle for the solver."""
    for candidate in itertools.product(range(system.d), repeat=system.n_cols):
        if check_classical(system, candidate):
            return candidate
    return None


@dataclass(frozen=True)
class GeneratorAssignment:
    """Tensor operators for the generators x_1..x_n, plus the central element
    J realising the constraint scalar (omega * identity by default)."""

    generators: tuple[TensorElement, ...]
    j: TensorElement

    def __post_init__(self):
        ps = {g.p for g in self.generators} | {self.j.p}
        if len(ps) > 1:
            raise PrimeMismatchError("assignment elements must share one prime")
        shapes = {g.n_sites for g in self.generators} | {self.j.n_sites}
        if len(shapes) > 1:
            raise ShapeMismatchError("assignment elements must share the site count")

    @property
    def p(self) -> int:
        return self.j.p

    @property
    def n_sites(self) -> int:
        return self.j.n_sites

    @classmethod
    def with_default_j(cls, generators: Sequence[TensorElement]) -> GeneratorAssignment:
        generators = tuple(generators)
        first = generators[0]
        return cls(generators, TensorElement.scalar(Phase.omega(first.p), first.n_sites))

    @classmethod
    def from_classical(cls, p: int, x: Sequence[int], n_sites: int = 1) -> GeneratorAssignment:
        """Lift a classical solution: generator k becomes omega^{x_k} * 1."""
        gens = [TensorElement.scalar(Phase.omega(p, v), n_sites) for v in x]
        return cls(tuple(gens), TensorElement.scalar(Phase.omega(p), n_sites))

    def to_json(self) -> dict:
        return {
            "generators": [g.to_json() for g in self.generators],
            "j": self.j.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> GeneratorAssignment:
        return cls(
            tuple(TensorElement.from_json(g) for g in data["generators"]),
            TensorElement.from_json(data["j"]),
        )


@dataclass(frozen=True)
class SolutionConditionReport:
    """The three independently checkable conditions of an operator
    assignment: d-torsion, commutativity (J with everything, and co-row
    pairs), and row-wise constraint satisfaction."""

    torsion: bool
    commutativity: bool
    constraints: bool
    torsion_failures: tuple[str, ...] = ()
    commuting_failures: tuple[tuple[int, int], ...] = ()
    constraint_failures: tuple[int, ...] = ()

    @property
    def is_operator_solution(self) -> bool:
        return self.torsion and self.constraints

    @property
    def is_quantum_solution(self) -> bool:
        return self.torsion and self.commutativity and self.constraints


def _co_row_pairs(system: LCS) -> set[tuple[int, int]]:
    pairs = set()
    for row in system.A:
        support = [k for k, v in enumerate(row) if v]
        pairs.update(
            (j, k) for j, k in itertools.combinations(support, 2)
        )
    return pairs


def check_solution_conditions(
    system: LCS, assignment: GeneratorAssignment
) -> SolutionConditionReport:
    """Evaluate the three conditions exactly.  Row products are taken in
    ascending generator index; on valid inputs co-row generators commute, so
    the fixed order only pins down diagnostics for invalid ones."""
    if system.d != assignment.p:
        raise PrimeMismatchError(
            f"system modulus {system.d} differs from assignment prime {assignment.p}"
        )
    if system.n_cols != len(assignment.generators):
        raise ShapeMismatchError(
            f"system has {system.n_cols} generators, assignment has {len(assignment.generators)}"
        )
    p, n_sites = assignment.p, assignment.n_sites

    torsion_failures = [
        f"g{k + 1}" for k, g in enumerate(assignment.generators) if not g.is_p_torsion()
    ]
    if not assignment.j.is_p_torsion():
        torsion_failures.append("J")

    commuting_failures = []
    for k, g in enumerate(assignment.generators):
        if not assignment.j.commutes_with(g):
            commuting_failures.append((-1, k))
    for j, k in sorted(_co_row_pairs(system)):
        if not assignment.generators[j].commutes_with(assignment.generators[k]):
            commuting_failures.append((j, k))

    constraint_failures = []
    for i, (row, rhs) in enumerate(zip(system.A, system.b)):
        product = TensorElement.identity(p, n_sites)
        for k, exponent in enumerate(row):
            if exponent:
                product = product * assignment.generators[k] ** exponent
        if product != assignment.j**rhs:
            constraint_failures.append(i)

    return SolutionConditionReport(
        torsion=not torsion_failures,
        commutativity=not commuting_failures,
        constraints=not constraint_failures,
        torsion_failures=tuple(torsion_failures),
        commuting_failures=tuple(commuting_failures),
        constraint_failures=tuple(constraint_failures),
    )


def check_solution_conditions_hw(
    system: LCS, generators: Sequence[HWElement], j: HWElement
) -> SolutionConditionReport:
    """The same three conditions for Heisenberg-Weyl assignments."""
    p = j.p
    identity = HWElement.identity(p, j.n_sites)
    torsion_failures = [
        f"g{k + 1}" for k, g in enumerate(generators) if g**p != identity
    ]
    if j**p != identity:
        torsion_failures.append("J")
    commuting_failures = [
        (-1, k) for k, g in enumerate(generators) if not j.commutes_with(g)
    ]
    for a, b in sorted(_co_row_pairs(system)):
        if not generators[a].commutes_with(generators[b]):
            commuting_failures.append((a, b))
    constraint_failures = []
    for i, (row, rhs) in enumerate(zip(system.A, system.b)):
        product = identity
        for k, exponent in enumerate(row):
            if exponent:
                product = product * generators[k] ** exponent
        if product != j**rhs:
            constraint_failures.append(i)
    return SolutionConditionReport(
        torsion=not torsion_failures,
        commutativity=not commuting_failures,
        constraints=not constraint_failures,
        torsion_failures=tuple(torsion_failures),
        commuting_failures=tuple(commuting_failures),
        constraint_failures=tuple(constraint_failures),
    )


def commute_on_ghz(e1: TensorElement, e2: TensorElement) -> bool:
    """Whether (E E') and (E' E) act identically on the GHZ state, decided by
    comparing exact branch phases of both products."""
    if e1.p != e2.p or e1.n_sites != e2.n_sites:
        raise ShapeMismatchError("operands must share prime and site count")
    return ghz_image_coefficients(e1 * e2) == ghz_image_coefficients(e2 * e1)


def lcs_from_mbqc(spec: MbqcSpec, table: OutputTable) -> LCS:
    """One row per input in lexicographic order: coefficients l_k(i), right-
    hand side o(i)."""
    if not table.is_fully_deterministic:
        raise NondeterministicTableError("the computation table must be deterministic")
    if (table.p, table.n_inputs) != (spec.p, spec.n_inputs):
        raise ShapeMismatchError("table does not match the computation spec")
    rows = [spec.settings(inputs) for inputs in spec.inputs()]
    return LCS(spec.p, tuple(rows), tuple(table.outputs))


def reduce_to_classical(
    system: LCS, assignment: GeneratorAssignment, variant: str = PROOF
) -> tuple[int, ...]:
    """Map a quantum solution to a classical one: project every generator
    into the Heisenberg-Weyl group, verify the projected assignment still
    satisfies all three conditions there, then read off values through the
    classical value map.  Odd primes only."""
    if assignment.p == 2:
        raise EvenPrimeError("the reduction pipeline is defined for odd primes")
    report = check_solution_conditions(system, assignment)
    if not report.is_quantum_solution:
        raise ValueError(f"assignment is not a quantum solution: {report}")
    hw_gens = [phi(g, variant) for g in assignment.generators]
    hw_j = phi(assignment.j, variant)
    hw_report = check_solution_conditions_hw(system, hw_gens, hw_j)
    if not hw_report.is_quantum_solution:
        raise ValueError(
            f"projected assignment fails the solution conditions: {hw_report}"
        )
    x = tuple(value_map_nu(g) for g in hw_gens)
    if not check_classical(system, x):
        raise ValueError("value map did not produce a classical solution")
    return x


@dataclass(frozen=True)
class MeasurementFamilyReport:
    """How the row operators of a deterministic computation behave as an
    assignment: always d-torsion and row-consistent on the resource state,
    commuting on the state, but generally not commuting as operators."""

    all_torsion: bool
    ghz_rows_match_outputs: bool
    all_pairs_commute_on_ghz: bool
    exact_commutativity: bool
    noncommuting_pair: Optional[tuple[tuple[int, ...], tuple[int, ...]]]


def measurement_family_report(spec: MbqcSpec, table: OutputTable) -> MeasurementFamilyReport:
    inputs = list(spec.inputs())
    operators = [spec.row_operator(i) for i in inputs]
    all_torsion = all(op.is_p_torsion() for op in operators)
    rows_ok = True
    for op, out in zip(operators, table.outputs):
        eig = ghz_evaluate(op)
        if eig is None or out is None or eig != Phase.omega(spec.p, out):
            rows_ok = False
            break
    ghz_commute = all(
        commute_on_ghz(a, b) for a, b in itertools.combinations(operators, 2)
    )
    witness = None
    for (ia, a), (ib, b) in itertools.combinations(zip(inputs, operators), 2):
        if not a.commutes_with(b):
            witness = (ia, ib)
            break
    return MeasurementFamilyReport(
        all_torsion=all_torsion,
        ghz_rows_match_outputs=rows_ok,
        all_pairs_commute_on_ghz=ghz_commute,
        exact_commutativity=witness is None,
        noncommuting_pair=witness,
    )


# ---------------------------------------------------------------------------
# Two-qubit fixtures
# ---------------------------------------------------------------------------

MERMIN_SQUARE_A = (
    (1, 1, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 1),
    (1, 0, 0, 1, 0, 0, 1, 0, 0),
    (0, 1, 0, 0, 1, 0, 0, 1, 0),
    (0, 0, 1, 0, 0, 1, 0, 0, 1),
)
MERMIN_SQUARE_B = (0, 0, 0, 0, 0, 1)

MERMIN_STAR_L = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
MERMIN_STAR_O = (0, 0, 0, 1)


def _qubit_paulis() -> dict[str, KElement]:
    x = KElement.shift(2)
    one = KElement.identity(2)
    # Y = S X with S = diag(-i, i)
    y = KElement(PhaseFunction([Phase(2, 2, 3), Phase(2, 2, 1)]), 1)
    # iZ = diag(i, -i), the det-1 stand-in for the clock
    iz = KElement(PhaseFunction([Phase(2, 2, 1), Phase(2, 2, 3)]), 0)
    return {"1": one, "X": x, "Y": y, "iZ": iz}


@dataclass(frozen=True)
class MerminFixtures:
    square: LCS
    square_assignment: GeneratorAssignment
    star: LCS


def mermin_fixtures() -> MerminFixtures:
    """The 6x9 square system with its two-qubit operator solution, and the
    4x3 star system.

    Generators are ordered down the columns of the usual 3x3 operator grid
    (X1, X2, X1X2, Y2, Y1, Y1Y2, X1Y2, Y1X2, Z1Z2) so the displayed
    constraint matrix is satisfied with the single -1 on its last row.
    Z1Z2 is encoded as -(iZ (x) iZ) to keep both site tables inside the
    special torus.
    """
    ops = _qubit_paulis()
    one, x, y, iz = ops["1"], ops["X"], ops["Y"], ops["iZ"]
    minus = Phase.omega(2, 1)

    def of(a: KElement, b: KElement) -> TensorElement:
        return TensorElement.of_sites([a, b])

    generators = (
        of(x, one),                            # X1
        of(one, x),                            # X2
        of(x, x),                              # X1X2
        of(one, y),                            # Y2
        of(y, one),                            # Y1
        of(y, y),                              # Y1Y2
        of(x, y),                              # X1Y2
        of(y, x),                              # Y1X2
        TensorElement(minus, [iz, iz]),        # Z1Z2
    )
    square = LCS(2, MERMIN_SQUARE_A, MERMIN_SQUARE_B)
    assignment = GeneratorAssignment(
        generators, TensorElement.scalar(minus, 2)
    )
    star = LCS(2, MERMIN_STAR_L, MERMIN_STAR_O)
    return MerminFixtures(square=square, square_assignment=assignment, star=star)
