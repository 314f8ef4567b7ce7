"""Exhaustive and randomized verification suites.

Exhaustive sweeps over the level-2 qutrit group run on integer index tables
(Cayley table, scalar-commutant table, per-element projection data) derived
once from the object API; the quadratic and quartic pair sweeps then reduce
to numpy array arithmetic.  Randomized suites exercise the object API
directly with a seeded generator, so re-running a suite with the same
configuration reproduces it bit for bit.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .cyclo import Phase
from .errors import EvenPrimeError, LevelError
from .kgroup import (
    KElement,
    classify_commuting_pair,
    dihedral_check,
    enumerate_kgroup,
    maximal_p_torsion_abelian,
    structural_p_torsion,
)
from .ktensor import (
    TensorElement,
    is_isotropic,
    structural_tensor_p_torsion,
    symplectic_form,
)
from .lcs import (
    LCS,
    GeneratorAssignment,
    check_classical,
    check_solution_conditions,
    mermin_fixtures,
    reduce_to_classical,
    solve_classical,
)
from .phase_fn import LevelCoefficients, PhaseFunction, modinv
from .projection import (
    DISPLAYED,
    PROOF,
    HWElement,
    even_prime_counterexample,
    phi,
    phi_local,
    r_map,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    count: int = 0
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "count": self.count,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    config: dict
    seed: Optional[int]
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _report(suite: str, config: dict, checks: Sequence[CheckResult], seed=None) -> SuiteReport:
    return SuiteReport(suite=suite, config=dict(config), seed=seed, checks=tuple(checks))


# ---------------------------------------------------------------------------
# Indexed group tables
# ---------------------------------------------------------------------------


class KGroupTable:
    """Integer index tables for one enumerated single-site group."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.pm = p**m
        self.elements = enumerate_kgroup(p, m)
        self.n = len(self.elements)
        self.index = {self.key(e): i for i, e in enumerate(self.elements)}
        self._mul: Optional[np.ndarray] = None
        self._commutant: Optional[np.ndarray] = None
        self._pow: Optional[np.ndarray] = None
        self._phi: dict[str, tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = {}

    def key(self, e: KElement) -> tuple:
        table = tuple(v.exponent_at_level(self.m) for v in e.xi.values)
        return (table, e.b)

    def idx(self, e: KElement) -> int:
        return self.index[self.key(e)]

    @property
    def b(self) -> np.ndarray:
        return np.array([e.b for e in self.elements], dtype=np.int16)

    @property
    def mul(self) -> np.ndarray:
        if self._mul is None:
            n = self.n
            table = np.empty((n, n), dtype=np.int32)
            for i, a in enumerate(self.elements):
                for j, c in enumerate(self.elements):
                    table[i, j] = self.idx(a * c)
            self._mul = table
        return self._mul

    @property
    def inv(self) -> np.ndarray:
        return np.array([self.idx(e.inverse()) for e in self.elements], dtype=np.int32)

    @property
    def scal(self) -> np.ndarray:
        """omega exponent when the element is a central scalar, else -1."""
        out = np.full(self.n, -1, dtype=np.int16)
        for i, e in enumerate(self.elements):
            s = e.as_scalar()
            if s is not None:
                w = s.as_omega_power()
                if w is not None:
                    out[i] = w
        return out

    @property
    def identity_index(self) -> int:
        return self.idx(KElement.identity(self.p))

    def power_indices(self, max_power: int) -> np.ndarray:
        """pow[k, i] = index of elements[i] ** k for k = 0..max_power."""
        if self._pow is None or self._pow.shape[0] <= max_power:
            out = np.empty((max_power + 1, self.n), dtype=np.int32)
            out[0] = self.identity_index
            idx_all = np.arange(self.n)
            for k in range(1, max_power + 1):
                out[k] = self.mul[out[k - 1], idx_all]
            self._pow = out
        return self._pow[: max_power + 1]

    @property
    def ppow(self) -> np.ndarray:
        """t with element^p = omega^t * 1 when that power is central, else -1."""
        powers = self.power_indices(self.p)[self.p]
        return self.scal[powers]

    @property
    def torsion(self) -> np.ndarray:
        return self.power_indices(self.p)[self.p] == self.identity_index

    @property
    def commutant(self) -> np.ndarray:
        """Pairwise scalar commutant exponent, -1 where non-scalar."""
        if self._commutant is None:
            idx = np.arange(self.n)
            left = self.mul[idx[:, None], idx[None, :]]
            right = self.mul[self.inv[idx][:, None], self.inv[idx][None, :]]
            comm = self.mul[left, right]
            self._commutant = self.scal[comm]
        return self._commutant

    def phi_data(self, variant: str) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(defined, s2, a, b) arrays of the single-site projection: s2 is the
        scalar exponent at level p^2, a/b the clock/shift exponents."""
        if variant not in self._phi:
            n = self.n
            ok = np.zeros(n, dtype=bool)
            s2 = np.zeros(n, dtype=np.int32)
            a = np.zeros(n, dtype=np.int16)
            bb = np.zeros(n, dtype=np.int16)
            ppow = self.ppow
            for i, e in enumerate(self.elements):
                try:
                    local = r_map(e.xi, variant) if e.b == 0 else phi_local(e, variant)
                except LevelError:
                    continue
                if e.b == 0 and ppow[i] < 0:
                    continue
                ok[i] = True
                s2[i] = local.c.exponent_at_level(2)
                a[i] = local.a[0]
                bb[i] = local.b[0]
            self._phi[variant] = (ok, s2, a, bb)
        return self._phi[variant]


@lru_cache(maxsize=4)
def group_table(p: int, m: int) -> KGroupTable:
    return KGroupTable(p, m)


# ---------------------------------------------------------------------------
# Randomized element generation
# ---------------------------------------------------------------------------


def random_torus_table(rng: random.Random, p: int, m: int) -> PhaseFunction:
    pm = p**m
    head = [rng.randrange(pm) for _ in range(p - 1)]
    head.append((-sum(head)) % pm)
    return PhaseFunction.from_exponents(p, m, head)


def random_k_element(rng: random.Random, p: int, m: int, b: Optional[int] = None) -> KElement:
    if b is None:
        b = rng.randrange(p)
    return KElement(random_torus_table(rng, p, m), b)


def random_capable_diagonal(rng: random.Random, p: int, t: Optional[int] = None) -> KElement:
    """A det-1 diagonal whose p-th power is the scalar omega^t: constant
    level-2 part, free level-1 polynomial, det fixed by rejection."""
    if t is None:
        t = rng.randrange(p)
    while True:
        theta1 = tuple(rng.randrange(p) for _ in range(p))
        coeffs = LevelCoefficients(p, (theta1, (t,) + (0,) * (p - 1)))
        table = coeffs.reconstruct()
        if table.in_special_torus():
            return KElement(table, 0)


def random_affine_diagonal(rng: random.Random, p: int, slope: Optional[int] = None) -> KElement:
    if slope is None:
        slope = rng.randrange(p)
    intercept = rng.randrange(p)
    return KElement(PhaseFunction.omega_poly(p, (intercept, slope)), 0)


def random_scalar_commuting_site_pair(
    rng: random.Random, p: int, m: int, c: Optional[int] = None
) -> tuple[KElement, KElement, int]:
    """A pair (M, M') with [M, M'] = omega^c, sampled across the three case
    shapes; returns (M, M', c)."""
    kind = rng.choice(("diag", "mixed", "shifted")) if c is None or c % p == 0 else (
        rng.choice(("mixed", "shifted"))
    )
    if kind == "diag":
        return (
            KElement(random_torus_table(rng, p, m), 0),
            KElement(random_torus_table(rng, p, m), 0),
            0,
        )
    if kind == "mixed":
        b = rng.randrange(1, p)
        slope = rng.randrange(p) if c is None else (-c) * modinv(b, p) % p
        m1 = random_k_element(rng, p, m, b)
        m2 = random_affine_diagonal(rng, p, slope)
        cc = (-slope * b) % p
        if c is None and rng.random() < 0.5:
            return m2, m1, (-cc) % p
        return m1, m2, cc
    return random_shifted_pair(rng, p, m, c)


def random_commuting_torsion_pair(
    rng: random.Random, p: int, m: int, n_sites: int
) -> tuple[TensorElement, TensorElement]:
    """Two exactly commuting p-torsion tensors built site by site: shifted
    pair sites carry the commutant budget, diagonal pair sites carry
    level-2 constants balanced to keep both tensors torsion."""
    n_diag = rng.randrange(n_sites) if n_sites > 1 else 0
    diag_positions = set(rng.sample(range(n_sites), n_diag))
    shifted_positions = [s for s in range(n_sites) if s not in diag_positions]

    sites1: list[Optional[KElement]] = [None] * n_sites
    sites2: list[Optional[KElement]] = [None] * n_sites
    t1 = t2 = 0
    for pos in sorted(diag_positions):
        if pos == max(diag_positions):
            d1 = random_capable_diagonal(rng, p, (-t1) % p)
            d2 = random_capable_diagonal(rng, p, (-t2) % p)
        else:
            d1 = random_capable_diagonal(rng, p)
            d2 = random_capable_diagonal(rng, p)
        t1 += (d1 ** p).as_scalar().as_omega_power()
        t2 += (d2 ** p).as_scalar().as_omega_power()
        sites1[pos], sites2[pos] = d1, d2
    c_total = 0
    for pos in shifted_positions:
        if pos == shifted_positions[-1]:
            m1, m2, c = random_shifted_pair(rng, p, m, (-c_total) % p)
        else:
            m1, m2, c = random_shifted_pair(rng, p, m, None)
        c_total += c
        sites1[pos], sites2[pos] = m1, m2
    e1 = TensorElement.of_sites(sites1)
    e2 = TensorElement.of_sites(sites2)
    return e1, e2


def random_shifted_pair(
    rng: random.Random, p: int, m: int, c: Optional[int]
) -> tuple[KElement, KElement, int]:
    """A scalar-commuting pair with both shift parts nonzero."""
    b = rng.randrange(1, p)
    bp = rng.randrange(1, p)
    m1 = random_k_element(rng, p, m, b)
    cprime = rng.randrange(p) if c is None else (-c) * modinv(bp, p) % p
    y = bp * modinv(b, p) % p
    chi = KElement(PhaseFunction.omega_poly(p, (rng.randrange(p), cprime)), 0)
    m2 = KElement.central(p, rng.randrange(p)) * (m1 * chi) ** y
    return m1, m2, (-bp * cprime) % p


def random_torsion_tensor(rng: random.Random, p: int, m: int, n_sites: int) -> TensorElement:
    """A p-torsion tensor with a random mix of shifted sites and balanced
    capable diagonal sites."""
    n_diag = rng.randrange(n_sites)
    positions = set(rng.sample(range(n_sites), n_diag))
    sites: list[KElement] = []
    t = 0
    diag_left = sorted(positions)
    for pos in range(n_sites):
        if pos in positions:
            if pos == diag_left[-1]:
                d = random_capable_diagonal(rng, p, (-t) % p)
            else:
                d = random_capable_diagonal(rng, p)
            t += (d ** p).as_scalar().as_omega_power()
            sites.append(d)
        else:
            sites.append(random_k_element(rng, p, m, rng.randrange(1, p)))
    return TensorElement.of_sites(sites)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_lemma1(p: int = 3, m: int = 2, max_power: int = 9) -> SuiteReport:
    """Closed-form power and shifting identities against iterated products,
    exhaustively over the enumerated group."""
    table = group_table(p, m)
    elements = table.elements
    checks = []

    closed_ok = 0
    bad = None
    for e in elements:
        acc = KElement.identity(p)
        for n in range(max_power + 1):
            if e**n != acc:
                bad = (e, n)
                break
            acc = acc * e
        else:
            closed_ok += 1
    checks.append(
        CheckResult(
            "power closed form equals iterated product",
            bad is None,
            count=len(elements) * (max_power + 1),
            detail="" if bad is None else f"failed at {bad}",
        )
    )

    mul = table.mul
    diag = [i for i, e in enumerate(elements) if e.b == 0]
    pow_idx = table.power_indices(max_power)
    shift_of = {}
    for j in diag:
        e = elements[j]
        shift_of[j] = [table.idx(KElement(e.xi.shift(s), 0)) for s in range(p)]

    mismatches = 0
    total = 0
    for i, e in enumerate(elements):
        for n in range(max_power + 1):
            en = pow_idx[n, i]
            nb = (n * e.b) % p
            for j in diag:
                total += 1
                if mul[en, j] != mul[shift_of[j][nb], en]:
                    mismatches += 1
    checks.append(
        CheckResult(
            "powers slide past diagonals through the shift action",
            mismatches == 0,
            count=total,
            detail=f"{mismatches} mismatches" if mismatches else "",
        )
    )

    mismatches = 0
    total = 0
    for i, e in enumerate(elements):
        for j in diag:
            prod = mul[i, j]
            lhs = table.identity_index
            rhs_chi = table.identity_index
            for n in range(1, max_power + 1):
                lhs = mul[lhs, prod]
                rhs_chi = mul[rhs_chi, shift_of[j][(n * e.b) % p]]
                total += 1
                if lhs != mul[rhs_chi, pow_idx[n, i]]:
                    mismatches += 1
    checks.append(
        CheckResult(
            "product-with-diagonal power closed form",
            mismatches == 0,
            count=total,
            detail=f"{mismatches} mismatches" if mismatches else "",
        )
    )
    return _report("lemma1", {"p": p, "m": m, "max_power": max_power}, checks)


def suite_torsion(p: int = 3, m: int = 2) -> SuiteReport:
    """Direct p-th-power torsion versus the structural characterizations,
    exhaustively for single sites and for two-site tensors."""
    table = group_table(p, m)
    elements = table.elements
    checks = []

    bad = sum(
        1 for e in elements if e.is_p_torsion() != structural_p_torsion(e)
    )
    checks.append(
        CheckResult(
            "single-site torsion equivalence",
            bad == 0,
            count=len(elements),
            detail=f"{bad} mismatches" if bad else "",
        )
    )

    # per-site structural data: no non-constant level-2 part, and its constant
    ppow = table.ppow
    capable = np.zeros(table.n, dtype=bool)
    theta20 = np.zeros(table.n, dtype=np.int16)
    for i, e in enumerate(elements):
        if e.b != 0:
            capable[i] = True
            continue
        coeffs = e.xi.decompose(m)
        if all(coeffs.coefficient(2, a) == 0 for a in range(1, p)):
            capable[i] = True
            theta20[i] = coeffs.coefficient(2, 0)
    structural = capable[:, None] & capable[None, :]
    structural &= (theta20[:, None] + theta20[None, :]) % p == 0
    direct = (ppow[:, None] >= 0) & (ppow[None, :] >= 0)
    direct &= (np.where(ppow < 0, 0, ppow)[:, None] + np.where(ppow < 0, 0, ppow)[None, :]) % p == 0
    mismatch = int((structural != direct).sum())
    checks.append(
        CheckResult(
            "two-site structural torsion equals direct computation",
            mismatch == 0,
            count=table.n * table.n,
            detail=f"{mismatch} mismatches" if mismatch else "",
        )
    )

    spot = random.Random(7)
    spot_bad = 0
    for _ in range(500):
        i, j = spot.randrange(len(elements)), spot.randrange(len(elements))
        tensor = TensorElement.of_sites([elements[i], elements[j]])
        expect = bool(direct[i, j])
        if tensor.is_p_torsion() != expect:
            spot_bad += 1
        if structural_tensor_p_torsion(tensor) != expect:
            spot_bad += 1
    checks.append(
        CheckResult(
            "object-API torsion checks agree with the table data",
            spot_bad == 0,
            count=500,
            detail="",
        )
    )
    return _report("torsion", {"p": p, "m": m}, checks)


def suite_commuting_pairs(p: int = 3, m: int = 2) -> SuiteReport:
    """Classify every scalar-commuting pair and verify all case witnesses."""
    table = group_table(p, m)
    elements = table.elements
    commutant = table.commutant
    checks = []
    counts = {1: 0, 2: 0, 3: 0}
    failures = 0
    total = 0
    for i in range(table.n):
        for j in range(table.n):
            c = commutant[i, j]
            if c < 0:
                continue
            total += 1
            try:
                case = classify_commuting_pair(elements[i], elements[j])
                counts[case.case] += 1
            except Exception:
                failures += 1
    checks.append(
        CheckResult(
            "every scalar-commuting pair classifies with verified witnesses",
            failures == 0,
            count=total,
            detail=f"case counts {counts}" if not failures else f"{failures} failures",
        )
    )
    return _report("commuting-pairs", {"p": p, "m": m}, checks)


def suite_subgroups(p: int, m: int, budget: Optional[int] = None) -> SuiteReport:
    """Maximal p-torsion abelian classification; dihedral structure at p=2."""
    checks = []
    if p == 2:
        report = maximal_p_torsion_abelian(p, m, budget)
        klein = all(k == "center_and_shift" for k in report.kinds)
        checks.append(
            CheckResult(
                "all maximal 2-torsion abelian subgroups are center-and-shift",
                klein,
                count=len(report.subgroups),
                detail=f"kinds {report.kinds}",
            )
        )
        checks.append(
            CheckResult(
                "pairwise intersections equal the center {+1, -1}",
                report.intersections_equal_center and len(report.center) == 2,
                count=len(report.subgroups),
            )
        )
        checks.append(
            CheckResult(
                "dihedral relations and order",
                dihedral_check(m),
                count=2 ** (m + 1),
            )
        )
        return _report("subgroups", {"p": p, "m": m}, checks)

    report = maximal_p_torsion_abelian(p, m, budget)
    expected_shift = p ** (m * (p - 1) - 1)
    checks.append(
        CheckResult(
            "exactly one maximal subgroup is the level-1 torus",
            report.torus_count == 1,
            count=len(report.subgroups),
            detail=f"torus subgroups: {report.torus_count}",
        )
    )
    checks.append(
        CheckResult(
            "remaining subgroups are center-and-shift of order p^2",
            report.shift_count == len(report.subgroups) - 1
            and all(
                len(s) == p * p
                for s, k in zip(report.subgroups, report.kinds)
                if k == "center_and_shift"
            ),
            count=report.shift_count,
            detail=f"expected {expected_shift} shift-type, found {report.shift_count}",
        )
    )
    checks.append(
        CheckResult(
            "shift-type subgroup count matches the orbit count",
            report.shift_count == expected_shift,
            count=report.shift_count,
        )
    )
    checks.append(
        CheckResult(
            "pairwise intersections equal the center",
            report.intersections_equal_center,
            count=len(report.subgroups),
        )
    )
    return _report("subgroups", {"p": p, "m": m}, checks)


def suite_decomposition(p: int = 3, m: int = 2, samples: int = 1000, seed: int = 11) -> SuiteReport:
    """Round trip and injectivity of the per-level expansion: exhaustive over
    all qutrit level-2 tables, randomized at p = 5."""
    checks = []
    pm = p**m
    tables = [
        PhaseFunction.from_exponents(p, m, exps)
        for exps in itertools.product(range(pm), repeat=p)
    ]
    bad = 0
    for t in tables:
        if t.decompose(m).reconstruct() != t:
            bad += 1
    checks.append(
        CheckResult(
            f"round trip over all {pm}^{p} level-{m} tables",
            bad == 0,
            count=len(tables),
            detail=f"{bad} failures" if bad else "",
        )
    )

    images = set()
    total = 0
    for theta in itertools.product(
        itertools.product(range(p), repeat=p), repeat=m
    ):
        total += 1
        images.add(LevelCoefficients(p, theta).reconstruct())
    checks.append(
        CheckResult(
            "injectivity by counting distinct reconstructions",
            len(images) == total == p ** (m * p),
            count=total,
            detail=f"{len(images)} distinct of {total}",
        )
    )

    rng = random.Random(seed)
    big_bad = 0
    for _ in range(samples):
        exps = [rng.randrange(25) for _ in range(5)]
        t = PhaseFunction.from_exponents(5, 2, exps)
        if t.decompose(2).reconstruct() != t:
            big_bad += 1
    checks.append(
        CheckResult(
            "randomized round trip at p=5, level 2",
            big_bad == 0,
            count=samples,
            detail=f"{big_bad} failures" if big_bad else "",
        )
    )
    return _report(
        "decomposition", {"p": p, "m": m, "samples": samples}, checks, seed=seed
    )


def _phi_pair_arrays(table: KGroupTable, variant: str):
    """Site-pair index arrays grouped by (commutant, t, t'), restricted to
    projection-capable elements."""
    commutant = table.commutant
    ppow = table.ppow
    ok = table.phi_data(variant)[0]
    groups: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    for i in range(table.n):
        if not ok[i]:
            continue
        for j in range(table.n):
            if not ok[j]:
                continue
            c = commutant[i, j]
            if c < 0:
                continue
            groups.setdefault((int(c), int(ppow[i]), int(ppow[j])), []).append((i, j))
    return {
        key: np.array(pairs, dtype=np.int32) for key, pairs in groups.items()
    }


def _phi_check_quadruples(
    table: KGroupTable,
    variant: str,
    i1: np.ndarray,
    j1: np.ndarray,
    i2: np.ndarray,
    j2: np.ndarray,
) -> tuple[int, str]:
    """Count homomorphism failures phi(EE') != phi(E)phi(E') over quadruple
    index arrays describing pairs E = (i1, i2), E' = (j1, j2); returns the
    failure count and a dump of the first counterexample."""
    p = table.p
    p2 = p * p
    mul = table.mul
    ok, s2, a, b = table.phi_data(variant)
    prod1 = mul[i1, j1]
    prod2 = mul[i2, j2]
    if not (ok[prod1].all() and ok[prod2].all()):
        raise AssertionError("product of commuting torsion tensors left the domain")
    lhs_s2 = (s2[prod1] + s2[prod2]) % p2
    rhs_s2 = (
        s2[i1] + s2[i2] + s2[j1] + s2[j2]
        - p * (a[j1].astype(np.int32) * b[i1] + a[j2].astype(np.int32) * b[i2])
    ) % p2
    bad = lhs_s2 != rhs_s2
    bad |= a[prod1] != (a[i1] + a[j1]) % p
    bad |= a[prod2] != (a[i2] + a[j2]) % p
    bad |= b[prod1] != (b[i1] + b[j1]) % p
    bad |= b[prod2] != (b[i2] + b[j2]) % p
    failures = int(bad.sum())
    witness = ""
    if failures:
        k = int(np.argmax(bad))
        els = table.elements
        witness = (
            f"E = ({els[i1[k]]!r}, {els[i2[k]]!r}), "
            f"E' = ({els[j1[k]]!r}, {els[j2[k]]!r})"
        )
    return failures, witness


def suite_phi(
    p: int = 3,
    m: int = 2,
    n: int = 2,
    variant: str = PROOF,
    samples: int = 10000,
    seed: int = 23,
    chunk: int = 1 << 20,
) -> SuiteReport:
    """The homomorphism law on commuting torsion pairs: exhaustive at p=3 for
    one and two sites, randomized at p=5 up to three sites, plus torsion,
    center, and commutator preservation and the negative controls."""
    checks = []
    table = group_table(p, m)
    elements = table.elements
    ppow = table.ppow
    torsion_idx = [i for i in range(table.n) if table.torsion[i]]
    identity = KElement.identity(p)

    # n = 1 exhaustive, through the object API
    bad = 0
    count = 0
    witness = ""
    for i in torsion_idx:
        for j in torsion_idx:
            if elements[i].commutator(elements[j]) != identity:
                continue
            count += 1
            e1 = TensorElement.of_sites([elements[i]])
            e2 = TensorElement.of_sites([elements[j]])
            if phi(e1 * e2, variant) != phi(e1, variant) * phi(e2, variant):
                bad += 1
                if not witness:
                    witness = f"{elements[i]!r} vs {elements[j]!r}"
    checks.append(
        CheckResult(
            "single-site homomorphism on all commuting torsion pairs",
            bad == 0,
            count=count,
            detail=f"{bad} failures, e.g. {witness}" if bad else "",
        )
    )

    if n >= 2:
        groups = _phi_pair_arrays(table, variant)
        total = 0
        failures = 0
        first_witness = ""
        for (c1, ta, tb), pairs1 in groups.items():
            key2_c = (-c1) % p
            for (c2, tc, td), pairs2 in groups.items():
                if c2 != key2_c or (ta + tc) % p or (tb + td) % p:
                    continue
                n1, n2 = len(pairs1), len(pairs2)
                for start in range(0, n1 * n2, chunk):
                    stop = min(start + chunk, n1 * n2)
                    idx = np.arange(start, stop)
                    q1 = pairs1[idx // n2]
                    q2 = pairs2[idx % n2]
                    count, witness = _phi_check_quadruples(
                        table, variant, q1[:, 0], q1[:, 1], q2[:, 0], q2[:, 1]
                    )
                    failures += count
                    if witness and not first_witness:
                        first_witness = witness
                    total += stop - start
        checks.append(
            CheckResult(
                "two-site homomorphism on all commuting torsion pairs",
                failures == 0,
                count=total,
                detail=f"{failures} failures, e.g. {first_witness}" if failures else "",
            )
        )

    # randomized large-prime sweep
    rng = random.Random(seed)
    rand_bad = 0
    for _ in range(samples):
        sites = rng.randrange(1, 4)
        e1, e2 = random_commuting_torsion_pair(rng, 5, 2, sites)
        if e1.commutator(e2) != TensorElement.identity(5, sites):
            raise AssertionError("generator produced a non-commuting pair")
        if phi(e1 * e2, variant) != phi(e1, variant) * phi(e2, variant):
            rand_bad += 1
    checks.append(
        CheckResult(
            "randomized homomorphism at p=5, up to three sites",
            rand_bad == 0,
            count=samples,
            detail=f"{rand_bad} failures" if rand_bad else "",
        )
    )

    # torsion, center, commutator preservation
    tor_bad = 0
    for i in torsion_idx:
        img = phi(TensorElement.of_sites([elements[i]]), variant)
        if img**p != HWElement.identity(p, 1):
            tor_bad += 1
    checks.append(
        CheckResult(
            "projection preserves torsion",
            tor_bad == 0,
            count=len(torsion_idx),
        )
    )
    center_ok = all(
        phi(TensorElement.scalar(Phase.omega(p, c), 2), variant)
        == HWElement.scalar(Phase.omega(p, c), 2)
        for c in range(p)
    )
    checks.append(CheckResult("projection fixes the center", center_ok, count=p))

    comm_bad = 0
    comm_count = 0
    rng2 = random.Random(seed + 1)
    for _ in range(2000):
        m1, m2, c = random_scalar_commuting_site_pair(rng2, p, m)
        if not (
            (m1.b != 0 or ppow[table.idx(m1)] >= 0)
            and (m2.b != 0 or ppow[table.idx(m2)] >= 0)
        ):
            continue
        e1, e2 = TensorElement.of_sites([m1]), TensorElement.of_sites([m2])
        if not (e1.is_p_torsion() and e2.is_p_torsion()):
            continue
        comm_count += 1
        img1, img2 = phi(e1, variant), phi(e2, variant)
        if img1.commutator_exponent(img2) != c % p:
            comm_bad += 1
    checks.append(
        CheckResult(
            "projection preserves scalar commutators on torsion sites",
            comm_bad == 0,
            count=comm_count,
        )
    )

    # negative controls: the displayed/affine truncation breaks on the
    # balanced level-2 pair, with discrepancy exactly omega
    e = _remark_pair(3)
    lhs = phi(e * e, DISPLAYED)
    rhs = phi(e, DISPLAYED) * phi(e, DISPLAYED)
    discrepancy = lhs.c * rhs.c.inverse() if lhs.a == rhs.a and lhs.b == rhs.b else None
    checks.append(
        CheckResult(
            "affine truncation fails on the balanced level-2 pair",
            lhs != rhs and discrepancy == Phase.omega(3),
            count=1,
            detail=f"discrepancy {discrepancy!r}",
        )
    )
    proof_ok = phi(e * e, PROOF) == phi(e, PROOF) * phi(e, PROOF)
    checks.append(
        CheckResult("carry-tracking variant passes on the same pair", proof_ok, count=1)
    )
    return _report(
        "phi",
        {"p": p, "m": m, "n": n, "variant": variant, "samples": samples},
        checks,
        seed=seed,
    )


def _remark_pair(p: int) -> TensorElement:
    """The det-normalized two-site diagonal tensor whose site level-2
    constants are 1 and p-1: torsion, but its square defeats the affine
    truncation."""
    site1 = LevelCoefficients(p, ((0,) * 2 + (1,) + (0,) * (p - 3), (1,) + (0,) * (p - 1)))
    site2 = LevelCoefficients(
        p, ((0,) * 2 + (p - 1,) + (0,) * (p - 3), (p - 1,) + (0,) * (p - 1))
    )
    return TensorElement.of_sites(
        [KElement(site1.reconstruct(), 0), KElement(site2.reconstruct(), 0)]
    )


def suite_symplectic(
    p: int = 3, m: int = 2, samples: int = 10000, seed: int = 37
) -> SuiteReport:
    """Commutator exponent equals the symplectic form of extracted vectors:
    exhaustive for single sites, randomized for two and three sites."""
    table = group_table(p, m)
    elements = table.elements
    commutant = table.commutant
    checks = []

    vectors = [TensorElement.of_sites([e]).symplectic_vector() for e in elements]
    bad = 0
    count = 0
    witness = ""
    for i in range(table.n):
        for j in range(table.n):
            c = commutant[i, j]
            if c < 0:
                continue
            count += 1
            if symplectic_form(vectors[i], vectors[j]) != c:
                bad += 1
                if not witness:
                    witness = f"{elements[i]!r} vs {elements[j]!r}"
    checks.append(
        CheckResult(
            "single-site symplectic law over all scalar-commuting pairs",
            bad == 0,
            count=count,
            detail=f"{bad} mismatches, e.g. {witness}" if bad else "",
        )
    )

    rng = random.Random(seed)
    rand_bad = 0
    for _ in range(samples):
        n_sites = rng.choice((2, 3))
        sites1, sites2 = [], []
        for _ in range(n_sites):
            m1, m2, _ = random_scalar_commuting_site_pair(rng, p, m)
            sites1.append(m1)
            sites2.append(m2)
        e1 = TensorElement.of_sites(sites1)
        e2 = TensorElement.of_sites(sites2)
        c = e1.commutator_exponent(e2)
        if c is None:
            raise AssertionError("generator produced a non-scalar commutator")
        if symplectic_form(e1.symplectic_vector(), e2.symplectic_vector()) != c:
            rand_bad += 1
    checks.append(
        CheckResult(
            "randomized symplectic law on two- and three-site tensors",
            rand_bad == 0,
            count=samples,
            detail=f"{rand_bad} mismatches" if rand_bad else "",
        )
    )

    # abelian families have isotropic vectors
    iso_bad = 0
    for _ in range(200):
        base = random_torsion_tensor(rng, p, m, 2)
        family = [base**k for k in range(1, p)]
        vecs = [f.symplectic_vector() for f in family]
        if not is_isotropic(vecs):
            iso_bad += 1
    checks.append(
        CheckResult(
            "powers of one torsion tensor give isotropic vectors",
            iso_bad == 0,
            count=200,
        )
    )
    return _report(
        "symplectic", {"p": p, "m": m, "samples": samples}, checks, seed=seed
    )


def _null_space(matrix: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right null space of a matrix over Z_p."""
    rows = [list(r) for r in matrix]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = modinv(rows[r][col], p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for f_col in free:
        vec = [0] * n
        vec[f_col] = 1
        for row_idx, col in enumerate(pivots):
            vec[col] = (-rows[row_idx][f_col]) % p
        basis.append(vec)
    return basis


def _random_combination(rng: random.Random, basis: list[list[int]], p: int) -> list[int]:
    out = [0] * len(basis[0])
    for vec in basis:
        coef = rng.randrange(p)
        out = [(o + coef * v) % p for o, v in zip(out, vec)]
    return out


def _random_solution_instance(
    rng: random.Random, p: int, style: str
) -> tuple[LCS, GeneratorAssignment]:
    """A constraint system together with a quantum solution of the requested
    shape: central scalars, a commuting level-1 diagonal family, or powers of
    one torsion tensor against the center."""
    while True:
        n_gens = rng.randrange(2, 5)
        n_sites = rng.randrange(1, 3)
        if style == "central":
            x = [rng.randrange(p) for _ in range(n_gens)]
            rows = [
                [rng.randrange(p) for _ in range(n_gens)]
                for _ in range(rng.randrange(1, 4))
            ]
            system = LCS(
                p,
                tuple(tuple(r) for r in rows),
                tuple(sum(a * v for a, v in zip(r, x)) % p for r in rows),
            )
            return system, GeneratorAssignment.from_classical(p, x, n_sites)
        if style == "diagonal":
            slopes = [[rng.randrange(p) for _ in range(n_sites)] for _ in range(n_gens)]
            intercepts = [
                [rng.randrange(p) for _ in range(n_sites)] for _ in range(n_gens)
            ]
            gens = [
                TensorElement.of_sites(
                    [
                        KElement(PhaseFunction.omega_poly(p, (a, s)), 0)
                        for a, s in zip(intercepts[k], slopes[k])
                    ]
                )
                for k in range(n_gens)
            ]
            null = _null_space([list(col) for col in zip(*slopes)], p)
            if not null:
                continue
            rows = [_random_combination(rng, null, p) for _ in range(3)]
            b_vals = [
                sum(r_k * sum(intercepts[k]) for k, r_k in enumerate(row)) % p
                for row in rows
            ]
            system = LCS(p, tuple(tuple(r) for r in rows), tuple(b_vals))
            return system, GeneratorAssignment.with_default_j(gens)
        base = random_torsion_tensor(rng, p, 2, n_sites)
        exps = [rng.randrange(p) for _ in range(n_gens)]
        consts = [rng.randrange(p) for _ in range(n_gens)]
        gens = [
            TensorElement.scalar(Phase.omega(p, a), n_sites) * base**e
            for a, e in zip(consts, exps)
        ]
        null = _null_space([exps], p)
        if not null:
            continue
        rows = [_random_combination(rng, null, p) for _ in range(3)]
        b_vals = [sum(r_k * a for r_k, a in zip(row, consts)) % p for row in rows]
        system = LCS(p, tuple(tuple(r) for r in rows), tuple(b_vals))
        return system, GeneratorAssignment.with_default_j(gens)


def suite_pipeline(
    primes: Sequence[int] = (3, 5), trials: int = 40, seed: int = 53
) -> SuiteReport:
    """Reduction of constructed quantum solutions to classical ones, and the
    lifting of classical solutions back to scalar quantum solutions."""
    rng = random.Random(seed)
    checks = []
    for p in primes:
        reduced_ok = 0
        lifted_ok = 0
        for trial in range(trials):
            style = ("central", "diagonal", "cyclic")[trial % 3]
            system, assignment = _random_solution_instance(rng, p, style)
            x = reduce_to_classical(system, assignment)
            if check_classical(system, x):
                reduced_ok += 1
            classical = solve_classical(system)
            if classical is not None:
                lift = GeneratorAssignment.from_classical(p, classical, assignment.n_sites)
                if check_solution_conditions(system, lift).is_quantum_solution:
                    lifted_ok += 1
        checks.append(
            CheckResult(
                f"p={p}: reductions pass the classical check",
                reduced_ok == trials,
                count=trials,
                detail=f"{reduced_ok}/{trials}",
            )
        )
        checks.append(
            CheckResult(
                f"p={p}: classical solutions lift to quantum solutions",
                lifted_ok == trials,
                count=trials,
                detail=f"{lifted_ok}/{trials}",
            )
        )
    return _report(
        "pipeline", {"primes": list(primes), "trials": trials}, checks, seed=seed
    )


def suite_even_prime() -> SuiteReport:
    """The p = 2 boundary: the counterexample pair, the dihedral isomorphism,
    the refusal of the reduction, and the surviving square solution."""
    checks = []
    report = even_prime_counterexample()
    checks.append(
        CheckResult(
            "counterexample pair: squares, commutation, product value",
            report.squares_are_identity
            and report.pair_commutes
            and report.product_is_minus_identity,
            count=3,
        )
    )
    minus_one = HWElement.scalar(Phase.omega(2, 1), 1)
    checks.append(
        CheckResult(
            "projection of the product is -1 while images multiply to +1",
            report.homomorphism_fails
            and report.phi_of_product == minus_one
            and report.phi_product_of_images == HWElement.identity(2, 1),
            count=1,
        )
    )
    fixtures = mermin_fixtures()
    square_report = check_solution_conditions(fixtures.square, fixtures.square_assignment)
    checks.append(
        CheckResult(
            "square operator assignment remains a quantum solution",
            square_report.is_quantum_solution,
            count=3,
        )
    )
    refused = False
    try:
        reduce_to_classical(fixtures.square, fixtures.square_assignment)
    except EvenPrimeError:
        refused = True
    checks.append(CheckResult("reduction refuses p = 2", refused, count=1))
    return _report("even-prime", {}, checks)


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "lemma1": suite_lemma1,
    "torsion": suite_torsion,
    "commuting-pairs": suite_commuting_pairs,
    "subgroups": suite_subgroups,
    "decomposition": suite_decomposition,
    "phi": suite_phi,
    "symplectic": suite_symplectic,
    "pipeline": suite_pipeline,
    "even-prime": suite_even_prime,
}
