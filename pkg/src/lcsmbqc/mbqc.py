"""Deterministic, non-adaptive measurement-based computation on GHZ states.

States never appear as amplitude vectors: all operators are monomial, so a
GHZ evaluation reduces to checking that a length-p product table is constant.
The cost per input is O(number_of_sites * p), exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .cyclo import Phase, is_prime
from .errors import (
    EvenPrimeError,
    NondeterministicTableError,
    PrimeMismatchError,
    ShapeMismatchError,
)
from .kgroup import KElement
from .ktensor import TensorElement
from .phase_fn import PhaseFunction, lagrange_coeffs


@dataclass(frozen=True)
class SiteSpec:
    """One measurement site: a base phase table and the affine setting map
    l(i) = coeffs[0] + sum_j coeffs[j] * i_j over Z_p."""

    xi: PhaseFunction
    coeffs: tuple[int, ...]

    def setting(self, inputs: Sequence[int]) -> int:
        p = self.xi.p
        if len(inputs) != len(self.coeffs) - 1:
            raise ShapeMismatchError(
                f"site expects {len(self.coeffs) - 1} input digits, got {len(inputs)}"
            )
        acc = self.coeffs[0]
        for c, i in zip(self.coeffs[1:], inputs):
            acc += c * i
        return acc % p

    def to_json(self) -> dict:
        return {"xi": self.xi.to_json(), "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> SiteSpec:
        return cls(PhaseFunction.from_json(data["xi"]), tuple(data["coeffs"]))


@dataclass(frozen=True)
class MbqcSpec:
    """A deterministic, non-adaptive computation: prime, input width, and one
    ``SiteSpec`` per measured qudit."""

    p: int
    n_inputs: int
    sites: tuple[SiteSpec, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        for k, site in enumerate(self.sites):
            if site.xi.p != self.p:
                raise PrimeMismatchError(f"site {k} is over p={site.xi.p}, spec has p={self.p}")
            if len(site.coeffs) != self.n_inputs + 1:
                raise ShapeMismatchError(
                    f"site {k} needs {self.n_inputs + 1} affine coefficients"
                )

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    def settings(self, inputs: Sequence[int]) -> tuple[int, ...]:
        return tuple(site.setting(inputs) for site in self.sites)

    def row_operator(self, inputs: Sequence[int]) -> TensorElement:
        """The tensor of per-site measurement operators at the given input."""
        return TensorElement.of_sites(
            [measurement_op(site.xi, site.setting(inputs)) for site in self.sites]
        )

    def inputs(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.p), repeat=self.n_inputs)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n_inputs": self.n_inputs,
            "sites": [s.to_json() for s in self.sites],
        }

    @classmethod
    def from_json(cls, data: dict) -> MbqcSpec:
        return cls(
            int(data["p"]),
            int(data["n_inputs"]),
            tuple(SiteSpec.from_json(s) for s in data["sites"]),
        )


def measurement_op(xi: PhaseFunction, setting: int) -> KElement:
    """The operator S_xi^l X as a group element: (xi^l pointwise, shift 1),
    with the setting reduced to [0, p)."""
    return KElement(xi ** (setting % xi.p), 1)


def star_base_function(p: int) -> PhaseFunction:
    """The base table theta(1) * omega^((q-1)^(p-1)) whose l-th pointwise
    power is the star operator at setting l."""
    theta = Phase(p, 2, 1)
    return PhaseFunction(
        [theta * Phase.omega(p, pow((q - 1) % p, p - 1, p)) for q in range(p)]
    )


def star_measurement_op(p: int, setting: int) -> KElement:
    """The qudit-star operator taking |q> to theta(l) omega^{l q^(p-1)} |q+1>,
    for odd primes; its p-th power is the identity."""
    if p == 2:
        raise EvenPrimeError("the qudit star is defined for odd primes")
    return measurement_op(star_base_function(p), setting)


def ghz_image_coefficients(element: TensorElement) -> tuple[Phase, ...]:
    """Coefficient attached to the image of each GHZ branch |q>^(x)N; the
    branch maps to that multiple of |q + b_1> (x) ... (x) |q + b_N>."""
    out = []
    for q in range(element.p):
        acc = element.global_phase
        for site in element.sites:
            acc = acc * site.xi((q + site.b) % element.p)
        out.append(acc)
    return tuple(out)


def ghz_evaluate(element: TensorElement) -> Optional[Phase]:
    """The eigenvalue of the tensor on the N-site GHZ state, or None when the
    state is not an eigenstate (unequal shifts, or a non-constant branch
    phase)."""
    b = element.sites[0].b
    if any(site.b != b for site in element.sites):
        return None
    coeffs = ghz_image_coefficients(element)
    if any(c != coeffs[0] for c in coeffs):
        return None
    return coeffs[0]


@dataclass(frozen=True)
class OutputTable:
    """Outputs o(i) over all p^n inputs in lexicographic order, with a
    determinism flag per input.  Non-deterministic inputs and eigenvalues
    that are not omega powers carry output None."""

    p: int
    n_inputs: int
    outputs: tuple[Optional[int], ...]
    deterministic: tuple[bool, ...]

    @property
    def is_fully_deterministic(self) -> bool:
        return all(self.deterministic) and all(o is not None for o in self.outputs)

    def inputs(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.p), repeat=self.n_inputs)

    def as_dict(self) -> dict[tuple[int, ...], Optional[int]]:
        return dict(zip(self.inputs(), self.outputs))


def output_table(spec: MbqcSpec) -> OutputTable:
    """Evaluate every input on the GHZ state and collect omega exponents."""
    outputs = []
    flags = []
    for inputs in spec.inputs():
        eig = ghz_evaluate(spec.row_operator(inputs))
        if eig is None:
            outputs.append(None)
            flags.append(False)
        else:
            outputs.append(eig.as_omega_power())
            flags.append(True)
    return OutputTable(spec.p, spec.n_inputs, tuple(outputs), tuple(flags))


@dataclass(frozen=True)
class MultivariatePoly:
    """A polynomial over Z_p in n variables with individual degrees <= p-1,
    stored as a map from exponent tuples to nonzero coefficients."""

    p: int
    n_vars: int
    coeffs: dict[tuple[int, ...], int]

    def evaluate(self, point: Sequence[int]) -> int:
        acc = 0
        for exps, c in self.coeffs.items():
            term = c
            for e, x in zip(exps, point):
                term = term * pow(x % self.p, e, self.p) if e else term
            acc = (acc + term) % self.p
        return acc

    def total_degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(sum(exps) for exps in self.coeffs)


def interpolate_poly(table: OutputTable) -> MultivariatePoly:
    """The unique polynomial with individual degrees <= p-1 matching the
    table on all of Z_p^n, by iterated univariate interpolation."""
    if not table.is_fully_deterministic:
        raise NondeterministicTableError("interpolation needs a fully deterministic table")
    p, n = table.p, table.n_inputs
    # dense tensor of values, axis-transformed one variable at a time
    values = {inputs: v for inputs, v in zip(table.inputs(), table.outputs)}
    coeffs = values
    for axis in range(n):
        transformed: dict[tuple[int, ...], int] = {}
        for prefix in itertools.product(range(p), repeat=axis):
            for suffix in itertools.product(range(p), repeat=n - axis - 1):
                line = [coeffs[prefix + (q,) + suffix] for q in range(p)]
                for a, c in enumerate(lagrange_coeffs(line, p)):
                    transformed[prefix + (a,) + suffix] = c
        coeffs = transformed
    return MultivariatePoly(
        p, n, {exps: c for exps, c in coeffs.items() if c % p}
    )


@dataclass(frozen=True)
class ContextualityWitness:
    """Total degree of the interpolated output and the resulting verdict:
    a total degree of at least p certifies contextuality."""

    p: int
    degree: int
    contextual: bool


def contextuality_witness(table: OutputTable) -> ContextualityWitness:
    degree = interpolate_poly(table).total_degree()
    return ContextualityWitness(table.p, degree, degree >= table.p)


def qudit_star_spec(p: int) -> MbqcSpec:
    """Three sites measuring the star operators with settings i1, i2, and
    -i1-i2 over Z_p, for odd prime p."""
    if p == 2:
        raise EvenPrimeError("the qudit star is defined for odd primes")
    base = star_base_function(p)
    return MbqcSpec(
        p,
        2,
        (
            SiteSpec(base, (0, 1, 0)),
            SiteSpec(base, (0, 0, 1)),
            SiteSpec(base, (0, -1 % p, -1 % p)),
        ),
    )


def qubit_star_spec() -> MbqcSpec:
    """The three-qubit instance: base table diag(-i, i) read along the shift,
    settings i1, i2, and i1 + i2 over Z_2."""
    base = PhaseFunction([Phase(2, 2, 3), Phase(2, 2, 1)])
    return MbqcSpec(
        2,
        2,
        (
            SiteSpec(base, (0, 1, 0)),
            SiteSpec(base, (0, 0, 1)),
            SiteSpec(base, (0, 1, 1)),
        ),
    )


def expected_star_outputs(p: int) -> tuple[int, ...]:
    """The closed-form star output: 0 at the zero input, 1 when the integer
    sum of the input digits is at most p, and 2 beyond."""
    out = []
    for i1, i2 in itertools.product(range(p), repeat=2):
        if i1 == 0 and i2 == 0:
            out.append(0)
        elif i1 + i2 <= p:
            out.append(1)
        else:
            out.append(2)
    return tuple(out)
