"""Phase tables xi: Z_p -> U(1) and their unique per-level polynomial expansion.

A ``PhaseFunction`` is the diagonal of a generalised phase gate.  Every table
whose values are p^m-th roots of unity factors uniquely as

    xi(q) = prod_{j=1..m} exp(2*pi*i * f_j(q) / p^j),

with each f_j a polynomial of degree <= p-1 over Z_p.  The expansion is
computed by reading off base-p digits of the exponents (most significant
digit = level 1) and interpolating each digit row; see ``decompose``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclo import Phase, is_prime
from .errors import LevelError, PrimeMismatchError, TorusMembershipError


def modinv(a: int, p: int) -> int:
    return pow(a, -1, p)


def lagrange_coeffs(values: Sequence[int], p: int) -> tuple[int, ...]:
    """Coefficients (constant first) of the unique degree <= p-1 polynomial
    over Z_p taking values[q] at q, for q = 0..p-1."""
    if len(values) != p:
        raise ValueError(f"need {p} values, got {len(values)}")
    coeffs = [0] * p
    for q, v in enumerate(values):
        v %= p
        if v == 0:
            continue
        # basis polynomial L_q(x) = prod_{r != q} (x - r) / (q - r)
        basis = [1]
        denom = 1
        for r in range(p):
            if r == q:
                continue
            # multiply basis by (x - r)
            nxt = [0] * (len(basis) + 1)
            for i, c in enumerate(basis):
                nxt[i] = (nxt[i] - c * r) % p
                nxt[i + 1] = (nxt[i + 1] + c) % p
            basis = nxt
            denom = denom * (q - r) % p
        scale = v * modinv(denom, p) % p
        for i, c in enumerate(basis):
            coeffs[i] = (coeffs[i] + scale * c) % p
    return tuple(coeffs)


def eval_poly(coeffs: Sequence[int], q: int, p: int) -> int:
    """Evaluate sum_a coeffs[a] * q^a over Z_p, with the convention 0^0 = 1."""
    acc = 0
    power = 1
    for c in coeffs:
        acc = (acc + c * power) % p
        power = power * q % p
    return acc


@dataclass(frozen=True)
class LevelCoefficients:
    """The matrix theta[j][a] of the per-level polynomials f_j, j = 1..m."""

    p: int
    theta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "theta", tuple(tuple(c % self.p for c in row) for row in self.theta)
        )
        for row in self.theta:
            if len(row) != self.p:
                raise ValueError(f"each level needs {self.p} coefficients, got {len(row)}")

    @property
    def m(self) -> int:
        return len(self.theta)

    def coefficient(self, j: int, a: int) -> int:
        """theta_{j,a} with 1-based level j."""
        return self.theta[j - 1][a]

    def reconstruct(self) -> PhaseFunction:
        """The table xi(q) = prod_j exp(2*pi*i * f_j(q) / p^j), evaluating each
        f_j in Z_p with representative in [0, p)."""
        values = []
        for q in range(self.p):
            v = Phase.one(self.p)
            for j, row in enumerate(self.theta, start=1):
                v = v * Phase(self.p, j, eval_poly(row, q, self.p))
            values.append(v)
        return PhaseFunction(values)

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "theta": [list(row) for row in self.theta]}

    @classmethod
    def from_json(cls, data: dict) -> LevelCoefficients:
        return cls(int(data["p"]), tuple(tuple(row) for row in data["theta"]))


class PhaseFunction:
    """A length-p table of Phases over a common prime, values[q] = xi(q)."""

    __slots__ = ("p", "values")

    def __init__(self, values: Iterable[Phase]):
        values = tuple(values)
        if not values:
            raise ValueError("empty phase table")
        p = values[0].p
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if len(values) != p:
            raise ValueError(f"table over Z_{p} needs {p} values, got {len(values)}")
        if any(v.p != p for v in values):
            raise PrimeMismatchError("all table values must share one prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("PhaseFunction is immutable")

    @classmethod
    def one(cls, p: int) -> PhaseFunction:
        return cls([Phase.one(p)] * p)

    @classmethod
    def constant(cls, value: Phase) -> PhaseFunction:
        return cls([value] * value.p)

    @classmethod
    def omega_poly(cls, p: int, coeffs: Sequence[int]) -> PhaseFunction:
        """Level-1 table omega^{f(q)} for the polynomial with the given coefficients."""
        return cls([Phase.omega(p, eval_poly(coeffs, q, p)) for q in range(p)])

    @classmethod
    def from_exponents(cls, p: int, m: int, exponents: Sequence[int]) -> PhaseFunction:
        """Table with values exp(2*pi*i * exponents[q] / p^m)."""
        return cls([Phase(p, m, e) for e in exponents])

    def __call__(self, q: int) -> Phase:
        return self.values[q % self.p]

    def __mul__(self, other: PhaseFunction) -> PhaseFunction:
        if not isinstance(other, PhaseFunction):
            return NotImplemented
        if self.p != other.p:
            raise PrimeMismatchError("pointwise product needs matching primes")
        return PhaseFunction([a * b for a, b in zip(self.values, other.values)])

    def __pow__(self, k: int) -> PhaseFunction:
        return PhaseFunction([v**k for v in self.values])

    def inverse(self) -> PhaseFunction:
        return self**-1

    def shift(self, b: int) -> PhaseFunction:
        """The translate (b . xi)(q) = xi(q - b)."""
        return PhaseFunction([self.values[(q - b) % self.p] for q in range(self.p)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhaseFunction):
            return NotImplemented
        return self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def det(self) -> Phase:
        """The product of all table values (the gate determinant)."""
        out = Phase.one(self.p)
        for v in self.values:
            out = out * v
        return out

    def in_special_torus(self) -> bool:
        return self.det().is_one()

    def value_level(self) -> int:
        """Smallest m with xi(q)^(p^m) == 1 for every q."""
        return max(v.M for v in self.values)

    def level(self) -> int:
        """Torsion level within the special torus; requires det == 1."""
        if not self.in_special_torus():
            raise TorusMembershipError("table is outside the special torus (det != 1)")
        return self.value_level()

    def decompose(self, m: int) -> LevelCoefficients:
        """The unique per-level polynomial expansion at level m.

        Writes each value as exp(2*pi*i * y_q / p^m) and peels base-p digits
        of y_q from the most significant level downward; the digit row of
        level j is interpolated over Z_p to give the coefficients of f_j.
        """
        if self.value_level() > m:
            raise LevelError(
                f"table has values of level {self.value_level()}, not p^{m}-th roots"
            )
        digits = [[0] * self.p for _ in range(m)]
        for q, v in enumerate(self.values):
            y = v.exponent_at_level(m)
            for j in range(m, 0, -1):
                digits[j - 1][q] = y % self.p
                y //= self.p
        return LevelCoefficients(self.p, tuple(lagrange_coeffs(row, self.p) for row in digits))

    def to_json(self) -> dict:
        return {"p": self.p, "values": [v.to_json() for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> PhaseFunction:
        return cls([Phase.from_json(v) for v in data["values"]])

    def __repr__(self) -> str:
        return f"PhaseFunction({', '.join(repr(v) for v in self.values)})"
