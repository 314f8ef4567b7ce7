"""Tensor products of single-site monomial operators with a tracked global
scalar, plus the symplectic bookkeeping of their commutators.

Two tensors are equal when they induce the same operator: site tables may be
rescaled by per-site omega powers as long as the global phase absorbs the
inverse rescaling.  ``canonical_key`` fixes one representative per class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cyclo import Phase
from .errors import LevelError, PrimeMismatchError, ShapeMismatchError
from .kgroup import KElement
from .phase_fn import modinv


class TensorElement:
    """A global Phase together with one KElement per site."""

    __slots__ = ("global_phase", "sites")

    def __init__(self, global_phase: Phase, sites: Iterable[KElement]):
        sites = tuple(sites)
        if not sites:
            raise ShapeMismatchError("tensor needs at least one site")
        p = global_phase.p
        if any(s.p != p for s in sites):
            raise PrimeMismatchError("global phase and all sites must share one prime")
        object.__setattr__(self, "global_phase", global_phase)
        object.__setattr__(self, "sites", sites)

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    @property
    def p(self) -> int:
        return self.global_phase.p

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    @property
    def b_vector(self) -> tuple[int, ...]:
        return tuple(s.b for s in self.sites)

    @classmethod
    def of_sites(cls, sites: Iterable[KElement]) -> TensorElement:
        sites = tuple(sites)
        return cls(Phase.one(sites[0].p), sites)

    @classmethod
    def identity(cls, p: int, n_sites: int) -> TensorElement:
        return cls(Phase.one(p), [KElement.identity(p)] * n_sites)

    @classmethod
    def scalar(cls, value: Phase, n_sites: int) -> TensorElement:
        return cls(value, [KElement.identity(value.p)] * n_sites)

    def _check_shape(self, other: TensorElement) -> None:
        if self.p != other.p:
            raise PrimeMismatchError("tensor operands must share one prime")
        if self.n_sites != other.n_sites:
            raise ShapeMismatchError(
                f"tensor operands have {self.n_sites} and {other.n_sites} sites"
            )

    def __mul__(self, other: TensorElement) -> TensorElement:
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check_shape(other)
        return TensorElement(
            self.global_phase * other.global_phase,
            [a * b for a, b in zip(self.sites, other.sites)],
        )

    def inverse(self) -> TensorElement:
        return TensorElement(
            self.global_phase.inverse(), [s.inverse() for s in self.sites]
        )

    def __pow__(self, n: int) -> TensorElement:
        return TensorElement(self.global_phase**n, [s**n for s in self.sites])

    def commutator(self, other: TensorElement) -> TensorElement:
        self._check_shape(other)
        return TensorElement(
            Phase.one(self.p),
            [a.commutator(b) for a, b in zip(self.sites, other.sites)],
        )

    def as_scalar(self) -> Optional[Phase]:
        """The value c when this tensor is c * identity, else None."""
        acc = self.global_phase
        for site in self.sites:
            s = site.as_scalar()
            if s is None:
                return None
            acc = acc * s
        return acc

    def commutator_scalar(self, other: TensorElement) -> Optional[Phase]:
        """The scalar value of [self, other] when it is a multiple of the
        identity (a power of omega when it exists), else None."""
        return self.commutator(other).as_scalar()

    def commutator_exponent(self, other: TensorElement) -> Optional[int]:
        scalar = self.commutator_scalar(other)
        if scalar is None:
            return None
        return scalar.as_omega_power()

    def commutes_with(self, other: TensorElement) -> bool:
        c = self.commutator_scalar(other)
        return c is not None and c.is_one()

    def is_p_torsion(self) -> bool:
        """Direct check of E^p == identity: every site's p-th power must be a
        scalar and the product of those scalars with global^p must be 1."""
        acc = self.global_phase ** self.p
        for site in self.sites:
            s = (site ** self.p).as_scalar()
            if s is None:
                return False
            acc = acc * s
        return acc.is_one()

    def symplectic_vector(self) -> SymplecticVector:
        """(fbar, bbar) with fbar[i] the linear level-1 coefficient of site i.

        Shifted sites are routed through their unit-shift representative
        (M^(1/b), scaled back by b): the shift action moves the linear
        coefficient of non-affine polynomials, so reading it off the site's
        own table would break the commutator law for shift parts >= 2.  For
        diagonals and unit shifts the two readings coincide.
        """
        fbar = []
        for site in self.sites:
            if site.b in (0, 1):
                rep = site
                scale = 1
            else:
                rep = site ** modinv(site.b, self.p)
                scale = site.b
            level = max(1, rep.xi.value_level())
            fbar.append(scale * rep.xi.decompose(level).coefficient(1, 1))
        return SymplecticVector(self.p, tuple(fbar), self.b_vector)

    def canonical_key(self) -> tuple:
        """A representative of the operator-equality class: each site table is
        rescaled by the omega power making it lexicographically smallest, the
        global phase absorbing the adjustments."""
        omega = Phase.omega(self.p)
        global_phase = self.global_phase
        site_keys = []
        for site in self.sites:
            best = None
            best_j = 0
            table = site.xi.values
            for j in range(self.p):
                w = omega**j
                key = tuple((v * w).M for v in table) + tuple((v * w).e for v in table)
                if best is None or key < best:
                    best = key
                    best_j = j
            site_keys.append((best, site.b))
            global_phase = global_phase * omega ** (-best_j)
        return (global_phase.M, global_phase.e, tuple(site_keys))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.p != other.p or self.n_sites != other.n_sites:
            return False
        return self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def to_json(self) -> dict:
        return {
            "global": self.global_phase.to_json(),
            "sites": [s.to_json() for s in self.sites],
        }

    @classmethod
    def from_json(cls, data: dict) -> TensorElement:
        return cls(
            Phase.from_json(data["global"]),
            [KElement.from_json(s) for s in data["sites"]],
        )

    def __repr__(self) -> str:
        return f"TensorElement(global={self.global_phase!r}, sites={list(self.sites)!r})"


@dataclass(frozen=True)
class SymplecticVector:
    """The pair (fbar, bbar) in Z_p^n x Z_p^n attached to a tensor."""

    p: int
    fbar: tuple[int, ...]
    bbar: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "fbar", tuple(v % self.p for v in self.fbar))
        object.__setattr__(self, "bbar", tuple(v % self.p for v in self.bbar))
        if len(self.fbar) != len(self.bbar):
            raise ShapeMismatchError("fbar and bbar must have equal length")

    @property
    def n(self) -> int:
        return len(self.fbar)


def symplectic_form(v: SymplecticVector, w: SymplecticVector) -> int:
    """fbar(v).bbar(w) - fbar(w).bbar(v) mod p."""
    if v.p != w.p:
        raise PrimeMismatchError("symplectic form needs matching primes")
    if v.n != w.n:
        raise ShapeMismatchError("symplectic form needs equal-length vectors")
    acc = 0
    for fz, bx, fz2, bx2 in zip(v.fbar, w.bbar, w.fbar, v.bbar):
        acc += fz * bx - fz2 * bx2
    return acc % v.p


def is_isotropic(vectors: Sequence[SymplecticVector]) -> bool:
    """Whether the form vanishes on the span (pairwise on generators)."""
    return all(
        symplectic_form(v, w) == 0
        for i, v in enumerate(vectors)
        for w in vectors[i + 1 :]
    )


def structural_tensor_p_torsion(element: TensorElement) -> bool:
    """Torsion via the per-site description at level <= 2: shifted sites are
    unrestricted; diagonal sites must carry no non-constant level-2 part; and
    the level-2 constants, together with global^p, must multiply to 1 (for a
    trivial global: sum of the constants = 0 mod p)."""
    p = element.p
    theta_sum = 0
    for site in element.sites:
        if site.b != 0:
            continue
        if site.xi.value_level() > 2:
            raise LevelError("structural torsion test is stated for level <= 2")
        coeffs = site.xi.decompose(2)
        if any(coeffs.coefficient(2, a) for a in range(1, p)):
            return False
        theta_sum += coeffs.coefficient(2, 0)
    residual = element.global_phase**p * Phase.omega(p, theta_sum)
    return residual.is_one()
