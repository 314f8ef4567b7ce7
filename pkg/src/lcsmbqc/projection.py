"""Projection of p-torsion tensors onto the Heisenberg-Weyl group, the
normal-form arithmetic of that group, and the classical value map.

The single-site rule keeps only the affine part of the level-1 polynomial of
a site table; for diagonal sites the level-2 constant contributes a scalar.
Two variants of that scalar are implemented:

* ``proof``:     factor (p^2-root of omega)^{theta_{2,0}}, tracked exactly at
                 level p^2 so that per-site integer carries survive.  This is
                 the default and the variant under which the projection is a
                 homomorphism on commuting torsion pairs.
* ``displayed``: factor omega^{theta_{2,0}}, reduced mod p per site.  On
                 torsion tensors the site exponents sum to 0 mod p, so this
                 collapses to the plain affine truncation and fails the
                 homomorphism law exactly where the carries matter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cyclo import Phase
from .errors import (
    EvenPrimeError,
    LevelError,
    NonTorsionError,
    PrimeMismatchError,
    ShapeMismatchError,
)
from .kgroup import KElement
from .ktensor import TensorElement
from .phase_fn import PhaseFunction, modinv

PROOF = "proof"
DISPLAYED = "displayed"
VARIANTS = (PROOF, DISPLAYED)


class HWElement:
    """Normal form c * (Z^a1 X^b1 (x) ... (x) Z^an X^bn), Z before X.

    The scalar c is usually a power of omega; a p^2-root can appear while
    per-site factors of the projection are being accumulated.
    """

    __slots__ = ("c", "a", "b")

    def __init__(self, c: Phase, a: Iterable[int], b: Iterable[int]):
        p = c.p
        a = tuple(x % p for x in a)
        b = tuple(x % p for x in b)
        if len(a) != len(b) or not a:
            raise ShapeMismatchError("Z- and X-exponent vectors must match and be non-empty")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("HWElement is immutable")

    @property
    def p(self) -> int:
        return self.c.p

    @property
    def n_sites(self) -> int:
        return len(self.a)

    @classmethod
    def identity(cls, p: int, n_sites: int) -> HWElement:
        return cls(Phase.one(p), (0,) * n_sites, (0,) * n_sites)

    @classmethod
    def scalar(cls, value: Phase, n_sites: int) -> HWElement:
        return cls(value, (0,) * n_sites, (0,) * n_sites)

    def _check_shape(self, other: HWElement) -> None:
        if self.p != other.p:
            raise PrimeMismatchError("operands must share one prime")
        if self.n_sites != other.n_sites:
            raise ShapeMismatchError("operands must have the same number of sites")

    def __mul__(self, other: HWElement) -> HWElement:
        if not isinstance(other, HWElement):
            return NotImplemented
        self._check_shape(other)
        # X^b Z^a' = omega^{-a'b} Z^a' X^b per site
        cross = sum(ai * bi for ai, bi in zip(other.a, self.b))
        return HWElement(
            self.c * other.c * Phase.omega(self.p, -cross),
            [x + y for x, y in zip(self.a, other.a)],
            [x + y for x, y in zip(self.b, other.b)],
        )

    def inverse(self) -> HWElement:
        cross = sum(ai * bi for ai, bi in zip(self.a, self.b))
        return HWElement(
            self.c.inverse() * Phase.omega(self.p, -cross),
            [-x for x in self.a],
            [-x for x in self.b],
        )

    def __pow__(self, n: int) -> HWElement:
        if n < 0:
            return self.inverse() ** (-n)
        out = HWElement.identity(self.p, self.n_sites)
        for _ in range(n):
            out = out * self
        return out

    def commutator_exponent(self, other: HWElement) -> int:
        """[self, other] = omega^(a.b' - a'.b)."""
        self._check_shape(other)
        return (
            sum(x * y for x, y in zip(self.a, other.b))
            - sum(x * y for x, y in zip(other.a, self.b))
        ) % self.p

    def commutator(self, other: HWElement) -> HWElement:
        return HWElement.scalar(
            Phase.omega(self.p, self.commutator_exponent(other)), self.n_sites
        )

    def commutes_with(self, other: HWElement) -> bool:
        return self.commutator_exponent(other) == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, HWElement):
            return NotImplemented
        return (self.c, self.a, self.b) == (other.c, other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.c, self.a, self.b))

    def to_json(self) -> dict:
        return {"p": self.p, "c": self.c.to_json(), "a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_json(cls, data: dict) -> HWElement:
        return cls(Phase.from_json(data["c"]), data["a"], data["b"])

    def __repr__(self) -> str:
        return f"HWElement(c={self.c!r}, a={self.a}, b={self.b})"


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def r_map(xi: PhaseFunction, variant: str = PROOF) -> HWElement:
    """Image of a diagonal site: the affine level-1 part as a Z power, plus
    the level-2 constant as a scalar factor (see the module docstring for the
    two treatments of that factor).

    Requires all level >= 2 coefficients except the level-2 constant to
    vanish, which is exactly the diagonal shape occurring inside torsion
    tensors.
    """
    _check_variant(variant)
    p = xi.p
    m = max(2, xi.value_level())
    coeffs = xi.decompose(m)
    for j in range(2, m + 1):
        for a in range(p):
            if coeffs.coefficient(j, a) and not (j == 2 and a == 0):
                raise LevelError(
                    "diagonal table has coefficients outside the affine-plus-"
                    "level-2-constant shape"
                )
    theta10 = coeffs.coefficient(1, 0)
    theta11 = coeffs.coefficient(1, 1)
    theta20 = coeffs.coefficient(2, 0)
    if variant == PROOF:
        scalar = Phase(p, 2, p * theta10 + theta20)
    else:
        scalar = Phase.omega(p, theta10 + theta20)
    return HWElement(scalar, (theta11,), (0,))


def p_map(xi: PhaseFunction) -> HWElement:
    """The affine level-1 part only: omega^{theta_{1,0}} Z^{theta_{1,1}}."""
    m = max(1, xi.value_level())
    coeffs = xi.decompose(m)
    return HWElement(
        Phase.omega(xi.p, coeffs.coefficient(1, 0)), (coeffs.coefficient(1, 1),), (0,)
    )


def phi_local(element: KElement, variant: str = PROOF) -> HWElement:
    """Single-site projection of a p-torsion element, p odd.

    Diagonal sites map through ``r_map``; a unit shift maps through ``p_map``
    with the shift preserved; larger shifts b reduce to the unit-shift case
    via the b-th power of the image of the b^-1-th power.
    """
    _check_variant(variant)
    p = element.p
    if p == 2:
        raise EvenPrimeError("single-site projection is defined for odd primes")
    if not element.is_p_torsion():
        raise NonTorsionError("projection of a single site needs a p-torsion element")
    if element.b == 0:
        return r_map(element.xi, variant)
    if element.b == 1:
        affine = p_map(element.xi)
        return HWElement(affine.c, affine.a, (1,))
    y = modinv(element.b, p)
    return phi_local(element**y, variant) ** element.b


def phi(element: TensorElement, variant: str = PROOF) -> HWElement:
    """Componentwise projection of a p-torsion tensor, all per-site scalar
    factors collected into the global phase.

    On torsion inputs the collected scalar is always a power of omega.
    """
    _check_variant(variant)
    p = element.p
    if p == 2:
        raise EvenPrimeError("the projection pipeline is defined for odd primes")
    if not element.is_p_torsion():
        raise NonTorsionError("projection needs a p-torsion tensor")
    c = element.global_phase
    a_vec = []
    b_vec = []
    for site in element.sites:
        if site.b == 0:
            local = r_map(site.xi, variant)
        else:
            local = phi_local(site, variant)
        c = c * local.c
        a_vec.append(local.a[0])
        b_vec.append(local.b[0])
    return HWElement(c, a_vec, b_vec)


def value_map_nu(h: HWElement) -> int:
    """A classical value for a Heisenberg-Weyl element: nu(omega^c Z^a X^b)
    = c + 2^-1 * a.b mod p.  Additive on commuting pairs and equal to c on
    central elements; defined for odd p and omega-power scalars."""
    if h.p == 2:
        raise EvenPrimeError("the value map is defined for odd primes")
    c = h.c.as_omega_power()
    if c is None:
        raise ValueError("value map needs an omega-power scalar")
    half = modinv(2, h.p)
    return (c + half * sum(x * y for x, y in zip(h.a, h.b))) % h.p


@dataclass(frozen=True)
class EvenPrimeReport:
    """The p = 2 boundary fixture: a commuting 2-torsion pair whose product
    breaks the affine-truncation projection."""

    m1: KElement
    m2: KElement
    squares_are_identity: bool
    pair_commutes: bool
    product_is_minus_identity: bool
    phi_m1: HWElement
    phi_m2: HWElement
    phi_of_product: HWElement
    phi_product_of_images: HWElement
    homomorphism_fails: bool


def _phi2(element: KElement) -> HWElement:
    """The affine-truncation analogue of the projection at p = 2."""
    if element.b == 0:
        coeffs = element.xi.decompose(max(2, element.xi.value_level()))
        return HWElement(
            Phase.omega(2, coeffs.coefficient(1, 0) + coeffs.coefficient(2, 0)),
            (coeffs.coefficient(1, 1),),
            (0,),
        )
    affine = p_map(element.xi)
    return HWElement(affine.c, affine.a, (1,))


def even_prime_counterexample() -> EvenPrimeReport:
    """Construct the order-4-diagonal pair M = S_{xi1}X, N = S_{xi2}X with
    xi1(q) = (-1)^(1+q) i and xi2(q) = (-1)^q i, and exhibit that the p = 2
    projection maps their product to -1 but the product of images to +1."""
    i_pos = Phase(2, 2, 1)  # the value i
    i_neg = Phase(2, 2, 3)  # the value -i
    xi1 = PhaseFunction([i_neg, i_pos])
    xi2 = PhaseFunction([i_pos, i_neg])
    m1 = KElement(xi1, 1)
    m2 = KElement(xi2, 1)
    identity = KElement.identity(2)
    minus_identity = KElement.central(2, 1)

    squares = (m1 * m1 == identity) and (m2 * m2 == identity)
    commute = m1.commutator(m2) == identity
    product = m1 * m2
    product_is_minus = product == minus_identity

    phi_m1 = _phi2(m1)
    phi_m2 = _phi2(m2)
    phi_of_product = _phi2(product)
    phi_images = phi_m1 * phi_m2
    return EvenPrimeReport(
        m1=m1,
        m2=m2,
        squares_are_identity=squares,
        pair_commutes=commute,
        product_is_minus_identity=product_is_minus,
        phi_m1=phi_m1,
        phi_m2=phi_m2,
        phi_of_product=phi_of_product,
        phi_product_of_images=phi_images,
        homomorphism_fails=phi_of_product != phi_images,
    )
