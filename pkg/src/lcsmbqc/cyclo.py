"""Exact arithmetic for p-power roots of unity.

Every scalar in this package is a ``Phase``: a value exp(2*pi*i * e / p^M)
stored as exact integers.  Multiplication and powers never leave this set,
so no floating point is involved anywhere in the algebra.
"""

from __future__ import annotations

import cmath
import math
from typing import Optional

from .errors import LevelError, PrimeMismatchError

DEFAULT_MAX_LEVEL = 4

_max_level = DEFAULT_MAX_LEVEL


def max_level() -> int:
    """Current cap on the exponent level M of any constructed Phase."""
    return _max_level


def set_max_level(m: int) -> int:
    """Set the level cap for subsequent Phase construction; returns the old cap."""
    global _max_level
    if m < 0:
        raise ValueError("max level must be non-negative")
    old = _max_level
    _max_level = m
    return old


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Phase:
    """The root of unity exp(2*pi*i * e / p^M), stored canonically.

    Canonical form: either e == 0 and M == 0 (the value 1), or p does not
    divide e and 0 <= e < p^M.  Equality and hashing use the canonical
    triple (p, M, e).
    """

    __slots__ = ("p", "M", "e")

    def __init__(self, p: int, M: int, e: int):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if M < 0:
            raise ValueError(f"level must be non-negative, got {M}")
        e %= p**M if M > 0 else 1
        while e and e % p == 0:
            e //= p
            M -= 1
        if e == 0:
            M = 0
        if M > _max_level:
            raise LevelError(f"phase level {M} exceeds the configured cap {_max_level}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "e", e)

    def __setattr__(self, name, value):
        raise AttributeError("Phase is immutable")

    @classmethod
    def one(cls, p: int) -> Phase:
        return cls(p, 0, 0)

    @classmethod
    def omega(cls, p: int, exponent: int = 1) -> Phase:
        """The primitive p-th root exp(2*pi*i/p), raised to ``exponent``."""
        return cls(p, 1, exponent)

    def __mul__(self, other: Phase) -> Phase:
        if not isinstance(other, Phase):
            return NotImplemented
        if self.p != other.p:
            raise PrimeMismatchError(f"cannot multiply phases over p={self.p} and p={other.p}")
        M = max(self.M, other.M)
        pM = self.p**M
        e = self.e * self.p ** (M - self.M) + other.e * self.p ** (M - other.M)
        return Phase(self.p, M, e % pM)

    def __pow__(self, k: int) -> Phase:
        return Phase(self.p, self.M, self.e * k)

    def inverse(self) -> Phase:
        return self**-1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Phase):
            return NotImplemented
        return (self.p, self.M, self.e) == (other.p, other.M, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.M, self.e))

    def is_one(self) -> bool:
        return self.M == 0

    def as_omega_power(self) -> Optional[int]:
        """Return c with self == omega^c when the canonical level is <= 1."""
        if self.M == 0:
            return 0
        if self.M == 1:
            return self.e
        return None

    def exponent_at_level(self, M: int) -> int:
        """The numerator of self rescaled to denominator p^M."""
        if M < self.M:
            raise LevelError(f"phase of level {self.M} has no exponent at level {M}")
        return self.e * self.p ** (M - self.M)

    def to_complex(self) -> complex:
        """Debug printer only; all algebra stays exact."""
        return cmath.exp(2j * math.pi * self.e / self.p**self.M)

    def to_json(self) -> dict:
        return {"p": self.p, "M": self.M, "e": self.e}

    @classmethod
    def from_json(cls, data: dict) -> Phase:
        return cls(int(data["p"]), int(data["M"]), int(data["e"]))

    def __repr__(self) -> str:
        if self.M == 0:
            return f"Phase(1; p={self.p})"
        return f"Phase({self.e}/{self.p}^{self.M})"
