"""Shared exception types."""


class PrimeMismatchError(ValueError):
    """Operands built over different primes."""


class LevelError(ValueError):
    """A phase exceeds the allowed root-of-unity level, or a value is not a
    root of unity of the requested order."""


class TorusMembershipError(ValueError):
    """A diagonal phase table with determinant != 1 was used where membership
    in the special torus is required."""


class ShapeMismatchError(ValueError):
    """Tensor/vector/matrix operands of incompatible shape."""


class NonTorsionError(ValueError):
    """An operation restricted to p-torsion elements received a non-torsion
    input."""


class EvenPrimeError(ValueError):
    """An operation restricted to odd primes was invoked at p = 2."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured element budget."""


class NondeterministicTableError(ValueError):
    """An output table with non-deterministic entries was used where a fully
    deterministic table is required."""


class UnsupportedModulusError(ValueError):
    """Solving over a composite modulus is not supported."""
