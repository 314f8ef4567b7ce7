"""Exact monomial-matrix oracle used by the tests.

A monomial matrix is stored by its column action |q> -> phase[q] |perm[q]|,
with every phase an exact root of unity.  Composition, inversion, and
Kronecker products are computed directly from this action, independently of
the group-law formulas under test.
"""

from __future__ import annotations

from lcsmbqc import KElement, Phase, TensorElement


class MonomialMatrix:
    def __init__(self, perm, phases):
        self.perm = tuple(perm)
        self.phases = tuple(phases)
        assert sorted(self.perm) == list(range(len(self.perm)))

    @classmethod
    def identity(cls, p, dim=None):
        dim = dim or p
        return cls(range(dim), [Phase.one(p)] * dim)

    @classmethod
    def from_k_element(cls, e: KElement) -> "MonomialMatrix":
        p = e.p
        perm = [(q + e.b) % p for q in range(p)]
        phases = [e.xi((q + e.b) % p) for q in range(p)]
        return cls(perm, phases)

    @classmethod
    def from_tensor(cls, t: TensorElement) -> "MonomialMatrix":
        out = None
        for site in t.sites:
            m = cls.from_k_element(site)
            out = m if out is None else out.kron(m)
        return out.scale(t.global_phase)

    def scale(self, phase: Phase) -> "MonomialMatrix":
        return MonomialMatrix(self.perm, [phase * v for v in self.phases])

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        # (A B)|q> = A(other.phases[q] |other.perm[q]>)
        perm = [self.perm[other.perm[q]] for q in range(len(self.perm))]
        phases = [
            other.phases[q] * self.phases[other.perm[q]] for q in range(len(self.perm))
        ]
        return MonomialMatrix(perm, phases)

    def inverse(self) -> "MonomialMatrix":
        n = len(self.perm)
        perm = [0] * n
        phases = [None] * n
        for q in range(n):
            perm[self.perm[q]] = q
            phases[self.perm[q]] = self.phases[q].inverse()
        return MonomialMatrix(perm, phases)

    def __pow__(self, n: int) -> "MonomialMatrix":
        if n < 0:
            return self.inverse() ** (-n)
        p = self.phases[0].p
        out = MonomialMatrix.identity(p, len(self.perm))
        for _ in range(n):
            out = out * self
        return out

    def kron(self, other: "MonomialMatrix") -> "MonomialMatrix":
        n2 = len(other.perm)
        perm = []
        phases = []
        for q1 in range(len(self.perm)):
            for q2 in range(n2):
                perm.append(self.perm[q1] * n2 + other.perm[q2])
                phases.append(self.phases[q1] * other.phases[q2])
        return MonomialMatrix(perm, phases)

    def entries(self):
        """Dense entries as a dict (row, col) -> Phase, zeros omitted."""
        return {(self.perm[q], q): self.phases[q] for q in range(len(self.perm))}

    def __eq__(self, other) -> bool:
        return self.perm == other.perm and self.phases == other.phases

    def __repr__(self):
        return f"MonomialMatrix(perm={self.perm}, phases={self.phases})"
