"""Graded F2 complexes and their (co)homology with explicit bases."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionMismatchError, InvariantViolation
from .gf2 import BitMatrix, Quotient, Subspace, image, kernel


@dataclass
class GradedComplex:
    """Complex of F2 vector spaces with maps ``maps[n]: C_n -> C_{n+step}``.

    ``step = +1`` is a cochain complex, ``step = -1`` a chain complex.  Missing
    degrees are zero spaces and missing maps are zero maps.
    """

    dims: dict[int, int]
    maps: dict[int, BitMatrix]
    step: int = 1
    _homology: dict[int, Quotient] = field(default_factory=dict, repr=False, compare=False)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def map(self, n: int) -> BitMatrix:
        m = self.maps.get(n)
        if m is None:
            return BitMatrix(self.dim(n + self.step), self.dim(n))
        if m.shape != (self.dim(n + self.step), self.dim(n)):
            raise DimensionMismatchError(f"map out of degree {n} has shape {m.shape}")
        return m

    def check(self) -> None:
        for n in self.dims:
            if not (self.map(n + self.step) @ self.map(n)).is_zero():
                raise InvariantViolation(f"d∘d != 0 at degree {n}")

    def cycles(self, n: int) -> Subspace:
        return kernel(self.map(n))

    def boundaries(self, n: int) -> Subspace:
        return image(self.map(n - self.step))

    def homology(self, n: int) -> Quotient:
        q = self._homology.get(n)
        if q is None:
            q = Quotient(self.cycles(n), self.boundaries(n))
            self._homology[n] = q
        return q

    def betti(self, n: int) -> int:
        return self.homology(n).dim

    def betti_numbers(self, top: int) -> list[int]:
        return [self.betti(n) for n in range(top + 1)]

    def induced(self, chain_map: BitMatrix, n: int, target: "GradedComplex") -> BitMatrix:
        """Matrix of the map on degree-``n`` homology induced by a chain map."""
        return self.homology(n).induced(chain_map, target.homology(n))

