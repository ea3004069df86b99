"""Common surface of the finite graded algebras used here.

Both A(f) = Q/Ann(f) and quotients R/I expose per-degree dimensions and
multiplication matrices by linear forms; Lefschetz and Betti computations
only talk to this interface.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from functools import lru_cache

from .linalg import QMat
from .qpoly import Poly


class GradedAlgebra(ABC):
    nvars: int

    @property
    @abstractmethod
    def top_degree(self) -> int:
        """Largest degree whose piece is known (socle degree or cap)."""

    @property
    def is_artinian(self) -> bool:
        return True

    @abstractmethod
    def dim(self, k: int) -> int: ...

    @abstractmethod
    def mult_matrix(self, L: Poly, k: int, power: int = 1) -> QMat:
        """Matrix of multiplication by ``L**power`` from degree k to k+power."""

    def dims(self, upto: int | None = None) -> list[int]:
        upto = self.top_degree if upto is None else upto
        return [self.dim(k) for k in range(upto + 1)]

    def var_matrix(self, v: int, k: int) -> QMat:
        return self._var_matrix_cached(v, k)

    @lru_cache(maxsize=None)
    def _var_matrix_cached(self, v: int, k: int) -> QMat:
        return self.mult_matrix(Poly.var(self.nvars, v), k, 1)
