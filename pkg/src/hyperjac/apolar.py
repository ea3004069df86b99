"""Macaulay inverse systems: catalecticants, Ann(f) and the algebra A(f).

An element of A(f)_k is represented by the form alpha(f) of degree d-k; the
map alpha -> alpha(f) is injective on A(f) by definition of Ann(f), so
linear algebra in A(f) reduces to linear algebra on forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .graded import GradedAlgebra
from .linalg import ConsistencyError, Coordinates, QMat, bareiss_echelon, inverse, kernel_basis
from .qpoly import (
    Exponent,
    Poly,
    apply_op,
    coefficient_vector,
    dim_forms,
    homogeneous_degree,
    monomials_of_degree,
)


class ConeError(ValueError):
    """The hypersurface V(f) is a cone (Ann(f)_1 != 0)."""


def _images(f: Poly, k: int) -> list[Poly]:
    return [apply_op(Poly.monomial(m), f) for m in monomials_of_degree(f.nvars, k)]


def catalecticant(f: Poly, k: int) -> QMat:
    """Matrix of Q_k -> R_{d-k}, alpha -> alpha(f), in monomial bases.

    Rows follow the degree d-k monomials and columns the degree k operator
    monomials, both in descending graded-lex order.
    """
    d = homogeneous_degree(f)
    if not 0 <= k <= d:
        raise ValueError(f"catalecticant degree {k} outside 0..{d}")
    cols = [coefficient_vector(g, d - k) for g in _images(f, k)]
    return QMat.from_columns(cols, rows=dim_forms(f.nvars, d - k))


def ann_basis(f: Poly, k: int) -> list[Poly]:
    """Basis of Ann(f)_k as operators (kernel of the catalecticant)."""
    d = homogeneous_degree(f)
    if not 0 <= k <= d + 1:
        raise ValueError(f"degree {k} outside 0..{d + 1}")
    mons = monomials_of_degree(f.nvars, k)
    if k == d + 1:
        return [Poly.monomial(m) for m in mons]
    out = []
    for v in kernel_basis(catalecticant(f, k)):
        alpha = Poly(f.nvars, {m: c for m, c in zip(mons, v) if c})
        if not apply_op(alpha, f).is_zero():
            raise ConsistencyError("kernel vector does not annihilate f")
        out.append(alpha)
    return out


def is_cone(f: Poly) -> bool:
    return bool(ann_basis(f, 1))


class ApolarAlgebra(GradedAlgebra):
    """A(f) = Q/Ann(f) with monomial bases chosen as catalecticant pivots.

    ``basis[k]`` lists the exponent vectors of the operators whose classes
    form the chosen basis of A(f)_k: the first independent ones in
    descending graded-lex order.
    """

    def __init__(self, f: Poly, check_cone: bool = True):
        self.f = f
        self.nvars = f.nvars
        self.d = homogeneous_degree(f)
        self._basis: list[tuple[Exponent, ...]] = []
        self._images: list[list[Poly]] = []
        self._coords: list[Coordinates] = []
        for k in range(self.d + 1):
            mons = monomials_of_degree(self.nvars, k)
            imgs = _images(f, k)
            vecs = [coefficient_vector(g, self.d - k) for g in imgs]
            rows = [[v[r] for v in vecs] for r in range(dim_forms(self.nvars, self.d - k))]
            _, pivots = bareiss_echelon(rows, len(mons))
            self._basis.append(tuple(mons[c] for c in pivots))
            self._images.append([imgs[c] for c in pivots])
            self._coords.append(Coordinates([vecs[c] for c in pivots], len(rows)))
        if check_cone and self.dim(1) < self.nvars:
            raise ConeError("V(f) is a cone: Ann(f)_1 is nonzero")
        h = self.dims()
        if h != h[::-1]:
            raise ConsistencyError(f"Hilbert vector {h} is not symmetric")

    @property
    def top_degree(self) -> int:
        return self.d

    @property
    def socle_degree(self) -> int:
        return self.d

    def dim(self, k: int) -> int:
        if 0 <= k <= self.d:
            return len(self._basis[k])
        return 0

    def basis(self, k: int) -> tuple[Exponent, ...]:
        return self._basis[k] if 0 <= k <= self.d else ()

    def basis_ops(self, k: int) -> list[Poly]:
        return [Poly.monomial(e) for e in self.basis(k)]

    def basis_images(self, k: int) -> list[Poly]:
        return list(self._images[k]) if 0 <= k <= self.d else []

    def coords(self, alpha: Poly) -> list[Fraction]:
        """Coordinates of the class of a homogeneous operator in the chosen basis."""
        if alpha.is_zero():
            raise ValueError("zero operator has no degree; use coords_of_image")
        k = homogeneous_degree(alpha)
        return self.coords_of_image(apply_op(alpha, self.f), k)

    def coords_of_image(self, g: Poly, k: int) -> list[Fraction]:
        if not 0 <= k <= self.d:
            return []
        if g.is_zero():
            return [Fraction(0)] * self.dim(k)
        return self._coords[k].solve(coefficient_vector(g, self.d - k))

    def mult_matrix(self, L: Poly, k: int, power: int = 1) -> QMat:
        return self._mult_matrix(L, k, power)

    @lru_cache(maxsize=256)
    def _mult_matrix(self, L: Poly, k: int, power: int) -> QMat:
        src, dst = self.dim(k), self.dim(k + power)
        if src == 0 or dst == 0:
            return QMat.zeros(dst, src)
        Lp = L ** power
        cols = [self.coords_of_image(apply_op(Lp, g), k + power) for g in self._images[k]]
        return QMat.from_columns(cols, rows=dst)

    def hilbert_vector(self) -> list[int]:
        return self.dims()


GradedAlgebraView = ApolarAlgebra


def hilbert_A(f: Poly) -> ApolarAlgebra:
    """A(f) with its Hilbert vector and bases; raises :class:`ConeError` for cones."""
    return ApolarAlgebra(f)


@dataclass(frozen=True)
class DualBasis:
    k: int
    primal: tuple[Poly, ...]
    dual: tuple[Poly, ...]
    theta: Poly

    def pairing_matrix(self, f: Poly) -> QMat:
        """[dual_i primal_j (f)], which is the identity for a correct dual basis."""
        return QMat.from_rows(
            [[apply_op(b * a, f).constant_value() for a in self.primal] for b in self.dual],
            cols=len(self.primal),
        )


def theta_operator(alg: ApolarAlgebra) -> Poly:
    """First monomial operator of degree d not killing f, scaled to theta(f) = 1."""
    (e,) = alg.basis(alg.d)
    value = apply_op(Poly.monomial(e), alg.f).constant_value()
    return Poly.monomial(e, Fraction(1) / value)


def dual_basis(f: Poly, k: int, alg: ApolarAlgebra | None = None) -> DualBasis:
    """Operators b*_i of degree d-k with b*_i b_j (f) = delta_ij (theta(f) = 1)."""
    alg = alg or ApolarAlgebra(f)
    d = alg.d
    if not 0 <= k <= d:
        raise ValueError(f"degree {k} outside 0..{d}")
    primal = alg.basis_ops(k)
    gammas = alg.basis_ops(d - k)
    # P[m][j] = gamma_m beta_j (f)
    P = QMat.from_rows(
        [[apply_op(g, img).constant_value() for img in alg.basis_images(k)] for g in gammas],
        cols=len(primal),
    )
    try:
        C = inverse(P)
    except ZeroDivisionError:
        raise ConsistencyError("pairing A_k x A_{d-k} -> A_d is degenerate") from None
    dual = []
    for i in range(len(primal)):
        op = Poly.zero(f.nvars)
        for m, g in enumerate(gammas):
            c = C[i, m]
            if c:
                op = op + g.scale(c)
        dual.append(op)
    db = DualBasis(k, tuple(primal), tuple(dual), theta_operator(alg))
    if db.pairing_matrix(f) != QMat.identity(len(primal)):
        raise ConsistencyError("dual basis pairing is not the identity")
    return db
