"""Higher order Jacobian ideals J^k(f) and Milnor algebras M^k(f) = R/J^k(f).

Everything is computed degree by degree from spanning sets
``{mu * g : mu monomial, g generator}``; no Groebner bases are needed.
Artinian-ness is certified from a socle-degree bound: if J^k(f) is
primary to the maximal ideal, n+1 generic combinations of its generators
(all of degree e = d-k) form a regular sequence with socle degree
(n+1)(e-1), so M^k(f) vanishes in degree (n+1)(e-1)+1 exactly when it is
Artinian.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .graded import GradedAlgebra
from .hessian import poly_determinant
from .linalg import ConsistencyError, QMat, SparseRREF, rank, sparse_solve
from .qpoly import (
    Exponent,
    Poly,
    coefficient_vector,
    diff,
    dim_forms,
    homogeneous_degree,
    monomial_index,
    monomials_of_degree,
    substitute,
)


@dataclass(frozen=True)
class GradedIdealPresentation:
    nvars: int
    generators: tuple[Poly, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.is_zero():
                raise ValueError("zero generator")
            homogeneous_degree(g)
            if g.nvars != self.nvars:
                raise ValueError("generator in the wrong ring")

    @property
    def degrees(self) -> list[int]:
        return [homogeneous_degree(g) for g in self.generators]


def jac_gens(f: Poly, k: int) -> GradedIdealPresentation:
    """Distinct nonzero k-th order partial derivatives of f."""
    d = homogeneous_degree(f)
    if not 1 <= k < d:
        raise ValueError(f"order k={k} must satisfy 1 <= k < {d}")
    seen: dict[Poly, None] = {}
    for idx in combinations_with_replacement(range(f.nvars), k):
        g = f
        for i in idx:
            g = diff(g, i)
        if not g.is_zero():
            seen.setdefault(g)
    return GradedIdealPresentation(f.nvars, tuple(seen))


def _shift(g: Poly, mu: Exponent) -> dict[Exponent, Fraction]:
    return {tuple(a + b for a, b in zip(e, mu)): c for e, c in g.as_dict().items()}


def ideal_rows(pres: GradedIdealPresentation, m: int) -> list[list[Fraction]]:
    """Coefficient vectors spanning I_m (one per monomial multiple of a generator)."""
    idx = monomial_index(pres.nvars, m)
    rows = []
    for g, e in zip(pres.generators, pres.degrees):
        if e > m:
            continue
        for mu in monomials_of_degree(pres.nvars, m - e):
            v = [Fraction(0)] * len(idx)
            for mono, c in _shift(g, mu).items():
                v[idx[mono]] = c
            rows.append(v)
    return rows


class IdealEchelon:
    """Reduced echelon forms of I_0, I_1, ... built degree by degree.

    I_m is spanned by the variables times I_{m-1} together with the
    generators of degree m, so only the previous echelon rows get shifted.
    Fully reduced rows are supported on at most 1 + dim (R/I)_m columns,
    which keeps the work small whenever the quotient is small.
    """

    def __init__(self, pres: GradedIdealPresentation):
        self.pres = pres
        self._levels: list[SparseRREF] = []

    def level(self, m: int) -> SparseRREF:
        if m < 0:
            raise ValueError("degree must be nonnegative")
        n1 = self.pres.nvars
        while len(self._levels) <= m:
            deg = len(self._levels)
            idx = monomial_index(n1, deg)
            ech = SparseRREF(len(idx))
            for g, e in zip(self.pres.generators, self.pres.degrees):
                if e == deg:
                    ech.add({idx[mono]: c for mono, c in g.as_dict().items()})
            if deg > 0:
                prev = self._levels[-1]
                pmons = monomials_of_degree(n1, deg - 1)
                for row in list(prev.rows.values()):
                    if ech.full:
                        break
                    for i in range(n1):
                        shifted = {}
                        for j, c in row.items():
                            e = list(pmons[j])
                            e[i] += 1
                            shifted[idx[tuple(e)]] = c
                        ech.add(shifted)
            self._levels.append(ech)
        return self._levels[m]


@lru_cache(maxsize=64)
def _echelon(pres: GradedIdealPresentation) -> IdealEchelon:
    return IdealEchelon(pres)


def ideal_dim(pres: GradedIdealPresentation, m: int) -> int:
    return _echelon(pres).level(m).rank


def artinian_bound(nvars: int, d: int, k: int) -> int:
    """Degree by which M^k(f) vanishes if and only if it is Artinian."""
    return nvars * (d - k - 1) + 1


@dataclass(frozen=True)
class MilnorProfile:
    k: int
    dims: tuple[int, ...]
    classification: str  # "artinian" | "stable" | "undetermined"
    m_cap: int
    vanishing_degree: int | None = None
    tail_value: int | None = None
    tail_from: int | None = None
    note: str = ""

    @property
    def is_artinian(self) -> bool:
        return self.classification == "artinian"

    def hilbert_series(self) -> dict:
        """Polynomial part plus a rational tail s*t^m/(1-t)."""
        if self.classification == "artinian":
            return {"polynomial": list(self.dims[: self.vanishing_degree]), "tail_value": 0, "tail_from": None}
        if self.classification == "stable":
            return {
                "polynomial": list(self.dims[: self.tail_from]),
                "tail_value": self.tail_value,
                "tail_from": self.tail_from,
            }
        return {"polynomial": list(self.dims), "tail_value": None, "tail_from": None}

    def series_str(self) -> str:
        hs = self.hilbert_series()
        parts = [_term(c, i) for i, c in enumerate(hs["polynomial"]) if c]
        s = "+".join(parts) or "0"
        if hs["tail_value"]:
            s += f"+{_term(hs['tail_value'], hs['tail_from'])}/(1-t)"
        elif self.classification == "undetermined":
            s += "+..."
        return s


def _term(c: int, i: int) -> str:
    if i == 0:
        return str(c)
    t = "t" if i == 1 else f"t^{i}"
    return t if c == 1 else f"{c}{t}"


def milnor_profile(f: Poly, k: int, m_cap: int | None = None) -> MilnorProfile:
    """dim M^k(f)_m for m = 0..m_cap with an Artinian/stable classification.

    ``stable`` is a heuristic label: the last three computed dimensions agree
    and non-Artinian-ness is certified.
    """
    d = homogeneous_degree(f)
    pres = jac_gens(f, k)
    n1 = f.nvars
    bound = artinian_bound(n1, d, k)
    if m_cap is None:
        m_cap = bound + 1
    dims: list[int] = []
    for m in range(m_cap + 1):
        if dims and dims[-1] == 0:
            dims.append(0)
            continue
        dims.append(dim_forms(n1, m) - ideal_dim(pres, m))
    if 0 in dims:
        m0 = dims.index(0)
        return MilnorProfile(k, tuple(dims), "artinian", m_cap, vanishing_degree=m0)
    if m_cap < bound:
        return MilnorProfile(k, tuple(dims), "undetermined", m_cap,
                             note=f"raise m_cap to at least {bound} to certify")
    if m_cap >= 2 and dims[-1] == dims[-2] == dims[-3]:
        s = dims[-1]
        start = m_cap
        while start > 0 and dims[start - 1] == s:
            start -= 1
        return MilnorProfile(k, tuple(dims), "stable", m_cap, tail_value=s, tail_from=start,
                             note="constant over the last 3 degrees (heuristic window)")
    return MilnorProfile(k, tuple(dims), "undetermined", m_cap,
                         note="not Artinian (certified); no stable tail yet, raise m_cap")


def is_artinian(f: Poly, k: int) -> bool:
    d = homogeneous_degree(f)
    if not 1 <= k < d:
        raise ValueError(f"order k={k} must satisfy 1 <= k < {d}")
    m = artinian_bound(f.nvars, d, k)
    return ideal_dim(jac_gens(f, k), m) == dim_forms(f.nvars, m)


def tjurina_sum(f: Poly, k: int, m_cap: int | None = None) -> int | None:
    """Sum of k-th Tjurina numbers over the singular points (the stable tail)."""
    prof = milnor_profile(f, k, m_cap)
    return prof.tail_value if prof.classification == "stable" else None


# ---------------------------------------------------------------------------
# Hessian membership


def hessian_matrix(f: Poly) -> list[list[Poly]]:
    first = [diff(f, i) for i in range(f.nvars)]
    return [[diff(first[i], j) for j in range(f.nvars)] for i in range(f.nvars)]


def hessian(f: Poly) -> Poly:
    return poly_determinant(hessian_matrix(f))


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    zero_hessian: bool
    degree: int
    hess: Poly
    cofactors: tuple[Poly, ...] | None = None  # hess = sum cofactors[i] * df/dx_i


def hessian_membership(f: Poly) -> MembershipResult:
    """Decide hess_f in J(f) by an exact solve in degree (d-2)(n+1)."""
    d = homogeneous_degree(f)
    n1 = f.nvars
    D = (d - 2) * n1
    h = hessian(f)
    if h.is_zero():
        return MembershipResult(True, True, D, h, tuple(Poly.zero(n1) for _ in range(n1)))
    partials = [diff(f, i) for i in range(n1)]
    idx = monomial_index(n1, D)
    target = {idx[m]: c for m, c in h.as_dict().items()}
    # cheap membership test first; the certificate solve only runs for members
    if _echelon(jac_gens(f, 1)).level(D).reduce_sparse(target):
        return MembershipResult(False, False, D, h)
    labels = []
    cols = []
    for i, g in enumerate(partials):
        if g.is_zero():
            continue
        for mu in monomials_of_degree(n1, D - (d - 1)):
            cols.append({idx[mono]: c for mono, c in _shift(g, mu).items()})
            labels.append((i, mu))
    sol = sparse_solve(cols, target, len(idx))
    if sol is None:
        raise ConsistencyError("echelon form and certificate solve disagree on membership")
    cof = [dict() for _ in range(n1)]
    for (i, mu), c in zip(labels, sol):
        if c:
            cof[i][mu] = c
    cofactors = tuple(Poly(n1, c) for c in cof)
    recon = Poly.zero(n1)
    for c, g in zip(cofactors, partials):
        recon = recon + c * g
    if recon != h:
        raise ConsistencyError("membership certificate does not reproduce hess_f")
    return MembershipResult(True, False, D, h, cofactors)


# ---------------------------------------------------------------------------
# graded quotients R/I


class QuotientAlgebra(GradedAlgebra):
    """R/I in degrees 0..cap, with standard monomials as bases.

    The basis of (R/I)_m is the set of non-pivot monomials of the reduced
    echelon form of I_m; multiplication reduces products to those.
    """

    def __init__(self, pres: GradedIdealPresentation, cap: int):
        self.pres = pres
        self.nvars = pres.nvars
        self.cap = cap
        self._artinian = None

    @property
    def top_degree(self) -> int:
        return self.cap

    @property
    def is_artinian(self) -> bool:
        if self._artinian is None:
            self._artinian = self.dim(self.cap) == 0
        return self._artinian

    def reducer(self, m: int) -> SparseRREF:
        return _echelon(self.pres).level(m)

    def dim(self, m: int) -> int:
        if m < 0:
            return 0
        return len(self.reducer(m).free)

    def basis(self, m: int) -> list[Exponent]:
        mons = monomials_of_degree(self.nvars, m)
        return [mons[j] for j in self.reducer(m).free]

    def mult_matrix(self, L: Poly, k: int, power: int = 1) -> QMat:
        return self._mult_matrix(L, k, power)

    @lru_cache(maxsize=256)
    def _mult_matrix(self, L: Poly, k: int, power: int) -> QMat:
        src, dst = self.dim(k), self.dim(k + power)
        if src == 0 or dst == 0:
            return QMat.zeros(dst, src)
        Lp = L ** power
        red = self.reducer(k + power)
        cols = []
        for mu in self.basis(k):
            prod = Poly.monomial(mu) * Lp
            cols.append(red.quotient_coords(coefficient_vector(prod, k + power)))
        return QMat.from_columns(cols, rows=dst)


def milnor_algebra(f: Poly, k: int = 1, cap: int | None = None) -> QuotientAlgebra:
    d = homogeneous_degree(f)
    if cap is None:
        cap = artinian_bound(f.nvars, d, k)
    return QuotientAlgebra(jac_gens(f, k), cap)


@dataclass(frozen=True)
class QuotientRankReport:
    i: int
    j: int
    rank: int
    dim_i: int
    dim_j: int

    @property
    def maximal(self) -> bool:
        return self.rank == min(self.dim_i, self.dim_j)


def quotient_lefschetz(pres: GradedIdealPresentation, i: int, j: int, L: Poly) -> QuotientRankReport:
    """Rank of multiplication by L^(j-i) from (R/I)_i to (R/I)_j."""
    if not j > i >= 0:
        raise ValueError("need j > i >= 0")
    alg = QuotientAlgebra(pres, j)
    M = alg.mult_matrix(L, i, j - i)
    return QuotientRankReport(i, j, rank(M), alg.dim(i), alg.dim(j))


# ---------------------------------------------------------------------------
# local multiplicity


def multiplicity_at(f: Poly, point: Sequence) -> int:
    """Multiplicity of V(f) at a projective point; 0 when the point is off V(f).

    Works in the affine chart ``x_r = p_r`` for the first nonzero coordinate
    r, where the local equation is g(y) = f(p + y) with y_r = 0; the
    multiplicity is the lowest degree occurring in g.
    """
    pt = [Fraction(c) for c in point]
    if len(pt) != f.nvars:
        raise ValueError("point dimension mismatch")
    if not any(pt):
        raise ValueError("the zero vector is not a projective point")
    r = next(i for i, c in enumerate(pt) if c)
    n1 = f.nvars
    images = []
    for i in range(n1):
        if i == r:
            images.append(Poly.const(n1, pt[i]))
        else:
            images.append(Poly.var(n1, i) + pt[i])
    g = substitute(f, images)
    if g.is_zero():
        raise ValueError("f vanishes identically")
    return g.min_degree()
