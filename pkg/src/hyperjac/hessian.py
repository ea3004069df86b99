"""Mixed Hessians, generic ranks and Lefschetz diagnostics for A(f).

Mixed Hessian ``Hess^(k,l)`` has rows indexed by the basis of A_l and
columns by the basis of A_k; entry (i, j) is ``beta_i alpha_j (f)``.  With
``L = sum a_i X_i`` the multiplication map ``L^(l-k): A_k -> A_l`` has
matrix ``(l-k)! * [b*_i alpha_j (f)](a)`` where ``b*`` is the dual basis of
A_l; :func:`check_lefschetz_hessian_identity` verifies this exactly.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .apolar import ApolarAlgebra, dual_basis
from .graded import GradedAlgebra
from .linalg import QMat, rank
from .qpoly import Poly, apply_op, evaluate, homogeneous_degree, linear_form, operator_str

log = logging.getLogger(__name__)

SAMPLE_RANGE = 10**6
DEFAULT_TRIALS = 3
CERTIFY_MAX_SIZE = 8


@dataclass(frozen=True)
class PolyMat:
    entries: tuple[tuple[Poly, ...], ...]
    nvars: int
    row_labels: tuple[Poly, ...] = ()
    col_labels: tuple[Poly, ...] = ()

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def evaluate(self, point: Sequence) -> QMat:
        return QMat.from_rows([[evaluate(p, point) for p in row] for row in self.entries], cols=self.cols)

    def transpose(self) -> "PolyMat":
        return PolyMat(tuple(zip(*self.entries)) if self.entries else (), self.nvars,
                       self.col_labels, self.row_labels)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def to_strings(self) -> list[list[str]]:
        return [[str(p) for p in row] for row in self.entries]


def mixed_hessian(f: Poly, k: int, l: int, alg: ApolarAlgebra | None = None,
                  row_ops: Sequence[Poly] | None = None,
                  col_ops: Sequence[Poly] | None = None) -> PolyMat:
    """``[beta_i alpha_j (f)]`` with beta over a basis of A_l, alpha over A_k.

    ``row_ops``/``col_ops`` override the default pivot bases, e.g. to
    reproduce a matrix written in some other spanning set.
    """
    d = homogeneous_degree(f)
    if k < 0 or l < 0 or k + l > d:
        raise ValueError(f"need k, l >= 0 and k + l <= {d}")
    if row_ops is None or col_ops is None:
        alg = alg or ApolarAlgebra(f)
    rows = list(row_ops) if row_ops is not None else alg.basis_ops(l)
    cols = list(col_ops) if col_ops is not None else alg.basis_ops(k)
    col_images = [apply_op(a, f) for a in cols]
    entries = tuple(tuple(apply_op(b, g) for g in col_images) for b in rows)
    return PolyMat(entries, f.nvars, tuple(rows), tuple(cols))


def poly_determinant(M: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion along rows, memoised on column sets."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    nvars = M[0][0].nvars
    memo: dict[int, Poly] = {}

    def minor(r: int, mask: int) -> Poly:
        # determinant of rows r.. with the columns in ``mask``
        if r == n:
            return Poly.const(nvars, 1)
        if mask in memo:
            return memo[mask]
        total = Poly.zero(nvars)
        sign = 1
        for c in range(n):
            if not mask >> c & 1:
                continue
            a = M[r][c]
            if not a.is_zero():
                sub = minor(r + 1, mask & ~(1 << c))
                if not sub.is_zero():
                    term = a * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[mask] = total
        return total

    return minor(0, (1 << n) - 1)


def hess_k(f: Poly, k: int, alg: ApolarAlgebra | None = None) -> Poly:
    """hess^k_f = det Hess^(k,k) in the pivot basis of A_k."""
    d = homogeneous_degree(f)
    if 2 * k > d:
        raise ValueError(f"hess^k needs 2k <= d (k={k}, d={d})")
    H = mixed_hessian(f, k, k, alg)
    if H.rows != H.cols:
        raise RuntimeError("Hess^k is not square; Gorenstein symmetry violated")
    return poly_determinant(H.entries)


def random_point(rng: random.Random, nvars: int, bound: int = SAMPLE_RANGE) -> list[int]:
    return [rng.randint(-bound, bound) for _ in range(nvars)]


@dataclass(frozen=True)
class GenericRank:
    rank: int
    rows: int
    cols: int
    trials: int
    seed: int
    certified: bool
    note: str

    @property
    def maximal(self) -> bool:
        return self.rank == min(self.rows, self.cols)

    def as_dict(self) -> dict:
        return {"rank": self.rank, "shape": [self.rows, self.cols], "maximal": self.maximal,
                "certified": self.certified, "trials": self.trials, "seed": self.seed, "note": self.note}


def _minors_vanish(m: PolyMat, size: int) -> bool:
    for rs in combinations(range(m.rows), size):
        for cs in combinations(range(m.cols), size):
            sub = [[m.entries[i][j] for j in cs] for i in rs]
            if not poly_determinant(sub).is_zero():
                return False
    return True


def generic_rank(m: PolyMat, trials: int = DEFAULT_TRIALS, seed: int = 0,
                 certify: bool = True) -> GenericRank:
    """Max rank over random integer evaluation points.

    A maximal rank is exact.  A submaximal one is a lower bound; for
    matrices up to 8x8 all next-size minors are expanded symbolically to
    certify it.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    full = min(m.rows, m.cols)
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        pt = random_point(rng, m.nvars)
        best = max(best, rank(m.evaluate(pt)) if full else 0)
    if best == full:
        return GenericRank(best, m.rows, m.cols, trials, seed, True, "maximal rank")
    if certify and max(m.rows, m.cols) <= CERTIFY_MAX_SIZE:
        r = best
        while r < full and not _minors_vanish(m, r + 1):
            r += 1
        if r > best:
            log.warning("sampling underestimated rank (%d < %d); symbolic minors corrected it", best, r)
        note = "maximal rank (symbolic)" if r == full else f"certified: all {r + 1}-minors vanish identically"
        return GenericRank(r, m.rows, m.cols, trials, seed, True, note)
    return GenericRank(best, m.rows, m.cols, trials, seed, False,
                       f"no rank increase over {trials} trials (probabilistic)")


# ---------------------------------------------------------------------------
# multiplication maps and the Hessian identity


def lefschetz_matrix(f: Poly, k: int, l: int, L: Poly, alg: ApolarAlgebra | None = None) -> QMat:
    """Matrix of ``L^(l-k): A_k -> A_l`` in the pivot bases."""
    alg = alg or ApolarAlgebra(f)
    if not 0 <= k <= l <= alg.d:
        raise ValueError("need 0 <= k <= l <= d")
    if l == k:
        return QMat.identity(alg.dim(k))
    return alg.mult_matrix(L, k, l - k)


def dual_mixed_hessian(f: Poly, l: int, k: int, alg: ApolarAlgebra | None = None) -> PolyMat:
    """``[b*_i alpha_j (f)]``: rows the dual basis of A_l, columns the basis of A_k."""
    alg = alg or ApolarAlgebra(f)
    db = dual_basis(f, l, alg)
    return mixed_hessian(f, k, alg.d - l, alg, row_ops=db.dual, col_ops=alg.basis_ops(k))


def check_lefschetz_hessian_identity(f: Poly, k: int, l: int, L: Poly,
                                     alg: ApolarAlgebra | None = None) -> bool:
    """Exact check that mult-by-L^(l-k) equals (l-k)! times the dual mixed
    Hessian evaluated at the coefficient vector of L."""
    alg = alg or ApolarAlgebra(f)
    M = lefschetz_matrix(f, k, l, L, alg)
    H = dual_mixed_hessian(f, l, k, alg)
    coeffs = [L.coeff(tuple(int(i == j) for j in range(f.nvars))) for i in range(f.nvars)]
    return M == H.evaluate(coeffs).scale(factorial(l - k))


# ---------------------------------------------------------------------------
# Lefschetz reports


@dataclass
class LevelVerdict:
    k: int
    target_degree: int
    source_dim: int
    target_dim: int
    mult_rank: int
    hess_rank: GenericRank | None = None

    @property
    def maximal(self) -> bool:
        r = self.mult_rank
        if self.hess_rank is not None:
            r = max(r, self.hess_rank.rank)
        return r == min(self.source_dim, self.target_dim)

    def as_dict(self) -> dict:
        out = {"k": self.k, "map": f"L^{self.target_degree - self.k}: A_{self.k} -> A_{self.target_degree}",
               "dims": [self.source_dim, self.target_dim], "mult_rank": self.mult_rank,
               "maximal": self.maximal}
        if self.hess_rank is not None:
            out["hess_k"] = self.hess_rank.as_dict()
        return out


@dataclass
class LefschetzReport:
    levels: list[LevelVerdict]
    wlp_steps: list[dict]
    trials: int
    seed: int
    strong_maps: list[dict] = field(default_factory=list)

    @property
    def slp(self) -> bool:
        return all(v.maximal for v in self.levels) and all(s["maximal"] for s in self.strong_maps)

    @property
    def wlp(self) -> bool:
        return all(s["maximal"] for s in self.wlp_steps)

    @property
    def failing_levels(self) -> list[int]:
        return [v.k for v in self.levels if not v.maximal]

    def as_dict(self) -> dict:
        return {
            "slp": self.slp,
            "wlp": self.wlp,
            "levels": [v.as_dict() for v in self.levels],
            "failing_levels": self.failing_levels,
            "wlp_steps": self.wlp_steps,
            "trials": self.trials,
            "seed": self.seed,
            "note": "maximal ranks are exact; failures mean no rank increase over the sampled L",
        }


def _random_linear(rng: random.Random, nvars: int) -> Poly:
    return linear_form(random_point(rng, nvars))


def _max_mult_rank(alg: GradedAlgebra, i: int, power: int, Ls: list[Poly]) -> int:
    best = 0
    for L in Ls:
        best = max(best, rank(alg.mult_matrix(L, i, power)))
        if best == min(alg.dim(i), alg.dim(i + power)):
            break
    return best


def _wlp_steps(alg: GradedAlgebra, Ls: list[Poly], top: int) -> list[dict]:
    steps = []
    for i in range(top):
        a, b = alg.dim(i), alg.dim(i + 1)
        r = _max_mult_rank(alg, i, 1, Ls)
        steps.append({"from": i, "to": i + 1, "dims": [a, b], "rank": r, "maximal": r == min(a, b)})
    return steps


def slp_report(f: Poly, trials: int = DEFAULT_TRIALS, seed: int = 0,
               alg: ApolarAlgebra | None = None) -> LefschetzReport:
    """SLP/WLP diagnostics for A(f): level k checks L^(d-2k): A_k -> A_(d-k)
    both as a multiplication map and through hess^k."""
    alg = alg or ApolarAlgebra(f)
    d = alg.d
    rng = random.Random(seed)
    Ls = [_random_linear(rng, f.nvars) for _ in range(trials)]
    levels = []
    for k in range(d // 2 + 1):
        gr = generic_rank(mixed_hessian(f, k, k, alg), trials, seed)
        mr = alg.dim(k) if 2 * k == d else _max_mult_rank(alg, k, d - 2 * k, Ls)
        levels.append(LevelVerdict(k, d - k, alg.dim(k), alg.dim(d - k), mr, gr))
    return LefschetzReport(levels, _wlp_steps(alg, Ls, d), trials, seed)


def quotient_lefschetz_report(alg: GradedAlgebra, trials: int = DEFAULT_TRIALS,
                              seed: int = 0) -> LefschetzReport:
    """SLP/WLP for an Artinian graded quotient by scanning every map L^j: B_i -> B_(i+j)."""
    top = alg.top_degree
    while top > 0 and alg.dim(top) == 0:
        top -= 1
    rng = random.Random(seed)
    Ls = [_random_linear(rng, alg.nvars) for _ in range(trials)]
    strong = []
    for i in range(top + 1):
        for j in range(1, top - i + 1):
            a, b = alg.dim(i), alg.dim(i + j)
            r = _max_mult_rank(alg, i, j, Ls)
            strong.append({"from": i, "power": j, "dims": [a, b], "rank": r, "maximal": r == min(a, b)})
    levels = []
    for k in range(top // 2 + 1):
        if 2 * k == top:
            r = alg.dim(k)
        else:
            r = next(s["rank"] for s in strong if s["from"] == k and s["power"] == top - 2 * k)
        levels.append(LevelVerdict(k, top - k, alg.dim(k), alg.dim(top - k), r))
    return LefschetzReport(levels, _wlp_steps(alg, Ls, top), trials, seed, strong)


@dataclass(frozen=True)
class PolarReport:
    k: int
    dim_Zk: int
    degenerate: bool
    rank: GenericRank

    def as_dict(self) -> dict:
        return {"k": self.k, "dim_Zk": self.dim_Zk, "degenerate": self.degenerate,
                "hess_1k_rank": self.rank.as_dict()}


def polar_degeneracy(f: Poly, k: int, trials: int = DEFAULT_TRIALS, seed: int = 0,
                     alg: ApolarAlgebra | None = None) -> PolarReport:
    """Dimension of the k-th polar image: rank Hess^(1,k) - 1; degenerate iff < n."""
    alg = alg or ApolarAlgebra(f)
    if not 1 <= k < alg.d:
        raise ValueError(f"k={k} outside 1..{alg.d - 1}")
    gr = generic_rank(mixed_hessian(f, 1, k, alg), trials, seed)
    dimz = gr.rank - 1
    return PolarReport(k, dimz, dimz < f.nvars - 1, gr)


def label_ops(ops: Sequence[Poly]) -> list[str]:
    return [operator_str(o) for o in ops]
