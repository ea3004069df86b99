"""Graded Betti numbers from Koszul homology.

For a graded quotient B of the polynomial ring in N variables,
beta_{i,j}(B) = dim H_i(K(x; B))_j where K is the Koszul complex
``Lambda^i(k^N) (x) B(-i)``.  Only the finite-dimensional graded pieces of B
and the multiplication-by-variable matrices are needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .graded import GradedAlgebra
from .linalg import QMat, rank


@dataclass
class BettiTable:
    nvars: int
    j_cap: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    truncated: bool = False

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {ij: b for ij, b in sorted(self.entries.items()) if b}

    def as_list(self) -> list[dict]:
        return [{"i": i, "j": j, "beta": b} for (i, j), b in self.nonzero().items()]

    def totals(self) -> list[int]:
        t = [0] * (self.nvars + 1)
        for (i, _), b in self.entries.items():
            t[i] += b
        return t

    def euler_polynomial(self) -> list[int]:
        """Coefficients of sum_{i,j} (-1)^i beta_{i,j} t^j for j = 0..j_cap."""
        out = [0] * (self.j_cap + 1)
        for (i, j), b in self.entries.items():
            if j <= self.j_cap:
                out[j] += (-1) ** i * b
        return out

    def format(self) -> str:
        """Macaulay2-style grid: column i, row j - i."""
        nz = self.nonzero()
        if not nz:
            return "(zero table)"
        rows = sorted({j - i for i, j in nz})
        cols = range(self.nvars + 1)
        width = max(len(str(b)) for b in nz.values()) + 1
        width = max(width, max(len(str(t)) for t in self.totals()) + 1, 2)
        lines = ["       " + "".join(f"{i:>{width}}" for i in cols)]
        lines.append("total: " + "".join(f"{t:>{width}}" for t in self.totals()))
        for r in range(min(rows), max(rows) + 1):
            cells = "".join(f"{(nz.get((i, i + r)) or '.'):>{width}}" for i in cols)
            lines.append(f"{r:>5}: " + cells)
        if self.truncated:
            lines.append(f"(truncated: entries with j > {self.j_cap} not computed)")
        return "\n".join(lines)

    def resolution_str(self, ring: str = "Q") -> str:
        """``0 -> Q(-7) -> Q(-3)^2 + Q(-5)^3 -> ... -> Q`` style summary."""
        terms = []
        for i in range(self.nvars + 1):
            parts = []
            for (ii, j), b in self.nonzero().items():
                if ii == i:
                    tw = ring if j == 0 else f"{ring}(-{j})"
                    parts.append(tw if b == 1 else f"{tw}^{b}")
            if parts:
                terms.append(" + ".join(parts))
        return " <- ".join(terms)


def _subsets(nvars: int, i: int) -> list[tuple[int, ...]]:
    return list(combinations(range(nvars), i))


def koszul_differential(nvars: int, dims: Callable[[int], int],
                        var_matrix: Callable[[int, int], QMat], i: int, j: int) -> QMat:
    """Matrix of d_i: K_{i,j} -> K_{i-1,j}.

    K_{i,j} = sum over i-subsets S of B_{j-i}; on e_S (x) b the map is
    sum_t (-1)^t e_{S minus s_t} (x) x_{s_t} b.
    """
    src_deg = j - i
    tgt_deg = j - i + 1
    src_sets = _subsets(nvars, i)
    tgt_sets = _subsets(nvars, i - 1)
    a, b = dims(src_deg), dims(tgt_deg)
    if i <= 0 or i > nvars or a == 0 or b == 0 or src_deg < 0:
        return QMat.zeros(len(tgt_sets) * max(b, 0), len(src_sets) * max(a, 0))
    tgt_pos = {S: n for n, S in enumerate(tgt_sets)}
    rows = [[Fraction(0)] * (len(src_sets) * a) for _ in range(len(tgt_sets) * b)]
    for sc, S in enumerate(src_sets):
        for t, v in enumerate(S):
            T = S[:t] + S[t + 1:]
            tc = tgt_pos[T]
            X = var_matrix(v, src_deg)
            sign = -1 if t % 2 else 1
            for r in range(b):
                for c in range(a):
                    x = X[r, c]
                    if x:
                        rows[tc * b + r][sc * a + c] += sign * x
    return QMat.from_rows(rows, cols=len(src_sets) * a)


def koszul_betti_from_maps(nvars: int, dims: Callable[[int], int],
                           var_matrix: Callable[[int, int], QMat], j_cap: int,
                           truncated: bool = False) -> BettiTable:
    table = BettiTable(nvars, j_cap, truncated=truncated)
    ranks: dict[tuple[int, int], int] = {}

    def rk(i: int, j: int) -> int:
        if i < 1 or i > nvars:
            return 0
        if (i, j) not in ranks:
            ranks[(i, j)] = rank(koszul_differential(nvars, dims, var_matrix, i, j))
        return ranks[(i, j)]

    for j in range(j_cap + 1):
        for i in range(0, min(nvars, j) + 1):
            size = len(_subsets(nvars, i)) * dims(j - i)
            if size == 0:
                continue
            beta = size - rk(i, j) - rk(i + 1, j)
            if beta:
                table.entries[(i, j)] = beta
    return table


def koszul_betti(alg: GradedAlgebra, j_cap: int | None = None) -> BettiTable:
    """Betti table of a graded algebra; full when it is Artinian and j_cap
    reaches socle + nvars."""
    n1 = alg.nvars
    known = alg.top_degree
    artinian = alg.is_artinian
    if j_cap is None:
        j_cap = known + n1 if artinian else known
    truncated = not artinian and j_cap >= known

    def dims(m: int) -> int:
        if m < 0:
            return 0
        if m > known:
            if artinian:
                return 0
            raise ValueError(f"degree {m} beyond the computed range {known}")
        return alg.dim(m)

    def var_matrix(v: int, m: int) -> QMat:
        return alg.var_matrix(v, m)

    return koszul_betti_from_maps(n1, dims, var_matrix, j_cap, truncated or not artinian)


def betti_consistency(hilbert: Sequence[int], table: BettiTable) -> bool:
    """H(B,t)(1-t)^N agrees with sum (-1)^i beta_{i,j} t^j through degree j_cap."""
    cap = table.j_cap
    h = list(hilbert) + [0] * (cap + 1)
    poly = h[: cap + 1]
    for _ in range(table.nvars):
        poly = [poly[0]] + [poly[m] - poly[m - 1] for m in range(1, cap + 1)]
    return poly == table.euler_polynomial()


def is_self_dual(table: BettiTable, socle_degree: int) -> bool:
    """beta_{i,j} = beta_{N-i, d+N-j} (Gorenstein symmetry)."""
    N = table.nvars
    for (i, j), b in table.entries.items():
        if table[(N - i, socle_degree + N - j)] != b:
            return False
    return True
