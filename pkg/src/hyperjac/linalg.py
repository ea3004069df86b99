"""Exact dense linear algebra over Q.

Elimination is fraction-free: rows are scaled to integers and reduced with
Bareiss' one-step division, so intermediate entries stay minors of the input.
The reduced row echelon form is recovered afterwards by exact rational back
substitution.  :func:`gauss_jordan` is the textbook rational algorithm, kept
as an independent oracle.

Pivots are always the first nonzero entry scanning down the current column,
never the largest, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence


class ConsistencyError(RuntimeError):
    """An exact identity that must hold did not; indicates a bug."""


@dataclass(frozen=True)
class QMat:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "QMat":
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMat":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> "QMat":
        return QMat.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, QMat):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ocols = [other.column(j) for j in range(other.cols)]
            return QMat.from_rows(
                [[sum(a * b for a, b in zip(self.row(i), c)) for c in ocols] for i in range(self.rows)],
                cols=other.cols,
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows)]

    def scale(self, c) -> "QMat":
        c = Fraction(c)
        return QMat(self.rows, self.cols, tuple(x * c for x in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.to_rows())


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = lcm(*(Fraction(x).denominator for x in r)) if r else 1
        out.append([int(Fraction(x) * den) for x in r])
    return out


def bareiss_echelon(rows: Sequence[Sequence], ncols: int, stop_col: int | None = None):
    """Fraction-free forward elimination.

    Returns ``(E, pivots)`` where ``E`` is an integer row echelon form of
    the (row-scaled) input and ``pivots`` its pivot columns.  Elimination
    only selects pivots in columns ``< stop_col``.
    """
    M = _integer_rows(rows)
    nrows = len(M)
    stop = ncols if stop_col is None else stop_col
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(stop):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        Rr = M[r]
        piv = Rr[c]
        for i in range(r + 1, nrows):
            Ri = M[i]
            a = Ri[c]
            if a == 0:
                if piv != prev:
                    M[i] = [(piv * x) // prev for x in Ri]
            else:
                M[i] = [(piv * x - a * y) // prev for x, y in zip(Ri, Rr)]
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots


def _back_substitute(E: list[list[int]], pivots: list[int]) -> list[list[Fraction]]:
    R = [[Fraction(x) for x in E[i]] for i in range(len(pivots))]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        pv = R[i][c]
        if pv != 1:
            R[i] = [x / pv for x in R[i]]
        Ri = R[i]
        for k in range(i):
            a = R[k][c]
            if a:
                R[k] = [x - a * y for x, y in zip(R[k], Ri)]
    return R


def rref(m: QMat) -> tuple[QMat, list[int]]:
    """Reduced row echelon form and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return m, []
    E, pivots = bareiss_echelon(m.to_rows(), m.cols)
    R = _back_substitute(E, pivots)
    R += [[Fraction(0)] * m.cols for _ in range(m.rows - len(R))]
    return QMat.from_rows(R, cols=m.cols), pivots


def rank(m: QMat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = m.to_rows()
    # eliminate along the shorter side
    if m.rows > m.cols:
        rows = [list(col) for col in zip(*rows)]
    return len(bareiss_echelon(rows, len(rows[0]))[1])


def rank_of_rows(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return len(bareiss_echelon(rows, ncols)[1])


def kernel_basis(m: QMat) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [[Fraction(int(i == j)) for i in range(m.cols)] for j in range(m.cols)]
    R, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(v)
    return basis


def in_column_space(m: QMat, target: Sequence) -> list[Fraction] | None:
    """Solve ``m c = target``; ``None`` when ``target`` is not in the column space.

    Free variables are set to zero.  Any returned certificate has been
    checked by exact multiplication.
    """
    target = [Fraction(x) for x in target]
    if len(target) != m.rows:
        raise ValueError(f"target has length {len(target)}, expected {m.rows}")
    if m.cols == 0:
        return [] if not any(target) else None
    aug = [r + [t] for r, t in zip(m.to_rows(), target)]
    if not aug:
        return [Fraction(0)] * m.cols
    E, pivots = bareiss_echelon(aug, m.cols + 1, stop_col=m.cols)
    r = len(pivots)
    if any(E[i][m.cols] != 0 for i in range(r, len(E))):
        return None
    R = _back_substitute(E, pivots)
    sol = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        sol[p] = R[i][m.cols]
    if m @ sol != target:
        raise ConsistencyError("membership certificate failed back-substitution check")
    return sol


def gauss_jordan(m: QMat) -> tuple[QMat, list[int]]:
    """Plain rational Gauss-Jordan; test oracle for :func:`rref`."""
    A = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                a = A[i][c]
                A[i] = [x - a * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return QMat.from_rows(A, cols=ncols) if nrows else m, pivots


def inverse(m: QMat) -> QMat:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = QMat.from_rows([r + [int(i == j) for j in range(n)] for i, r in enumerate(m.to_rows())], cols=2 * n)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return QMat.from_rows([R.row(i)[n:] for i in range(n)], cols=n)


def determinant(m: QMat) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    A = m.to_rows()
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        pv = A[c][c]
        det *= pv
        for i in range(c + 1, n):
            if A[i][c]:
                a = A[i][c] / pv
                A[i] = [x - a * y for x, y in zip(A[i], A[c])]
    return det


class Coordinates:
    """Coordinates with respect to a fixed linearly independent set of vectors.

    ``solve(v)`` returns ``c`` with ``sum c_i * basis_i == v`` (verified), or
    raises ``ValueError`` when ``v`` is outside their span.
    """

    def __init__(self, basis: Sequence[Sequence[Fraction]], dim: int):
        self.k = len(basis)
        self.dim = dim
        self.basis = [[Fraction(x) for x in b] for b in basis]
        if self.k == 0:
            self.rows_used: list[int] = []
            self.inv = None
            return
        # row-reduce basis vectors (as rows) to find k independent coordinates
        E, pivots = bareiss_echelon(self.basis, dim)
        if len(pivots) != self.k:
            raise ValueError("basis vectors are linearly dependent")
        self.rows_used = pivots
        square = QMat.from_rows([[b[p] for b in self.basis] for p in pivots], cols=self.k)
        self.inv = inverse(square)

    def solve(self, v: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        if self.k == 0:
            if any(v):
                raise ValueError("vector is not in the span")
            return []
        c = self.inv @ [v[p] for p in self.rows_used]
        recon = [sum(ci * b[j] for ci, b in zip(c, self.basis)) for j in range(self.dim)]
        if recon != v:
            raise ValueError("vector is not in the span")
        return c


class SparseRREF:
    """Incrementally maintained reduced row echelon form of sparse rows.

    Rows are ``{column: value}`` dicts.  Every stored row has a unit pivot
    at its smallest column and is zero in all other pivot columns, so it is
    supported on its pivot plus free columns, and the free columns index a
    basis of the quotient space.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> bool:
        return len(self.rows) == self.dim

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    @property
    def free(self) -> list[int]:
        return [j for j in range(self.dim) if j not in self.rows]

    def reduce_sparse(self, v: dict[int, Fraction]) -> dict[int, Fraction]:
        v = {j: Fraction(x) for j, x in v.items() if x}
        # stored rows are free outside their pivot, so one pass suffices
        for p in [j for j in v if j in self.rows]:
            a = v.pop(p)
            for j, y in self.rows[p].items():
                if j == p:
                    continue
                x = v.get(j, 0) - a * y
                if x:
                    v[j] = x
                else:
                    v.pop(j, None)
        return v

    def add(self, v: dict[int, Fraction]) -> bool:
        """Insert ``v``; return True when it enlarged the row space."""
        if self.full:
            return False
        v = self.reduce_sparse(v)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {j: x * inv for j, x in v.items()}
        for row in self.rows.values():
            a = row.get(p)
            if a:
                del row[p]
                for j, y in v.items():
                    if j == p:
                        continue
                    x = row.get(j, 0) - a * y
                    if x:
                        row[j] = x
                    else:
                        row.pop(j, None)
        self.rows[p] = v
        return True

    def reduce(self, v: Sequence) -> list[Fraction]:
        red = self.reduce_sparse({j: x for j, x in enumerate(v) if x})
        return [red.get(j, Fraction(0)) for j in range(self.dim)]

    def quotient_coords(self, v: Sequence) -> list[Fraction]:
        red = self.reduce_sparse({j: x for j, x in enumerate(v) if x})
        return [red.get(j, Fraction(0)) for j in self.free]


def sparse_solve(columns: Sequence[dict[int, Fraction]], target: dict[int, Fraction],
                 nrows: int) -> list[Fraction] | None:
    """Solve ``sum_j c_j columns[j] = target`` for very sparse columns.

    Gaussian elimination on the equations with a greedy fill-reducing pivot
    choice (shortest equation, then the unknown occurring least often).
    Free unknowns are set to zero; the result is checked exactly.
    """
    eqs: list[dict[int, Fraction]] = [dict() for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, x in col.items():
            if x:
                eqs[i][j] = Fraction(x)
    expected = [Fraction(target.get(i, 0)) for i in range(nrows)]
    rhs = list(expected)
    occurs: dict[int, set[int]] = {}
    for i, eq in enumerate(eqs):
        for j in eq:
            occurs.setdefault(j, set()).add(i)
    active = set(range(nrows))
    order: list[tuple[int, int]] = []
    while active:
        i = min(active, key=lambda r: (len(eqs[r]), r))
        active.discard(i)
        eq = eqs[i]
        if not eq:
            if rhs[i]:
                return None
            continue
        p = min(eq, key=lambda j: (len(occurs[j]), j))
        order.append((i, p))
        for j in eq:
            occurs[j].discard(i)
        inv = 1 / eq[p]
        for k in list(occurs[p]):
            other = eqs[k]
            a = other[p] * inv
            for j, y in eq.items():
                x = other.get(j, 0) - a * y
                if x:
                    if j not in other:
                        occurs[j].add(k)
                    other[j] = x
                elif j in other:
                    del other[j]
                    occurs[j].discard(k)
            rhs[k] -= a * rhs[i]
    sol = [Fraction(0)] * len(columns)
    for i, p in reversed(order):
        eq = eqs[i]
        s = rhs[i] - sum(y * sol[j] for j, y in eq.items() if j != p)
        sol[p] = s / eq[p]
    check = [Fraction(0)] * nrows
    for c, col in zip(sol, columns):
        if c:
            for i, x in col.items():
                check[i] += c * x
    if check != expected:
        raise ConsistencyError("sparse solve failed the back-substitution check")
    return sol
