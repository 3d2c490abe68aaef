"""Dense matrices over Z/pZ and the congruence normal form of alternating
matrices.

Entries are plain ints reduced into ``[0, p-1]``; matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import UsageError, ValidationError, check_prime


class FpMatrix:
    __slots__ = ("p", "rows", "cols", "entries")

    def __init__(self, p: int, entries: Sequence[Sequence[int]]) -> None:
        check_prime(p)
        rows = [tuple(int(x) % p for x in row) for row in entries]
        if not rows or not rows[0]:
            raise ValidationError("matrix must have at least one row and one column")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValidationError("ragged matrix rows")
        self.p = p
        self.rows = len(rows)
        self.cols = cols
        self.entries: tuple[tuple[int, ...], ...] = tuple(rows)

    @classmethod
    def identity(cls, p: int, n: int) -> FpMatrix:
        return cls(p, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int | None = None) -> FpMatrix:
        return cls(p, [[0] * (rows if cols is None else cols) for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, list(zip(*self.entries)))

    @property
    def T(self) -> FpMatrix:
        return self.transpose()

    def __neg__(self) -> FpMatrix:
        return FpMatrix(self.p, [[-x for x in r] for r in self.entries])

    def __add__(self, other: FpMatrix) -> FpMatrix:
        if self.p != other.p or self.shape != other.shape:
            raise UsageError("matrix sum needs equal shapes and moduli")
        return FpMatrix(self.p, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        return mat_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.p, self.entries))

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {[list(r) for r in self.entries]})"

    def to_json(self) -> dict:
        return {"p": self.p, "rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, data) -> FpMatrix:
        if not isinstance(data, dict):
            raise ValueError("FpMatrix JSON must be an object")
        try:
            p, rows, cols, entries = data["p"], data["rows"], data["cols"], data["entries"]
        except KeyError as exc:
            raise ValueError(f"FpMatrix JSON missing key {exc}") from None
        if not isinstance(entries, list) or len(entries) != rows:
            raise ValueError("FpMatrix row count does not match 'rows'")
        for r in entries:
            if not isinstance(r, list) or len(r) != cols or not all(type(x) is int for x in r):
                raise ValueError("FpMatrix rows must be integer lists of length 'cols'")
        return cls(p, entries)


def mat_mul(A: FpMatrix, B: FpMatrix) -> FpMatrix:
    if A.p != B.p:
        raise UsageError(f"mismatched moduli {A.p} and {B.p}")
    if A.cols != B.rows:
        raise UsageError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    p = A.p
    bt = list(zip(*B.entries))
    return FpMatrix(p, [[sum(a * b for a, b in zip(r, c)) % p for c in bt] for r in A.entries])


def vec_mat(v: Sequence[int], M: FpMatrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    p = M.p
    return tuple(sum(v[i] * M.entries[i][j] for i in range(M.rows)) % p for j in range(M.cols))


def bilinear(u: Sequence[int], M: FpMatrix, v: Sequence[int]) -> int:
    """``u M v^T`` mod p."""
    p = M.p
    total = 0
    for i, ui in enumerate(u):
        if ui:
            row = M.entries[i]
            total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
    return total % p


def _row_echelon(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [r[:] for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(M: FpMatrix) -> int:
    return len(_row_echelon([list(r) for r in M.entries], M.p)[1])


def rank_and_kernel(M: FpMatrix) -> tuple[int, list[tuple[int, ...]]]:
    """Rank of a square matrix and a basis of its left kernel ``{v : v M = 0}``."""
    if not M.is_square():
        raise UsageError("rank_and_kernel expects a square matrix")
    p, n = M.p, M.rows
    # v M = 0  <=>  M^T v^T = 0
    ech, pivots = _row_echelon([list(r) for r in M.transpose().entries], p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -ech[i][f] % p
        basis.append(tuple(v))
    return len(pivots), basis


def determinant(M: FpMatrix) -> int:
    if not M.is_square():
        raise UsageError("determinant of a non-square matrix")
    p = M.p
    a = [list(r) for r in M.entries]
    n = M.rows
    det = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p


def is_invertible(M: FpMatrix) -> bool:
    return M.is_square() and determinant(M) != 0


def check_alternating(M: FpMatrix) -> None:
    """Raise ValidationError naming the first entry breaking ``M^T = -M``, ``M_ii = 0``."""
    if not M.is_square():
        raise ValidationError(f"matrix must be square, got {M.rows}x{M.cols}")
    p = M.p
    for i in range(M.rows):
        if M[i, i]:
            raise ValidationError(f"nonzero diagonal entry at ({i}, {i}): {M[i, i]}")
        for j in range(i + 1, M.rows):
            if (M[i, j] + M[j, i]) % p:
                raise ValidationError(
                    f"not skew-symmetric at ({i}, {j}): entries {M[i, j]} and {M[j, i]} do not sum to 0 mod {p}"
                )


def hyperbolic_normal_form(p: int, n: int, m: int) -> FpMatrix:
    """``(H + ... + H) + 0`` with m blocks ``H = [[0, -1], [1, 0]]``."""
    rows = [[0] * n for _ in range(n)]
    for k in range(m):
        rows[2 * k][2 * k + 1] = p - 1
        rows[2 * k + 1][2 * k] = 1
    return FpMatrix(p, rows)


@dataclass(frozen=True)
class AlternatingReduction:
    D: FpMatrix
    m: int
    canonical: FpMatrix


def reduce_alternating(M: FpMatrix) -> AlternatingReduction:
    """Find an invertible D with ``D M D^T`` in hyperbolic block normal form.

    Symplectic Gram-Schmidt with lowest-index pivoting: the first remaining
    basis vector e pairing nontrivially with some later one f (smallest
    index) is scaled so that ``<e, f> = -1``, every other remaining vector is
    projected off the pair, and the process repeats on the complement.
    """
    check_alternating(M)
    p, n = M.p, M.rows
    remaining = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    pairs: list[tuple[int, ...]] = []

    def form(u, v):
        return bilinear(u, M, v)

    while True:
        hit = None
        for i, u in enumerate(remaining):
            for j in range(len(remaining)):
                if j != i and form(u, remaining[j]):
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        e = remaining[i]
        scale = (-pow(form(e, remaining[j]), -1, p)) % p
        f = tuple(scale * x % p for x in remaining[j])
        rest = []
        for k, r in enumerate(remaining):
            if k in (i, j):
                continue
            a, b = form(r, f), form(r, e)
            # r + <r,f> e - <r,e> f  is orthogonal to both e and f
            rest.append(tuple((x + a * y - b * z) % p for x, y, z in zip(r, e, f)))
        pairs.extend([e, f])
        remaining = rest

    D = FpMatrix(p, pairs + remaining)
    m = len(pairs) // 2
    canonical = hyperbolic_normal_form(p, n, m)
    if mat_mul(mat_mul(D, M), D.transpose()) != canonical:
        raise AssertionError("congruence reduction failed to reach normal form")
    if not is_invertible(D):
        raise AssertionError("congruence reduction produced a singular transform")
    return AlternatingReduction(D=D, m=m, canonical=canonical)
