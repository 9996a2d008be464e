"""Integer dissimilarity matrices: metric and four-point checks, exact
determinants, and the closed-form determinants of tree and block graph
distance matrices.

Row indices are 0-based internally; anything user-facing (error messages,
violation records) reports them 1-based.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator, Sequence

from .errors import FormatError, GraphboundError


@dataclass(frozen=True)
class DissimilarityMatrix:
    """Square symmetric integer matrix, zero diagonal, positive off-diagonal."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        k = len(rows)
        if k == 0:
            raise FormatError("matrix must have order >= 1")
        cell = _first_bad_cell(rows)
        if cell is not None:
            i, j, why = cell
            raise FormatError(f"cell ({i + 1},{j + 1}): {why}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "DissimilarityMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, idx: Sequence[int]) -> "DissimilarityMatrix":
        return DissimilarityMatrix(tuple(tuple(self.rows[i][j] for j in idx) for i in idx))

    def permuted(self, perm: Sequence[int]) -> "DissimilarityMatrix":
        """Simultaneous row/column permutation; new row ``a`` is old row ``perm[a]``."""
        return self.submatrix(perm)

    def eccentricity(self, i: int) -> int:
        return max(self.rows[i])

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)


def _first_bad_cell(rows: Sequence[Sequence[int]]) -> tuple[int, int, str] | None:
    k = len(rows)
    for i, r in enumerate(rows):
        if len(r) != k:
            return i, len(r) - 1 if r else 0, f"row has {len(r)} entries, expected {k}"
    for i in range(k):
        for j in range(k):
            x = rows[i][j]
            if i == j:
                if x != 0:
                    return i, j, "diagonal entry must be 0"
            elif x <= 0:
                return i, j, "off-diagonal entry must be positive"
            elif x != rows[j][i]:
                return i, j, f"not symmetric ({x} != {rows[j][i]})"
    return None


def parse_matrix(text: str) -> DissimilarityMatrix:
    """Parse the matrix text format: a line with the order, then the rows."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty matrix file")
    try:
        k = int(lines[0][0])
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"non-integer token: {exc}") from None
    if len(lines[0]) != 1 or k < 1:
        raise FormatError("first line must hold the matrix order")
    if len(rows) != k:
        raise FormatError(f"expected {k} rows, found {len(rows)}")
    for i, r in enumerate(rows):
        if len(r) != k:
            raise FormatError(f"row {i + 1} has {len(r)} entries, expected {k}")
    cell = _first_bad_cell(rows)
    if cell is not None:
        i, j, why = cell
        raise FormatError(f"cell ({i + 1},{j + 1}): {why}")
    return DissimilarityMatrix.from_rows(rows)


def format_matrix(m: DissimilarityMatrix) -> str:
    width = max(len(str(x)) for x in m.flat())
    body = "\n".join(" ".join(str(x).rjust(width) for x in r) for r in m.rows)
    return f"{m.order}\n{body}\n"


# -- metric / four-point -------------------------------------------------------

def triangle_violation(m: DissimilarityMatrix) -> tuple[int, int, int] | None:
    """First ordered triple (i, j, k) with d_ik > d_ij + d_jk, or None."""
    r = m.rows
    k = m.order
    for i in range(k):
        for j in range(k):
            for h in range(k):
                if r[i][h] > r[i][j] + r[j][h]:
                    return i, j, h
    return None


def is_metric(m: DissimilarityMatrix) -> bool:
    return triangle_violation(m) is None


def _pair_sums(r, i: int, j: int, h: int, k: int) -> tuple[int, int, int]:
    return r[i][j] + r[h][k], r[i][h] + r[j][k], r[i][k] + r[j][h]


def four_point_holds(r, i: int, j: int, h: int, k: int) -> bool:
    """Two largest of the three pair-sums are equal."""
    s = sorted(_pair_sums(r, i, j, h, k))
    return s[1] == s[2]


def four_point_inequalities_hold(r, i: int, j: int, h: int, k: int) -> bool:
    """The three-inequality form of the four-point condition."""
    a, b, c = _pair_sums(r, i, j, h, k)
    return a <= max(b, c) and b <= max(a, c) and c <= max(a, b)


def four_point_violation(m: DissimilarityMatrix) -> tuple[int, int, int, int] | None:
    r = m.rows
    for quad in itertools.combinations(range(m.order), 4):
        ok = four_point_holds(r, *quad)
        assert ok == four_point_inequalities_hold(r, *quad), quad
        if not ok:
            return quad
    return None


def is_additive(m: DissimilarityMatrix) -> bool:
    """Metric and every 4-subset satisfies the four-point condition."""
    return is_metric(m) and four_point_violation(m) is None


def is_additive_inequalities(m: DissimilarityMatrix) -> bool:
    r = m.rows
    return is_metric(m) and all(
        four_point_inequalities_hold(r, *q) for q in itertools.combinations(range(m.order), 4)
    )


# -- determinants --------------------------------------------------------------

def det_exact(m: DissimilarityMatrix | Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows = m.rows if isinstance(m, DissimilarityMatrix) else m
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def tree_det_formula(n: int) -> int:
    """Determinant of the distance matrix of any tree on n vertices."""
    if n < 2:
        raise GraphboundError("tree determinant formula needs n >= 2")
    return (-1) ** (n - 1) * (n - 1) * 2 ** (n - 2)


@dataclass(frozen=True)
class BlockSizeSequence:
    """Block orders n_1 >= ... >= n_k >= 2 of a block graph."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(sorted((int(s) for s in self.sizes), reverse=True))
        object.__setattr__(self, "sizes", sizes)
        if not sizes:
            raise GraphboundError("block size sequence must be non-empty")
        if sizes[-1] < 2:
            raise GraphboundError("block sizes must be >= 2")

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def order(self) -> int:
        """The graph order implied by sum n_i = n + k - 1."""
        return sum(self.sizes) - self.k + 1

    def check_order(self, n: int) -> None:
        if self.order != n:
            raise GraphboundError(
                f"sizes {self.sizes} sum to {sum(self.sizes)}, need n + k - 1 = {n + self.k - 1}"
            )
        if self.sizes[0] > n:
            raise GraphboundError(f"block of order {self.sizes[0]} exceeds n = {n}")


def block_weight(seq: BlockSizeSequence) -> int:
    """sum_i (n_i - 1)/n_i * prod_j n_j, with denominators cleared."""
    s = seq.sizes
    return sum((s[i] - 1) * prod(s[:i] + s[i + 1:]) for i in range(len(s)))


def block_det_formula(seq: BlockSizeSequence) -> int:
    return (-1) ** (seq.order - 1) * block_weight(seq)


class BlockWeightBound(enum.Enum):
    HOLDS = "holds"
    HOLDS_WITH_EQUALITY = "holds_with_equality"
    VIOLATED = "violated"


def check_lemma23(n: int, seq: BlockSizeSequence) -> BlockWeightBound:
    """Compare the block weight against (n-1) 2^(n-2), the all-K_2 value."""
    seq.check_order(n)
    lhs = block_weight(seq)
    rhs = (n - 1) * 2 ** (n - 2)
    if lhs < rhs:
        return BlockWeightBound.HOLDS
    if lhs == rhs:
        return BlockWeightBound.HOLDS_WITH_EQUALITY
    return BlockWeightBound.VIOLATED


def block_size_sequences(n: int) -> Iterator[BlockSizeSequence]:
    """Every valid non-increasing sequence for order n (1 <= k <= n - 1)."""

    def parts(total: int, count: int, cap: int) -> Iterator[tuple[int, ...]]:
        if count == 0:
            if total == 0:
                yield ()
            return
        for first in range(min(cap, total - 2 * (count - 1)), 1, -1):
            for rest in parts(total - first, count - 1, first):
                yield (first,) + rest

    for k in range(1, n):
        for sizes in parts(n + k - 1, k, n):
            yield BlockSizeSequence(sizes)
