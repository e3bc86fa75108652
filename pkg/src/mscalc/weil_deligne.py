"""Exact rational matrices for the nilpotent part of a Weil-Deligne parameter.

Each segment ``[a,b]`` on a line of dimension ``k`` contributes a nilpotent block
of size ``length*k``: identity ``k x k`` blocks on the block subdiagonal. The
Jordan partition is read off the rank sequence of powers, so only exact ranks
are needed.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple

from .errors import InvalidValue, NotNilpotent, ZeroScalar
from .partitions import Partition
from .segments import Multisegment

logger = logging.getLogger(__name__)

Row = Tuple[Fraction, ...]


@dataclass(frozen=True)
class ExactMatrix:
    """A dense matrix of ``Fraction`` entries."""

    rows: Tuple[Row, ...]
    cols: int = 0

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        cols = len(rows[0]) if rows else self.cols
        if any(len(row) != cols for row in rows):
            raise InvalidValue("matrix rows must all have the same length")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def block_diag(cls, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        n = sum(block.n_rows for block in blocks)
        m = sum(block.cols for block in blocks)
        rows: List[List[Fraction]] = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for block in blocks:
            for i, row in enumerate(block.rows):
                rows[r0 + i][c0:c0 + block.cols] = row
            r0 += block.n_rows
            c0 += block.cols
        return cls(tuple(tuple(row) for row in rows), m)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.cols

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.n_rows:
            raise InvalidValue(f"cannot multiply {self.n_rows}x{self.cols} by {other.n_rows}x{other.cols}")
        columns = list(zip(*other.rows)) if other.rows else []
        rows = tuple(
            tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in columns)
            for row in self.rows
        )
        return ExactMatrix(rows, other.cols)

    def scaled(self, c: Fraction) -> "ExactMatrix":
        c = Fraction(c)
        return ExactMatrix(tuple(tuple(c * x for x in row) for row in self.rows), self.cols)

    def rank(self) -> int:
        """Rank by fraction-free elimination on denominator-cleared rows."""
        return _rank([_integer_row(row) for row in self.rows])

    def to_json(self) -> List[List[str]]:
        return [[f"{x.numerator}/{x.denominator}" for x in row] for row in self.rows]

    def __str__(self) -> str:
        rendered = [[str(x) for x in row] for row in self.rows]
        width = max((len(cell) for row in rendered for cell in row), default=1)
        return "\n".join(" ".join(cell.rjust(width) for cell in row) for row in rendered)


def _integer_row(row: Row) -> List[int]:
    scale = lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * scale) for x in row]


def _integer_rows(matrix: ExactMatrix) -> List[List[int]]:
    """Rows of ``c * matrix`` for the least ``c`` making every entry an integer."""
    scale = lcm(*(x.denominator for row in matrix.rows for x in row))
    return [[int(x * scale) for x in row] for row in matrix.rows]


def _rank(rows: List[List[int]]) -> int:
    """Rank of integer rows.

    Only rows with a non-zero entry in the pivot column are updated, and each
    updated row is divided by the gcd of its entries.
    """
    rows = [row for row in rows if any(row)]
    width = len(rows[0]) if rows else 0
    rank = 0
    for col in range(width):
        if rank == len(rows):
            break
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        top = rows[rank]
        p = top[col]
        for i in range(rank + 1, len(rows)):
            c = rows[i][col]
            if c:
                row = [p * x - c * y for x, y in zip(rows[i], top)]
                g = gcd(*row)
                rows[i] = [x // g for x in row] if g > 1 else row
        rank += 1
    return rank


def _times(rows: List[List[int]], right: List[List[Tuple[int, int]]], width: int) -> List[List[int]]:
    """``rows @ right`` where ``right`` lists the ``(column, value)`` non-zeros of each row."""
    product = []
    for row in rows:
        out = [0] * width
        for t, x in enumerate(row):
            if x:
                for s, y in right[t]:
                    out[s] += x * y
        product.append(out)
    return product


def nilpotent_of(m: Multisegment) -> ExactMatrix:
    """Block-diagonal nilpotent matrix of ``m``, one block per segment."""
    blocks = []
    for seg in m.segments:
        k = seg.line.dim_k
        size = seg.length * k
        rows = [[Fraction(0)] * size for _ in range(size)]
        for i in range(k, size):
            rows[i][i - k] = Fraction(1)
        blocks.append(ExactMatrix(tuple(tuple(row) for row in rows), size))
    return ExactMatrix.block_diag(blocks)


def rank_sequence(N: ExactMatrix) -> List[int]:
    """``rank(N^0), rank(N^1), ...`` until the rank reaches zero or stops falling.

    Powers are taken of the denominator-cleared integer matrix, which has the
    same ranks. A repeated final value means ``N`` is not nilpotent.
    """
    if not N.is_square:
        raise InvalidValue("only square matrices have powers")
    n = N.n_rows
    base = _integer_rows(N)
    sparse = [[(s, y) for s, y in enumerate(row) if y] for row in base]
    ranks = [n]
    power = None
    while ranks[-1] > 0:
        power = base if power is None else _times(power, sparse, n)
        ranks.append(_rank(power))
        if ranks[-1] == ranks[-2]:
            break
    return ranks


def jordan_partition(N: ExactMatrix) -> Partition:
    """Jordan block sizes of a nilpotent matrix.

    The number of blocks of size at least ``j`` is ``rank(N^(j-1)) - rank(N^j)``.

    Raises:
        NotNilpotent: if ``N`` is not square or its powers never vanish
    """
    if not N.is_square:
        raise NotNilpotent(f"a {N.n_rows}x{N.cols} matrix is not square")

    ranks = rank_sequence(N)
    if ranks[-1] != 0:
        raise NotNilpotent(f"matrix is not nilpotent: rank of its powers stays at {ranks[-1]}")
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts = []
    for j, count in enumerate(at_least, start=1):
        exactly = count - (at_least[j] if j < len(at_least) else 0)
        parts.extend([j] * exactly)
    logger.debug("rank sequence %s -> %s", ranks, parts)
    return Partition(tuple(parts))


def induced_block(N: ExactMatrix, scalars: Sequence[Fraction]) -> ExactMatrix:
    """``diag(c_1 N, ..., c_d N)`` for non-zero scalars ``c_j``.

    Raises:
        ZeroScalar: if any scalar is zero
    """
    scalars = [Fraction(c) for c in scalars]
    if not scalars:
        raise InvalidValue("at least one scalar is required")
    if any(c == 0 for c in scalars):
        raise ZeroScalar(f"scalars must be non-zero, got {[str(c) for c in scalars]}")
    return ExactMatrix.block_diag([N.scaled(c) for c in scalars])
