"""Linear algebra over Z2 with vectors and matrix rows packed into ints (bit i = coordinate i)."""

from typing import List, Sequence, Union

Z2Vector = Union[int, Sequence[int]]


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def pack(bits: Sequence[int]) -> int:
    value = 0
    for i, b in enumerate(bits):
        if b % 2:
            value |= 1 << i
    return value


def unpack(value: int, length: int) -> List[int]:
    return [(value >> i) & 1 for i in range(length)]


def support(value: int) -> List[int]:
    out = []
    i = 0
    while value:
        if value & 1:
            out.append(i)
        value >>= 1
        i += 1
    return out


def pair(u: int, v: int, rows: Sequence[int]) -> int:
    """Bilinear pairing u^T M v over Z2 for the matrix with the given packed rows."""
    total = 0
    for i in support(u):
        total ^= parity(rows[i] & v)
    return total


def rank(rows: Sequence[int], n_cols: int) -> int:
    """Rank over Z2 via Gaussian elimination."""
    work = list(rows)
    rank_ = 0
    row_idx = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and (work[r] >> col) & 1:
                work[r] ^= work[row_idx]
        rank_ += 1
        row_idx += 1
        if row_idx == len(work):
            break
    return rank_


def is_alternating(rows: Sequence[int]) -> bool:
    """Symmetric with zero diagonal."""
    n = len(rows)
    for i in range(n):
        if (rows[i] >> i) & 1:
            return False
        for j in range(i + 1, n):
            if ((rows[i] >> j) & 1) != ((rows[j] >> i) & 1):
                return False
    return True


def matrix_rows(matrix: Sequence[Sequence[int]]) -> List[int]:
    return [pack(row) for row in matrix]


__all__ = ["Z2Vector", "parity", "pack", "unpack", "support", "pair", "rank", "is_alternating", "matrix_rows"]
