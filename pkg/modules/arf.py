#!/usr/bin/env python3
"""
Arf Engine Module
Quadratic forms over Z2 refining an intersection pairing: evaluation through
the quadratic relation, symplectic Gram-Schmidt reduction, the Arf invariant,
exhaustive counting, and the chain-of-cycles form that re-derives the spin
parity of a quadratic stratum independently of the closed formula.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from modules import gf2
from modules.cover import spin_defined
from modules.spin import EVEN, SpinParity
from modules.stratum import Pattern
from modules.utils import (
    BoundError,
    ConsistencyError,
    DegenerateFormError,
    DomainError,
    FlavorError,
    get_logger,
    load_arf_max_genus,
)

logger = get_logger(__name__)

# arf_majority walks all 2^rank vectors
MAJORITY_MAX_RANK = 16

Matrix = Union[Sequence[int], Sequence[Sequence[int]]]


def _as_rows(matrix: Matrix) -> Tuple[int, ...]:
    rows = list(matrix)
    if all(isinstance(row, int) for row in rows):
        return tuple(rows)
    return tuple(gf2.matrix_rows(rows))


@dataclass(frozen=True)
class Z2QuadraticForm:
    """
    A quadratic form on Z2^rank given by its values on the generators and the
    intersection pairing of the generators (packed rows). The pairing must be
    alternating; non-degeneracy is only required where a symplectic basis is.
    """
    rank: int
    intersection: Tuple[int, ...]
    values: int

    def __post_init__(self):
        if self.rank < 0 or self.rank % 2:
            raise DegenerateFormError(f"form rank must be a non-negative even number, got {self.rank}")
        if len(self.intersection) != self.rank:
            raise DomainError(f"intersection matrix has {len(self.intersection)} rows for rank {self.rank}")
        if not gf2.is_alternating(self.intersection):
            raise DegenerateFormError("intersection matrix must be symmetric with zero diagonal")
        if self.values >> self.rank:
            raise DomainError(f"values do not fit rank {self.rank}")

    @classmethod
    def from_matrix(cls, matrix: Matrix, values: Sequence[int]) -> "Z2QuadraticForm":
        rows = _as_rows(matrix)
        if len(values) != len(rows):
            raise DomainError(f"{len(values)} values for {len(rows)} generators")
        return cls(len(rows), rows, gf2.pack(values))

    def value(self, i: int) -> int:
        return (self.values >> i) & 1

    def pair(self, u: int, v: int) -> int:
        return gf2.pair(u, v, self.intersection)

    def value_list(self) -> List[int]:
        return gf2.unpack(self.values, self.rank)

    def matrix(self) -> List[List[int]]:
        return [gf2.unpack(row, self.rank) for row in self.intersection]

    @property
    def is_nondegenerate(self) -> bool:
        return gf2.rank(self.intersection, self.rank) == self.rank


@dataclass(frozen=True)
class SymplecticBasis:
    """Pairs (a_i, b_i) of vectors in the generator basis, packed."""
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def vectors(self) -> List[int]:
        return [v for pair in self.pairs for v in pair]

    def verify(self, intersection: Sequence[int]):
        vectors = self.vectors
        for i, u in enumerate(vectors):
            for j, v in enumerate(vectors):
                expected = 1 if i // 2 == j // 2 and i != j else 0
                if gf2.pair(u, v, intersection) != expected:
                    raise ConsistencyError(f"basis vectors {i} and {j} pair to the wrong value")


def _cycle(form: Z2QuadraticForm, cycle: gf2.Z2Vector) -> int:
    if isinstance(cycle, int):
        if cycle < 0 or cycle >> form.rank:
            raise DomainError(f"cycle {cycle:#x} has bits outside rank {form.rank}")
        return cycle
    if len(cycle) != form.rank:
        raise DomainError(f"cycle of length {len(cycle)} for a form of rank {form.rank}")
    return gf2.pack(cycle)


def evaluate(form: Z2QuadraticForm, cycle: gf2.Z2Vector) -> int:
    """
    Omega(sum_{i in S} c_i) = sum Omega(c_i) + sum_{i<j in S} c_i . c_j  (mod 2)
    """
    v = _cycle(form, cycle)
    total = gf2.parity(form.values & v)
    for i in gf2.support(v):
        above = v >> (i + 1) << (i + 1)
        total ^= gf2.parity(form.intersection[i] & above)
    return total


def symplectic_basis(intersection: Matrix) -> SymplecticBasis:
    """
    Symplectic Gram-Schmidt. Take the first remaining generator as a_i, the
    first later one pairing to 1 with it as b_i, then clear both out of every
    remaining vector: v -> v + (v.b)a + (v.a)b.

    Raises:
        DegenerateFormError: the pairing is not alternating or is degenerate
    """
    rows = _as_rows(intersection)
    n = len(rows)
    if not gf2.is_alternating(rows):
        raise DegenerateFormError("intersection matrix must be symmetric with zero diagonal")
    if n % 2:
        raise DegenerateFormError(f"odd rank {n} admits no symplectic basis")

    remaining = [1 << i for i in range(n)]
    pairs = []
    while remaining:
        a = remaining.pop(0)
        partner = next((idx for idx, v in enumerate(remaining) if gf2.pair(a, v, rows)), None)
        if partner is None:
            raise DegenerateFormError(f"vector {gf2.support(a)} pairs trivially with the rest; pairing is degenerate")
        b = remaining.pop(partner)
        reduced = []
        for v in remaining:
            along_b = gf2.pair(v, b, rows)
            along_a = gf2.pair(v, a, rows)
            if along_b:
                v ^= a
            if along_a:
                v ^= b
            reduced.append(v)
        remaining = reduced
        pairs.append((a, b))
    logger.debug("symplectic basis %s", [(gf2.support(a), gf2.support(b)) for a, b in pairs])
    return SymplecticBasis(tuple(pairs))


def arf(form: Z2QuadraticForm, basis: Optional[SymplecticBasis] = None) -> int:
    """sum Omega(a_i) Omega(b_i) mod 2 over a symplectic basis; 0 for the empty form."""
    if form.rank == 0:
        return 0
    if basis is None:
        basis = symplectic_basis(form.intersection)
    total = 0
    for a, b in basis.pairs:
        total ^= evaluate(form, a) & evaluate(form, b)
    return total


def arf_majority(form: Z2QuadraticForm) -> int:
    """The value Omega takes on the majority of all vectors."""
    if form.rank > MAJORITY_MAX_RANK:
        raise BoundError(f"majority count over 2^{form.rank} vectors exceeds rank bound {MAJORITY_MAX_RANK}")
    ones = sum(evaluate(form, v) for v in range(1 << form.rank))
    zeros = (1 << form.rank) - ones
    if ones == zeros:
        raise DegenerateFormError("form takes both values equally often; pairing is degenerate")
    return 1 if ones > zeros else 0


def chain_form(odd_orders: Sequence[int]) -> Z2QuadraticForm:
    """
    The form on the chain cycles c_1..c_{2n-2} joining consecutive odd
    singularities on the cover: c_j . c_{j+1} = 1, all other pairings 0,
    and Omega(c_j) = (k_j + k_{j+1}) / 2 mod 2.
    """
    orders = list(odd_orders)
    if any(k % 2 == 0 for k in orders):
        raise DomainError(f"chain form needs odd orders, got {orders}")
    if len(orders) < 4 or len(orders) % 2:
        raise DomainError(f"chain form needs an even number (>= 4) of odd orders, got {len(orders)}")
    rank = len(orders) - 2
    rows = []
    for j in range(rank):
        row = 0
        if j > 0:
            row |= 1 << (j - 1)
        if j < rank - 1:
            row |= 1 << (j + 1)
        rows.append(row)
    values = [((orders[j] + orders[j + 1]) // 2) % 2 for j in range(rank)]
    return Z2QuadraticForm(rank, tuple(rows), gf2.pack(values))


def loop_index(k: int) -> int:
    """Turning number of a small loop around a zero of order k."""
    if k < 0:
        raise DomainError(f"loop index needs a zero of order >= 0, got {k}")
    return k + 1


def loop_value(k: int) -> int:
    return (loop_index(k) + 1) % 2


def standard_intersection(g: int) -> Tuple[int, ...]:
    """Packed rows of the standard pairing on (a_1, b_1, ..., a_g, b_g)."""
    rows = []
    for i in range(2 * g):
        rows.append(1 << (i ^ 1))
    return tuple(rows)


def count_arf(g: int, max_genus: Optional[int] = None) -> Tuple[int, int]:
    """
    Count the forms on the standard rank-2g symplectic space by Arf value.

    Returns:
        (number with Arf 0, number with Arf 1)

    Raises:
        BoundError: g < 1 or g above the enumeration bound
    """
    bound = max_genus if max_genus is not None else load_arf_max_genus()
    if g < 1 or g > bound:
        raise BoundError(f"genus {g} outside the enumeration range 1..{bound}")
    rows = standard_intersection(g)
    basis = symplectic_basis(rows)
    counts = [0, 0]
    for values in range(1 << (2 * g)):
        counts[arf(Z2QuadraticForm(2 * g, rows, values), basis)] += 1
    logger.debug("genus %d: %d forms with Arf 0, %d with Arf 1", g, counts[0], counts[1])
    return counts[0], counts[1]


def spin_parity_arf(p: Pattern) -> SpinParity:
    """Spin parity as the Arf invariant of the chain form on the odd orders."""
    if not p.is_quadratic:
        raise FlavorError(f"spin_parity_arf needs a quadratic pattern, got {p}")
    stripped = p.without_marked_points()
    check = spin_defined(stripped)
    if not check:
        return SpinParity.undefined(check.reason)
    odd = stripped.odd_orders()
    if len(odd) < 4:
        return EVEN
    return SpinParity.from_bit(arf(chain_form(odd)))


def transvect(form: Z2QuadraticForm, w: int) -> Z2QuadraticForm:
    """
    Re-express the form in the generators T_w(e_i) = e_i + (e_i . w) w,
    carrying Omega across with evaluate.
    """
    if w == 0 or w >> form.rank:
        raise DomainError(f"transvection vector {w:#x} must be non-zero and fit rank {form.rank}")
    generators = []
    for i in range(form.rank):
        e = 1 << i
        generators.append(e ^ w if gf2.parity(form.intersection[i] & w) else e)
    rows = []
    for u in generators:
        rows.append(gf2.pack([form.pair(u, v) for v in generators]))
    values = gf2.pack([evaluate(form, u) for u in generators])
    return Z2QuadraticForm(form.rank, tuple(rows), values)


def random_form(rank: int, rng) -> Z2QuadraticForm:
    """Draw a non-degenerate form of the given even rank from a numpy Generator."""
    if rank % 2 or rank < 0:
        raise DegenerateFormError(f"random forms need a non-negative even rank, got {rank}")
    attempts = 0
    while True:
        attempts += 1
        rows = [0] * rank
        for i in range(rank):
            for j in range(i + 1, rank):
                if rng.integers(0, 2):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        if gf2.rank(rows, rank) == rank:
            values = int(rng.integers(0, 1 << rank)) if rank else 0
            logger.debug("random form of rank %d after %d attempt(s)", rank, attempts)
            return Z2QuadraticForm(rank, tuple(rows), values)


def random_transvection(rank: int, rng) -> int:
    return int(rng.integers(1, 1 << rank))
