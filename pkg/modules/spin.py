#!/usr/bin/env python3
"""
Spin Parity Module
Parity of the spin structure of quadratic strata by the closed residue-count
formula and by the sum over the chain of odd singularities, plus the
parities of hyperelliptic components of Abelian strata.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

from modules.cover import spin_defined
from modules.stratum import Pattern, format_pattern
from modules.utils import (
    ConsistencyError,
    DomainError,
    FlavorError,
    OrderError,
    SumError,
    exact_div,
    get_logger,
)

logger = get_logger(__name__)


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class SpinParity:
    """Even, Odd, or Undefined with the reason the spin structure is not defined."""
    value: Parity
    reason: Optional[str] = None

    @classmethod
    def from_bit(cls, bit: int) -> "SpinParity":
        return cls(Parity.ODD if bit % 2 else Parity.EVEN)

    @classmethod
    def undefined(cls, reason: str) -> "SpinParity":
        return cls(Parity.UNDEFINED, reason)

    @property
    def is_defined(self) -> bool:
        return self.value is not Parity.UNDEFINED

    @property
    def bit(self) -> Optional[int]:
        if not self.is_defined:
            return None
        return 1 if self.value is Parity.ODD else 0

    def __str__(self) -> str:
        return self.value.value


EVEN = SpinParity(Parity.EVEN)
ODD = SpinParity(Parity.ODD)


def _require_quadratic(p: Pattern, operation: str):
    if not p.is_quadratic:
        raise FlavorError(f"{operation} needs a quadratic pattern, got {p}")


def residue_counts(p: Pattern) -> Tuple[int, int]:
    """(n_plus, n_minus): orders that are 1 and 3 mod 4; poles count as 3 mod 4."""
    n_plus = sum(1 for k in p.orders if k % 4 == 1)
    n_minus = sum(1 for k in p.orders if k % 4 == 3)
    return n_plus, n_minus


def spin_parity_closed(p: Pattern) -> SpinParity:
    """Parity of [|n_plus - n_minus| / 4]; marked points are ignored."""
    _require_quadratic(p, "spin_parity_closed")
    stripped = p.without_marked_points()
    check = spin_defined(stripped)
    if not check:
        return SpinParity.undefined(check.reason)
    n_plus, n_minus = residue_counts(stripped)
    return SpinParity.from_bit((abs(n_plus - n_minus) // 4) % 2)


def spin_parity_sum(odd_orders: Sequence[int]) -> SpinParity:
    """
    Evaluate the chain sum

        (1/4) * sum_{j=1}^{n-1} (k_1 + ... + k_2j)(k_2j + k_2j+1)  mod 2

    over the odd orders exactly in the order given. Lists of length 0 or 2
    are even.

    Raises:
        OrderError: an entry is even or below -1
        SumError: odd length, or the entries do not sum to 0 mod 4
        ConsistencyError: the total is not divisible by 4
    """
    orders = list(odd_orders)
    for k in orders:
        if k % 2 == 0 or k < -1:
            raise OrderError(f"sum form needs odd orders >= -1, got {k}")
    if len(orders) % 2:
        raise SumError(f"sum form needs an even number of odd orders, got {len(orders)}")
    if sum(orders) % 4:
        raise SumError(f"odd orders sum to {sum(orders)}, not 0 mod 4")

    n = len(orders) // 2
    if n < 2:
        return EVEN
    total = 0
    prefix = 0
    for j in range(1, n):
        prefix += orders[2 * j - 2] + orders[2 * j - 1]
        total += prefix * (orders[2 * j - 1] + orders[2 * j])
    quarter = exact_div(total, 4, "chain sum")
    return SpinParity.from_bit(quarter % 2)


def spin_parity_sum_of(p: Pattern) -> SpinParity:
    """Sum route on the odd part of a quadratic pattern, in canonical order."""
    _require_quadratic(p, "spin_parity_sum_of")
    stripped = p.without_marked_points()
    check = spin_defined(stripped)
    if not check:
        return SpinParity.undefined(check.reason)
    return spin_parity_sum(stripped.odd_orders())


def hyperelliptic_parity_single(g: int) -> SpinParity:
    """Hyperelliptic component of H(2g-2): parity of [(g+1)/2]."""
    if g < 2:
        raise DomainError(f"H(2g-2)^hyp needs genus >= 2, got {g}")
    return SpinParity.from_bit(((g + 1) // 2) % 2)


def hyperelliptic_parity_double(g: int) -> SpinParity:
    """Hyperelliptic component of H(g-1,g-1), g odd: parity of (g+1)/2."""
    if g < 3 or g % 2 == 0:
        raise DomainError(f"H(g-1,g-1)^hyp parity needs odd genus >= 3, got {g}")
    return SpinParity.from_bit(((g + 1) // 2) % 2)


def component_label(p: Pattern, parity: SpinParity) -> str:
    """Label such as ``H^even(2,4)`` for an Abelian pattern and a defined parity."""
    if p.is_quadratic:
        raise FlavorError(f"component labels are for Abelian patterns, got {p}")
    check = spin_defined(p)
    if not check:
        raise DomainError(f"spin structure of {p} is not defined: {check.reason}")
    if not parity.is_defined:
        raise DomainError(f"cannot label {p} with an undefined parity")
    return "H^" + parity.value.value + format_pattern(p)[1:]


def require_agreement(routes: dict) -> SpinParity:
    """Return the common parity of several routes or raise ConsistencyError."""
    values = set(routes.values())
    if len(values) != 1:
        detail = ", ".join(f"{name}={parity}" for name, parity in routes.items())
        raise ConsistencyError(f"spin parity routes disagree: {detail}")
    return values.pop()
