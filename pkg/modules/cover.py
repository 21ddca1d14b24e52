#!/usr/bin/env python3
"""
Double Cover Module
Singularity pattern of the canonical orientation double cover of a quadratic
differential, with Riemann-Hurwitz bookkeeping and spin-definedness tests.
"""

from dataclasses import dataclass
from typing import List, Optional

from modules.stratum import Flavor, Pattern, genus
from modules.utils import ConsistencyError, FlavorError, get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class CoverData:
    """
    Pattern-level image of the orientation double cover.

    ramification_count is 2n, the number of odd-order singularities of the
    base; cover_genus = 2g + n - 1 and h1_dim = 2 * cover_genus.
    """
    base: Pattern
    cover: Pattern
    ramification_count: int
    cover_genus: int
    h1_dim: int
    square_candidate: bool


@dataclass(frozen=True)
class SpinCheck:
    defined: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.defined


def _require_quadratic(p: Pattern, operation: str):
    if not p.is_quadratic:
        raise FlavorError(f"{operation} needs a quadratic pattern, got {p}")


def cover_pattern(base: Pattern, keep_marked: bool = False) -> CoverData:
    """
    Apply the local branch rules entrywise:

    - odd order k: one ramified preimage of order k + 1
    - even order k >= 2: two preimages of order k / 2
    - pole: one ramified regular point (order 0)
    - marked point: two marked points

    Regular points (from poles and marked points) are dropped unless
    keep_marked is set.

    Raises:
        FlavorError: base is Abelian
        ConsistencyError: Riemann-Hurwitz and Gauss-Bonnet disagree
    """
    _require_quadratic(base, "cover_pattern")
    orders: List[int] = []
    ramified = 0
    for k in base.orders:
        if k == -1:
            ramified += 1
            if keep_marked:
                orders.append(0)
        elif k % 2:
            ramified += 1
            orders.append(k + 1)
        elif k == 0:
            if keep_marked:
                orders.extend((0, 0))
        else:
            orders.extend((k // 2, k // 2))

    cover = Pattern(Flavor.ABELIAN, tuple(orders))
    cover_genus = 2 * genus(base) + ramified // 2 - 1
    if genus(cover) != cover_genus:
        raise ConsistencyError(
            f"cover of {base}: Gauss-Bonnet genus {genus(cover)} differs from Riemann-Hurwitz genus {cover_genus}"
        )
    logger.debug("cover of %s is %s (2n=%d, genus %d)", base, cover, ramified, cover_genus)
    return CoverData(
        base=base,
        cover=cover,
        ramification_count=ramified,
        cover_genus=cover_genus,
        h1_dim=2 * cover_genus,
        square_candidate=is_square_candidate(base),
    )


def spin_defined(p: Pattern) -> SpinCheck:
    """
    Quadratic: no order is 2 mod 4 (poles and marked points pass).
    Abelian: every order is even.
    """
    for k in p.orders:
        if p.is_quadratic and k % 4 == 2:
            return SpinCheck(False, f"order {k} ≡ 2 mod 4")
        if not p.is_quadratic and k % 2:
            return SpinCheck(False, f"order {k} is odd")
    return SpinCheck(True)


def is_square_candidate(base: Pattern) -> bool:
    """All orders even: the pattern alone cannot rule out a global square."""
    _require_quadratic(base, "is_square_candidate")
    return all(k % 2 == 0 for k in base.orders)
