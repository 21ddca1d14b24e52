#!/usr/bin/env python3
"""
Billiard Module
Rational polygon billiards: the translation surface of the unfolding (N,
genus, singularity pattern, fake zeros), the quadratic differential of the
pillowcase double, the spin parity of the unfolding from the angle data, and
the assembled classification report.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from modules.cover import cover_pattern, spin_defined
from modules.spin import (
    SpinParity,
    component_label,
    hyperelliptic_parity_double,
    hyperelliptic_parity_single,
    spin_parity_closed,
)
from modules.stratum import Flavor, Pattern
from modules.utils import (
    AngleError,
    ConsistencyError,
    StrataError,
    floor_fraction,
    get_logger,
    lcm_all,
)

logger = get_logger(__name__)

_ANGLE_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class BilliardTable:
    """
    Angles of a rational polygon as exact coefficients m/n of pi.

    Unless relax_polygon is set the table must have at least three angles,
    each below 2, summing to (number of angles - 2).
    """
    angles: Tuple[Fraction, ...]
    relax_polygon: bool = False

    def __post_init__(self):
        angles = tuple(Fraction(a) for a in self.angles)
        object.__setattr__(self, "angles", angles)
        if not angles:
            raise AngleError("a billiard table needs at least one angle")
        for a in angles:
            if a <= 0:
                raise AngleError(f"angle {a} is not positive")
        if self.relax_polygon:
            return
        k = len(angles)
        if k < 3:
            raise AngleError(f"a polygon needs at least 3 angles, got {k}")
        reflex = [a for a in angles if a >= 2]
        if reflex:
            raise AngleError(f"angle {format_angle(reflex[0])} is not below 2")
        if sum(angles) != k - 2:
            raise AngleError(f"angles sum to {sum(angles)}, a {k}-gon needs {k - 2}")

    @property
    def numerators(self) -> List[int]:
        return [a.numerator for a in self.angles]

    @property
    def denominators(self) -> List[int]:
        return [a.denominator for a in self.angles]

    @property
    def N(self) -> int:
        return lcm_all(self.denominators)

    def __str__(self) -> str:
        return ",".join(format_angle(a) for a in self.angles)


def format_angle(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def parse_angles(text: str, relax_polygon: bool = False) -> BilliardTable:
    """Parse ``11/14,1/7,1/14``; a bare integer m stands for m/1."""
    angles = []
    for index, item in enumerate(text.split(",")):
        match = _ANGLE_RE.match(item)
        if not match:
            raise AngleError(f"angle {index + 1} ({item.strip()!r}) is not of the form m/n")
        m = int(match.group(1))
        n = int(match.group(2) or 1)
        if m == 0 or n == 0:
            raise AngleError(f"angle {index + 1} ({item.strip()!r}) needs m >= 1 and n >= 1")
        angles.append(Fraction(m, n))
    return BilliardTable(tuple(angles), relax_polygon)


@dataclass(frozen=True)
class Unfolding:
    N: int
    genus: int
    abelian_pattern: Pattern
    fake_zero_count: int


def unfold(table: BilliardTable) -> Unfolding:
    """
    Each vertex m/n contributes N/n zeros of order m - 1; order-0 zeros are
    fake and only counted.

    Raises:
        AngleError: the genus is not an integer
        ConsistencyError: the genus formula disagrees with Gauss-Bonnet
    """
    N = table.N
    orders: List[int] = []
    fake = 0
    for m, n in zip(table.numerators, table.denominators):
        copies = N // n
        if m == 1:
            fake += copies
        else:
            orders.extend([m - 1] * copies)

    zero_sum = sum(orders)
    if zero_sum % 2:
        raise AngleError(f"angles {table} give a non-integral genus (order sum {zero_sum})")
    gauss_bonnet = zero_sum // 2 + 1
    if table.relax_polygon:
        genus = gauss_bonnet
    else:
        k = len(table.angles)
        quoted = 1 + Fraction(N, 2) * (k - 2 - sum(Fraction(1, n) for n in table.denominators))
        if quoted.denominator != 1:
            raise AngleError(f"angles {table} give a non-integral genus {quoted}")
        genus = int(quoted)
        if genus != gauss_bonnet:
            raise ConsistencyError(f"genus formula gives {genus}, Gauss-Bonnet gives {gauss_bonnet}")

    pattern = Pattern(Flavor.ABELIAN, tuple(orders))
    logger.debug("unfolding of %s: N=%d genus=%d %s, %d fake zero(s)", table, N, genus, pattern, fake)
    return Unfolding(N=N, genus=genus, abelian_pattern=pattern, fake_zero_count=fake)


@dataclass(frozen=True)
class Pillowcase:
    pattern: Pattern
    Q: int
    is_abelian_square: bool
    half_angles: Tuple[Tuple[int, int], ...] = field(default=())


def pillowcase(table: BilliardTable) -> Pillowcase:
    """
    Write each angle as (p/q) * (pi/2) in lowest terms; with Q = lcm(q), each
    vertex contributes Q/q singularities of order p - 2 (marked points dropped).
    The differential is a global square exactly when N is odd.

    Raises:
        AngleError: the resulting orders violate the quadratic constraints
    """
    half_angles = []
    for a in table.angles:
        doubled = 2 * a
        half_angles.append((doubled.numerator, doubled.denominator))
    Q = lcm_all(q for _, q in half_angles)
    orders: List[int] = []
    for p, q in half_angles:
        if p != 2:
            orders.extend([p - 2] * (Q // q))
    try:
        pattern = Pattern(Flavor.QUADRATIC, tuple(orders))
    except StrataError as e:
        raise AngleError(f"angles {table} give an inconsistent quadratic pattern: {e}") from e
    return Pillowcase(pattern=pattern, Q=Q, is_abelian_square=table.N % 2 == 1, half_angles=tuple(half_angles))


def billiard_spin(table: BilliardTable) -> SpinParity:
    """
    Parity of [ (N/4) * |sum_{r1} 1/n - sum_{r2} 1/n| ] where, writing m = 2k + 1,
    r1 holds the angles with n even and k even and r2 those with n even and
    k odd. Angles with n odd do not contribute.

    The value equals the closed formula on the pillowcase pattern for every
    table; it is the spin parity of the unfolding only when N is even.
    """
    for m, n in zip(table.numerators, table.denominators):
        if m % 2 == 0:
            return SpinParity.undefined(f"angle {m}/{n} has an even numerator")
    r1 = Fraction(0)
    r2 = Fraction(0)
    for m, n in zip(table.numerators, table.denominators):
        if n % 2:
            continue
        if ((m - 1) // 2) % 2 == 0:
            r1 += Fraction(1, n)
        else:
            r2 += Fraction(1, n)
    scaled = table.N * abs(r1 - r2) / 4
    return SpinParity.from_bit(floor_fraction(scaled) % 2)


class Verdict(Enum):
    NOT_HYPERELLIPTIC = "not hyperelliptic"
    HYPERELLIPTIC_POSSIBLE = "hyperelliptic possible"
    NOT_APPLICABLE = "not applicable"


@dataclass(frozen=True)
class UnfoldingReport:
    table: BilliardTable
    N: int
    genus: int
    abelian_pattern: Pattern
    fake_zero_count: int
    quadratic_pattern: Pattern
    Q: int
    is_abelian_square: bool
    spin: SpinParity
    component_label: Optional[str]
    hyperelliptic_parity: Optional[SpinParity]
    verdict: Verdict
    routes_agree: bool
    warnings: Tuple[str, ...] = ()


def hyperelliptic_parity_for(pattern: Pattern, genus: int) -> Optional[SpinParity]:
    """Parity of the hyperelliptic component when the stratum is H(2g-2) or H(g-1,g-1)."""
    if genus >= 2 and pattern.orders == (2 * genus - 2,):
        return hyperelliptic_parity_single(genus)
    if genus >= 3 and genus % 2 and pattern.orders == (genus - 1, genus - 1):
        return hyperelliptic_parity_double(genus)
    return None


def classify(table: BilliardTable) -> UnfoldingReport:
    """
    Run unfold, pillowcase and billiard_spin, cross-check the spin against the
    closed formula on the pillowcase pattern and (N even) the cover of the
    pillowcase pattern against the unfolded pattern, then compare with the
    hyperelliptic parity when the stratum has a hyperelliptic component.

    Raises:
        ConsistencyError: any of the cross-checks fails
    """
    unfolding = unfold(table)
    pillow = pillowcase(table)
    spin = billiard_spin(table)
    warnings = []

    closed = spin_parity_closed(pillow.pattern)
    if spin.is_defined and closed != spin:
        raise ConsistencyError(f"angle formula gives {spin}, closed formula on {pillow.pattern} gives {closed}")
    if unfolding.N % 2 == 0:
        lifted = cover_pattern(pillow.pattern).cover
        if lifted != unfolding.abelian_pattern:
            raise ConsistencyError(f"cover of {pillow.pattern} is {lifted}, unfolding gives {unfolding.abelian_pattern}")
    else:
        warnings.append("N is odd: the pillowcase differential is the square of an Abelian differential")
        # the angle formula rests on Q = N/2
        if spin.is_defined:
            spin = SpinParity.undefined("N is odd: the angle formula does not determine the spin parity")
    if table.relax_polygon:
        warnings.append("polygon angle sum not checked")

    hyperelliptic = hyperelliptic_parity_for(unfolding.abelian_pattern, unfolding.genus)
    if hyperelliptic is None or not spin.is_defined:
        verdict = Verdict.NOT_APPLICABLE
    elif hyperelliptic != spin:
        verdict = Verdict.NOT_HYPERELLIPTIC
    else:
        verdict = Verdict.HYPERELLIPTIC_POSSIBLE

    label = None
    if spin.is_defined and spin_defined(unfolding.abelian_pattern):
        label = component_label(unfolding.abelian_pattern, spin)

    return UnfoldingReport(
        table=table,
        N=unfolding.N,
        genus=unfolding.genus,
        abelian_pattern=unfolding.abelian_pattern,
        fake_zero_count=unfolding.fake_zero_count,
        quadratic_pattern=pillow.pattern,
        Q=pillow.Q,
        is_abelian_square=pillow.is_abelian_square,
        spin=spin,
        component_label=label,
        hyperelliptic_parity=hyperelliptic,
        verdict=verdict,
        routes_agree=True,
        warnings=tuple(warnings),
    )


def _two_adic(value: int) -> int:
    return (value & -value).bit_length() - 1


def random_angle_system(rng, max_vertices: int = 12, max_denominator: int = 60,
                        odd_numerators: bool = True) -> BilliardTable:
    """
    Draw a valid polygon angle system from a numpy Generator: pick a vertex
    count k and a common denominator d, split (k - 2) * d into k parts below
    2d, and keep the split when every reduced numerator is odd (if asked).
    """
    while True:
        k = int(rng.integers(3, max_vertices + 1))
        d = int(rng.integers(2, max_denominator + 1))
        target = (k - 2) * d
        if target < k:
            continue
        valuation = _two_adic(d)
        upper = min(2 * d - 1, max(1, 2 * target // k))

        def draw() -> int:
            while True:
                a = int(rng.integers(1, upper + 1))
                if not odd_numerators or _two_adic(a) <= valuation:
                    return a

        for attempt in range(64):
            parts = [draw() for _ in range(k - 1)]
            last = target - sum(parts)
            if last < 1 or last >= 2 * d:
                continue
            if odd_numerators and _two_adic(last) > valuation:
                continue
            logger.debug("angle system with %d vertices over %d after %d attempt(s)", k, d, attempt + 1)
            return BilliardTable(tuple(Fraction(a, d) for a in parts + [last]))
