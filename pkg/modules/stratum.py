#!/usr/bin/env python3
"""
Stratum Module
Singularity patterns of Abelian and quadratic differentials, their textual
notation, and the stratum-level facts: Gauss-Bonnet genus, dimension,
non-emptiness and the known connectedness results.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import groupby
from typing import Iterator, List, Optional, Tuple

from modules.config import MAX_PATTERN_ENTRIES, ZERO_MASS_SLACK
from modules.utils import (
    FlavorError,
    OrderError,
    PatternSyntaxError,
    SumError,
    exact_div,
    get_logger,
    load_worker_count,
)

logger = get_logger(__name__)


class Flavor(Enum):
    ABELIAN = "H"
    QUADRATIC = "Q"


@dataclass(frozen=True)
class Pattern:
    """
    A stratum descriptor: a flavor and a multiset of singularity orders.

    Orders are stored in non-increasing order, so two patterns compare
    equal exactly when flavor and multiset coincide. Marked points
    (order 0) are kept.

    Raises:
        OrderError: an order is below the flavor's minimum
        SumError: the order sum fails the flavor's congruence or bound
    """
    flavor: Flavor
    orders: Tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(sorted((int(k) for k in self.orders), reverse=True))
        object.__setattr__(self, "orders", orders)
        _validate(self.flavor, orders)

    @classmethod
    def quadratic(cls, *orders: int) -> "Pattern":
        return cls(Flavor.QUADRATIC, orders)

    @classmethod
    def abelian(cls, *orders: int) -> "Pattern":
        return cls(Flavor.ABELIAN, orders)

    @property
    def total(self) -> int:
        return sum(self.orders)

    @property
    def is_quadratic(self) -> bool:
        return self.flavor is Flavor.QUADRATIC

    def without_marked_points(self) -> "Pattern":
        return Pattern(self.flavor, tuple(k for k in self.orders if k != 0))

    def odd_orders(self) -> Tuple[int, ...]:
        return tuple(k for k in self.orders if k % 2)

    def __str__(self) -> str:
        return format_pattern(self)


def _validate(flavor: Flavor, orders: Tuple[int, ...]):
    total = sum(orders)
    if flavor is Flavor.QUADRATIC:
        low = [k for k in orders if k < -1]
        if low:
            raise OrderError(f"quadratic order {low[0]} is below -1")
        if total % 4:
            raise SumError(f"order sum {total} is not divisible by 4")
        if total < -4:
            raise SumError(f"order sum {total} is below -4")
    else:
        low = [k for k in orders if k < 0]
        if low:
            raise OrderError(f"Abelian order {low[0]} is negative")
        if total % 2:
            raise SumError(f"order sum {total} is odd")


class PatternParser:
    """
    Recursive descent parser for stratum notation.

    Grammar (whitespace between tokens is ignored):
        pattern  := ("Q" | "H") "(" [entry ("," entry)*] ")"
        entry    := integer ["^" positive-integer]
        integer  := ["-" | "+"] digit+
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _error(self, message: str):
        raise PatternSyntaxError(message, self.text, self.pos)

    def _skip_whitespace(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_whitespace()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str):
        if self._peek() != char:
            found = self._peek() or "end of input"
            self._error(f"expected {char!r}, found {found!r}")
        self.pos += 1

    def _digits(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and "0" <= self.text[self.pos] <= "9":
            self.pos += 1
        if start == self.pos:
            self._error("expected a number")
        return int(self.text[start:self.pos])

    def _integer(self) -> int:
        sign = 1
        if self._peek() in ("-", "+"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        return sign * self._digits()

    def _entry(self, count: int) -> List[int]:
        order = self._integer()
        if self._peek() == "^":
            self.pos += 1
            self._skip_whitespace()
            exponent_pos = self.pos
            exponent = self._digits()
            if exponent < 1:
                self.pos = exponent_pos
                self._error("exponent must be positive")
            if count + exponent > MAX_PATTERN_ENTRIES:
                self.pos = exponent_pos
                self._error(f"pattern expands to more than {MAX_PATTERN_ENTRIES} entries")
            return [order] * exponent
        return [order]

    def parse(self) -> Pattern:
        letter = self._peek()
        if letter not in ("Q", "H"):
            self._error("expected flavor 'Q' or 'H'")
        self.pos += 1
        flavor = Flavor(letter)
        self._expect("(")
        orders: List[int] = []
        if self._peek() != ")":
            orders.extend(self._entry(len(orders)))
            while self._peek() == ",":
                self.pos += 1
                orders.extend(self._entry(len(orders)))
        self._expect(")")
        if self._peek():
            self._error("unexpected trailing input")
        return Pattern(flavor, tuple(orders))


def parse_pattern(text: str) -> Pattern:
    """Parse stratum notation such as ``Q(1^4,8,2,3^2)`` into a canonical Pattern."""
    return PatternParser(text).parse()


def format_pattern(p: Pattern) -> str:
    parts = []
    for order, run in groupby(p.orders):
        count = len(list(run))
        parts.append(f"{order}^{count}" if count > 1 else str(order))
    return f"{p.flavor.value}({','.join(parts)})"


def genus(p: Pattern) -> int:
    if p.is_quadratic:
        return exact_div(p.total + 4, 4, "quadratic genus")
    return exact_div(p.total + 2, 2, "Abelian genus")


def dimension(p: Pattern) -> int:
    """Complex dimension of the stratum; marked points count toward n."""
    n = len(p.orders)
    if p.is_quadratic:
        return 2 * genus(p) + n - 2
    return 2 * genus(p) + n - 1


# Masur-Smillie: the only empty quadratic strata (marked points ignored)
EMPTY_QUADRATIC_STRATA = frozenset({(), (1, -1), (4,), (3, 1)})

# Strata whose component count is known from a direct computation
KNOWN_COMPONENT_COUNTS = {(12,): 2, (9, -1): 2}


def is_nonempty(p: Pattern) -> bool:
    if not p.is_quadratic:
        raise FlavorError("non-emptiness is only reported for quadratic strata")
    return p.without_marked_points().orders not in EMPTY_QUADRATIC_STRATA


class ConnectednessKind(Enum):
    CONNECTED = "connected"
    KNOWN_MULTI_COMPONENT = "known-multi-component"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Connectedness:
    kind: ConnectednessKind
    count: Optional[int] = None

    def __str__(self) -> str:
        if self.kind is ConnectednessKind.KNOWN_MULTI_COMPONENT:
            return f"{self.count} components"
        return self.kind.value


def connectedness_facts(p: Pattern) -> Connectedness:
    """
    Report only the connectedness facts that are actually known:
    genus-zero quadratic strata are connected, Q(12) and Q(-1,9) have two
    components, everything else (including every Abelian stratum) is unknown.
    """
    if not p.is_quadratic:
        return Connectedness(ConnectednessKind.UNKNOWN)
    stripped = p.without_marked_points().orders
    if p.total == -4:
        return Connectedness(ConnectednessKind.CONNECTED, 1)
    if stripped in KNOWN_COMPONENT_COUNTS:
        return Connectedness(ConnectednessKind.KNOWN_MULTI_COMPONENT, KNOWN_COMPONENT_COUNTS[stripped])
    return Connectedness(ConnectednessKind.UNKNOWN)


@dataclass(frozen=True)
class StratumFacts:
    genus: int
    dimension: int
    nonempty: Optional[bool]
    connectedness: Connectedness


def stratum_facts(p: Pattern) -> StratumFacts:
    return StratumFacts(
        genus=genus(p),
        dimension=dimension(p),
        nonempty=is_nonempty(p) if p.is_quadratic else None,
        connectedness=connectedness_facts(p),
    )


def _partitions(total: int, max_part: int, max_count: Optional[int]) -> Iterator[Tuple[int, ...]]:
    """Non-increasing tuples of positive parts summing to total."""
    if total == 0:
        yield ()
        return
    if max_count == 0:
        return
    remaining = None if max_count is None else max_count - 1
    for part in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - part, part, remaining):
            yield (part,) + rest


def _patterns_with_sum(job: Tuple[Flavor, int, int, Optional[int]]) -> List[Pattern]:
    flavor, total, max_zero_mass, max_entries = job
    found = []
    if flavor is Flavor.ABELIAN:
        for zeros in _partitions(total, total, max_entries):
            found.append(Pattern(flavor, zeros))
    else:
        for mass in range(max(total, 0), max_zero_mass + 1):
            poles = mass - total
            if max_entries is not None and poles > max_entries:
                break
            budget = None if max_entries is None else max_entries - poles
            for zeros in _partitions(mass, mass, budget):
                found.append(Pattern(flavor, zeros + (-1,) * poles))
    return sorted(found, key=lambda p: p.orders)


def enumerate_patterns(flavor: Flavor, max_sum: int, max_zero_mass: Optional[int] = None,
                       max_entries: Optional[int] = None, workers: Optional[int] = None) -> List[Pattern]:
    """
    List every valid pattern without marked points whose order sum is at most
    max_sum, ordered by (sum, orders).

    Quadratic patterns are further bounded by the total order of their zeros
    (max_zero_mass, default max_sum + 4), since pairs of a simple zero and a
    pole leave the sum unchanged. max_entries optionally caps the number of
    singularities.
    """
    if max_zero_mass is None:
        max_zero_mass = max_sum + ZERO_MASS_SLACK
    step = 4 if flavor is Flavor.QUADRATIC else 2
    lowest = -4 if flavor is Flavor.QUADRATIC else 0
    jobs = [(flavor, total, max_zero_mass, max_entries) for total in range(lowest, max_sum + 1, step)]
    workers = workers or load_worker_count()
    logger.debug("enumerating %s patterns up to sum %d with %d worker(s)", flavor.value, max_sum, workers)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_patterns_with_sum, jobs))
    else:
        chunks = [_patterns_with_sum(job) for job in jobs]
    return [p for chunk in chunks for p in chunk]
