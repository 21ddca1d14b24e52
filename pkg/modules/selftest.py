#!/usr/bin/env python3
"""
Self-test Module
Runs the cross-route corpus: fixed fixtures, exhaustive property checks over
enumerated patterns, and seeded random corpora of forms and angle systems.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Tuple

import numpy as np

from modules.arf import arf, count_arf, random_form, random_transvection, spin_parity_arf, transvect
from modules.billiard import BilliardTable, Verdict, billiard_spin, classify, pillowcase, random_angle_system, unfold
from modules.config import (
    ANGLE_MAX_DENOMINATOR,
    ANGLE_MAX_VERTICES,
    ANGLE_SEED,
    ANGLE_SYSTEM_COUNT,
    FORM_SEED,
    RANDOM_FORM_COUNT,
    RANDOM_FORM_MAX_RANK,
    TRANSVECTION_MAX_LENGTH,
    TRANSVECTION_SEED,
    TRANSVECTION_SEQUENCES,
)
from modules.cover import cover_pattern, spin_defined
from modules.spin import EVEN, ODD, hyperelliptic_parity_double, hyperelliptic_parity_single, spin_parity_closed, spin_parity_sum, spin_parity_sum_of
from modules.stratum import EMPTY_QUADRATIC_STRATA, Flavor, Pattern, enumerate_patterns, genus, is_nonempty
from modules.utils import ConsistencyError, StrataError, get_logger

logger = get_logger(__name__)

# Bounds of the exhaustive suites
ORDER_INVARIANCE_VALUES = (-1, 1, 3, 5, 7, 9)
ORDER_INVARIANCE_LENGTHS = (4, 6, 8)
TRIPLE_ROUTE_MAX_SUM = 24
TRIPLE_ROUTE_MAX_ZERO_MASS = 28
TRIPLE_ROUTE_MAX_ENTRIES = None
TRIPLE_ROUTE_ORDERS = frozenset({-1, 0, 1, 3, 4, 5, 7, 8, 9, 11, 12})
EMPTINESS_MAX_SUM = 8
COVER_MAX_SUM = 40
COVER_MAX_ZERO_MASS = 44
COVER_MAX_ENTRIES = 12


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _expect(condition: bool, message: str):
    if not condition:
        raise ConsistencyError(message)


def check_fixtures() -> str:
    for text in ((12,), (9, -1)):
        p = Pattern(Flavor.QUADRATIC, text)
        parity = spin_parity_closed(p)
        _expect(parity == EVEN, f"{p} is {parity}")
    return "Q(12) and Q(9,-1) are even"


def check_order_invariance(values=ORDER_INVARIANCE_VALUES, lengths=ORDER_INVARIANCE_LENGTHS) -> str:
    """Every ordering of the same odd multiset gives the same sum-route parity."""
    seen: Dict[Tuple[int, ...], object] = {}
    orderings = 0
    for length in lengths:
        for orders in product(values, repeat=length):
            if sum(orders) % 4:
                continue
            key = tuple(sorted(orders))
            parity = spin_parity_sum(orders)
            orderings += 1
            first = seen.setdefault(key, parity)
            _expect(first == parity, f"{orders} gives {parity}, {key} gives {first}")
    return f"{len(seen)} multisets, {orderings} orderings"


def check_triple_route(max_sum=TRIPLE_ROUTE_MAX_SUM, max_zero_mass=TRIPLE_ROUTE_MAX_ZERO_MASS,
                       max_entries=TRIPLE_ROUTE_MAX_ENTRIES, allowed=TRIPLE_ROUTE_ORDERS) -> str:
    checked = 0
    for p in enumerate_patterns(Flavor.QUADRATIC, max_sum, max_zero_mass, max_entries):
        if not set(p.orders) <= allowed or not spin_defined(p):
            continue
        closed = spin_parity_closed(p)
        by_sum = spin_parity_sum_of(p)
        by_arf = spin_parity_arf(p)
        _expect(closed == by_sum == by_arf, f"{p}: closed {closed}, sum {by_sum}, arf {by_arf}")
        marked = Pattern(Flavor.QUADRATIC, p.orders + (0,))
        _expect(spin_parity_closed(marked) == spin_parity_sum_of(marked) == closed,
                f"{marked}: a marked point changes the parity")
        checked += 1
    return f"{checked} patterns agree on all three routes, with and without a marked point"


def check_arf_counts(genera=(1, 2, 3, 4)) -> str:
    counts = []
    for g in genera:
        expected = (2 ** (g - 1) * (2 ** g + 1), 2 ** (g - 1) * (2 ** g - 1))
        got = count_arf(g)
        _expect(got == expected, f"genus {g}: {got} != {expected}")
        counts.append(got)
    return " ".join(f"{a}/{b}" for a, b in counts)


def check_basis_invariance(form_count=RANDOM_FORM_COUNT, sequences=TRANSVECTION_SEQUENCES,
                           max_length=TRANSVECTION_MAX_LENGTH, max_rank=RANDOM_FORM_MAX_RANK) -> str:
    form_rng = np.random.default_rng(FORM_SEED)
    forms = [random_form(2 * int(form_rng.integers(1, max_rank // 2 + 1)), form_rng) for _ in range(form_count)]
    rng = np.random.default_rng(TRANSVECTION_SEED)
    steps = 0
    for index in range(sequences):
        form = forms[index % form_count]
        expected = arf(form)
        current = form
        for _ in range(int(rng.integers(1, max_length + 1))):
            current = transvect(current, random_transvection(current.rank, rng))
            steps += 1
        _expect(arf(current) == expected, f"sequence {index} changed the Arf invariant")
    return f"{sequences} sequences, {steps} transvections"


def check_emptiness(max_sum=EMPTINESS_MAX_SUM) -> str:
    patterns = enumerate_patterns(Flavor.QUADRATIC, max_sum)
    empty = {p.orders for p in patterns if not is_nonempty(p)}
    _expect(empty == set(EMPTY_QUADRATIC_STRATA), f"empty strata {sorted(empty)}")
    return f"{len(patterns)} patterns, {len(empty)} empty"


def check_billiard_example() -> str:
    table = BilliardTable((Fraction(11, 14), Fraction(1, 7), Fraction(1, 14)))
    report = classify(table)
    _expect(report.N == 14 and report.genus == 6, f"N={report.N} genus={report.genus}")
    _expect(report.abelian_pattern == Pattern.abelian(10), f"abelian pattern {report.abelian_pattern}")
    _expect(report.quadratic_pattern == Pattern.quadratic(9, -1), f"quadratic pattern {report.quadratic_pattern}")
    _expect(report.spin == EVEN and report.hyperelliptic_parity == ODD,
            f"spin {report.spin}, hyperelliptic {report.hyperelliptic_parity}")
    _expect(report.verdict is Verdict.NOT_HYPERELLIPTIC, f"verdict {report.verdict.value}")
    _expect(report.fake_zero_count == 3, f"fake zeros {report.fake_zero_count}")
    return f"{report.component_label}, {report.verdict.value}"


def check_angle_formula(count=ANGLE_SYSTEM_COUNT) -> str:
    rng = np.random.default_rng(ANGLE_SEED)
    for index in range(count):
        table = random_angle_system(rng, ANGLE_MAX_VERTICES, ANGLE_MAX_DENOMINATOR)
        pillow = pillowcase(table)
        by_angles = billiard_spin(table)
        closed = spin_parity_closed(pillow.pattern)
        _expect(by_angles == closed, f"system {index} ({table}): angles {by_angles}, closed {closed}")
        unfolding = unfold(table)
        _expect(genus(unfolding.abelian_pattern) == unfolding.genus,
                f"system {index} ({table}): genus {unfolding.genus} against {unfolding.abelian_pattern}")
        if unfolding.N % 2 == 0:
            lifted = cover_pattern(pillow.pattern).cover
            _expect(lifted == unfolding.abelian_pattern,
                    f"system {index} ({table}): cover {lifted}, unfolding {unfolding.abelian_pattern}")
    return f"{count} angle systems"


def check_cover_consistency(max_sum=COVER_MAX_SUM, max_zero_mass=COVER_MAX_ZERO_MASS,
                            max_entries=COVER_MAX_ENTRIES) -> str:
    patterns = enumerate_patterns(Flavor.QUADRATIC, max_sum, max_zero_mass, max_entries)
    for p in patterns:
        data = cover_pattern(p)
        n = data.ramification_count // 2
        g = genus(p)
        _expect(genus(data.cover) == 2 * g + n - 1, f"{p}: cover genus {genus(data.cover)}")
        _expect(data.h1_dim == 4 * g + 2 * n - 2, f"{p}: h1_dim {data.h1_dim}")
    return f"{len(patterns)} patterns"


def check_hyperelliptic_table() -> str:
    single = {2: ODD, 3: EVEN, 4: EVEN, 5: ODD, 6: ODD, 7: EVEN}
    for g, expected in single.items():
        _expect(hyperelliptic_parity_single(g) == expected, f"H({2 * g - 2}) genus {g}")
    double = {3: EVEN, 5: ODD}
    for g, expected in double.items():
        _expect(hyperelliptic_parity_double(g) == expected, f"H({g - 1},{g - 1}) genus {g}")
    return "single g=2..7, double g=3,5"


CHECKS: List[Tuple[str, Callable[[], str]]] = [
    ("fixtures", check_fixtures),
    ("order-invariance", check_order_invariance),
    ("triple-route", check_triple_route),
    ("arf-counts", check_arf_counts),
    ("basis-invariance", check_basis_invariance),
    ("emptiness", check_emptiness),
    ("billiard-example", check_billiard_example),
    ("angle-formula", check_angle_formula),
    ("cover-consistency", check_cover_consistency),
    ("hyperelliptic-table", check_hyperelliptic_table),
]


class SelfTestRunner:
    """Run the checks one by one; a failing check never stops the rest."""

    def __init__(self, checks: List[Tuple[str, Callable[[], str]]] = None):
        self.checks = checks if checks is not None else CHECKS
        self.results: List[CheckResult] = []

    def run(self) -> List[CheckResult]:
        self.results = []
        for name, check in self.checks:
            started = time.perf_counter()
            try:
                result = CheckResult(name, True, check())
            except StrataError as e:
                result = CheckResult(name, False, f"{e.category}: {e}")
            logger.debug("%s finished in %.2fs", name, time.perf_counter() - started)
            self.results.append(result)
        return self.results

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def report(self) -> dict:
        failed = [r.name for r in self.results if not r.passed]
        return {
            "command": "selftest",
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in self.results],
            "passed": self.passed,
            "routes_agree": self.passed,
            "warnings": [f"check {name} failed" for name in failed],
        }
