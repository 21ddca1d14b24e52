# modules/utils.py

import logging
import os
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable

from modules.config import (
    ARF_MAX_GENUS_ENV,
    DEFAULT_ARF_MAX_GENUS,
    DEFAULT_LOG_LEVEL,
    DEFAULT_WORKERS,
    LOG_FORMAT,
    LOG_LEVEL_ENV,
    WORKERS_ENV,
)


class StrataError(ValueError):
    """Base class for every error the library reports."""
    category = "error"


class PatternSyntaxError(StrataError):
    """Raised when stratum notation cannot be parsed."""
    category = "syntax"

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class OrderError(StrataError):
    """Raised when a singularity order is not allowed for the flavor."""
    category = "order"


class SumError(StrataError):
    """Raised when the order sum violates the Gauss-Bonnet constraints."""
    category = "sum"


class FlavorError(StrataError):
    """Raised when an operation receives a pattern of the wrong flavor."""
    category = "flavor"


class DomainError(StrataError):
    category = "domain"


class DegenerateFormError(StrataError):
    category = "degenerate"


class AngleError(StrataError):
    """Raised for invalid billiard angle data."""
    category = "angle"


class BoundError(StrataError):
    category = "bound"


class ConsistencyError(StrataError):
    """Raised when two independent computations disagree."""
    category = "consistency"


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def configure_logging(verbose: bool = False):
    level_name = "DEBUG" if verbose else os.environ.get(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL)
    level = getattr(logging, level_name.upper(), None)
    if not isinstance(level, int):
        level = getattr(logging, DEFAULT_LOG_LEVEL)
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def _load_int_env(name: str, default: int, minimum: int = 1) -> int:
    try:
        raw = os.environ.get(name)
        if raw is not None:
            value = int(raw.strip())
            if value >= minimum:
                return value
    except Exception:
        pass
    return default


def load_worker_count(default: int = DEFAULT_WORKERS) -> int:
    return _load_int_env(WORKERS_ENV, default)


def load_arf_max_genus(default: int = DEFAULT_ARF_MAX_GENUS) -> int:
    return _load_int_env(ARF_MAX_GENUS_ENV, default)


def lcm_all(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def floor_fraction(value: Fraction) -> int:
    """Integer part of an exact rational, never via floating point."""
    return value.numerator // value.denominator


def exact_div(numerator: int, denominator: int, what: str) -> int:
    """Divide, insisting that the division is exact."""
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise ConsistencyError(f"{what}: {numerator} is not divisible by {denominator}")
    return quotient
