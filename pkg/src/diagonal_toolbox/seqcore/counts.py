"""Extended natural numbers used for zero counts and tail cardinalities.

Counts are plain ``int`` values or ``math.inf``; Python already gives
``inf + k == inf`` and ``min(inf, k) == k``.
"""
import math
from typing import Union

Count = Union[int, float]

INFINITY = math.inf

__all__ = ["Count", "INFINITY", "is_infinite", "check_count", "add_counts",
           "count_to_json", "count_from_json", "format_count"]


def is_infinite(n: Count) -> bool:
    return n == INFINITY


def check_count(n) -> Count:
    if isinstance(n, bool):
        raise TypeError("count must be a natural number or infinity, got %r" % (n,))
    if isinstance(n, int):
        if n < 0:
            raise ValueError("count must be nonnegative, got %d" % n)
        return n
    if n == INFINITY:
        return INFINITY
    raise TypeError("count must be a natural number or infinity, got %r" % (n,))


def add_counts(*counts: Count) -> Count:
    total = 0
    for c in counts:
        if is_infinite(c):
            return INFINITY
        total += c
    return total


def count_to_json(n: Count):
    return "inf" if is_infinite(n) else int(n)


def count_from_json(value) -> Count:
    if value == "inf":
        return INFINITY
    if isinstance(value, str):
        try:
            value = int(value)
        except ValueError:
            raise ValueError("count must be a natural number or \"inf\", got %r" % value)
    return check_count(value)


def format_count(n: Count) -> str:
    return "∞" if is_infinite(n) else str(n)
