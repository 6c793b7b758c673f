"""Certified values: exact rationals, rational intervals and the two infinities.

Anything the library cannot compute exactly (sums of power tails, terms with
an irrational power) is carried as a closed interval with rational endpoints
that is guaranteed to contain the true value. Interval arithmetic on
irrational quantities is delegated to ``mpmath.iv``; its binary endpoints are
converted back to :class:`fractions.Fraction` so that every comparison made by
the decision engine is exact.
"""
import math
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from mpmath import iv

__all__ = ["ValueKind", "CertifiedValue", "ZERO", "PLUS_INFINITY",
           "MINUS_INFINITY", "UNKNOWN", "exact", "interval", "to_fraction",
           "format_rational", "interval_precision", "from_mpi", "to_mpi"]


class ValueKind(Enum):
    EXACT = 1
    INTERVAL = 2
    PLUS_INFINITY = 3
    MINUS_INFINITY = 4
    # only produced by inf - inf and by undecidable excess cases
    UNKNOWN = 5


def to_fraction(value) -> Fraction:
    """Converts ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: sequences are never stored in binary floating point.
    """
    if isinstance(value, bool):
        raise TypeError("expected a rational number, got %r" % (value,))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError("malformed rational %r" % value)
    raise TypeError("expected a rational number (int, Fraction or 'p/q'), got %r" % (value,))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


@dataclass(frozen=True)
class CertifiedValue:
    kind: ValueKind
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind in (ValueKind.EXACT, ValueKind.INTERVAL):
            if self.lo is None or self.hi is None:
                raise ValueError("finite certified value needs both endpoints")
            if self.lo > self.hi:
                raise ValueError("empty interval [%s, %s]" % (self.lo, self.hi))

    @classmethod
    def exact(cls, value) -> "CertifiedValue":
        value = to_fraction(value)
        return cls(ValueKind.EXACT, value, value)

    @classmethod
    def interval(cls, lo, hi) -> "CertifiedValue":
        lo, hi = to_fraction(lo), to_fraction(hi)
        if lo == hi:
            return cls(ValueKind.EXACT, lo, hi)
        return cls(ValueKind.INTERVAL, lo, hi)

    @property
    def is_exact(self) -> bool:
        return self.kind is ValueKind.EXACT

    @property
    def is_finite(self) -> bool:
        return self.kind in (ValueKind.EXACT, ValueKind.INTERVAL)

    @property
    def is_infinite(self) -> bool:
        return self.kind in (ValueKind.PLUS_INFINITY, ValueKind.MINUS_INFINITY)

    @property
    def is_unknown(self) -> bool:
        return self.kind is ValueKind.UNKNOWN

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError("%s is not an exact value" % self)
        return self.lo

    @property
    def width(self):
        if self.is_finite:
            return self.hi - self.lo
        return math.inf

    def lower(self):
        """Lower bound as a Fraction, or -inf/+inf for the infinite kinds."""
        if self.is_finite:
            return self.lo
        if self.kind is ValueKind.PLUS_INFINITY:
            return math.inf
        return -math.inf

    def upper(self):
        if self.is_finite:
            return self.hi
        if self.kind is ValueKind.MINUS_INFINITY:
            return -math.inf
        return math.inf

    def __add__(self, other):
        if not isinstance(other, CertifiedValue):
            other = CertifiedValue.exact(other)
        if self.is_unknown or other.is_unknown:
            return UNKNOWN
        if self.is_infinite or other.is_infinite:
            kinds = {v.kind for v in (self, other) if v.is_infinite}
            if len(kinds) == 2:
                return UNKNOWN
            return PLUS_INFINITY if ValueKind.PLUS_INFINITY in kinds else MINUS_INFINITY
        return CertifiedValue.interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        if self.kind is ValueKind.PLUS_INFINITY:
            return MINUS_INFINITY
        if self.kind is ValueKind.MINUS_INFINITY:
            return PLUS_INFINITY
        if self.is_unknown:
            return self
        return CertifiedValue(self.kind, -self.hi, -self.lo)

    def __sub__(self, other):
        if not isinstance(other, CertifiedValue):
            other = CertifiedValue.exact(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "CertifiedValue":
        factor = to_fraction(factor)
        if self.is_unknown:
            return self
        if self.is_infinite:
            if factor == 0:
                return UNKNOWN
            return self if factor > 0 else -self
        a, b = self.lo * factor, self.hi * factor
        return CertifiedValue.interval(min(a, b), max(a, b))

    def sign(self) -> Optional[int]:
        """Sign of the certified quantity, None when the interval straddles 0."""
        if self.kind is ValueKind.PLUS_INFINITY:
            return 1
        if self.kind is ValueKind.MINUS_INFINITY:
            return -1
        if self.is_unknown:
            return None
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def compare(self, other) -> Optional[int]:
        if not isinstance(other, CertifiedValue):
            other = CertifiedValue.exact(other)
        if self.is_infinite and self.kind is other.kind:
            return 0
        return (self - other).sign()

    def ge(self, other) -> Optional[bool]:
        c = self.compare(other)
        return None if c is None else c >= 0

    def gt(self, other) -> Optional[bool]:
        c = self.compare(other)
        return None if c is None else c > 0

    def contains(self, q) -> bool:
        if not self.is_finite:
            return False
        q = to_fraction(q)
        return self.lo <= q <= self.hi

    def intersects(self, other: "CertifiedValue") -> bool:
        if self.is_unknown or other.is_unknown:
            return True
        if self.is_infinite or other.is_infinite:
            return self.kind is other.kind
        return self.lo <= other.hi and other.lo <= self.hi

    def widen(self, bits: int) -> "CertifiedValue":
        """Rounds the endpoints outwards to multiples of 2**-bits."""
        if not self.is_finite or self.is_exact:
            return self
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return CertifiedValue.interval(lo, hi)

    def approximate(self) -> float:
        if self.is_finite:
            return float((self.lo + self.hi) / 2)
        if self.kind is ValueKind.PLUS_INFINITY:
            return math.inf
        if self.kind is ValueKind.MINUS_INFINITY:
            return -math.inf
        return math.nan

    def to_json(self) -> str:
        if self.is_exact:
            return format_rational(self.lo)
        if self.kind is ValueKind.INTERVAL:
            return "[%s, %s]" % (format_rational(self.lo), format_rational(self.hi))
        return {ValueKind.PLUS_INFINITY: "inf",
                ValueKind.MINUS_INFINITY: "-inf",
                ValueKind.UNKNOWN: "unknown"}[self.kind]

    def __str__(self):
        return self.to_json()


ZERO = CertifiedValue.exact(0)
PLUS_INFINITY = CertifiedValue(ValueKind.PLUS_INFINITY)
MINUS_INFINITY = CertifiedValue(ValueKind.MINUS_INFINITY)
UNKNOWN = CertifiedValue(ValueKind.UNKNOWN)
exact = CertifiedValue.exact
interval = CertifiedValue.interval


@contextmanager
def interval_precision(bits: int):
    """Temporarily sets the working precision of ``mpmath.iv``."""
    previous = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = previous


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, bc = t
    man = int(man)
    if man == 0:
        if exp != 0:
            raise ValueError("interval endpoint is not finite")
        return Fraction(0)
    value = Fraction(man) * Fraction(2) ** int(exp)
    return -value if sign else value


def from_mpi(x) -> CertifiedValue:
    """Converts an ``mpmath.iv`` interval into a CertifiedValue."""
    lo, hi = x._mpi_
    return CertifiedValue.interval(_mpf_tuple_to_fraction(lo), _mpf_tuple_to_fraction(hi))


def to_mpi(q):
    """Encloses a rational (or a finite CertifiedValue) in an ``mpmath.iv`` interval."""
    if isinstance(q, CertifiedValue):
        if not q.is_finite:
            raise ValueError("cannot enclose %s in a finite interval" % q)
        return iv.mpf([to_mpi(q.lo), to_mpi(q.hi)])
    q = to_fraction(q)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)
