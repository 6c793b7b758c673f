"""Closed-form tails of sequences converging to zero.

A tail describes infinitely many strictly positive terms (or, for
``ZeroTail``, none at all, and for ``FiniteTail`` a handful that only
ever appear merged into an infinite tail). Negative tails reuse the same classes and are
interpreted with a minus sign by :class:`~.sequence.ExtendedSequence`.

Terms are *magnitudes*: a :class:`~fractions.Fraction`, or a
:class:`PowerTerm` when a power tail has a non-integer exponent and the term
may be irrational. Magnitudes are compared exactly.
"""
import functools
import heapq
import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import islice
from typing import Iterator, Optional, Tuple, Union

from mpmath import iv

from ..settings import resolve_settings
from .certified import (CertifiedValue, PLUS_INFINITY, ZERO, format_rational,
                        from_mpi, interval_precision, to_fraction, to_mpi)
from .counts import INFINITY, Count, check_count, count_to_json, is_infinite

logger = logging.getLogger(__name__)

MAX_MULTI_COMPONENTS = 4


def _log(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def _iroot(x: int, p: int) -> int:
    """Largest integer r with r**p <= x."""
    if x < 2:
        return max(x, 0)
    r = 1 << -(-x.bit_length() // p)
    while True:
        y = ((p - 1) * r + x // r ** (p - 1)) // p
        if y >= r:
            return r
        r = y


@functools.lru_cache(maxsize=256)
def _reciprocal_power_sum(offset: int, n: int, p: int) -> Fraction:
    """Exact sum of m**-p for m = offset+1 .. offset+n."""
    # one common denominator instead of a reduction per term
    common = 1
    for m in range(offset + 1, offset + n + 1):
        common = common // math.gcd(common, m) * m
    common **= p
    return Fraction(sum(common // m ** p for m in range(offset + 1, offset + n + 1)), common)


@dataclass(frozen=True)
class PowerTerm:
    """The magnitude ``coefficient * base**(-exponent)``, possibly irrational."""
    coefficient: Fraction
    base: int
    exponent: Fraction

    def certified(self, bits=128) -> CertifiedValue:
        with interval_precision(bits):
            x = to_mpi(self.coefficient) * iv.exp(-to_mpi(self.exponent) * iv.log(iv.mpf(self.base)))
            return from_mpi(x)

    def __float__(self):
        return float(self.coefficient) * self.base ** (-float(self.exponent))

    def __str__(self):
        return "%s*%d^(-%s)" % (format_rational(self.coefficient), self.base, format_rational(self.exponent))


Magnitude = Union[Fraction, PowerTerm]


def _power_form(m: Magnitude):
    if isinstance(m, PowerTerm):
        return m.coefficient, m.base, m.exponent
    return Fraction(m), 1, Fraction(0)


def compare_magnitudes(a: Magnitude, b: Magnitude) -> int:
    """Exact three-way comparison of two magnitudes.

    Both sides are raised to the least common multiple of the exponent
    denominators, which turns the comparison into one between rationals.
    """
    if not isinstance(a, PowerTerm) and not isinstance(b, PowerTerm):
        return (a > b) - (a < b)
    ca, na, sa = _power_form(a)
    cb, nb, sb = _power_form(b)
    q = sa.denominator * sb.denominator // math.gcd(sa.denominator, sb.denominator)
    left = ca ** q * nb ** int(sb * q)
    right = cb ** q * na ** int(sa * q)
    return (left > right) - (left < right)


def is_rational(m: Magnitude) -> bool:
    return not isinstance(m, PowerTerm)


def magnitude_value(m: Magnitude, bits=128) -> CertifiedValue:
    if isinstance(m, PowerTerm):
        return m.certified(bits)
    return CertifiedValue.exact(m)


def sum_magnitudes(magnitudes, bits=128) -> CertifiedValue:
    exact_part = Fraction(0)
    irrational = []
    for m in magnitudes:
        if isinstance(m, PowerTerm):
            irrational.append(m)
        else:
            exact_part += m
    if not irrational:
        return CertifiedValue.exact(exact_part)
    with interval_precision(bits):
        acc = iv.mpf(0)
        for m in irrational:
            acc += to_mpi(m.coefficient) * iv.exp(-to_mpi(m.exponent) * iv.log(iv.mpf(m.base)))
        return from_mpi(acc) + exact_part


class Tail:
    """Common interface of the tail families. Indices are 1-based."""

    summable = True

    @property
    def length(self) -> Count:
        return INFINITY

    def head(self) -> Optional[Magnitude]:
        return self.term(1)

    def term(self, k: int) -> Magnitude:
        raise NotImplementedError

    def drop(self, k: int) -> "Tail":
        raise NotImplementedError

    def terms(self) -> Iterator[Magnitude]:
        k = 1
        while True:
            yield self.term(k)
            k += 1

    def components(self) -> Tuple["Tail", ...]:
        return (self,) if not isinstance(self, ZeroTail) else ()

    def count_at_least(self, alpha: Fraction) -> int:
        raise NotImplementedError

    def sum_first(self, n: Count, settings=None) -> CertifiedValue:
        raise NotImplementedError

    def total(self, settings=None) -> CertifiedValue:
        return self.sum_first(INFINITY, settings)

    def level_sum(self, alpha: Fraction, settings=None) -> CertifiedValue:
        """Sum of (t - alpha) over the terms t >= alpha."""
        alpha = to_fraction(alpha)
        if alpha <= 0:
            raise ValueError("level must be positive, got %s" % alpha)
        k = self.count_at_least(alpha)
        if k == 0:
            return ZERO
        return self.sum_first(k, settings) - k * alpha

    @property
    def all_rational(self) -> bool:
        return True

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ZeroTail(Tail):
    """No nonzero terms. ``count`` zeros are folded into the zero count on normalization."""
    count: Count = 0

    def __post_init__(self):
        object.__setattr__(self, "count", check_count(self.count))

    @property
    def length(self) -> Count:
        return 0

    def head(self):
        return None

    def term(self, k):
        raise IndexError("zero tail has no nonzero terms")

    def drop(self, k):
        if k:
            raise IndexError("cannot drop %d terms from a zero tail" % k)
        return self

    def terms(self):
        return iter(())

    def count_at_least(self, alpha):
        return 0

    def sum_first(self, n, settings=None):
        return ZERO

    def to_json(self):
        return {"type": "zero", "count": count_to_json(self.count)}


@dataclass(frozen=True)
class GeometricTail(Tail):
    first: Fraction
    ratio: Fraction

    def __post_init__(self):
        first, ratio = to_fraction(self.first), to_fraction(self.ratio)
        if first <= 0:
            raise ValueError("geometric tail needs a positive first term, got %s" % first)
        if not 0 < ratio < 1:
            raise ValueError("geometric ratio must lie in (0, 1), got %s" % ratio)
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "ratio", ratio)

    def head(self):
        return self.first

    def term(self, k):
        if k < 1:
            raise IndexError("tail terms are indexed from 1, got %d" % k)
        return self.first * self.ratio ** (k - 1)

    def drop(self, k):
        return GeometricTail(self.first * self.ratio ** k, self.ratio) if k else self

    def terms(self):
        t = self.first
        while True:
            yield t
            t *= self.ratio

    def count_at_least(self, alpha):
        alpha = to_fraction(alpha)
        if self.first < alpha:
            return 0
        k = max(1, int(math.floor(_log(alpha / self.first) / _log(self.ratio))) + 1)
        while k > 1 and self.term(k) < alpha:
            k -= 1
        while self.term(k + 1) >= alpha:
            k += 1
        return k

    def sum_first(self, n, settings=None):
        if is_infinite(n):
            return CertifiedValue.exact(self.first / (1 - self.ratio))
        return CertifiedValue.exact(self.first * (1 - self.ratio ** n) / (1 - self.ratio))

    def to_json(self):
        return {"type": "geometric", "first": format_rational(self.first), "ratio": format_rational(self.ratio)}


@dataclass(frozen=True)
class PowerTail(Tail):
    """Terms ``coefficient * (k + offset)**(-exponent)`` for k = 1, 2, ..."""
    coefficient: Fraction
    exponent: Fraction
    offset: int = 0

    def __post_init__(self):
        c, s = to_fraction(self.coefficient), to_fraction(self.exponent)
        if c <= 0:
            raise ValueError("power tail needs a positive coefficient, got %s" % c)
        if s <= 0:
            raise ValueError("power tail needs a positive exponent, got %s" % s)
        if isinstance(self.offset, bool) or not isinstance(self.offset, int) or self.offset < 0:
            raise ValueError("power tail offset must be a natural number, got %r" % (self.offset,))
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "exponent", s)

    @property
    def summable(self):
        return self.exponent > 1

    @property
    def all_rational(self):
        return self.exponent.denominator == 1

    def term(self, k):
        if k < 1:
            raise IndexError("tail terms are indexed from 1, got %d" % k)
        base = k + self.offset
        p, q = self.exponent.numerator, self.exponent.denominator
        root = _iroot(base, q) if q > 1 else base
        if root ** q == base:
            return self.coefficient / root ** p
        return PowerTerm(self.coefficient, base, self.exponent)

    def drop(self, k):
        return PowerTail(self.coefficient, self.exponent, self.offset + k) if k else self

    def count_at_least(self, alpha):
        # c (k+o)^(-p/q) >= alpha  <=>  (k+o)^p <= (c/alpha)^q
        alpha = to_fraction(alpha)
        p, q = self.exponent.numerator, self.exponent.denominator
        bound = (self.coefficient / alpha) ** q
        m = _iroot(bound.numerator * bound.denominator ** (p - 1), p) // bound.denominator
        return max(0, m - self.offset)

    def sum_first(self, n, settings=None):
        settings = resolve_settings(settings)
        if is_infinite(n) and not self.summable:
            return PLUS_INFINITY
        if not is_infinite(n) and n <= settings.exact_power_terms:
            return self._direct_sum(n, settings.interval_bits)
        direct = settings.exact_power_terms
        return (self._direct_sum(direct, settings.interval_bits)
                + self.euler_maclaurin(direct + 1, n, settings.interval_bits))

    def _direct_sum(self, n, bits):
        if n <= 0:
            return ZERO
        if self.exponent.denominator == 1:
            exact = _reciprocal_power_sum(self.offset, n, self.exponent.numerator)
            return CertifiedValue.exact(self.coefficient * exact)
        with interval_precision(bits):
            s = to_mpi(self.exponent)
            acc = iv.mpf(0)
            for k in range(1, n + 1):
                acc += iv.exp(-s * iv.log(iv.mpf(k + self.offset)))
            return from_mpi(acc * to_mpi(self.coefficient))

    def euler_maclaurin(self, start: int, stop: Count, bits=128) -> CertifiedValue:
        """Encloses the sum of the terms start..stop (stop may be infinite).

        The terms come from a completely monotone function, so the
        Euler-Maclaurin expansions truncated after the first and after the
        second derivative correction bracket the sum.
        """
        if not is_infinite(stop) and stop < start:
            return ZERO
        if is_infinite(stop) and not self.summable:
            return PLUS_INFINITY
        with interval_precision(bits):
            c, s = to_mpi(self.coefficient), to_mpi(self.exponent)

            def f(x, shift):
                return c * iv.exp(-shift * iv.log(x))

            def antiderivative(x):
                if self.exponent == 1:
                    return c * iv.log(x)
                return c * iv.exp((1 - s) * iv.log(x)) / (1 - s)

            a = iv.mpf(start + self.offset)
            fa, d1a, d3a = f(a, s), -s * f(a, s + 1), -s * (s + 1) * (s + 2) * f(a, s + 3)
            if is_infinite(stop):
                upper = -antiderivative(a) + fa / 2 - d1a / 12
                lower = upper + d3a / 720
            else:
                b = iv.mpf(stop + self.offset)
                fb, d1b, d3b = f(b, s), -s * f(b, s + 1), -s * (s + 1) * (s + 2) * f(b, s + 3)
                upper = antiderivative(b) - antiderivative(a) + (fa + fb) / 2 + (d1b - d1a) / 12
                lower = upper - (d3b - d3a) / 720
            return CertifiedValue.interval(from_mpi(lower).lo, from_mpi(upper).hi)

    def to_json(self):
        return {"type": "power", "coefficient": format_rational(self.coefficient),
                "exponent": format_rational(self.exponent), "offset": self.offset}


@dataclass(frozen=True)
class FiniteTail(Tail):
    """Finitely many rational magnitudes merged into an infinite tail.

    Normalization parks prefix terms here when they are smaller than an
    irrational term of the tail, so the prefix stays rational.
    """
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(sorted((to_fraction(v) for v in self.values), reverse=True))
        if any(v <= 0 for v in values):
            raise ValueError("finite tail magnitudes must be positive, got %s"
                             % ", ".join(format_rational(v) for v in values))
        object.__setattr__(self, "values", values)

    @property
    def length(self) -> Count:
        return len(self.values)

    def head(self):
        return self.values[0] if self.values else None

    def term(self, k):
        if not 1 <= k <= len(self.values):
            raise IndexError("finite tail has %d terms, asked for term %d" % (len(self.values), k))
        return self.values[k - 1]

    def drop(self, k):
        if k > len(self.values):
            raise IndexError("cannot drop %d terms from a finite tail of %d" % (k, len(self.values)))
        rest = self.values[k:]
        return FiniteTail(rest) if rest else ZeroTail()

    def terms(self):
        return iter(self.values)

    def components(self):
        return (self,) if self.values else ()

    def count_at_least(self, alpha):
        alpha = to_fraction(alpha)
        return sum(1 for v in self.values if v >= alpha)

    def sum_first(self, n, settings=None):
        if is_infinite(n):
            n = len(self.values)
        return CertifiedValue.exact(sum(self.values[:n], Fraction(0)))

    def to_json(self):
        return {"type": "finite", "values": [format_rational(v) for v in self.values]}


@dataclass(frozen=True)
class PerturbedTail(Tail):
    """A geometric tail with paired perturbations along an arithmetic progression.

    At every marked index ``m = start + j * step`` the term grows by
    ``amplitude * decay**m`` and term ``m + 1`` shrinks by the same amount,
    so partial sums differ from those of ``base`` exactly after a marked
    term and the total is unchanged. Indices count from the first term of
    ``base``; ``offset`` is the number of terms already dropped.
    """
    base: GeometricTail
    start: int
    step: int
    amplitude: Fraction
    decay: Fraction
    offset: int = 0

    def __post_init__(self):
        if not isinstance(self.base, GeometricTail):
            raise TypeError("perturbed tail needs a geometric base, got %r" % (self.base,))
        for name in ("start", "step", "offset"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError("perturbed tail %s must be an integer, got %r" % (name, value))
        if self.start < 1 or self.offset < 0:
            raise ValueError("perturbed tail needs start >= 1 and offset >= 0")
        if self.step < 3:
            raise ValueError("perturbed tail step must be at least 3, got %d" % self.step)
        amplitude, decay = to_fraction(self.amplitude), to_fraction(self.decay)
        if amplitude <= 0:
            raise ValueError("perturbation amplitude must be positive, got %s" % amplitude)
        if not 0 < decay < self.base.ratio:
            raise ValueError("perturbations must decay faster than the base ratio %s, got %s"
                             % (format_rational(self.base.ratio), format_rational(decay)))
        object.__setattr__(self, "amplitude", amplitude)
        object.__setattr__(self, "decay", decay)
        # the first marked pair is the tightest one against the base spacing
        room = self.base.term(self.start + 1) - self.base.term(self.start + 2)
        if self.bump(self.start) > room:
            raise ValueError("perturbation %s at index %d breaks the ordering of the tail"
                             % (format_rational(self.bump(self.start)), self.start))

    def marked(self, i: int) -> bool:
        return i >= self.start and (i - self.start) % self.step == 0

    def bump(self, i: int) -> Fraction:
        return self.amplitude * self.decay ** i

    @property
    def aligned_base(self) -> GeometricTail:
        """The unperturbed tail over the same indices."""
        return self.base.drop(self.offset)

    def _at(self, i):
        t = self.base.term(i)
        if self.marked(i):
            return t + self.bump(i)
        if self.marked(i - 1):
            return t - self.bump(i - 1)
        return t

    def term(self, k):
        if k < 1:
            raise IndexError("tail terms are indexed from 1, got %d" % k)
        return self._at(self.offset + k)

    def drop(self, k):
        return replace(self, offset=self.offset + k) if k else self

    def terms(self):
        i = self.offset + 1
        for t in self.aligned_base.terms():
            if self.marked(i):
                t += self.bump(i)
            elif self.marked(i - 1):
                t -= self.bump(i - 1)
            yield t
            i += 1

    def count_at_least(self, alpha):
        alpha = to_fraction(alpha)
        k = self.aligned_base.count_at_least(alpha)
        while k > 0 and self.term(k) < alpha:
            k -= 1
        while self.term(k + 1) >= alpha:
            k += 1
        return k

    def _edge(self, i):
        return self.bump(i) if self.marked(i) else 0

    def sum_first(self, n, settings=None):
        base = self.aligned_base.sum_first(n, settings)
        if is_infinite(n):
            return base - self._edge(self.offset)
        if n == 0:
            return ZERO
        return base - self._edge(self.offset) + self._edge(self.offset + n)

    def to_json(self):
        return {"type": "perturbed", "base": self.base.to_json(), "start": self.start, "step": self.step,
                "amplitude": format_rational(self.amplitude), "decay": format_rational(self.decay),
                "offset": self.offset}


class _Cursor:
    """Heap entry of the merge: larger magnitudes first, then lower component index."""
    __slots__ = ("value", "index")

    def __init__(self, value, index):
        self.value = value
        self.index = index

    def __lt__(self, other):
        c = compare_magnitudes(self.value, other.value)
        if c:
            return c > 0
        return self.index < other.index


@dataclass(frozen=True)
class MultiTail(Tail):
    """Union of up to four infinite simple tails, and possibly a finite one,
    enumerated as one decreasing stream."""
    parts: Tuple[Tail, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if len(parts) < 2:
            raise ValueError("a multi-tail needs at least two components")
        if any(not isinstance(p, (GeometricTail, PowerTail, FiniteTail)) for p in parts):
            raise ValueError("multi-tail components must be geometric, power or finite tails")
        infinite = sum(1 for p in parts if not isinstance(p, FiniteTail))
        if infinite == 0:
            raise ValueError("a multi-tail needs an infinite component")
        if infinite > MAX_MULTI_COMPONENTS:
            raise ValueError("at most %d tail components per sign are supported, got %d"
                             % (MAX_MULTI_COMPONENTS, infinite))
        object.__setattr__(self, "parts", parts)

    @property
    def summable(self):
        return all(p.summable for p in self.parts)

    @property
    def all_rational(self):
        return all(p.all_rational for p in self.parts)

    def components(self):
        return self.parts

    def _merge(self):
        iterators = [p.terms() for p in self.parts]
        heap = []
        for i, it in enumerate(iterators):
            first = next(it, None)
            if first is not None:
                heap.append(_Cursor(first, i))
        heapq.heapify(heap)
        while heap:
            top = heapq.heappop(heap)
            yield top
            following = next(iterators[top.index], None)
            if following is not None:
                heapq.heappush(heap, _Cursor(following, top.index))

    def terms(self):
        return (cursor.value for cursor in self._merge())

    def head(self):
        return next(self.terms())

    def term(self, k):
        if k < 1:
            raise IndexError("tail terms are indexed from 1, got %d" % k)
        return next(islice(self.terms(), k - 1, None))

    def consumption(self, n: int) -> Tuple[int, ...]:
        """How many terms of each component the first n merged terms use."""
        counts = [0] * len(self.parts)
        for cursor in islice(self._merge(), n):
            counts[cursor.index] += 1
        return tuple(counts)

    def drop(self, k):
        if not k:
            return self
        return merge_tails(*(p.drop(c) for p, c in zip(self.parts, self.consumption(k))))

    def count_at_least(self, alpha):
        return sum(p.count_at_least(alpha) for p in self.parts)

    def sum_first(self, n, settings=None):
        if is_infinite(n):
            result = ZERO
            for p in self.parts:
                result = result + p.total(settings)
            return result
        result = ZERO
        for p, c in zip(self.parts, self.consumption(n)):
            result = result + p.sum_first(c, settings)
        return result

    def to_json(self):
        return {"type": "multi", "components": [p.to_json() for p in self.parts]}


def merge_tails(*tails: Tail) -> Tail:
    """Term-multiset union of tails. Zero tails contribute only their zero counts,
    which the caller has to carry over (see ``zero_terms``). Finite components
    are combined into one, placed first."""
    parts, values = [], []
    for t in tails:
        for c in t.components():
            if isinstance(c, FiniteTail):
                values.extend(c.values)
            else:
                parts.append(c)
    if values:
        parts.insert(0, FiniteTail(tuple(values)))
    if not parts:
        return ZeroTail()
    if len(parts) == 1:
        return parts[0]
    return MultiTail(tuple(parts))


def zero_terms(tail: Tail) -> Count:
    return tail.count if isinstance(tail, ZeroTail) else 0
