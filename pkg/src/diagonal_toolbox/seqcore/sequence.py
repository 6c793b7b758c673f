import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, islice
from typing import Iterator, List, Tuple

from .certified import CertifiedValue, to_fraction
from .counts import INFINITY, Count, add_counts, check_count, is_infinite
from .tails import (FiniteTail, Magnitude, PowerTerm, Tail, ZeroTail, compare_magnitudes,
                    merge_tails, zero_terms)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtendedSequence:
    """A real sequence converging to zero.

    ``prefix`` holds finitely many nonzero rationals, ``positive_tail`` and
    ``negative_tail`` the closed-form remainder of each sign (the negative
    tail is read with a minus sign) and ``zero_count`` the number of zero
    terms, possibly ``math.inf``.
    """
    prefix: Tuple[Fraction, ...] = ()
    positive_tail: Tail = ZeroTail()
    negative_tail: Tail = ZeroTail()
    zero_count: Count = 0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(to_fraction(x) for x in self.prefix))
        object.__setattr__(self, "zero_count", check_count(self.zero_count))
        for tail in (self.positive_tail, self.negative_tail):
            if not isinstance(tail, Tail):
                raise TypeError("expected a tail, got %r" % (tail,))

    @property
    def positive_prefix(self) -> Tuple[Fraction, ...]:
        return tuple(x for x in self.prefix if x > 0)

    @property
    def negative_magnitudes(self) -> Tuple[Fraction, ...]:
        return tuple(-x for x in self.prefix if x < 0)

    @property
    def positive_count(self) -> Count:
        return add_counts(len(self.positive_prefix), self.positive_tail.length)

    @property
    def negative_count(self) -> Count:
        return add_counts(len(self.negative_magnitudes), self.negative_tail.length)

    @property
    def is_nonnegative(self) -> bool:
        return not self.negative_magnitudes and self.negative_tail.length == 0

    @property
    def is_finitely_supported(self) -> bool:
        return self.positive_tail.length == 0 and self.negative_tail.length == 0

    @property
    def length(self) -> Count:
        return add_counts(self.positive_count, self.negative_count, self.zero_count)

    def magnitudes(self) -> Iterator[Magnitude]:
        """Nonzero terms of a normalized nonnegative sequence, largest first."""
        return chain(self.positive_prefix, self.positive_tail.terms())

    def __neg__(self):
        return negate(self)

    def __str__(self):
        parts = ["[%s]" % ", ".join(str(x) for x in self.prefix)]
        if self.positive_tail.length:
            parts.append("+%s" % (self.positive_tail.to_json(),))
        if self.negative_tail.length:
            parts.append("-%s" % (self.negative_tail.to_json(),))
        if self.zero_count:
            parts.append("zeros=%s" % self.zero_count)
        return " ".join(parts)


def finite(*values, zero_count=0) -> ExtendedSequence:
    """Finitely supported sequence from its nonzero values."""
    return normalize(ExtendedSequence(tuple(values), zero_count=zero_count))


def _absorb(magnitudes: List[Fraction], tail: Tail):
    # pull tail terms into the prefix until the prefix dominates the tail
    if isinstance(tail, FiniteTail):
        magnitudes, tail = list(magnitudes) + list(tail.values), ZeroTail()
    magnitudes = sorted(magnitudes, reverse=True)
    while tail.length and magnitudes and compare_magnitudes(magnitudes[-1], tail.head()) < 0:
        head = tail.head()
        if isinstance(head, PowerTerm):
            # the prefix stays rational: what lies below the head joins the tail instead
            keep = sum(1 for m in magnitudes if compare_magnitudes(m, head) >= 0)
            logger.debug("moving %d prefix terms below %s into the tail", len(magnitudes) - keep, head)
            tail = merge_tails(FiniteTail(tuple(magnitudes[keep:])), tail)
            magnitudes = magnitudes[:keep]
            break
        magnitudes.append(head)
        magnitudes.sort(reverse=True)
        tail = tail.drop(1)
    return magnitudes, tail


def normalize(s: ExtendedSequence) -> ExtendedSequence:
    for i, x in enumerate(s.prefix):
        if x == 0:
            raise ValueError("prefix contains an explicit zero at position %d; use zero_count instead" % i)
    zeros = add_counts(s.zero_count, zero_terms(s.positive_tail), zero_terms(s.negative_tail))
    positive_tail = merge_tails(s.positive_tail)
    negative_tail = merge_tails(s.negative_tail)
    positives, positive_tail = _absorb([x for x in s.prefix if x > 0], positive_tail)
    negatives, negative_tail = _absorb([-x for x in s.prefix if x < 0], negative_tail)
    prefix = tuple(positives) + tuple(-m for m in negatives)
    return ExtendedSequence(prefix, positive_tail, negative_tail, zeros)


def is_normalized(s: ExtendedSequence) -> bool:
    try:
        return normalize(s) == s
    except ValueError:
        return False


def positive_part(s: ExtendedSequence) -> ExtendedSequence:
    """max(s_i, 0): negative terms become zeros."""
    s = normalize(s)
    zeros = add_counts(s.zero_count, s.negative_count)
    return ExtendedSequence(s.positive_prefix, s.positive_tail, ZeroTail(), zeros)


def negate(s: ExtendedSequence) -> ExtendedSequence:
    return normalize(ExtendedSequence(tuple(-x for x in s.prefix), s.negative_tail, s.positive_tail, s.zero_count))


def negative_part(s: ExtendedSequence) -> ExtendedSequence:
    return positive_part(negate(s))


def _require_nonnegative(s: ExtendedSequence, what: str):
    if not s.is_nonnegative:
        raise ValueError("%s requires a nonnegative sequence, got %s" % (what, s))


def decreasing_rearrangement(s: ExtendedSequence) -> ExtendedSequence:
    s = normalize(s)
    _require_nonnegative(s, "decreasing rearrangement")
    return s


def partial_sum(s: ExtendedSequence, n: Count, settings=None) -> CertifiedValue:
    """Sum of the n largest terms of a nonnegative sequence."""
    s = normalize(s)
    _require_nonnegative(s, "partial_sum")
    if is_infinite(n):
        return total_sum(s, settings)
    prefix = s.positive_prefix
    if n <= len(prefix):
        return CertifiedValue.exact(sum(prefix[:n], Fraction(0)))
    return s.positive_tail.sum_first(n - len(prefix), settings) + sum(prefix, Fraction(0))


def total_sum(s: ExtendedSequence, settings=None) -> CertifiedValue:
    s = normalize(s)
    _require_nonnegative(s, "total_sum")
    return s.positive_tail.total(settings) + sum(s.positive_prefix, Fraction(0))


def level_function(s: ExtendedSequence, alpha, settings=None) -> CertifiedValue:
    """g(alpha): the sum of (s_i - alpha) over the terms s_i >= alpha > 0."""
    alpha = to_fraction(alpha)
    if alpha <= 0:
        raise ValueError("level must be positive, got %s" % alpha)
    s = normalize(s)
    _require_nonnegative(s, "level_function")
    above = [x - alpha for x in s.positive_prefix if x >= alpha]
    if len(above) < len(s.positive_prefix):
        return CertifiedValue.exact(sum(above, Fraction(0)))
    return s.positive_tail.level_sum(alpha, settings) + sum(above, Fraction(0))


def concat(a: ExtendedSequence, b: ExtendedSequence) -> ExtendedSequence:
    """Term-multiset union of two sequences."""
    a, b = normalize(a), normalize(b)
    return normalize(ExtendedSequence(
        a.prefix + b.prefix,
        merge_tails(a.positive_tail, b.positive_tail),
        merge_tails(a.negative_tail, b.negative_tail),
        add_counts(a.zero_count, b.zero_count)))


def _signed_stream(s: ExtendedSequence):
    positives = ((m, 0, i) for i, m in enumerate(s.magnitudes()))
    negatives = ((m, 1, i) for i, m in enumerate(chain(s.negative_magnitudes, s.negative_tail.terms())))
    current = [next(positives, None), next(negatives, None)]
    while current[0] is not None or current[1] is not None:
        if current[1] is None or current[0] is not None and compare_magnitudes(current[0][0], current[1][0]) >= 0:
            yield current[0][0]
            current[0] = next(positives, None)
        else:
            yield -current[1][0]
            current[1] = next(negatives, None)
    zeros = 0
    while zeros < s.zero_count:
        yield Fraction(0)
        zeros += 1


def materialize(s: ExtendedSequence, n: int) -> List[Fraction]:
    """The first n terms, absolute values decreasing, positive before negative on ties."""
    s = normalize(s)
    terms = list(islice(_signed_stream(s), n))
    for i, t in enumerate(terms):
        if isinstance(t, PowerTerm) or not isinstance(t, Fraction):
            raise ValueError("term %d is irrational and cannot be materialized exactly" % (i + 1))
    return terms


def terms_at_least(s: ExtendedSequence, alpha) -> Count:
    """Number of terms >= alpha > 0 of a nonnegative sequence."""
    alpha = to_fraction(alpha)
    s = normalize(s)
    return sum(1 for x in s.positive_prefix if x >= alpha) + s.positive_tail.count_at_least(alpha)


def term(s: ExtendedSequence, k: int) -> Magnitude:
    """The k-th largest term (1-based) of a nonnegative normalized sequence, zeros included."""
    prefix = s.positive_prefix
    if k <= len(prefix):
        return prefix[k - 1]
    if s.positive_tail.length:
        return s.positive_tail.term(k - len(prefix))
    if k <= len(prefix) + s.zero_count:
        return Fraction(0)
    raise IndexError("sequence has only %d terms" % (len(prefix) + s.zero_count))


ZERO_SEQUENCE = ExtendedSequence()
INFINITE_ZEROS = ExtendedSequence(zero_count=INFINITY)
