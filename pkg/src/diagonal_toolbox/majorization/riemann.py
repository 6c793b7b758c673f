"""Riemann majorization: partial-sum dominance of decreasing rearrangements.

Partial sums are scanned exactly while either prefix is still in play.
Beyond that only the two tails remain and the sign of the gap is decided
from the index after which one tail dominates the other termwise.
"""
import logging
import math
from fractions import Fraction
from itertools import islice, permutations
from typing import Callable, Optional

from ..settings import resolve_settings
from ..seqcore.certified import ZERO
from ..seqcore.sequence import ExtendedSequence, normalize
from ..seqcore.tails import (FiniteTail, GeometricTail, MultiTail, PerturbedTail, PowerTail, Tail, ZeroTail,
                             compare_magnitudes, magnitude_value)
from .excess import tail_difference
from .results import MajorizationResult, fails, holds, unknown

logger = logging.getLogger(__name__)


def first_true(predicate: Callable[[int], bool], start: int, limit: int) -> Optional[int]:
    """Smallest k in [start, limit] with predicate(k), for predicates that stay true once true."""
    if start > limit:
        return None
    if predicate(start):
        return start
    lo, step = start, 1
    while True:
        hi = min(lo + step, limit)
        if predicate(hi):
            break
        if hi == limit:
            return None
        lo, step = hi, step * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _dominates_at(a: Tail, b: Tail, k: int) -> bool:
    return compare_magnitudes(a.term(k), b.term(k)) >= 0


def _eventual_index(a, b, turn, limit):
    # a_k/b_k has its minimum over the integers at turn - 1 or turn and grows from turn on
    if all(_dominates_at(a, b, k) for k in range(max(1, turn - 1), turn + 1)):
        return 1
    return first_true(lambda k: _dominates_at(a, b, k), turn, limit)


def _power_dominance(a: PowerTail, b: PowerTail, limit):
    if a.exponent == b.exponent:
        if a.offset <= b.offset:
            return 1 if a.coefficient >= b.coefficient else None
        if a.coefficient <= b.coefficient:
            return None
        return _eventual_index(a, b, 1, limit)
    if a.exponent > b.exponent:
        return None
    crossing = (a.exponent * b.offset - b.exponent * a.offset) / (b.exponent - a.exponent)
    return _eventual_index(a, b, max(1, math.floor(crossing) + 1), limit)


def _matched_dominance(a: Tail, b: Tail, limit) -> bool:
    # every component of b is dominated termwise by its own component of a
    left, right = a.components(), b.components()
    if len(right) > len(left):
        return False
    for assignment in permutations(range(len(left)), len(right)):
        if all(dominance_index(left[i], right[j], limit) == 1 for j, i in enumerate(assignment)):
            return True
    return False


def _finite_dominance(a: Tail, b: Tail) -> Optional[int]:
    if not isinstance(b, FiniteTail):
        return None
    # beyond the last term of b the comparison is against zero
    head = list(islice(a.terms(), b.length))
    head += [Fraction(0)] * (b.length - len(head))
    j = b.length + 1
    while j > 1 and compare_magnitudes(head[j - 2], b.term(j - 1)) >= 0:
        j -= 1
    return j


def _aligned_base(t: Tail) -> Tail:
    return t.aligned_base if isinstance(t, PerturbedTail) else t


def _bump(t: Tail, k: int) -> Fraction:
    # largest perturbation that can touch term k
    return t.bump(t.offset + k) if isinstance(t, PerturbedTail) else Fraction(0)


def _perturbed_dominance(a: Tail, b: Tail, limit) -> Optional[int]:
    if not all(isinstance(t, (GeometricTail, PerturbedTail)) for t in (a, b)):
        return None
    base_a, base_b = _aligned_base(a), _aligned_base(b)
    if base_a.ratio < base_b.ratio or base_a.ratio == base_b.ratio and base_a.first <= base_b.first:
        return None

    # a_k >= base_a_k - bump_a(k - 1) and b_k <= base_b_k + bump_b(k); the margin only grows
    def margin(k):
        return base_a.term(k) - base_b.term(k) >= _bump(a, k - 1) + _bump(b, k)

    j = first_true(margin, 1, limit)
    if j is None:
        return None
    while j > 1 and _dominates_at(a, b, j - 1):
        j -= 1
    return j


def dominance_index(a: Tail, b: Tail, limit: int) -> Optional[int]:
    """Smallest j with a_k >= b_k for all k >= j, or None if there is none or it cannot be certified."""
    if b.length == 0:
        return 1
    if a.length == 0:
        return None
    if isinstance(a, MultiTail) or isinstance(b, MultiTail):
        return 1 if _matched_dominance(a, b, limit) else None
    if isinstance(a, FiniteTail) or isinstance(b, FiniteTail):
        return _finite_dominance(a, b)
    if isinstance(a, PerturbedTail) or isinstance(b, PerturbedTail):
        return _perturbed_dominance(a, b, limit)
    if isinstance(a, GeometricTail) and isinstance(b, GeometricTail):
        if a.ratio == b.ratio:
            return 1 if a.first >= b.first else None
        if a.ratio < b.ratio:
            return None
        return _eventual_index(a, b, 1, limit)
    if isinstance(a, PowerTail) and isinstance(b, PowerTail):
        return _power_dominance(a, b, limit)
    if isinstance(a, PowerTail) and isinstance(b, GeometricTail):
        # a_k/b_k grows from the first k with ((k+o)/(k+o+1))**s >= ratio
        p, q = a.exponent.numerator, a.exponent.denominator
        turn = first_true(lambda k: Fraction(k + a.offset, k + a.offset + 1) ** p >= b.ratio ** q, 1, limit)
        if turn is None:
            return None
        return _eventual_index(a, b, turn, limit)
    # a geometric tail never dominates a power tail eventually
    return None


def tail_after(s: ExtendedSequence, n: int) -> Tail:
    """What is left of the tail of a nonnegative sequence after its n largest terms."""
    tail = s.positive_tail
    if tail.length == 0:
        return ZeroTail()
    return tail.drop(max(0, n - len(s.positive_prefix)))


class _GapScan:
    """Running partial-sum gap sum_{i<=n} (lambda_i - d_i)."""

    def __init__(self, bits):
        self.bits = bits
        self.gap = ZERO
        self.n = 0
        self.uncertain_at = None

    def step(self, a, b) -> Optional[MajorizationResult]:
        self.n += 1
        self.gap = self.gap + magnitude_value(a, self.bits) - magnitude_value(b, self.bits)
        sign = self.gap.sign()
        if sign == -1:
            return fails(self.n, self.gap, "partial sum of d exceeds that of lambda at n=%d" % self.n)
        if sign is None and self.uncertain_at is None:
            self.uncertain_at = self.n
        return None

    def conclude(self, reason):
        if self.uncertain_at is not None:
            return unknown("partial-sum gap at n=%d straddles zero" % self.uncertain_at)
        return holds(reason)


def _scan_tails(scan: _GapScan, a: Tail, b: Tail, count: int):
    a_terms = a.terms() if a.length else iter(())
    b_terms = b.terms() if b.length else iter(())
    for _ in range(count):
        failure = scan.step(next(a_terms, Fraction(0)), next(b_terms, Fraction(0)))
        if failure is not None:
            return failure
    return None


def riemann_majorizes(lambda_pos: ExtendedSequence, d_pos: ExtendedSequence, horizon=None,
                      settings=None) -> MajorizationResult:
    settings = resolve_settings(settings)
    limit = settings.work_bound if horizon is None else min(horizon, settings.work_bound)
    lam, d = normalize(lambda_pos), normalize(d_pos)
    if not (lam.is_nonnegative and d.is_nonnegative):
        raise ValueError("riemann_majorizes expects nonnegative sequences")
    scan = _GapScan(settings.interval_bits)

    head = max(len(lam.positive_prefix), len(d.positive_prefix))
    lam_terms, d_terms = lam.magnitudes(), d.magnitudes()
    for _ in range(head):
        failure = scan.step(next(lam_terms, Fraction(0)), next(d_terms, Fraction(0)))
        if failure is not None:
            return failure
    a, b = tail_after(lam, head), tail_after(d, head)
    logger.debug("riemann: exact scan to n=%d, gap %s, tails %s vs %s", head, scan.gap, a, b)

    if b.length == 0:
        return scan.conclude("no terms of d remain beyond n=%d" % head)
    j = dominance_index(a, b, limit)
    if j is not None:
        failure = _scan_tails(scan, a, b, j - 1)
        if failure is not None:
            return failure
        return scan.conclude("lambda dominates d termwise from n=%d" % (head + j))

    j = dominance_index(b, a, limit)
    if j is None:
        return unknown("no certified comparison between the tails %s and %s" % (a.to_json(), b.to_json()))
    failure = _scan_tails(scan, a, b, j - 1)
    if failure is not None:
        return failure
    a, b = (a.drop(j - 1) if a.length else a), b.drop(j - 1)
    limit_gap = scan.gap + tail_difference(a, b, settings)
    sign = limit_gap.sign()
    if sign is None:
        return unknown("limit of the partial-sum gap %s straddles zero" % limit_gap)
    if sign >= 0:
        return scan.conclude("gap decreases towards the nonnegative limit %s" % limit_gap)

    base, gap = scan.n, scan.gap

    def below(m):
        return (gap + a.sum_first(m, settings) - b.sum_first(m, settings)).sign() == -1

    m = first_true(below, 1, limit)
    if m is None:
        return fails(None, limit_gap, "partial-sum gap decreases to the negative limit %s" % limit_gap)
    value = gap + a.sum_first(m, settings) - b.sum_first(m, settings)
    return fails(base + m, value, "partial sum of d exceeds that of lambda at n=%d" % (base + m))
