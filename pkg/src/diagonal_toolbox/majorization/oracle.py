"""Diagnostic oracles on finitely supported sequences, where everything is exact."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from ..essentials import Status
from ..seqcore.certified import CertifiedValue, ZERO, to_fraction
from ..seqcore.counts import INFINITY, add_counts, is_infinite
from ..seqcore.sequence import ExtendedSequence, finite, normalize, partial_sum
from ..seqcore.tails import GeometricTail, PowerTail, ZeroTail
from .delta import delta, lebesgue_majorizes
from .results import MajorizationResult
from .riemann import riemann_majorizes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LRReport:
    riemann: MajorizationResult
    lebesgue: MajorizationResult
    riemann_liminf: CertifiedValue
    lebesgue_liminf: CertifiedValue
    discrepancies: List[str] = field(default_factory=list)

    @property
    def agree(self):
        return self.riemann.status is self.lebesgue.status

    @property
    def liminf_equal(self):
        return self.riemann_liminf.compare(self.lebesgue_liminf) == 0

    @property
    def ok(self):
        return not self.discrepancies

    def to_json(self):
        return {
            "riemann": self.riemann.to_json(),
            "lebesgue": self.lebesgue.to_json(),
            "riemann_liminf": self.riemann_liminf.to_json(),
            "lebesgue_liminf": self.lebesgue_liminf.to_json(),
            "discrepancies": list(self.discrepancies),
        }


def _require_finite_nonnegative(s: ExtendedSequence, name: str) -> ExtendedSequence:
    s = normalize(s)
    if not (s.is_nonnegative and s.is_finitely_supported):
        raise ValueError("%s must be nonnegative and finitely supported, got %s" % (name, s))
    return s


def lr_equivalence_check(lambda_pos: ExtendedSequence, d_pos: ExtendedSequence, settings=None) -> LRReport:
    """Evaluates both majorization forms and both liminfs on a finitely supported pair."""
    lam = _require_finite_nonnegative(lambda_pos, "lambda")
    d = _require_finite_nonnegative(d_pos, "d")
    riemann = riemann_majorizes(lam, d, settings=settings)
    lebesgue = lebesgue_majorizes(lam, d, settings=settings)

    # the partial-sum gaps are constant once both supports are exhausted
    n = max(len(lam.positive_prefix), len(d.positive_prefix))
    riemann_liminf = partial_sum(lam, n, settings) - partial_sum(d, n, settings)

    # delta is affine below the smallest term, extrapolate it to 0
    terms = lam.positive_prefix + d.positive_prefix
    if terms:
        m = min(terms)
        lebesgue_liminf = delta(m / 4, lam, d, settings).scale(2) - delta(m / 2, lam, d, settings)
    else:
        lebesgue_liminf = ZERO

    discrepancies = []
    if riemann.status is Status.UNKNOWN or lebesgue.status is Status.UNKNOWN:
        discrepancies.append("undecided on a finitely supported pair")
    if riemann.status is not lebesgue.status:
        discrepancies.append("riemann %s but lebesgue %s" % (riemann.status.value, lebesgue.status.value))
    if riemann_liminf.compare(lebesgue_liminf) != 0:
        discrepancies.append("liminf of partial-sum gaps %s differs from liminf of delta %s"
                             % (riemann_liminf, lebesgue_liminf))
    if lebesgue.fails and lebesgue.witness is not None:
        if delta(lebesgue.witness, lam, d, settings).sign() != -1:
            discrepancies.append("lebesgue witness %s does not give a negative delta" % lebesgue.witness)
    return LRReport(riemann, lebesgue, riemann_liminf, lebesgue_liminf, discrepancies)


@dataclass(frozen=True)
class RearrangementReport:
    dominated: bool
    first_violation: Optional[int]
    difference_before: Fraction
    difference_after: Fraction

    @property
    def ok(self):
        return self.dominated and self.difference_before == self.difference_after


def dra_check(lam: Sequence, d: Sequence) -> RearrangementReport:
    """Pointwise lambda_i >= d_i > 0 carries over to the decreasing rearrangements
    with the same summed difference."""
    lam = [to_fraction(x) for x in lam]
    d = [to_fraction(x) for x in d]
    if len(lam) != len(d):
        raise ValueError("sequences differ in length: %d and %d" % (len(lam), len(d)))
    for i, (x, y) in enumerate(zip(lam, d)):
        if y <= 0:
            raise ValueError("d must be positive, d_%d = %s" % (i + 1, y))
        if x < y:
            raise ValueError("pointwise dominance fails at index %d: %s < %s" % (i + 1, x, y))
    lam_down, d_down = sorted(lam, reverse=True), sorted(d, reverse=True)
    violation = next((i + 1 for i, (x, y) in enumerate(zip(lam_down, d_down)) if x < y), None)
    return RearrangementReport(violation is None, violation,
                               sum(x - y for x, y in zip(lam, d)),
                               sum(x - y for x, y in zip(lam_down, d_down)))


def random_rationals(rng: np.random.Generator, size: int, max_denominator=12, max_value=4) -> List[Fraction]:
    numerators = rng.integers(1, max_value * max_denominator + 1, size=size)
    denominators = rng.integers(1, max_denominator + 1, size=size)
    return [Fraction(int(p), int(q)) for p, q in zip(numerators, denominators)]


def random_finite_pair(rng: np.random.Generator, max_length=30):
    """A random pair of finitely supported nonnegative sequences.

    Half of the pairs are built to majorize: d is obtained from lambda by
    averaging blocks, which keeps the partial sums of d below those of lambda.
    """
    lam = random_rationals(rng, int(rng.integers(1, max_length + 1)))
    if rng.random() < 0.5:
        d = random_rationals(rng, int(rng.integers(1, max_length + 1)))
    else:
        ordered = sorted(lam, reverse=True)
        d = []
        i = 0
        while i < len(ordered):
            width = int(rng.integers(1, 4))
            block = ordered[i:i + width]
            d.extend([sum(block) / len(block)] * len(block))
            i += width
    return finite(*lam), finite(*d)


def _random_tail(rng: np.random.Generator):
    kind = int(rng.integers(0, 3))
    if kind == 0:
        return ZeroTail()
    first = Fraction(int(rng.integers(1, 5)), 4)
    if kind == 1:
        return GeometricTail(first, Fraction(1, int(rng.integers(2, 4))))
    return PowerTail(first, int(rng.integers(2, 4)), int(rng.integers(0, 3)))


def _averaged(rng, values):
    # block averages of the sorted values, each block keeps its sum
    ordered, result, i = sorted(values, reverse=True), [], 0
    while i < len(ordered):
        block = ordered[i:i + int(rng.integers(1, 4))]
        result.extend([sum(block) / len(block)] * len(block))
        i += len(block)
    return result


def random_sequence(rng: np.random.Generator, max_prefix=4) -> ExtendedSequence:
    """A random sequence with zero, geometric or power tails of either sign."""
    size = int(rng.integers(0, max_prefix + 1))
    signs = rng.choice([-1, 1], size=size)
    prefix = tuple(int(sign) * x for sign, x in zip(signs, random_rationals(rng, size, 4, 2)))
    zeros = (0, 1, 2, INFINITY)[int(rng.integers(0, 4))]
    return normalize(ExtendedSequence(prefix, _random_tail(rng), _random_tail(rng), zeros))


def random_pair(rng: np.random.Generator, max_prefix=4):
    """A random (lambda, d) pair.

    Half of the pairs are independent draws. In the other half d keeps the
    tails and zeros of lambda and averages blocks of each sign of its prefix,
    and lambda may get one more zero, so the excesses vanish and the kernel
    test decides.
    """
    lam = random_sequence(rng, max_prefix)
    if rng.random() < 0.5:
        return lam, random_sequence(rng, max_prefix)
    positives = _averaged(rng, lam.positive_prefix)
    negatives = _averaged(rng, lam.negative_magnitudes)
    d = normalize(ExtendedSequence(tuple(positives) + tuple(-x for x in negatives),
                                   lam.positive_tail, lam.negative_tail, lam.zero_count))
    if not is_infinite(lam.zero_count) and rng.random() < 0.5:
        lam = ExtendedSequence(lam.prefix, lam.positive_tail, lam.negative_tail, add_counts(lam.zero_count, 1))
    return lam, d
