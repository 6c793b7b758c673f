"""Decides whether d is a diagonal of a compact self-adjoint operator with eigenvalues lambda.

The decision runs in three stages: the necessary conditions, the positive
total excess which is sufficient on its own, and for zero excess the split of
the kernel between the positive and the negative block, each block being
decided by the kernel test.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

from ..essentials import KernelResult, Outcome, Status
from ..settings import resolve_settings
from ..seqcore.counts import is_infinite
from ..seqcore.sequence import ExtendedSequence, materialize, normalize
from ..util import get_outcome_name
from .kernel import KernelOutcome, kernel_test
from .necessity import NecessityTrace, check_necessity
from .splitting import Splitting, enumerate_splittings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplittingResult:
    splitting: Splitting
    positive: KernelOutcome
    negative: KernelOutcome

    @property
    def both_yes(self):
        return self.positive.yes and self.negative.yes

    @property
    def has_no(self):
        return self.positive.no or self.negative.no

    @property
    def has_unknown(self):
        return KernelResult.UNKNOWN in (self.positive.result, self.negative.result)

    def to_json(self):
        return {"splitting": self.splitting.to_json(),
                "positive": self.positive.to_json(),
                "negative": self.negative.to_json()}


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    trace: NecessityTrace
    splittings: Tuple[SplittingResult, ...] = ()
    precision_level: int = 1
    reason: str = field(default="", compare=False)

    @property
    def name(self):
        return get_outcome_name(self.outcome)

    @property
    def sigma_plus(self):
        return self.trace.excess.sigma_plus

    @property
    def sigma_minus(self):
        return self.trace.excess.sigma_minus


def _positive_block(lam: ExtendedSequence, zeros) -> ExtendedSequence:
    return ExtendedSequence(lam.positive_prefix, lam.positive_tail, zero_count=zeros)


def _negative_block(lam: ExtendedSequence, zeros) -> ExtendedSequence:
    return ExtendedSequence(lam.negative_magnitudes, lam.negative_tail, zero_count=zeros)


def _schur_horn(lam, d, trace, settings) -> Verdict:
    # both sides are finite lists, so this is the classical finite-dimensional criterion
    if lam.length != d.length:
        return Verdict(Outcome.NOT_DIAGONAL, trace, (), settings.precision_level,
                       "dimensions differ: %d and %d" % (lam.length, d.length))
    a = sorted(materialize(lam, lam.length), reverse=True)
    b = sorted(materialize(d, d.length), reverse=True)
    gap = Fraction(0)
    for n, (x, y) in enumerate(zip(a, b), 1):
        gap += x - y
        if gap < 0:
            return Verdict(Outcome.NOT_DIAGONAL, trace, (), settings.precision_level,
                           "partial sum of d exceeds that of lambda at n=%d" % n)
    if gap != 0:
        return Verdict(Outcome.NOT_DIAGONAL, trace, (), settings.precision_level,
                       "traces differ by %s" % gap)
    return Verdict(Outcome.DIAGONAL, trace, (), settings.precision_level,
                   "finite dimensional, lambda majorizes d with equal trace")


def split_kernel(lam: ExtendedSequence, d: ExtendedSequence, splitting: Splitting, settings=None) -> SplittingResult:
    """Runs the kernel test on both blocks of one splitting."""
    positive = kernel_test(_positive_block(lam, splitting.z2), _positive_block(d, 0), settings)
    negative = kernel_test(_negative_block(lam, splitting.z1), _negative_block(d, 0), settings)
    return SplittingResult(splitting, positive, negative)


def _decide_once(lam, d, settings) -> Verdict:
    level = settings.precision_level
    trace = check_necessity(lam, d, settings)
    finite_lengths = [not is_infinite(s.length) for s in (lam, d)]
    if all(finite_lengths):
        return _schur_horn(lam, d, trace, settings)
    if any(finite_lengths):
        return Verdict(Outcome.NOT_DIAGONAL, trace, (), level,
                       "one sequence is finite, the other infinite")

    failures = trace.failures
    if failures:
        return Verdict(Outcome.NOT_DIAGONAL, trace, (), level,
                       "necessary condition %s fails: %s" % (failures[0].name, failures[0].reason))
    if trace.status is Status.UNKNOWN:
        return Verdict(Outcome.PRECISION_UNKNOWN, trace, (), level, "a necessary condition is undecided")

    total = trace.excess.total
    sign = total.sign()
    if sign == 1:
        return Verdict(Outcome.DIAGONAL, trace, (), level, "total excess %s is positive" % total)
    if sign != 0:
        return Verdict(Outcome.PRECISION_UNKNOWN, trace, (), level, "total excess %s is undecided" % total)

    splittings = enumerate_splittings(lam, d)
    if not splittings:
        return Verdict(Outcome.NOT_DIAGONAL, trace, (), level, "d has more zeros than lambda")
    results = []
    for splitting in splittings:
        result = split_kernel(lam, d, splitting, settings)
        logger.debug("splitting %s: positive %s, negative %s", splitting,
                     result.positive.result.value, result.negative.result.value)
        results.append(result)
        if result.both_yes:
            return Verdict(Outcome.DIAGONAL, trace, tuple(results), level,
                           "both blocks of splitting %s are realizable" % splitting)
    results = tuple(results)
    if all(r.has_no for r in results):
        return Verdict(Outcome.NOT_DIAGONAL, trace, results, level, "every splitting has an impossible block")
    if any(r.has_unknown for r in results if not r.has_no):
        return Verdict(Outcome.PRECISION_UNKNOWN, trace, results, level, "a kernel test is undecided")
    return Verdict(Outcome.KERNEL_INCONCLUSIVE, trace, results, level,
                   "only splittings in the gap between the kernel conditions remain")


def decide(lam: ExtendedSequence, d: ExtendedSequence, settings=None) -> Verdict:
    settings = resolve_settings(settings)
    lam, d = normalize(lam), normalize(d)
    while True:
        verdict = _decide_once(lam, d, settings)
        logger.info("precision level %d: %s (%s)", settings.precision_level, verdict.name, verdict.reason)
        if verdict.outcome is not Outcome.PRECISION_UNKNOWN:
            return verdict
        settings = settings.escalated()
        if settings is None:
            return verdict
