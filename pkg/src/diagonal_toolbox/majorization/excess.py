"""Positive and negative excess of a pair of sequences.

sigma_plus is the liminf of the partial-sum gaps between the decreasing
rearrangements of the positive parts, sigma_minus the same for the negative
parts. Tails are compared component by component: power components with the
same coefficient and exponent telescope to a finite sum, summable components
contribute their totals, and unmatched divergent components are compared by
their growth rate.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from ..essentials import Summability
from ..settings import resolve_settings
from ..seqcore.certified import (CertifiedValue, MINUS_INFINITY, PLUS_INFINITY, UNKNOWN, ZERO,
                                 from_mpi, interval_precision, to_mpi)
from ..seqcore.sequence import ExtendedSequence, negative_part, normalize, positive_part
from ..seqcore.tails import PowerTail, Tail

logger = logging.getLogger(__name__)


def summability(s: ExtendedSequence) -> Summability:
    s = normalize(s)
    if not s.is_nonnegative:
        raise ValueError("summability is defined for the parts of a sequence, got %s" % s)
    return Summability.YES if s.positive_tail.summable else Summability.NO


def _same_family(a, b):
    return (isinstance(a, PowerTail) and isinstance(b, PowerTail)
            and a.coefficient == b.coefficient and a.exponent == b.exponent)


def _pair_difference(a: PowerTail, b: PowerTail, settings) -> CertifiedValue:
    # equal coefficient and exponent, so only the offsets differ
    if a.offset == b.offset:
        return ZERO
    if a.offset < b.offset:
        return a.sum_first(b.offset - a.offset, settings)
    return -b.sum_first(a.offset - b.offset, settings)


def _growth_coefficient(tails, exponent, bits) -> CertifiedValue:
    # sum of c**(1/s): the level function of c*k**(-s) grows like c**(1/s) * alpha**(1-1/s)
    selected = [t for t in tails if t.exponent == exponent]
    if not selected:
        return ZERO
    with interval_precision(bits):
        acc = iv.mpf(0)
        for t in selected:
            acc += iv.exp(iv.log(to_mpi(t.coefficient)) / to_mpi(exponent))
        return from_mpi(acc)


def tail_difference(a: Tail, b: Tail, settings=None) -> CertifiedValue:
    """liminf of sum_{k<=n} (a_k - b_k) for two tails."""
    settings = resolve_settings(settings)
    left = list(a.components())
    right = []
    result = ZERO
    for component in b.components():
        partner = next((t for t in left if _same_family(t, component)), None)
        if partner is None:
            right.append(component)
            continue
        left.remove(partner)
        result = result + _pair_difference(partner, component, settings)
    for t in left:
        if t.summable:
            result = result + t.total(settings)
    for t in right:
        if t.summable:
            result = result - t.total(settings)
    divergent_left = [t for t in left if not t.summable]
    divergent_right = [t for t in right if not t.summable]
    if not divergent_left and not divergent_right:
        return result
    if not divergent_right:
        return PLUS_INFINITY
    if not divergent_left:
        return MINUS_INFINITY
    exponent = min(t.exponent for t in divergent_left + divergent_right)
    lead = (_growth_coefficient(divergent_left, exponent, settings.interval_bits)
            - _growth_coefficient(divergent_right, exponent, settings.interval_bits))
    sign = lead.sign()
    if sign == 1:
        return PLUS_INFINITY
    if sign == -1:
        return MINUS_INFINITY
    logger.debug("divergent tails %s and %s have indistinguishable growth", a, b)
    return UNKNOWN


def side_excess(lam: ExtendedSequence, d: ExtendedSequence, settings=None) -> CertifiedValue:
    """liminf of the partial-sum gaps of two nonnegative sequences."""
    lam, d = normalize(lam), normalize(d)
    if not (lam.is_nonnegative and d.is_nonnegative):
        raise ValueError("side_excess expects nonnegative sequences")
    prefix_gap = sum(lam.positive_prefix, Fraction(0)) - sum(d.positive_prefix, Fraction(0))
    return tail_difference(lam.positive_tail, d.positive_tail, settings) + prefix_gap


@dataclass(frozen=True)
class ExcessReport:
    sigma_plus: CertifiedValue
    sigma_minus: CertifiedValue
    lambda_plus_summable: Summability
    lambda_minus_summable: Summability
    d_plus_summable: Summability
    d_minus_summable: Summability

    @property
    def total(self) -> CertifiedValue:
        return self.sigma_plus + self.sigma_minus

    def mirrored(self) -> "ExcessReport":
        return ExcessReport(self.sigma_minus, self.sigma_plus, self.lambda_minus_summable,
                            self.lambda_plus_summable, self.d_minus_summable, self.d_plus_summable)

    def to_json(self):
        return {
            "sigma_plus": self.sigma_plus.to_json(),
            "sigma_minus": self.sigma_minus.to_json(),
            "lambda_plus_summable": self.lambda_plus_summable.value,
            "lambda_minus_summable": self.lambda_minus_summable.value,
            "d_plus_summable": self.d_plus_summable.value,
            "d_minus_summable": self.d_minus_summable.value,
        }


def excess(lam: ExtendedSequence, d: ExtendedSequence, settings=None) -> ExcessReport:
    lam_plus, lam_minus = positive_part(lam), negative_part(lam)
    d_plus, d_minus = positive_part(d), negative_part(d)
    report = ExcessReport(
        side_excess(lam_plus, d_plus, settings),
        side_excess(lam_minus, d_minus, settings),
        summability(lam_plus), summability(lam_minus),
        summability(d_plus), summability(d_minus))
    logger.debug("excess: sigma_plus=%s sigma_minus=%s", report.sigma_plus, report.sigma_minus)
    return report
