"""Necessary conditions for d to be a diagonal of an operator with eigenvalues lambda."""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

from ..essentials import Status, Summability, combine_statuses
from ..majorization.excess import ExcessReport, excess
from ..majorization.results import MajorizationResult
from ..majorization.riemann import riemann_majorizes
from ..settings import resolve_settings
from ..seqcore.certified import CertifiedValue
from ..seqcore.counts import add_counts, count_to_json
from ..seqcore.sequence import ExtendedSequence, negative_part, normalize, positive_part

logger = logging.getLogger(__name__)

CONDITION_NAMES = ("positive_majorization", "negative_majorization", "positive_trace",
                   "negative_trace", "positive_kernel", "negative_kernel")


@dataclass(frozen=True)
class ConditionResult:
    name: str
    status: Status
    witness: Optional[object] = None
    reason: str = field(default="", compare=False)

    @property
    def holds(self):
        return self.status is Status.HOLDS

    @property
    def fails(self):
        return self.status is Status.FAILS

    def to_json(self):
        result = {"status": self.status.value}
        if self.witness is not None:
            result["witness"] = self.witness
        if self.reason:
            result["reason"] = self.reason
        return result


@dataclass(frozen=True)
class NecessityTrace:
    conditions: Tuple[ConditionResult, ...]
    excess: ExcessReport

    @property
    def status(self) -> Status:
        return combine_statuses(c.status for c in self.conditions)

    @property
    def failures(self):
        return [c for c in self.conditions if c.fails]

    def __getitem__(self, name) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        return {c.name: c.to_json() for c in self.conditions}


def _from_majorization(name, result: MajorizationResult) -> ConditionResult:
    witness = None
    if result.fails:
        witness = {"n": result.witness} if result.witness is not None else {"limit": result.value.to_json()}
    return ConditionResult(name, result.status, witness, result.reason)


def _trace_condition(name, d_summable: Summability, larger: CertifiedValue, smaller: CertifiedValue,
                     larger_name, smaller_name) -> ConditionResult:
    # a summable part of d forces the excess on the other side to be at least as large
    if d_summable is Summability.NO:
        return ConditionResult(name, Status.HOLDS, reason="the part of d is not summable")
    c = larger.compare(smaller)
    if c is None:
        return ConditionResult(name, Status.UNKNOWN,
                               reason="cannot compare %s=%s with %s=%s" % (larger_name, larger, smaller_name, smaller))
    if c >= 0:
        return ConditionResult(name, Status.HOLDS, reason="%s=%s >= %s=%s" % (larger_name, larger, smaller_name, smaller))
    witness = {"d_summable": d_summable.value, larger_name: larger.to_json(), smaller_name: smaller.to_json()}
    return ConditionResult(name, Status.FAILS, witness,
                           "the part of d is summable but %s=%s < %s=%s" % (larger_name, larger, smaller_name, smaller))


def _kernel_condition(name, sigma: CertifiedValue, lam_zeros, d_zeros, lam_signed, d_signed) -> ConditionResult:
    # zero excess on one side: lambda needs at least as many zeros, and as many terms of that sign or zero
    counts_hold = lam_zeros >= d_zeros and lam_signed >= d_signed
    witness = {"lambda_zeros": count_to_json(lam_zeros), "d_zeros": count_to_json(d_zeros),
               "lambda_signed_or_zero": count_to_json(lam_signed), "d_signed_or_zero": count_to_json(d_signed)}
    sign = sigma.sign()
    if sign is None:
        if counts_hold:
            return ConditionResult(name, Status.HOLDS, reason="cardinalities hold whatever the excess")
        return ConditionResult(name, Status.UNKNOWN, reason="excess %s straddles zero" % sigma)
    if sign != 0:
        return ConditionResult(name, Status.HOLDS, reason="excess %s is nonzero" % sigma)
    if counts_hold:
        return ConditionResult(name, Status.HOLDS, reason="zero excess and enough zero and signed terms")
    return ConditionResult(name, Status.FAILS, witness, "zero excess but d has more zero or signed terms than lambda")


def check_necessity(lam: ExtendedSequence, d: ExtendedSequence, settings=None) -> NecessityTrace:
    settings = resolve_settings(settings)
    lam, d = normalize(lam), normalize(d)
    report = excess(lam, d, settings)
    sigma_plus, sigma_minus = report.sigma_plus, report.sigma_minus

    conditions = (
        _from_majorization(CONDITION_NAMES[0],
                           riemann_majorizes(positive_part(lam), positive_part(d), settings=settings)),
        _from_majorization(CONDITION_NAMES[1],
                           riemann_majorizes(negative_part(lam), negative_part(d), settings=settings)),
        _trace_condition(CONDITION_NAMES[2], report.d_plus_summable, sigma_minus, sigma_plus,
                         "sigma_minus", "sigma_plus"),
        _trace_condition(CONDITION_NAMES[3], report.d_minus_summable, sigma_plus, sigma_minus,
                         "sigma_plus", "sigma_minus"),
        _kernel_condition(CONDITION_NAMES[4], sigma_plus, lam.zero_count, d.zero_count,
                          add_counts(lam.positive_count, lam.zero_count),
                          add_counts(d.positive_count, d.zero_count)),
        _kernel_condition(CONDITION_NAMES[5], sigma_minus, lam.zero_count, d.zero_count,
                          add_counts(lam.negative_count, lam.zero_count),
                          add_counts(d.negative_count, d.zero_count)),
    )
    for c in conditions:
        logger.debug("necessity %s: %s %s", c.name, c.status.value, c.reason)
    return NecessityTrace(conditions, report)
